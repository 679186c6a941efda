"""
Random instances for property checks.

All generators take an explicit :class:`random.Random` so that a seed fully
determines the instance.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, FrozenSet, List, Tuple

from .affine import GF2System, XorFormula
from .circuit import Circuit, CircuitBuilder
from .evidence import ONE, STAR, ZERO, EvidenceString, VirtualEvidence


def random_rational(
    rng: random.Random, bound: int = 5, max_den: int = 4, nonzero: bool = True
) -> Fraction:
    while True:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))
        if value or not nonzero:
            return value


def random_circuit(
    n: int,
    rng: random.Random,
    gates: int = 12,
    max_fan_in: int = 3,
    integer_weights: bool = False,
    cancellation: bool = False,
) -> Circuit:
    """Random circuit over ``n`` inputs computing a multilinear polynomial.

    Products only ever combine children over disjoint variables, so the
    result passes the syntactic check.  Gates are drawn from the whole pool
    built so far, so subcircuits are shared.

    Args:
        n (int):
            Number of inputs.
        rng (random.Random):
            Random source.
        gates (int):
            Number of sum/product gates to draw before the output.
        max_fan_in (int):
            Most children per gate.
        integer_weights (bool):
            Integer constants and edge weights only.
        cancellation (bool):
            Add ``x_i * (x_i + g) - x_i * x_i - x_i * g`` to the output.  The
            gadget is identically zero, so the circuit stays multilinear, but
            it fails the syntactic check.

    """
    b = CircuitBuilder(n)

    def weight() -> Fraction:
        return random_rational(rng, max_den=1 if integer_weights else 4)

    pool: List[Tuple[int, int]] = [(b.var(i), 1 << i) for i in range(n)]
    pool.append((b.const(weight()), 0))

    for _ in range(gates):
        fan_in = rng.randint(2, max(2, max_fan_in))
        if rng.random() < 0.5:
            picks = rng.sample(pool, min(fan_in, len(pool)))
            node = b.sum((weight(), nid) for nid, _ in picks)
            mask = 0
            for _, m in picks:
                mask |= m
        else:
            candidates = list(pool)
            rng.shuffle(candidates)
            factors, mask = [], 0
            for nid, m in candidates:
                if not m & mask:
                    factors.append(nid)
                    mask |= m
                if len(factors) == fan_in:
                    break
            node = b.prod(factors)
        pool.append((node, mask))

    tops = pool[-min(3, len(pool)) :]
    out = b.sum((weight(), nid) for nid, _ in tops)
    if cancellation and n:
        i = rng.randrange(n)
        x = b.var(i)
        g = rng.choice(pool)[0]
        gadget = [
            (1, b.prod([x, b.add(x, g)])),
            (-1, b.prod([x, x])),
            (-1, b.prod([x, g])),
        ]
        out = b.sum([(1, out)] + gadget)
    return b.build(out)


def random_evidence(n: int, rng: random.Random, star: float = 0.5) -> EvidenceString:
    return EvidenceString(
        tuple(STAR if rng.random() < star else rng.choice((ZERO, ONE)) for _ in range(n))
    )


def random_virtual_evidence(
    n: int, rng: random.Random, zero: float = 0.15
) -> VirtualEvidence:
    """Nonnegative pairs; with probability ``zero`` one side of a pair is 0."""
    pairs = []
    for _ in range(n):
        a = Fraction(rng.randint(1, 6), rng.randint(1, 4))
        b = Fraction(rng.randint(1, 6), rng.randint(1, 4))
        if rng.random() < zero:
            if rng.random() < 0.5:
                a = Fraction(0)
            else:
                b = Fraction(0)
        pairs.append((a, b))
    return VirtualEvidence(tuple(pairs))


def random_point(n: int, rng: random.Random, max_den: int = 7) -> Tuple[Fraction, ...]:
    return tuple(random_rational(rng, bound=9, max_den=max_den, nonzero=False) for _ in range(n))


def random_xor_formula(n: int, clauses: int, rng: random.Random) -> XorFormula:
    """Uniform 1-based triples; indices may repeat within a clause."""
    return XorFormula(
        n, tuple(tuple(rng.randint(1, n) for _ in range(3)) for _ in range(clauses))
    )


def random_gf2_system(
    n_vars: int, rows: int, rng: random.Random, density: float = 0.3
) -> GF2System:
    def row() -> Tuple[int, int]:
        mask = sum(1 << i for i in range(n_vars) if rng.random() < density)
        return mask, rng.randint(0, 1)

    return GF2System(n_vars, tuple(row() for _ in range(rows)))


def random_dnnf_text(n: int, rng: random.Random, density: float = 0.5) -> Tuple[str, int]:
    """NNF text of a random boolean function by Shannon expansion on x1..xn.

    The result is decomposable and deterministic, so the imported circuit
    computes the model indicator.

    Returns (Tuple[str, int]):
        The NNF text and the number of models.

    """
    models = frozenset(x for x in range(1 << n) if rng.random() < density)
    lines: List[str] = []
    edges = [0]
    built: Dict[Tuple[int, FrozenSet[int]], int] = {}
    literals: Dict[int, int] = {}

    def emit(line: str, children: int = 0) -> int:
        lines.append(line)
        edges[0] += children
        return len(lines) - 1

    def literal(lit: int) -> int:
        if lit not in literals:
            literals[lit] = emit(f"L {lit}")
        return literals[lit]

    def expand(i: int, rest: FrozenSet[int]) -> int:
        # rest: satisfying completions of x_(i+1)..x_n, bit 0 is x_(i+1)
        if not rest:
            key = (-1, rest)
        elif len(rest) == 1 << (n - i):
            key = (-2, frozenset())
        else:
            key = (i, rest)
        if key in built:
            return built[key]
        if key[0] == -1:
            node = emit("O 0 0")
        elif key[0] == -2:
            node = emit("A 0")
        else:
            hi = expand(i + 1, frozenset(s >> 1 for s in rest if s & 1))
            lo = expand(i + 1, frozenset(s >> 1 for s in rest if not s & 1))
            a = emit(f"A 2 {literal(i + 1)} {hi}", 2)
            b = emit(f"A 2 {literal(-(i + 1))} {lo}", 2)
            node = emit(f"O {i + 1} 2 {a} {b}", 2)
        built[key] = node
        return node

    expand(0, models)
    header = f"nnf {len(lines)} {edges[0]} {n}"
    return "\n".join([header] + lines) + "\n", len(models)
