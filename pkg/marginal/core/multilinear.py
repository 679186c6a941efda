"""
Ground-truth machinery for multilinear polynomials.

-   truth tables from circuits, and the subset transforms between table values
    and multilinear coefficients (Möbius: values to coefficients; zeta:
    coefficients to values)
-   network polynomials ``p̄(x, x̄) = sum_S p(v_S) prod_{i in S} x_i prod_{i not in S} x̄_i``,
    sparse, evaluated through a circuit, or built as a circuit over 2n inputs
-   brute-force oracles for every query, by literal enumeration
-   the truth-table text format

"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Union

from . import errors
from .configuration import Configuration
from .analysis import Certificate, require_certificate
from .circuit import Circuit, CircuitBuilder, Const, Sum, Var
from .degree import check_syntactic_multilinearity
from .evaluation import Evaluator
from .evidence import EvidenceString, VirtualEvidence, consistent_points
from .polynomial import NetworkPoly, SparseMultilinearPoly, TruthTable, bits, popcount
from .rational import RationalLike, as_point, format_rational, parse_rational
from .utils.parsing import content_lines, is_natural

logger = logging.getLogger(__name__)


def _check_table_n(n: int, limit: Optional[int]):
    limit = Configuration().limits.table_n if limit is None else limit
    if n > limit:
        raise errors.CapacityError(limit="table-n", allowed=limit, requested=n)


# -- tables and subset transforms ----------------------------------------------


def table_from_circuit(c: Circuit, limit: Optional[int] = None) -> TruthTable:
    """``values[x] = p(x)`` for every boolean ``x`` (bit i of x is x_i).

    Raises:
        CapacityError: ``n_vars`` above the configured table-n limit.

    """
    _check_table_n(c.n_vars, limit)
    n = c.n_vars
    evaluator = Evaluator(c)
    point = [0] * n
    values = []
    for x in range(1 << n):
        for i in range(n):
            point[i] = x >> i & 1
        values.append(evaluator(point))
    return TruthTable(n, tuple(values))


def coefficients_from_table(t: TruthTable) -> SparseMultilinearPoly:
    """Möbius transform: ``c_S = sum_{T subset S} (-1)^{|S - T|} f(v_T)``."""
    a = list(t.values)
    for i in range(t.n):
        bit = 1 << i
        for s in range(len(a)):
            if s & bit:
                a[s] -= a[s ^ bit]
    return SparseMultilinearPoly(t.n, {s: v for s, v in enumerate(a) if v})


def table_from_coefficients(p: SparseMultilinearPoly) -> TruthTable:
    """Zeta transform: ``f(v_U) = sum_{S subset U} c_S``."""
    a: List[Fraction] = [Fraction(0)] * (1 << p.n)
    for s, v in p.terms.items():
        a[s] = v
    for i in range(p.n):
        bit = 1 << i
        for s in range(len(a)):
            if s & bit:
                a[s] += a[s ^ bit]
    return TruthTable(p.n, tuple(a))


def network_from_table(t: TruthTable) -> NetworkPoly:
    return NetworkPoly(t.n, {s: v for s, v in enumerate(t.values) if v})


# -- network polynomial evaluation ---------------------------------------------


def network_eval(
    target: Union[NetworkPoly, Circuit],
    x: Sequence[RationalLike],
    xbar: Sequence[RationalLike],
    certificate: Optional[Certificate] = None,
) -> Fraction:
    """Exact ``p̄(x, x̄)``.

    For a circuit the identity ``p̄(x, x̄) = prod_i (x_i + x̄_i) * p(x_i / (x_i + x̄_i))``
    is used.  A coordinate with ``x_i + x̄_i = 0`` is split as
    ``p̄ = x_i * A + x̄_i * B`` where A and B fix the coordinate to 1 and 0, so
    the cost is 2^(number of such coordinates) circuit evaluations.

    Args:
        target (Union[NetworkPoly, Circuit]):
            Sparse network polynomial, or a circuit certified multilinear.
        x (Sequence), xbar (Sequence):
            The two halves of the point.
        certificate (Optional[Certificate]):
            Multilinearity certificate for a circuit target; a syntactic one
            is attempted when omitted.

    """
    x, xbar = as_point(x), as_point(xbar)
    n = target.n if isinstance(target, NetworkPoly) else target.n_vars
    for nm, half in (("x", x), ("xbar", xbar)):
        if len(half) != n:
            raise errors.EvidenceLengthError(expected=n, received=len(half), nm=nm)
    if isinstance(target, NetworkPoly):
        return target.evaluate(x, xbar)

    require_certificate(target, certificate)
    evaluator = Evaluator(target)
    degenerate = [i for i in range(n) if x[i] + xbar[i] == 0]

    scale = Fraction(1)
    base: List[Fraction] = [Fraction(0)] * n
    for i in range(n):
        s = x[i] + xbar[i]
        if s:
            scale *= s
            base[i] = x[i] / s

    total = Fraction(0)
    for combo in range(1 << len(degenerate)):
        factor = scale
        point = list(base)
        for j, i in enumerate(degenerate):
            if combo >> j & 1:
                factor *= x[i]
                point[i] = Fraction(1)
            else:
                factor *= xbar[i]
                point[i] = Fraction(0)
            if not factor:
                break
        if factor:
            total += factor * evaluator(point)
    return total


def network_circuit_syntactic(c: Circuit) -> Circuit:
    """Circuit over 2n inputs computing ``p̄``; input 2i is x_i, 2i+1 is x̄_i.

    Each gate g is rewritten to compute its own network form over the
    variables it reaches, ``V_g``:

    -   Var x_i becomes the input x_i
    -   a product multiplies its children's forms (their sets are disjoint)
    -   a sum multiplies each child form by ``(x_j + x̄_j)`` for every j in
        ``V_g`` the child does not reach

    and the output is padded the same way up to all n variables, so the
    result has O(s * n) gates.

    Raises:
        NotSyntacticallyMultilinearError: for circuits failing the syntactic
            check; use :func:`network_eval` for those.

    """
    check = check_syntactic_multilinearity(c)
    if not check:
        raise errors.NotSyntacticallyMultilinearError(violator=check.violator)

    n = c.n_vars
    b = CircuitBuilder(2 * n)
    masks = c.variable_sets()
    pairs: Dict[int, int] = {}

    def pair(i: int) -> int:
        if i not in pairs:
            pairs[i] = b.add(b.var(2 * i), b.var(2 * i + 1))
        return pairs[i]

    def pad(node: int, missing: int) -> int:
        if not missing:
            return node
        return b.prod([node] + [pair(i) for i in range(n) if missing >> i & 1])

    new: List[int] = []
    for node in c.nodes:
        if isinstance(node, Var):
            new.append(b.var(2 * node.index))
        elif isinstance(node, Const):
            new.append(b.const(node.value))
        elif isinstance(node, Sum):
            here = masks[node.id]
            new.append(
                b.sum((w, pad(new[ch], here & ~masks[ch])) for w, ch in node.edges)
            )
        else:
            new.append(b.prod(new[ch] for ch in node.factors))

    full = (1 << n) - 1
    return b.build(pad(new[c.output], full & ~masks[c.output]))


# -- brute-force oracles -------------------------------------------------------


def brute_mar(
    t: TruthTable, m: Union[EvidenceString, str], limit: Optional[int] = None
) -> Fraction:
    """``sum_{x in X_m} f(x)`` by enumeration."""
    _check_table_n(t.n, limit)
    m = EvidenceString.coerce(m).check_length(t.n)
    return sum((t[x] for x in consistent_points(m)), Fraction(0))


def brute_hmar(
    t: TruthTable, m: Union[EvidenceString, str], k: int, limit: Optional[int] = None
) -> Fraction:
    """``sum_{x in X_m, |x| = k} f(x)`` by enumeration."""
    _check_table_n(t.n, limit)
    m = EvidenceString.coerce(m).check_length(t.n)
    return sum(
        (t[x] for x in consistent_points(m) if popcount(x) == k), Fraction(0)
    )


def brute_hmar_profile(
    t: TruthTable, m: Union[EvidenceString, str], limit: Optional[int] = None
) -> List[Fraction]:
    return brute_ve_hmar_profile(t, VirtualEvidence.unit(t.n), m, limit=limit)


def brute_vmar(p: SparseMultilinearPoly, point: Sequence[RationalLike]) -> Fraction:
    """Literal evaluation of the sparse polynomial."""
    point = as_point(point)
    if len(point) != p.n:
        raise errors.EvidenceLengthError(expected=p.n, received=len(point), nm="point")
    return p.evaluate(point)


def brute_ve(
    t: TruthTable,
    w: VirtualEvidence,
    m: Union[EvidenceString, str],
    limit: Optional[int] = None,
) -> Fraction:
    """``sum_{x in X_m} f(x) prod_i (alpha_i x_i + alpha_bar_i (1 - x_i))``."""
    _check_table_n(t.n, limit)
    m = EvidenceString.coerce(m).check_length(t.n)
    w.check_length(t.n)
    return sum((t[x] * w.weight(x) for x in consistent_points(m)), Fraction(0))


def brute_ve_hmar_profile(
    t: TruthTable,
    w: VirtualEvidence,
    m: Union[EvidenceString, str],
    limit: Optional[int] = None,
) -> List[Fraction]:
    """Reweighted sums over X_m bucketed by Hamming weight."""
    _check_table_n(t.n, limit)
    m = EvidenceString.coerce(m).check_length(t.n)
    w.check_length(t.n)
    profile = [Fraction(0)] * (t.n + 1)
    for x in consistent_points(m):
        profile[popcount(x)] += t[x] * w.weight(x)
    return profile


# -- truth-table text format ---------------------------------------------------


def parse_table(text: str) -> TruthTable:
    """Parses ``table <n>`` followed by ``<bitstring> <a>/<b>`` rows.

    Row order is free; character i of a bitstring is x_(i+1).  Rows that
    are missing default to 0 with a warning.

    """
    lines = list(content_lines(text))
    if not lines:
        raise errors.TableFormatError(msg="empty input", line=1)
    lineno, tokens = lines[0]
    if tokens[0] != "table" or len(tokens) != 2 or not is_natural(tokens[1]):
        raise errors.TableFormatError(
            msg="expected header 'table <n>'", line=lineno, nm=" ".join(tokens)
        )
    n = int(tokens[1])
    values: Dict[int, Fraction] = {}
    for lineno, tokens in lines[1:]:
        if len(tokens) != 2:
            raise errors.TableFormatError(
                msg="expected '<bitstring> <value>'", line=lineno, nm=" ".join(tokens)
            )
        word, value = tokens
        if len(word) != n or set(word) - {"0", "1"}:
            raise errors.TableFormatError(
                msg=f"expected a bitstring of length {n}", line=lineno, nm=word
            )
        x = sum(1 << i for i, ch in enumerate(word) if ch == "1")
        if x in values:
            raise errors.TableFormatError(msg="duplicate row", line=lineno, nm=word)
        try:
            values[x] = parse_rational(value)
        except ValueError as e:
            raise errors.TableFormatError(msg=str(e), line=lineno, nm=value) from e
    missing = (1 << n) - len(values)
    if missing:
        logger.warning("truth table: %d of %d rows missing; set to 0", missing, 1 << n)
    return TruthTable(n, tuple(values.get(x, Fraction(0)) for x in range(1 << n)))


def serialize_table(t: TruthTable) -> str:
    rows = [f"table {t.n}"]
    rows.extend(f"{bits(x, t.n)} {format_rational(v)}" for x, v in enumerate(t.values))
    return "\n".join(rows) + "\n"
