"""
Affine constraint systems over GF(2).

-   :class:`GF2System` and :func:`gf2_eliminate`: row reduction with
    rows stored as bitmasks (bit i is variable i)
-   :func:`count_solutions`: ``2^(n - rank)`` or 0
-   :class:`XorFormula`: conjunctions of ``x_i + x_j + x_k = 1`` clauses
-   :class:`FaffInstance`: the width-4 parity family over ``2n^3 + n``
    variables whose marginals are countable by elimination while its
    weight-restricted marginals encode #k-ONES of XOR formulas
-   :func:`reduce_kones_to_hmar`, :func:`brute_kones` and
    :func:`weight_histogram`: the reduction and its verifiers

"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from . import errors
from .configuration import Configuration
from .evidence import ONE, STAR, ZERO, EvidenceString
from .polynomial import popcount
from .utils.parsing import content_lines, is_natural

logger = logging.getLogger(__name__)

Row = Tuple[int, int]


# -- systems and elimination ---------------------------------------------------


@dataclass(frozen=True)
class GF2System:
    """Linear system over GF(2); each row is ``(mask, rhs)`` asserting
    ``XOR_{i in mask} x_i = rhs``.  Duplicate rows are allowed."""

    n_vars: int
    rows: Tuple[Row, ...] = ()

    def __post_init__(self):
        rows = tuple((int(mask), int(rhs) & 1) for mask, rhs in self.rows)
        for pos, (mask, _) in enumerate(rows):
            if mask < 0 or mask >> self.n_vars:
                raise errors.UsageError(
                    msg=f"row {pos} names variables beyond {self.n_vars}",
                    nm=bin(mask),
                )
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return len(self.rows)

    def with_rows(self, rows: Iterable[Row]) -> GF2System:
        return GF2System(self.n_vars, self.rows + tuple(rows))

    def fix(self, m: Union[EvidenceString, str]) -> GF2System:
        """Appends a unit equation ``x_i = m_i`` for every fixed entry of ``m``."""
        m = EvidenceString.coerce(m).check_length(self.n_vars)
        return self.with_rows((1 << i, int(e)) for i, e in enumerate(m) if e != STAR)

    def satisfied_by(self, x: int) -> bool:
        return all(popcount(x & mask) & 1 == rhs for mask, rhs in self.rows)


@dataclass(frozen=True)
class EliminationResult:
    """Reduced row-echelon data of a :class:`GF2System`.

    Attributes:
        n_vars (int):
            Number of variables.
        consistent (bool):
            False when elimination produced ``0 = 1``.
        rank (int):
            Number of linearly independent rows.
        pivots (Tuple[int, ...]):
            Pivot variable of each independent row, ascending.
        particular (Optional[int]):
            A solution (free variables at 0) when consistent.
        null_basis (Tuple[int, ...]):
            One kernel vector per free variable.

    """

    n_vars: int
    consistent: bool
    rank: int
    pivots: Tuple[int, ...]
    particular: Optional[int]
    null_basis: Tuple[int, ...] = field(default=())

    @property
    def dimension(self) -> int:
        return self.n_vars - self.rank

    @property
    def free(self) -> Tuple[int, ...]:
        pivots = set(self.pivots)
        return tuple(i for i in range(self.n_vars) if i not in pivots)

    def __bool__(self):
        return self.consistent


def gf2_eliminate(s: GF2System) -> EliminationResult:
    """Gaussian elimination over GF(2).

    Rows are inserted into a basis keyed by their highest variable, then
    back-substituted so each basis row holds its pivot and free variables
    only.

    """
    basis: Dict[int, Row] = {}
    consistent = True
    for mask, rhs in s.rows:
        while mask:
            high = mask.bit_length() - 1
            if high not in basis:
                basis[high] = (mask, rhs)
                break
            bmask, brhs = basis[high]
            mask ^= bmask
            rhs ^= brhs
        else:
            if rhs:
                consistent = False

    pivots = tuple(sorted(basis))
    # lower rows are already reduced, so clearing their pivots adds free bits only
    for pos, p in enumerate(pivots):
        mask, rhs = basis[p]
        for q in pivots[:pos]:
            if mask >> q & 1:
                qmask, qrhs = basis[q]
                mask ^= qmask
                rhs ^= qrhs
        basis[p] = (mask, rhs)

    if not consistent:
        return EliminationResult(
            s.n_vars, consistent=False, rank=len(pivots), pivots=pivots, particular=None
        )

    particular = 0
    for p in pivots:
        if basis[p][1]:
            particular |= 1 << p

    pivot_set = set(pivots)
    null_basis = []
    for f in range(s.n_vars):
        if f in pivot_set:
            continue
        vec = 1 << f
        for p in pivots:
            if basis[p][0] >> f & 1:
                vec |= 1 << p
        null_basis.append(vec)

    return EliminationResult(
        s.n_vars,
        consistent=True,
        rank=len(pivots),
        pivots=pivots,
        particular=particular,
        null_basis=tuple(null_basis),
    )


def count_solutions(s: GF2System) -> int:
    """0 if inconsistent, else ``2^(n_vars - rank)``."""
    result = gf2_eliminate(s)
    return 1 << result.dimension if result else 0


def enumerate_solutions(
    result: EliminationResult, limit: Optional[int] = None
) -> Iterator[int]:
    """Every solution as a bitmask: the particular solution shifted by each
    element of the null space.

    Raises:
        CapacityError: solution-space dimension above the limit.

    """
    limit = Configuration().limits.solution_dim if limit is None else limit
    if not result:
        return
    if result.dimension > limit:
        raise errors.CapacityError(
            limit="solution-dim", allowed=limit, requested=result.dimension
        )
    yield from _span(result.particular, result.null_basis)


def _span(offset: int, basis: Tuple[int, ...]) -> Iterator[int]:
    # gray-code walk; one xor per solution
    x = offset
    yield x
    for step in range(1, 1 << len(basis)):
        x ^= basis[(step & -step).bit_length() - 1]
        yield x


def weight_histogram(
    s: GF2System,
    m: Union[EvidenceString, str, None] = None,
    limit: Optional[int] = None,
) -> List[int]:
    """Solutions consistent with ``m`` bucketed by Hamming weight.

    Entry k is the weight-k marginal of the system's indicator function.
    Fixed entries of ``m`` are appended as unit equations before
    enumeration, so ``limit`` bounds the dimension after fixing.

    """
    system = s.fix(m) if m is not None else s
    histogram = [0] * (s.n_vars + 1)
    for x in enumerate_solutions(gf2_eliminate(system), limit=limit):
        histogram[popcount(x)] += 1
    return histogram


# -- XOR formulas --------------------------------------------------------------


@dataclass(frozen=True)
class XorFormula:
    """Conjunction of clauses ``x_i + x_j + x_k = 1`` over GF(2).

    Clause indices are 1-based and need not be distinct; a repeated index
    cancels.

    """

    n: int
    clauses: Tuple[Tuple[int, int, int], ...] = ()

    def __post_init__(self):
        clauses = tuple(tuple(int(i) for i in c) for c in self.clauses)
        for pos, clause in enumerate(clauses):
            if len(clause) != 3:
                raise errors.XorFormatError(
                    msg=f"clause {pos} has {len(clause)} indices", nm=str(clause)
                )
            for i in clause:
                if not 1 <= i <= self.n:
                    raise errors.XorFormatError(
                        msg=f"index outside 1..{self.n} in clause {pos}", nm=str(i)
                    )
        object.__setattr__(self, "clauses", clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    @staticmethod
    def clause_mask(clause: Tuple[int, int, int]) -> int:
        mask = 0
        for i in clause:
            mask ^= 1 << (i - 1)
        return mask

    def to_system(self) -> GF2System:
        return GF2System(self.n, tuple((self.clause_mask(c), 1) for c in self.clauses))

    def satisfied_by(self, x: int) -> bool:
        """``x`` has bit i-1 set iff x_i = 1."""
        return all(popcount(x & self.clause_mask(c)) & 1 for c in self.clauses)


def parse_xor_formula(text: str) -> XorFormula:
    """Parses ``xorcsp <n>`` followed by ``c <i> <j> <k>`` clause lines."""
    lines = list(content_lines(text))
    if not lines:
        raise errors.XorFormatError(msg="empty input", line=1)
    lineno, tokens = lines[0]
    if tokens[0] != "xorcsp" or len(tokens) != 2 or not is_natural(tokens[1]):
        raise errors.XorFormatError(
            msg="expected header 'xorcsp <n>'", line=lineno, nm=" ".join(tokens)
        )
    n = int(tokens[1])
    clauses = []
    for lineno, tokens in lines[1:]:
        if tokens[0] != "c" or len(tokens) != 4:
            raise errors.XorFormatError(
                msg="expected 'c <i> <j> <k>'", line=lineno, nm=" ".join(tokens)
            )
        if not all(is_natural(t) for t in tokens[1:]):
            raise errors.XorFormatError(
                msg="clause indices are integers", line=lineno, nm=" ".join(tokens[1:])
            )
        clause = tuple(int(t) for t in tokens[1:])
        bad = [i for i in clause if not 1 <= i <= n]
        if bad:
            raise errors.XorFormatError(
                msg=f"index outside 1..{n}", line=lineno, nm=str(bad[0])
            )
        clauses.append(clause)
    return XorFormula(n, tuple(clauses))


def serialize_xor_formula(phi: XorFormula) -> str:
    rows = [f"xorcsp {phi.n}"]
    rows.extend(f"c {i} {j} {k}" for i, j, k in phi.clauses)
    return "\n".join(rows) + "\n"


def brute_kones(phi: XorFormula, k: int, limit: Optional[int] = None) -> int:
    """Number of ``x`` with exactly k ones satisfying every clause, by
    enumeration of the weight-k points.

    Raises:
        CapacityError: ``n`` above the configured kones-n limit.

    """
    limit = Configuration().limits.kones_n if limit is None else limit
    if phi.n > limit:
        raise errors.CapacityError(limit="kones-n", allowed=limit, requested=phi.n)
    if k < 0 or k > phi.n:
        return 0
    masks = [phi.clause_mask(c) for c in phi.clauses]
    count = 0
    for ones in itertools.combinations(range(phi.n), k):
        x = sum(1 << i for i in ones)
        if all(popcount(x & mask) & 1 for mask in masks):
            count += 1
    return count


# -- the affine separating family ----------------------------------------------


class FaffInstance:
    """Variable layout and constraints of ``f_aff`` for parameter ``n``.

    Variables (indices 1-based, blocks in order x, y, z; each of y and z is
    lexicographic in ``(i, j, k)``):

    -   ``x_i`` at position ``i - 1``
    -   ``y_ijk`` at ``n + idx``
    -   ``z_ijk`` at ``n + n^3 + idx``

    with ``idx = ((i-1) n + (j-1)) n + (k-1)``.  Constraints, for all
    ``(i, j, k)``: ``y_ijk + x_i + x_j + x_k = 1`` and ``y_ijk + z_ijk = 1``.

    """

    def __init__(self, n: int):
        if n < 1:
            raise errors.UsageError(msg="f_aff needs n >= 1", nm=str(n))
        self.n = n
        self.cube = n ** 3
        self.n_vars = 2 * self.cube + n

    def __str__(self):
        return f"marginal.FaffInstance(n={self.n}, n_vars={self.n_vars})"

    def _idx(self, i: int, j: int, k: int) -> int:
        n = self.n
        for v in (i, j, k):
            if not 1 <= v <= n:
                raise errors.UsageError(msg=f"index outside 1..{n}", nm=str(v))
        return ((i - 1) * n + (j - 1)) * n + (k - 1)

    def x_var(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise errors.UsageError(msg=f"index outside 1..{self.n}", nm=str(i))
        return i - 1

    def y_var(self, i: int, j: int, k: int) -> int:
        return self.n + self._idx(i, j, k)

    def z_var(self, i: int, j: int, k: int) -> int:
        return self.n + self.cube + self._idx(i, j, k)

    def triples(self) -> Iterator[Tuple[int, int, int]]:
        return itertools.product(range(1, self.n + 1), repeat=3)

    def names(self) -> List[str]:
        """Variable names in position order (``x1``, ``y111``, ``z111``, ...)."""
        names = [f"x{i}" for i in range(1, self.n + 1)]
        names.extend(f"y{i}{j}{k}" for i, j, k in self.triples())
        names.extend(f"z{i}{j}{k}" for i, j, k in self.triples())
        return names

    def system(self) -> GF2System:
        rows: List[Row] = []
        for i, j, k in self.triples():
            y = self.y_var(i, j, k)
            mask = 1 << y
            for v in (i, j, k):
                mask ^= 1 << self.x_var(v)
            rows.append((mask, 1))
            rows.append(((1 << y) | (1 << self.z_var(i, j, k)), 1))
        return GF2System(self.n_vars, tuple(rows))

    def evaluate(self, assignment: int) -> int:
        """``f_aff`` at a full assignment (bit p is the variable at position p)."""
        return int(self.system().satisfied_by(assignment))

    def block_weights(self, assignment: int) -> Tuple[int, int, int]:
        """Hamming weights of the x, y and z blocks."""
        n, cube = self.n, self.cube
        x = assignment & ((1 << n) - 1)
        y = assignment >> n & ((1 << cube) - 1)
        z = assignment >> (n + cube) & ((1 << cube) - 1)
        return popcount(x), popcount(y), popcount(z)


def _faff_instance(n: int, limit: Optional[int]) -> FaffInstance:
    limit = Configuration().limits.faff_n if limit is None else limit
    if n > limit:
        raise errors.CapacityError(limit="faff-n", allowed=limit, requested=n)
    return FaffInstance(n)


def faff_mar(
    n: int, m: Union[EvidenceString, str, None] = None, limit: Optional[int] = None
) -> int:
    """``MAR(f_aff)(m)``: solutions of the f_aff system with the fixed
    entries of ``m`` appended as unit equations.

    Raises:
        EvidenceLengthError: ``|m| != 2n^3 + n``.
        CapacityError: ``n`` above the configured faff-n limit.

    """
    instance = _faff_instance(n, limit)
    system = instance.system()
    if m is not None:
        system = system.fix(m)
    return count_solutions(system)


@dataclass(frozen=True)
class KOnesReduction:
    """An HMAR query on ``f_aff`` equal to a #k-ONES count.

    Attributes:
        instance (FaffInstance):
            The f_aff instance for the formula's ``n``.
        evidence (EvidenceString):
            ``y_ijk = 0`` and ``z_ijk = 1`` for every clause, stars elsewhere.
        weight (int):
            Target Hamming weight ``k + n^3``.

    """

    instance: FaffInstance
    evidence: EvidenceString
    weight: int


def reduce_kones_to_hmar(
    phi: XorFormula, k: int, limit: Optional[int] = None
) -> KOnesReduction:
    """Maps ``(phi, k)`` to ``(m, k + n^3)`` with
    ``#k-ONES(phi, k) = HMAR(f_aff)(m, k + n^3)``.

    Raises:
        WeightRangeError: ``k`` outside ``0..n``.

    """
    if k < 0 or k > phi.n:
        raise errors.WeightRangeError(k=k, n=phi.n)
    instance = _faff_instance(phi.n, limit)
    entries = [STAR] * instance.n_vars
    for clause in phi.clauses:
        entries[instance.y_var(*clause)] = ZERO
        entries[instance.z_var(*clause)] = ONE
    return KOnesReduction(
        instance=instance,
        evidence=EvidenceString(tuple(entries)),
        weight=k + instance.cube,
    )
