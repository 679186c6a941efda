"""
Exact circuit evaluation.

-   :func:`eval_direct`: rational evaluation in one bottom-up pass
-   :func:`eval_integer`: integer inputs, with bitwidth accounting
-   :func:`eval_via_integer_reduction`: rational points evaluated through
    integer points only, by scaling with a common denominator and
    interpolating along the ray ``t * c``
-   :func:`lagrange_interpolate`: exact univariate interpolation

"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

from . import errors
from .circuit import Circuit, Const, Sum, Var, encoded_size
from .degree import formal_degree
from .rational import RationalLike, as_point, as_rational, bitwidth, encoded_length

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


class Evaluator:
    """A circuit flattened into a list of instructions for repeated evaluation.

    Instances are immutable after construction and may be shared between
    threads.

    """

    _VAR, _CONST, _SUM, _PROD = range(4)

    def __init__(self, c: Circuit):
        self.circuit = c
        self.n_vars = c.n_vars
        self.output = c.output
        program = []
        for node in c.nodes:
            if isinstance(node, Var):
                program.append((self._VAR, node.index))
            elif isinstance(node, Const):
                program.append((self._CONST, node.value))
            elif isinstance(node, Sum):
                program.append(
                    (self._SUM, tuple((None if w == 1 else w, ch) for w, ch in node.edges))
                )
            else:
                program.append((self._PROD, node.factors))
        self.program: Tuple = tuple(program)

    def values(self, point: Sequence[Number]) -> List[Number]:
        """Value of every node at ``point``."""
        vals: List[Number] = []
        append = vals.append
        for op, arg in self.program:
            if op == 0:
                append(point[arg])
            elif op == 1:
                append(arg)
            elif op == 2:
                acc = 0
                for w, ch in arg:
                    acc += vals[ch] if w is None else w * vals[ch]
                append(acc)
            else:
                acc = 1
                for ch in arg:
                    acc *= vals[ch]
                    if not acc:
                        break
                append(acc)
        return vals

    def __call__(self, point: Sequence[Number]) -> Fraction:
        return Fraction(self.values(point)[self.output])


def _checked_point(c: Circuit, point: Sequence[RationalLike]) -> Tuple[Fraction, ...]:
    point = as_point(point)
    if len(point) != c.n_vars:
        raise errors.EvidenceLengthError(c.n_vars, len(point), nm="point")
    return point


def eval_direct(c: Circuit, point: Sequence[RationalLike]) -> Fraction:
    """Exact value of the circuit's polynomial at ``point``."""
    return Evaluator(c)(_checked_point(c, point))


@dataclass(frozen=True)
class EvalTrace:
    """Result of an integer-mode evaluation.

    Attributes:
        value (Fraction):
            Output value.
        max_bitwidth_seen (int):
            Largest bitwidth of any node value (sign bit included).
        node_count_evaluated (int):
            Number of nodes evaluated.

    """

    value: Fraction
    max_bitwidth_seen: int
    node_count_evaluated: int


def eval_integer(c: Circuit, point: Sequence[RationalLike]) -> EvalTrace:
    """Evaluates at an integer point, recording the widest intermediate value."""
    point = _checked_point(c, point)
    for i, v in enumerate(point):
        if v.denominator != 1:
            raise errors.UsageError(
                msg=f"integer mode needs integer inputs; got {v}", nm=f"x{i}"
            )
    vals = Evaluator(c).values([int(v) for v in point])
    return EvalTrace(
        value=Fraction(vals[c.output]),
        max_bitwidth_seen=max((bitwidth(v) for v in vals), default=0),
        node_count_evaluated=len(vals),
    )


def bitwidth_bound(
    c: Circuit, point: Sequence[RationalLike], degree: Optional[int] = None
) -> int:
    """``(3d - 1) * max(N, encoded circuit size)`` for an integer point."""
    d = formal_degree(c).output_total_degree if degree is None else degree
    q = max(encoded_length(as_point(point)), encoded_size(c))
    return (3 * d - 1) * q


# -- interpolation -------------------------------------------------------------


class UnivariateSample(NamedTuple):
    abscissa: Fraction
    ordinate: Fraction


def lagrange_interpolate(
    samples: Sequence[Union[UnivariateSample, Tuple[RationalLike, RationalLike]]]
) -> List[Fraction]:
    """Coefficients (ascending) of the unique polynomial of degree below
    ``len(samples)`` through all samples.

    Builds the master polynomial ``Z(t) = prod (t - t_j)`` once and divides out
    each ``(t - t_i)`` synthetically, so the whole batch costs O(k^2).

    Raises:
        DuplicateAbscissaError: two samples share an abscissa.

    """
    if not samples:
        raise ValueError("interpolation needs at least one sample")
    xs = [as_rational(s[0]) for s in samples]
    ys = [as_rational(s[1]) for s in samples]
    seen = set()
    for x in xs:
        if x in seen:
            raise errors.DuplicateAbscissaError(abscissa=x)
        seen.add(x)

    k = len(xs)
    # master polynomial, ascending coefficients
    master = [Fraction(1)]
    for x in xs:
        nxt = [Fraction(0)] * (len(master) + 1)
        for i, a in enumerate(master):
            nxt[i + 1] += a
            nxt[i] -= x * a
        master = nxt

    out = [Fraction(0)] * k
    for xi, yi in zip(xs, ys):
        if not yi:
            continue
        # synthetic division of master by (t - xi), highest degree first
        quotient = [Fraction(0)] * k
        carry = Fraction(0)
        for deg in range(k, 0, -1):
            carry = master[deg] + carry * xi
            quotient[deg - 1] = carry
        denom = Fraction(0)
        for a in reversed(quotient):
            denom = denom * xi + a
        scale = yi / denom
        for i, a in enumerate(quotient):
            out[i] += scale * a
    return out


def polyval(coefficients: Sequence[Fraction], t: RationalLike) -> Fraction:
    """Horner evaluation of an ascending coefficient list."""
    t = as_rational(t)
    acc = Fraction(0)
    for a in reversed(coefficients):
        acc = acc * t + a
    return acc


# -- rational to integer reduction ---------------------------------------------


@dataclass(frozen=True)
class ReductionTrace:
    """Intermediate data of :func:`eval_via_integer_reduction`."""

    common_denominator: int
    scaled_point: Tuple[int, ...]
    degree: int
    samples: Tuple[UnivariateSample, ...]
    traces: Tuple[EvalTrace, ...]
    coefficients: Tuple[Fraction, ...]
    value: Fraction

    @property
    def max_bitwidth_seen(self) -> int:
        return max(t.max_bitwidth_seen for t in self.traces)


def integer_reduction(
    c: Circuit,
    point: Sequence[RationalLike],
    degree: Optional[int] = None,
    multilinear: bool = False,
) -> ReductionTrace:
    """Full trace of the rational-to-integer reduction.

    Args:
        c (Circuit):
            Circuit to evaluate.
        point (Sequence):
            Rational point ``(a_1/b_1, ..., a_n/b_n)``.
        degree (Optional[int]):
            Bound on the output's total degree in the inputs; defaults to the
            bound from :func:`formal_degree`.
        multilinear (bool):
            The circuit is certified multilinear, so ``n_vars`` also bounds
            the degree.

    """
    point = _checked_point(c, point)
    d = formal_degree(c).input_degree_bound if degree is None else degree
    if multilinear:
        d = min(d, c.n_vars)
    d = max(d, 0)

    common = 1
    for v in point:
        common *= v.denominator
    scaled = tuple(int(v * common) for v in point)

    evaluator = Evaluator(c)
    samples, traces = [], []
    for t in range(1, d + 2):
        vals = evaluator.values([t * s for s in scaled])
        trace = EvalTrace(
            value=Fraction(vals[c.output]),
            max_bitwidth_seen=max(bitwidth(v) for v in vals),
            node_count_evaluated=len(vals),
        )
        traces.append(trace)
        samples.append(UnivariateSample(Fraction(t), trace.value))

    try:
        coefficients = lagrange_interpolate(samples)
    except errors.DuplicateAbscissaError as e:
        raise errors.InternalError(msg=str(e), nm="integer-reduction") from e

    value = sum(
        (a / Fraction(common) ** k for k, a in enumerate(coefficients)), Fraction(0)
    )
    return ReductionTrace(
        common_denominator=common,
        scaled_point=scaled,
        degree=d,
        samples=tuple(samples),
        traces=tuple(traces),
        coefficients=tuple(coefficients),
        value=value,
    )


def eval_via_integer_reduction(
    c: Circuit,
    point: Sequence[RationalLike],
    degree: Optional[int] = None,
    multilinear: bool = False,
) -> Fraction:
    """Evaluates at a rational point using integer-point evaluations only.

    With ``D = prod b_i`` and ``c_i = a_i * D / b_i``, samples
    ``f(t) = p(t * c)`` at ``t = 1..d+1``, interpolates ``f`` and returns
    ``sum_k f_k * D^-k``.

    """
    return integer_reduction(c, point, degree=degree, multilinear=multilinear).value
