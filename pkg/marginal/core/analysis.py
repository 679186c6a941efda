"""
Semantic analyses of a circuit's output polynomial: sparse expansion,
multilinearity checking and the certificates queries rely on.
"""
from __future__ import annotations

import enum
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from . import cfg, errors
from .configuration import Configuration
from .circuit import Circuit, Const, Sum, Var
from .degree import check_syntactic_multilinearity, formal_degree
from .evaluation import Evaluator
from .polynomial import Exponent, SparseMultilinearPoly, SparsePoly

logger = logging.getLogger(__name__)


# -- expansion -----------------------------------------------------------------


def _last_use(c: Circuit) -> List[int]:
    last = list(range(len(c.nodes)))
    for node in c.nodes:
        for ch in node.children:
            last[ch] = max(last[ch], node.id)
    last[c.output] = len(c.nodes)
    return last


def expand_sparse(
    c: Circuit,
    cap: Optional[int] = None,
    constants_as_variables: bool = False,
) -> Union[SparseMultilinearPoly, SparsePoly]:
    """Expands the output node into a sparse polynomial.

    Args:
        c (Circuit):
            Circuit to expand.
        cap (Optional[int]):
            Most monomials any node may hold; defaults to [limits] monomials.
        constants_as_variables (bool):
            Replace every constant node and every non-unit edge weight by a
            fresh variable; fresh variables are numbered after the inputs in
            node order.

    Returns:
        A :class:`SparseMultilinearPoly` when the result is multilinear in
        the inputs (and constants are kept), else a :class:`SparsePoly`.

    Raises:
        CapacityError: naming the node at which the cap was exceeded.

    """
    cap = Configuration().limits.monomials if cap is None else cap

    n = c.n_vars
    fresh: Dict[Tuple[int, int], int] = {}
    if constants_as_variables:
        for node in c.nodes:
            if isinstance(node, Const):
                fresh[(node.id, -1)] = n + len(fresh)
            elif isinstance(node, Sum):
                for pos, (w, _) in enumerate(node.edges):
                    if w != 1:
                        fresh[(node.id, pos)] = n + len(fresh)
    width = n + len(fresh)

    last = _last_use(c)
    polys: Dict[int, SparsePoly] = {}
    for node in c.nodes:
        if isinstance(node, Var):
            poly = SparsePoly.variable(width, node.index)
        elif isinstance(node, Const):
            poly = (
                SparsePoly.variable(width, fresh[(node.id, -1)])
                if constants_as_variables
                else SparsePoly.constant(width, node.value)
            )
        elif isinstance(node, Sum):
            poly = SparsePoly(width)
            for pos, (w, ch) in enumerate(node.edges):
                if constants_as_variables and w != 1:
                    z = SparsePoly.variable(width, fresh[(node.id, pos)])
                    poly = poly.add(z.mul(polys[ch]))
                else:
                    poly = poly.add(polys[ch], weight=w)
                _check_cap(poly, cap, node.id)
        else:
            poly = polys[node.factors[0]]
            for ch in node.factors[1:]:
                poly = poly.mul(polys[ch])
                _check_cap(poly, cap, node.id)
        _check_cap(poly, cap, node.id)
        polys[node.id] = poly
        for ch in set(node.children):
            if last[ch] == node.id:
                del polys[ch]

    result = polys[c.output]
    if not constants_as_variables and result.is_multilinear:
        return result.to_multilinear()
    return result


def _check_cap(poly: SparsePoly, cap: int, node_id: int):
    if len(poly) > cap:
        raise errors.CapacityError(
            limit="monomials", allowed=cap, requested=len(poly), where=f"node {node_id}"
        )


# -- semantic multilinearity ---------------------------------------------------


class Status(str, enum.Enum):
    MULTILINEAR = "multilinear"
    NOT_MULTILINEAR = "not_multilinear"
    PROBABLY_MULTILINEAR = "probably_multilinear"


@dataclass(frozen=True)
class MultilinearityVerdict:
    """Outcome of :func:`check_semantic_multilinearity`.

    Attributes:
        status (Status):
            The verdict.
        mode (str):
            'exhaustive' or 'randomized'.
        witness (Optional[int]):
            A variable in which the output has degree > 1.
        monomial (Optional[Exponent]):
            Offending monomial (exhaustive mode only).
        failure_bound (Optional[Fraction]):
            Probability bound that a non-multilinear output went undetected
            (randomized mode only).

    """

    status: Status
    mode: str
    witness: Optional[int] = None
    monomial: Optional[Exponent] = None
    failure_bound: Optional[Fraction] = None

    @property
    def is_multilinear(self) -> bool:
        return self.status is not Status.NOT_MULTILINEAR

    def __bool__(self):
        return self.is_multilinear


def check_semantic_multilinearity(
    c: Circuit,
    mode: str = "exhaustive",
    limits: Optional[cfg.Limits] = None,
    sampling: Optional[cfg.Sampling] = None,
    rng: Optional[random.Random] = None,
) -> MultilinearityVerdict:
    """Decides whether the output polynomial is multilinear.

    Args:
        c (Circuit):
            Circuit to check.
        mode (str):
            'exhaustive' expands the output and inspects every monomial;
            'randomized' tests finite differences at random integer points.
        limits (Optional[cfg.Limits]):
            Capacity limits; exhaustive mode requires
            ``n_vars <= exhaustive-n``.  Defaults to the limits of a freshly
            loaded :class:`~marginal.core.Configuration`, so the packaged
            marginal.toml, a user file and ``MARGINAL_PROFILE`` all apply.
        sampling (Optional[cfg.Sampling]):
            Trials, coordinate range and seed for randomized mode.
        rng (Optional[random.Random]):
            Random source; defaults to one seeded from ``sampling``.

    """
    limits = limits or Configuration().limits
    if mode == "exhaustive":
        return _exhaustive(c, limits)
    if mode == "randomized":
        sampling = sampling or Configuration().sampling
        return _randomized(c, sampling, rng or sampling.rng())
    raise ValueError(f"unknown mode '{mode}'")


def _exhaustive(c: Circuit, limits: cfg.Limits) -> MultilinearityVerdict:
    if c.n_vars > limits.exhaustive_n:
        raise errors.CapacityError(
            limit="exhaustive-n", allowed=limits.exhaustive_n, requested=c.n_vars
        )
    poly = expand_sparse(c, cap=limits.monomials)
    if isinstance(poly, SparseMultilinearPoly):
        return MultilinearityVerdict(Status.MULTILINEAR, mode="exhaustive")
    witness, monomial = poly.first_nonlinear()
    return MultilinearityVerdict(
        Status.NOT_MULTILINEAR, mode="exhaustive", witness=witness, monomial=monomial
    )


def _randomized(
    c: Circuit, sampling: cfg.Sampling, rng: random.Random
) -> MultilinearityVerdict:
    """Per variable i with formal degree d_i >= 2, the restriction
    g(a) = p(.., x_i = a, ..) is linear iff its forward differences of order
    2..d_i at 0 vanish.  Each difference is a polynomial of total degree at
    most D in the other inputs, so a nonzero one vanishes at a uniform point
    of [0, R)^n with probability at most D / R.
    """
    report = formal_degree(c)
    total = report.input_degree_bound
    evaluator = Evaluator(c)
    r = sampling.coordinate_range

    tested = 0
    for i, d_i in enumerate(report.per_variable_output_degree):
        if d_i < 2:
            continue
        tested += d_i - 1
        for _ in range(sampling.trials):
            point = [rng.randrange(r) for _ in range(c.n_vars)]
            samples = []
            for a in range(d_i + 1):
                point[i] = a
                samples.append(evaluator(point))
            for order, diff in enumerate(_forward_differences(samples)):
                if order >= 2 and diff != 0:
                    return MultilinearityVerdict(
                        Status.NOT_MULTILINEAR, mode="randomized", witness=i
                    )

    if not tested:
        return MultilinearityVerdict(
            Status.MULTILINEAR, mode="randomized", failure_bound=Fraction(0)
        )
    bound = min(Fraction(1), tested * Fraction(total, r) ** sampling.trials)
    return MultilinearityVerdict(
        Status.PROBABLY_MULTILINEAR, mode="randomized", failure_bound=bound
    )


def _forward_differences(values: List[Fraction]) -> List[Fraction]:
    """``[Δ^0 g(0), Δ^1 g(0), ..., Δ^k g(0)]`` for samples ``g(0..k)``."""
    out = []
    row = list(values)
    while row:
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return out


# -- certificates --------------------------------------------------------------


CERTIFICATE_KINDS = ("syntactic", "exhaustive", "randomized", "trusted")


@dataclass(frozen=True)
class Certificate:
    """Evidence that a circuit computes a multilinear polynomial.

    Attributes:
        circuit (Circuit):
            The certified circuit.
        kind (str):
            One of 'syntactic', 'exhaustive', 'randomized', 'trusted'.
        failure_bound (Fraction):
            Zero except for 'randomized' certificates.

    """

    circuit: Circuit
    kind: str
    failure_bound: Fraction = Fraction(0)

    def covers(self, c: Circuit) -> bool:
        return self.circuit is c or self.circuit == c

    def __str__(self):
        extra = f", failure-bound={self.failure_bound}" if self.failure_bound else ""
        return f"marginal.Certificate(kind='{self.kind}'{extra})"


def certify(
    c: Circuit,
    mode: str = "auto",
    limits: Optional[cfg.Limits] = None,
    sampling: Optional[cfg.Sampling] = None,
) -> Certificate:
    """Produces a multilinearity certificate or refuses.

    Args:
        c (Circuit):
            Circuit to certify.
        mode (str):
            'syntactic', 'exhaustive', 'randomized', 'trust' or 'auto'
            ('auto' tries syntactic, then exhaustive within limits).

    Raises:
        UncertifiedCircuitError: naming the certificate that could not be
            produced.

    """
    if mode == "trust":
        logger.warning("circuit trusted to be multilinear without a check")
        return Certificate(c, kind="trusted")

    if mode in ("syntactic", "auto"):
        check = check_syntactic_multilinearity(c)
        if check:
            return Certificate(c, kind="syntactic")
        limits = limits or Configuration().limits
        if mode == "syntactic" or c.n_vars > limits.exhaustive_n:
            raise errors.UncertifiedCircuitError(
                missing="syntactic", violator=check.violator
            )
        mode = "exhaustive"

    verdict = check_semantic_multilinearity(
        c, mode=mode, limits=limits, sampling=sampling
    )
    if not verdict:
        raise errors.UncertifiedCircuitError(
            missing=mode,
            msg=f"output has degree > 1 in x{verdict.witness + 1}",
        )
    return Certificate(
        c, kind=mode, failure_bound=verdict.failure_bound or Fraction(0)
    )


def require_certificate(
    c: Circuit, certificate: Optional[Certificate] = None
) -> Certificate:
    """Returns ``certificate`` if it covers ``c``, else a syntactic one.

    Raises:
        UncertifiedCircuitError: no certificate covers ``c``.

    """
    if certificate is None:
        return certify(c, mode="syntactic")
    if not certificate.covers(c):
        raise errors.UncertifiedCircuitError(
            missing=certificate.kind,
            msg="certificate was issued for a different circuit",
        )
    return certificate
