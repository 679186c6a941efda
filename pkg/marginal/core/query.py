"""
Marginalization queries over circuits certified to compute a multilinear
polynomial ``p``, the unique multilinear representation of ``f: {0,1}^n -> Q``.

Every query reduces to exact evaluations of the circuit:

-   :func:`vmar`: ``p(point)`` at any rational point
-   :func:`mar`: ``2^#stars * p(u)`` with stars set to 1/2
-   :func:`hmar` / :func:`hmar_profile`: one batch of ``n + 1`` evaluations
    along ``t``, interpolated; coefficient k is the weight-k restricted sum
-   :func:`ve_marginal` / :func:`ve_posterior` / :func:`ve_hmar_profile`:
    the same under per-coordinate virtual evidence

"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from . import errors
from .analysis import Certificate, require_certificate
from .circuit import Circuit
from .evaluation import Evaluator, UnivariateSample, eval_direct, lagrange_interpolate, polyval
from .evidence import ONE, STAR, ZERO, EvidenceString, VirtualEvidence, resolve_evidence
from .multilinear import network_circuit_syntactic, network_eval
from .rational import RationalLike

logger = logging.getLogger(__name__)

Evidence = Union[EvidenceString, str, None]

HALF = Fraction(1, 2)

ROUTES = ("evaluation", "network", "network-circuit")


@dataclass(frozen=True)
class HammingProfile:
    """Weight-stratified sums over ``X_m``.

    Attributes:
        evidence (EvidenceString):
            The evidence the profile was computed for.
        coefficients (Tuple[Fraction, ...]):
            ``n + 1`` entries; entry k is the sum over points of ``X_m`` with
            exactly k ones.  Read as ascending coefficients they are the
            generating polynomial ``q(t)``.

    """

    evidence: EvidenceString
    coefficients: Tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coefficients)

    @property
    def n(self) -> int:
        return len(self.coefficients) - 1

    @property
    def support(self) -> range:
        """Weights that can carry mass: ``#ones(m) .. #ones(m) + #stars(m)``."""
        ones = self.evidence.ones
        return range(ones, ones + self.evidence.n_stars + 1)

    def total(self) -> Fraction:
        return sum(self.coefficients, Fraction(0))

    def at(self, t: RationalLike) -> Fraction:
        """``q(t)``."""
        return polyval(self.coefficients, t)


def _check_support(profile: HammingProfile, certificate: Certificate) -> HammingProfile:
    support = profile.support
    for k, v in enumerate(profile.coefficients):
        if v and k not in support:
            raise errors.InternalError(
                msg=(
                    f"weight {k} carries mass {v} outside {support.start}.."
                    f"{support.stop - 1}; '{certificate.kind}' certificate does "
                    f"not hold"
                ),
                nm="hamming-profile",
            )
    return profile


# -- MAR / VMAR ----------------------------------------------------------------


def vmar(
    c: Circuit,
    point: Sequence[RationalLike],
    certificate: Optional[Certificate] = None,
) -> Fraction:
    """``p(point)`` for any rational point, negative coordinates included."""
    require_certificate(c, certificate)
    return eval_direct(c, point)


def mar(
    c: Circuit, m: Evidence = None, certificate: Optional[Certificate] = None
) -> Fraction:
    """``sum_{x in X_m} f(x)``, unnormalized.

    Args:
        c (Circuit):
            Circuit certified multilinear.
        m (Evidence):
            Evidence word over {0, 1, *}; None marginalizes everything.
        certificate (Optional[Certificate]):
            Certificate covering ``c``; a syntactic one is attempted when
            omitted.

    """
    require_certificate(c, certificate)
    m = resolve_evidence(m, c.n_vars)
    u = [HALF if e == STAR else Fraction(int(e)) for e in m]
    return 2 ** m.n_stars * Evaluator(c)(u)


# -- HMAR ----------------------------------------------------------------------


def hmar(
    c: Circuit, m: Evidence, k: int, certificate: Optional[Certificate] = None
) -> Fraction:
    """``sum_{x in X_m, |x| = k} f(x)``.

    Raises:
        WeightRangeError: ``k`` outside ``0..n``.  A k inside that range but
            outside the support of ``m`` yields 0.

    """
    if k < 0 or k > c.n_vars:
        raise errors.WeightRangeError(k=k, n=c.n_vars)
    return hmar_profile(c, m, certificate=certificate)[k]


def hmar_profile(
    c: Circuit,
    m: Evidence = None,
    certificate: Optional[Certificate] = None,
    route: str = "evaluation",
) -> HammingProfile:
    """All ``n + 1`` weight-restricted sums from one interpolation batch.

    Args:
        c (Circuit):
            Circuit certified multilinear.
        m (Evidence):
            Evidence word; None marginalizes everything.
        certificate (Optional[Certificate]):
            Certificate covering ``c``.
        route (str):
            How ``q(t)`` is sampled:

            -   'evaluation' (default): ``t^#ones (t+1)^#stars p(u(t))`` with
                stars at ``t/(t+1)``
            -   'network': the network polynomial through :func:`network_eval`
                with 0 -> (0, 1), 1 -> (t, 0) and * -> (t, 1)
            -   'network-circuit': as 'network', through the circuit of
                :func:`network_circuit_syntactic`

    """
    if route not in ROUTES:
        raise errors.UsageError(
            msg=f"unknown route; expected one of {', '.join(ROUTES)}", nm=route
        )
    certificate = require_certificate(c, certificate)
    m = resolve_evidence(m, c.n_vars)
    if route == "evaluation":
        return ve_hmar_profile(
            c, VirtualEvidence.unit(c.n_vars), m, certificate=certificate
        )

    sample = _network_sampler(c, m, certificate, compiled=route == "network-circuit")
    samples = [
        UnivariateSample(Fraction(t), sample(Fraction(t))) for t in range(1, c.n_vars + 2)
    ]
    profile = HammingProfile(m, tuple(lagrange_interpolate(samples)))
    return _check_support(profile, certificate)


def _network_sampler(c: Circuit, m: EvidenceString, certificate: Certificate, compiled: bool):
    def halves(t: Fraction) -> Tuple[List[Fraction], List[Fraction]]:
        x = [Fraction(0) if e == ZERO else t for e in m]
        xbar = [Fraction(0) if e == ONE else Fraction(1) for e in m]
        return x, xbar

    if not compiled:
        return lambda t: network_eval(c, *halves(t), certificate=certificate)

    evaluator = Evaluator(network_circuit_syntactic(c))

    def sample(t: Fraction) -> Fraction:
        x, xbar = halves(t)
        return evaluator([v for pair in zip(x, xbar) for v in pair])

    return sample


# -- virtual evidence ----------------------------------------------------------


def ve_marginal(
    c: Circuit,
    w: VirtualEvidence,
    m: Evidence = None,
    certificate: Optional[Certificate] = None,
) -> Fraction:
    """``sum_{x in X_m} f(x) prod_i (alpha_i x_i + alpha_bar_i (1 - x_i))``.

    Computed as ``prod_i c_i * p(u)``, coordinate by coordinate:

    =====  ======================  ============================
    m_i    c_i                     u_i
    =====  ======================  ============================
    1      alpha_i                 1
    0      alpha_bar_i             0
    \\*     alpha_i + alpha_bar_i   alpha_i / (alpha_i + alpha_bar_i)
    =====  ======================  ============================

    A zero ``c_i`` returns 0 without evaluating the circuit.

    """
    require_certificate(c, certificate)
    m = resolve_evidence(m, c.n_vars)
    w.check_length(c.n_vars)

    scale = Fraction(1)
    u: List[Fraction] = []
    for e, (a, b) in zip(m, w):
        if e == ONE:
            scale *= a
            u.append(Fraction(1))
        elif e == ZERO:
            scale *= b
            u.append(Fraction(0))
        else:
            scale *= a + b
            u.append(a / (a + b))
        if not scale:
            return Fraction(0)
    return scale * Evaluator(c)(u)


def ve_posterior(
    c: Circuit,
    w: VirtualEvidence,
    m: Evidence = None,
    certificate: Optional[Certificate] = None,
) -> Fraction:
    """``ve_marginal(c, w, m) / ve_marginal(c, w, all stars)``.

    Raises:
        UndefinedPosteriorError: the normalizer is zero.

    """
    certificate = require_certificate(c, certificate)
    normalizer = ve_marginal(c, w, None, certificate=certificate)
    if not normalizer:
        raise errors.UndefinedPosteriorError(nm="normalizer")
    return ve_marginal(c, w, m, certificate=certificate) / normalizer


def ve_hmar_profile(
    c: Circuit,
    w: VirtualEvidence,
    m: Evidence = None,
    certificate: Optional[Certificate] = None,
) -> HammingProfile:
    """Hamming profile of the reweighted function.

    Samples ``q(t) = prod_i c_i(t) * p(u(t))`` at ``t = 1..n+1`` where

    -   m_i = 1: ``c_i = alpha_i t``, ``u_i = 1``
    -   m_i = 0: ``c_i = alpha_bar_i``, ``u_i = 0``
    -   m_i = \\*: ``c_i = alpha_i t + alpha_bar_i``,
        ``u_i = alpha_i t / (alpha_i t + alpha_bar_i)``

    and interpolates.  Unit weights give :func:`hmar_profile`.

    """
    certificate = require_certificate(c, certificate)
    m = resolve_evidence(m, c.n_vars)
    w.check_length(c.n_vars)
    evaluator = Evaluator(c)

    samples = []
    for t in range(1, c.n_vars + 2):
        scale = Fraction(1)
        u: List[Fraction] = []
        for e, (a, b) in zip(m, w):
            if e == ONE:
                scale *= a * t
                u.append(Fraction(1))
            elif e == ZERO:
                scale *= b
                u.append(Fraction(0))
            else:
                s = a * t + b
                scale *= s
                u.append(a * t / s)
        value = scale * evaluator(u) if scale else Fraction(0)
        samples.append(UnivariateSample(Fraction(t), value))

    profile = HammingProfile(m, tuple(lagrange_interpolate(samples)))
    return _check_support(profile, certificate)
