"""
Exact sparse polynomials and truth tables.

-   :class:`SparsePoly`: general sparse polynomial, monomials as exponent tuples
-   :class:`SparseMultilinearPoly`: multilinear polynomial, monomials as subset
    bitmasks
-   :class:`NetworkPoly`: coefficients of ``prod_{i in S} x_i prod_{i not in S} xbar_i``
-   :class:`TruthTable`: the 2^n values of a function on {0,1}^n

All coefficients are :class:`fractions.Fraction`; zero coefficients are never
stored.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

from .rational import RationalLike, as_point, as_rational, format_rational

Exponent = Tuple[int, ...]


def _drop_zeros(terms: Mapping) -> Dict:
    return {k: Fraction(v) for k, v in terms.items() if v != 0}


def subset_str(mask: int, n: int, names: str = "x") -> str:
    """``x1x3`` style rendering of a subset (1-based, as in the literature)."""
    return "".join(f"{names}{i + 1}" for i in range(n) if mask >> i & 1)


def network_monomial(mask: int, n: int) -> str:
    """``x1~x2x3`` style rendering: x_i for members of the subset, ~x_i otherwise."""
    return "".join(f"x{i + 1}" if mask >> i & 1 else f"~x{i + 1}" for i in range(n))


def exponent_str(e: Exponent) -> str:
    return "".join(f"x{i + 1}" if a == 1 else f"x{i + 1}^{a}" for i, a in enumerate(e) if a)


def bits(mask: int, n: int) -> str:
    """Bitstring of ``mask`` with x_1 first."""
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# -- general sparse ------------------------------------------------------------


class SparsePoly:
    """Sparse polynomial in ``n`` variables with arbitrary exponents.

    Args:
        n (int):
            Number of variables (exponent tuple length).
        terms (Mapping[Exponent, Fraction]):
            Coefficient per exponent tuple.

    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[Exponent, RationalLike]] = None):
        self.n = n
        self.terms: Dict[Exponent, Fraction] = _drop_zeros(terms or {})

    @classmethod
    def constant(cls, n: int, value: RationalLike) -> SparsePoly:
        return cls(n, {(0,) * n: as_rational(value)})

    @classmethod
    def variable(cls, n: int, index: int) -> SparsePoly:
        e = [0] * n
        e[index] = 1
        return cls(n, {tuple(e): Fraction(1)})

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseMultilinearPoly):
            other = other.to_sparse()
        return isinstance(other, SparsePoly) and (self.n, self.terms) == (
            other.n,
            other.terms,
        )

    def add(self, other: SparsePoly, weight: Fraction = Fraction(1)) -> SparsePoly:
        """``self + weight * other``."""
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + weight * c
        return SparsePoly(self.n, out)

    def mul(self, other: SparsePoly) -> SparsePoly:
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self.n, out)

    @property
    def total_degree(self) -> int:
        """Largest total degree over stored monomials; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    @property
    def is_multilinear(self) -> bool:
        return all(a <= 1 for e in self.terms for a in e)

    def first_nonlinear(self) -> Optional[Tuple[int, Exponent]]:
        """``(variable, monomial)`` of the first monomial with an exponent > 1."""
        for e in sorted(self.terms):
            for i, a in enumerate(e):
                if a > 1:
                    return i, e
        return None

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        point = as_point(point)
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, a in zip(point, e):
                if a:
                    term *= x ** a
            total += term
        return total

    def to_multilinear(self) -> SparseMultilinearPoly:
        if not self.is_multilinear:
            raise ValueError("polynomial has a variable of degree > 1")
        return SparseMultilinearPoly(
            self.n,
            {sum(1 << i for i, a in enumerate(e) if a): c for e, c in self.terms.items()},
        )

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        """Terms ordered by total degree, then by exponents."""
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-a for a in e))):
            yield e, self.terms[e]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = exponent_str(e)
            parts.append(f"{format_rational(c)}{'*' + mono if mono else ''}")
        return " + ".join(parts)

    def __repr__(self):
        return f"marginal.SparsePoly(n={self.n}, terms={len(self.terms)})"


# -- multilinear ---------------------------------------------------------------


@dataclass(frozen=True)
class SparseMultilinearPoly:
    """``sum_S c_S prod_{i in S} x_i`` with subsets as bitmasks."""

    n: int
    terms: Mapping[int, Fraction]

    def __post_init__(self):
        terms = _drop_zeros(self.terms)
        bad = [s for s in terms if not 0 <= s < 1 << self.n]
        if bad:
            raise ValueError(f"subset mask {bad[0]} outside 2^{self.n}")
        object.__setattr__(self, "terms", terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return other == self
        return isinstance(other, SparseMultilinearPoly) and (self.n, self.terms) == (
            other.n,
            other.terms,
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items()))))

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, mask: int) -> Fraction:
        return self.terms.get(mask, Fraction(0))

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        point = as_point(point)
        total = Fraction(0)
        for s, c in self.terms.items():
            term = c
            for i in range(self.n):
                if s >> i & 1:
                    term *= point[i]
            total += term
        return total

    def to_sparse(self) -> SparsePoly:
        return SparsePoly(
            self.n,
            {tuple(s >> i & 1 for i in range(self.n)): c for s, c in self.terms.items()},
        )

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        """Terms ordered by degree, then by subset."""
        for s in sorted(self.terms, key=lambda s: (popcount(s), s)):
            yield s, self.terms[s]

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{format_rational(c)}{'*' + subset_str(s, self.n) if s else ''}"
            for s, c in self.items()
        )


@dataclass(frozen=True)
class NetworkPoly:
    """``sum_S p(v_S) prod_{i in S} x_i prod_{i not in S} xbar_i``."""

    n: int
    terms: Mapping[int, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "terms", _drop_zeros(self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items()))))

    def evaluate(self, x: Sequence[RationalLike], xbar: Sequence[RationalLike]) -> Fraction:
        x, xbar = as_point(x), as_point(xbar)
        total = Fraction(0)
        for s, c in self.terms.items():
            term = c
            for i in range(self.n):
                term *= x[i] if s >> i & 1 else xbar[i]
                if not term:
                    break
            total += term
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{format_rational(self.terms[s])}*{network_monomial(s, self.n)}"
            if self.n
            else format_rational(self.terms[s])
            for s in sorted(self.terms, key=lambda s: (popcount(s), s))
        )


@dataclass(frozen=True)
class TruthTable:
    """Function values on {0,1}^n; bit i of the index is x_i."""

    n: int
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(as_rational(v) for v in self.values)
        if len(values) != 1 << self.n:
            raise ValueError(f"table over {self.n} variables needs {1 << self.n} values")
        object.__setattr__(self, "values", values)

    def __getitem__(self, x: int) -> Fraction:
        return self.values[x]

    def __len__(self) -> int:
        return len(self.values)

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))
