"""
Evidence for marginalization queries.

-   :class:`EvidenceString`: a word over ``{0, 1, *}``; fixed coordinates and
    marginalized ones
-   :class:`VirtualEvidence`: per-coordinate nonnegative weights
    ``(alpha_i, alpha_bar_i)`` scaling ``x_i = 1`` and ``x_i = 0`` respectively

"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Tuple

from . import errors
from .rational import RationalLike, as_rational, format_rational, parse_rational

ZERO, ONE, STAR = "0", "1", "*"


@dataclass(frozen=True)
class EvidenceString:
    """Evidence word; ``entries[i]`` is one of '0', '1', '*'."""

    entries: Tuple[str, ...]

    def __post_init__(self):
        for pos, e in enumerate(self.entries):
            if e not in (ZERO, ONE, STAR):
                raise errors.EvidenceError(
                    msg="evidence entries are 0, 1 or *", nm=repr(e), position=pos
                )

    @classmethod
    def parse(cls, word: str) -> EvidenceString:
        return cls(tuple(word.strip()))

    @classmethod
    def stars(cls, n: int) -> EvidenceString:
        return cls((STAR,) * n)

    @classmethod
    def from_assignment(cls, x: int, n: int) -> EvidenceString:
        """All-fixed evidence for the boolean point whose bit i is x_i."""
        return cls(tuple(ONE if x >> i & 1 else ZERO for i in range(n)))

    @classmethod
    def coerce(cls, value) -> EvidenceString:
        if isinstance(value, EvidenceString):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(tuple(str(v) for v in value))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def __getitem__(self, item: int) -> str:
        return self.entries[item]

    def __str__(self):
        return "".join(self.entries)

    @property
    def ones(self) -> int:
        return self.entries.count(ONE)

    @property
    def n_stars(self) -> int:
        return self.entries.count(STAR)

    @property
    def fixed_mask(self) -> int:
        return sum(1 << i for i, e in enumerate(self.entries) if e != STAR)

    @property
    def ones_mask(self) -> int:
        return sum(1 << i for i, e in enumerate(self.entries) if e == ONE)

    def consistent(self, x: int) -> bool:
        """True if the boolean point ``x`` (bit i is x_i) agrees with every
        fixed entry."""
        return x & self.fixed_mask == self.ones_mask

    def check_length(self, n: int, nm: str = "evidence") -> EvidenceString:
        if len(self) != n:
            raise errors.EvidenceLengthError(expected=n, received=len(self), nm=nm)
        return self

    def with_entry(self, index: int, value: str) -> EvidenceString:
        entries = list(self.entries)
        entries[index] = value
        return EvidenceString(tuple(entries))


@dataclass(frozen=True)
class VirtualEvidence:
    """Per-coordinate weights; coordinate i contributes
    ``alpha_i * x_i + alpha_bar_i * (1 - x_i)``.

    Weights are nonnegative and at least one of each pair is positive.

    """

    pairs: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pairs = tuple((as_rational(a), as_rational(b)) for a, b in self.pairs)
        for pos, (a, b) in enumerate(pairs):
            if a < 0 or b < 0:
                raise errors.EvidenceError(
                    msg="virtual-evidence weights must be nonnegative",
                    nm=_pair_str(a, b),
                    position=pos,
                )
            if a == 0 and b == 0:
                raise errors.EvidenceError(
                    msg="at least one weight of each pair must be positive",
                    nm=_pair_str(a, b),
                    position=pos,
                )
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def parse(cls, text: str) -> VirtualEvidence:
        """Parses ``a/b:c/d,...``; one ``alpha:alpha_bar`` pair per coordinate."""
        pairs = []
        for pos, item in enumerate(t.strip() for t in text.split(",")):
            alpha, sep, alpha_bar = item.partition(":")
            if not sep:
                raise errors.EvidenceError(
                    msg="expected '<alpha>:<alpha_bar>'", nm=item, position=pos
                )
            try:
                pairs.append((parse_rational(alpha), parse_rational(alpha_bar)))
            except ValueError as e:
                raise errors.EvidenceError(msg=str(e), nm=item, position=pos) from e
        return cls(tuple(pairs))

    @classmethod
    def unit(cls, n: int) -> VirtualEvidence:
        return cls(((Fraction(1), Fraction(1)),) * n)

    @classmethod
    def of(cls, pairs: Iterable[Tuple[RationalLike, RationalLike]]) -> VirtualEvidence:
        return cls(tuple(pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __getitem__(self, item: int) -> Tuple[Fraction, Fraction]:
        return self.pairs[item]

    def __str__(self):
        return ",".join(_pair_str(a, b) for a, b in self.pairs)

    def check_length(self, n: int) -> VirtualEvidence:
        if len(self) != n:
            raise errors.EvidenceLengthError(
                expected=n, received=len(self), nm="virtual evidence"
            )
        return self

    def weight(self, x: int) -> Fraction:
        """``prod_i (alpha_i x_i + alpha_bar_i (1 - x_i))`` at boolean ``x``."""
        w = Fraction(1)
        for i, (a, b) in enumerate(self.pairs):
            w *= a if x >> i & 1 else b
            if not w:
                break
        return w

    def compose(self, other: VirtualEvidence) -> VirtualEvidence:
        """Both observations at once; composition is commutative.

        Raises:
            EvidenceError: a coordinate where the composed weights are both zero.

        """
        if len(other) != len(self):
            raise errors.EvidenceLengthError(
                expected=len(self), received=len(other), nm="virtual evidence"
            )
        return VirtualEvidence(
            tuple((a1 * a2, b1 * b2) for (a1, b1), (a2, b2) in zip(self, other))
        )


def _pair_str(a: Fraction, b: Fraction) -> str:
    return f"{format_rational(a)}:{format_rational(b)}"


def hard_evidence(m: EvidenceString) -> VirtualEvidence:
    """Virtual evidence equivalent to fixing the entries of ``m``:
    (1, 0) for ones, (0, 1) for zeros, (1, 1) for stars."""
    table = {ONE: (1, 0), ZERO: (0, 1), STAR: (1, 1)}
    return VirtualEvidence.of(table[e] for e in m)


def consistent_points(m: EvidenceString) -> Iterator[int]:
    """Every boolean point agreeing with ``m``, in increasing order."""
    free = [i for i, e in enumerate(m) if e == STAR]
    base = m.ones_mask
    for combo in range(1 << len(free)):
        x = base
        for j, i in enumerate(free):
            if combo >> j & 1:
                x |= 1 << i
        yield x


def resolve_evidence(
    m: Optional[object], n: int, nm: str = "evidence"
) -> EvidenceString:
    """Coerces ``m`` (word, sequence or EvidenceString; None means all
    stars) and checks its length against ``n``."""
    if m is None:
        return EvidenceString.stars(n)
    return EvidenceString.coerce(m).check_length(n, nm=nm)