"""
[limits] and [profiles.*] sections of **marginal.toml**.
"""
from __future__ import annotations

from typing import Dict, Optional

from pydantic import Field

from .base import Base


class Limits(Base):
    """[limits]

    Capacity limits; every operation whose cost is exponential in some input
    size refuses to run beyond its limit with a
    :class:`~marginal.core.errors.CapacityError`.

    """

    # fmt: off
    exhaustive_n: int = Field(
        default=14, alias="exhaustive-n", ge=0,
        description="Largest n_vars for the exhaustive multilinearity check.",
    )
    table_n: int = Field(
        default=20, alias="table-n", ge=0,
        description="Largest n_vars for truth tables and brute-force oracles.",
    )
    monomials: int = Field(
        default=200_000, alias="monomials", ge=1,
        description="Most live monomials at any node during sparse expansion.",
    )
    solution_dim: int = Field(
        default=24, alias="solution-dim", ge=0,
        description="Largest affine solution-space dimension to enumerate.",
    )
    kones_n: int = Field(
        default=24, alias="kones-n", ge=0,
        description="Largest n for brute-force k-ONES counting.",
    )
    faff_n: int = Field(
        default=6, alias="faff-n", ge=1,
        description="Largest parameter n for f_aff instances.",
    )
    # fmt: on

    def with_overrides(
        self,
        limit_n: Optional[int] = None,
        limit_dim: Optional[int] = None,
        limit_monomials: Optional[int] = None,
    ) -> Limits:
        """Applies the command-line capacity overrides."""
        return self.overridden(
            exhaustive_n=limit_n,
            table_n=limit_n,
            kones_n=limit_n,
            solution_dim=limit_dim,
            monomials=limit_monomials,
        )


class Profiles(Base):
    """[profiles]

    Named partial overrides of [limits], selected by ``MARGINAL_PROFILE``.

    """

    class Config(Base.Config):
        extra = "allow"

    def resolve(self, name: str, base: Limits) -> Limits:
        profiles: Dict[str, Dict] = self.dict()
        if name == "default":
            return base
        if name not in profiles:
            raise KeyError(name)
        merged = {**base.dict(by_alias=True), **profiles[name]}
        return Limits(**merged)

    def names(self):
        return sorted(["default", *self.dict()])
