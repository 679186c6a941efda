"""
[sampling] section of **marginal.toml**.
"""
from __future__ import annotations

import random

from pydantic import Field

from .base import Base


class Sampling(Base):
    """[sampling]

    Randomized identity testing of multilinearity: the number of independent
    trials, the range integer coordinates are drawn from, and the seed.

    """

    # fmt: off
    trials: int = Field(default=8, alias="trials", ge=1)
    coordinate_range: int = Field(default=2 ** 20, alias="coordinate-range", ge=2)
    seed: int = Field(default=0, alias="seed")
    # fmt: on

    def rng(self) -> random.Random:
        return random.Random(self.seed)
