"""
[output] section of **marginal.toml**.
"""
from __future__ import annotations

from pydantic import Field

from .base import Base


class Output(Base):
    """[output]"""

    # fmt: off
    decimal_places: int = Field(default=12, alias="decimal-places", ge=0)
    tablefmt: str = Field(default="simple", alias="tablefmt")
    # fmt: on
