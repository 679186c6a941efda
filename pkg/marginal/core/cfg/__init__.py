"""
Full configuration object model; represents a parsed ``marginal.toml`` file.
"""
__all__ = [
    "Base",
    "Limits",
    "Profiles",
    "Sampling",
    "Output",
]
from .base import Base
from .limits import Limits, Profiles
from .sampling import Sampling
from .output import Output
