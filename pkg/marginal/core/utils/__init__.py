"""
Console and parsing utilities shared across ``marginal.core``.
"""
from .console import Console
from . import parsing

__all__ = ["Console", "parsing"]
