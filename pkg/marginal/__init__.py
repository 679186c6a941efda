"""
Exact marginalization queries over multilinear arithmetic circuits.
"""
# isort: skip_file
# fmt: off
__version__ = "0.1.0"
__author__ = "marginal developers"
__application__ = "marginal"

__all__ = [
    # meta
    "__version__",
    "__author__",
    "__application__",

    # API
    "Configuration",
    "Circuit", "parse_circuit",
    "certify",
    "mar", "hmar", "hmar_profile", "vmar", "ve_marginal", "ve_posterior",
    "EvidenceString", "VirtualEvidence",
]

from .core import (
    Configuration,
    Circuit, parse_circuit,
    certify,
    mar, hmar, hmar_profile, vmar, ve_marginal, ve_posterior,
    EvidenceString, VirtualEvidence,
    errors,
    utils,
)
