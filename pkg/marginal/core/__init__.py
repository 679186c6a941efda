"""
``marginal`` lives in ``marginal.core`` to keep from cluttering
intellisense/autocomplete while interacting with the API.

"""
# isort: skip_file
# fmt: off
from .base import Generic
from .configuration import Configuration
from .circuit import (
    Circuit,
    CircuitBuilder,
    parse_circuit,
    serialize_circuit,
    validate,
)
from .degree import formal_degree, check_syntactic_multilinearity
from .evaluation import (
    eval_direct,
    eval_integer,
    integer_reduction,
    eval_via_integer_reduction,
    lagrange_interpolate,
)
from .analysis import Certificate, certify, check_semantic_multilinearity, expand_sparse
from .evidence import EvidenceString, VirtualEvidence
from .query import (
    HammingProfile,
    mar,
    hmar,
    hmar_profile,
    vmar,
    ve_marginal,
    ve_posterior,
    ve_hmar_profile,
)
from .multilinear import (
    coefficients_from_table,
    network_circuit_syntactic,
    network_eval,
    table_from_circuit,
)
from .affine import (
    GF2System,
    XorFormula,
    FaffInstance,
    gf2_eliminate,
    count_solutions,
    faff_mar,
    reduce_kones_to_hmar,
)
from .dnnf import NNF, import_dnnf, parse_nnf
from .report import Report
from .request import QueryRequest
from marginal.core import errors, cfg, utils
from .paths import DIR_PKG_DATA, DEFAULTS_PATH, EXAMPLE_CIRCUIT_PATH


__all__ = [
    # core object model
    "Generic",
    "Configuration",
    "Circuit",
    "CircuitBuilder",
    "Certificate",
    "EvidenceString",
    "VirtualEvidence",
    "HammingProfile",
    "GF2System",
    "XorFormula",
    "FaffInstance",
    "NNF",
    "Report",
    "QueryRequest",

    # circuits
    "parse_circuit",
    "serialize_circuit",
    "validate",
    "formal_degree",
    "check_syntactic_multilinearity",
    "check_semantic_multilinearity",
    "certify",
    "expand_sparse",

    # evaluation and queries
    "eval_direct",
    "eval_integer",
    "integer_reduction",
    "eval_via_integer_reduction",
    "lagrange_interpolate",
    "mar",
    "hmar",
    "hmar_profile",
    "vmar",
    "ve_marginal",
    "ve_posterior",
    "ve_hmar_profile",

    # multilinear tools
    "table_from_circuit",
    "coefficients_from_table",
    "network_eval",
    "network_circuit_syntactic",

    # affine
    "gf2_eliminate",
    "count_solutions",
    "faff_mar",
    "reduce_kones_to_hmar",

    # d-DNNF
    "parse_nnf",
    "import_dnnf",

    # parsed `marginal.toml` objects
    "cfg",

    # error/exception handling
    "errors",

    # file paths
    "DIR_PKG_DATA",
    "DEFAULTS_PATH",
    "EXAMPLE_CIRCUIT_PATH",

    # other
    "utils",
]
