"""
The request object model behind every command-line invocation.
"""
from __future__ import annotations

from pathlib import Path
from typing import Dict, FrozenSet, Optional

from pydantic import Field, root_validator, validator

from . import errors
from .cfg import Base

COMMON = frozenset(
    {
        "command",
        "trust",
        "limit_n",
        "limit_dim",
        "limit_monomials",
        "profile",
        "config",
        "decimal",
        "porcelain",
        "verbose",
    }
)

# fmt: off
OPTIONS: Dict[str, FrozenSet[str]] = {
    "validate":          frozenset({"circuit", "circuit_text"}),
    "degree":            frozenset({"circuit", "circuit_text"}),
    "check-ml":          frozenset({"circuit", "circuit_text", "mode"}),
    "eval":              frozenset({"circuit", "circuit_text", "point", "eval_mode"}),
    "mar":               frozenset({"circuit", "circuit_text", "evidence"}),
    "hmar":              frozenset({"circuit", "circuit_text", "evidence", "k"}),
    "profile":           frozenset({"circuit", "circuit_text", "evidence", "weights", "route"}),
    "vmar":              frozenset({"circuit", "circuit_text", "point"}),
    "ve":                frozenset({"circuit", "circuit_text", "evidence", "weights", "posterior"}),
    "network":           frozenset({"circuit", "circuit_text", "x", "xbar", "out"}),
    "expand":            frozenset({"circuit", "circuit_text", "constants_as_variables"}),
    "interpolate-table": frozenset({"table"}),
    "faff":              frozenset({"n", "evidence"}),
    "reduce":            frozenset({"formula", "k", "verify"}),
    "count-affine":      frozenset({"formula", "evidence", "histogram"}),
    "oracle":            frozenset({"circuit", "circuit_text", "random", "seed", "n", "queries"}),
    "import":            frozenset({"circuit", "circuit_text", "out"}),
}

REQUIRED: Dict[str, FrozenSet[str]] = {
    "eval":              frozenset({"point"}),
    "hmar":              frozenset({"k"}),
    "vmar":              frozenset({"point"}),
    "ve":                frozenset({"weights"}),
    "interpolate-table": frozenset({"table"}),
    "faff":              frozenset({"n"}),
    "reduce":            frozenset({"formula", "k"}),
    "count-affine":      frozenset({"formula"}),
}
# fmt: on

COMMANDS = tuple(OPTIONS)

NEEDS_CIRCUIT = frozenset(
    c for c, opts in OPTIONS.items() if "circuit" in opts and c != "oracle"
)


class QueryRequest(Base):
    """One command and its options, checked for consistency.

    Options a command does not take are refused (e.g. ``k`` outside
    ``hmar`` and ``reduce``), as are missing required ones.

    """

    # fmt: off
    command: str = Field(..., alias="command")
    circuit: Optional[Path] = Field(default=None, alias="circuit")
    circuit_text: Optional[str] = Field(default=None, alias="circuit-text")
    table: Optional[Path] = Field(default=None, alias="table")
    formula: Optional[Path] = Field(default=None, alias="formula")

    evidence: Optional[str] = Field(default=None, alias="evidence")
    k: Optional[int] = Field(default=None, alias="k")
    weights: Optional[str] = Field(default=None, alias="weights")
    point: Optional[str] = Field(default=None, alias="point")
    x: Optional[str] = Field(default=None, alias="x")
    xbar: Optional[str] = Field(default=None, alias="xbar")
    n: Optional[int] = Field(default=None, alias="n", ge=0)
    out: Optional[Path] = Field(default=None, alias="out")

    mode: Optional[str] = Field(default=None, alias="mode")
    eval_mode: Optional[str] = Field(default=None, alias="eval-mode")
    route: Optional[str] = Field(default=None, alias="route")
    posterior: bool = Field(default=False, alias="posterior")
    constants_as_variables: bool = Field(default=False, alias="constants-as-variables")
    verify: bool = Field(default=False, alias="verify")
    histogram: bool = Field(default=False, alias="histogram")
    random: Optional[int] = Field(default=None, alias="random", ge=1)
    seed: Optional[int] = Field(default=None, alias="seed")
    queries: Optional[int] = Field(default=None, alias="queries", ge=1)

    trust: bool = Field(default=False, alias="trust")
    limit_n: Optional[int] = Field(default=None, alias="limit-n", ge=0)
    limit_dim: Optional[int] = Field(default=None, alias="limit-dim", ge=0)
    limit_monomials: Optional[int] = Field(default=None, alias="limit-monomials", ge=1)
    profile: Optional[str] = Field(default=None, alias="profile")
    config: Optional[Path] = Field(default=None, alias="config")
    decimal: bool = Field(default=False, alias="decimal")
    porcelain: bool = Field(default=False, alias="porcelain")
    verbose: int = Field(default=0, alias="verbose", ge=0)
    # fmt: on

    @validator("command")
    def known_command(cls, v):
        if v not in OPTIONS:
            raise ValueError(f"unknown command '{v}'; expected one of {', '.join(COMMANDS)}")
        return v

    @root_validator(skip_on_failure=True)
    def consistent_with_command(cls, values: Dict) -> Dict:
        command = values["command"]
        allowed = OPTIONS[command] | COMMON
        given = {k for k, v in values.items() if v is not None and v is not False}
        stray = sorted(given - allowed)
        if stray:
            raise ValueError(
                f"'{command}' does not take {', '.join(s.replace('_', '-') for s in stray)}"
            )
        missing = sorted(REQUIRED.get(command, frozenset()) - given)
        if missing:
            raise ValueError(
                f"'{command}' requires {', '.join(m.replace('_', '-') for m in missing)}"
            )
        has_circuit = values.get("circuit") is not None or values.get("circuit_text") is not None
        if command in NEEDS_CIRCUIT and not has_circuit:
            raise ValueError(f"'{command}' requires a circuit")
        if command == "oracle" and not has_circuit and values.get("random") is None:
            raise ValueError("'oracle' requires a circuit or --random")
        if command == "network" and (values.get("x") is None) != (values.get("xbar") is None):
            raise ValueError("'network' takes --x and --xbar together")
        return values

    def read_circuit_text(self) -> str:
        """Inline circuit text, or the contents of the circuit file."""
        if self.circuit_text is not None:
            return self.circuit_text
        return read_text(self.circuit, nm="circuit")


def read_text(path: Optional[Path], nm: str) -> str:
    """Reads ``path``; unreadable paths are usage errors."""
    if path is None:
        raise errors.UsageError(msg=f"no {nm} file given", nm=nm)
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise errors.UsageError(msg=f"cannot read {nm} file: {e.strerror}", nm=str(path)) from e
    except UnicodeDecodeError as e:
        raise errors.UsageError(msg=f"{nm} file is not utf-8 text", nm=str(path)) from e
