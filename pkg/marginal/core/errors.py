"""
marginal exception classes.
"""
from __future__ import annotations

from typing import Any, Optional


class Error(Exception):
    """Base Generic exception class.

    Args:
        msg (Optional[str]):
            Error message.
        errno (Optional[int]):
            Error number.
        nm (Optional[str]):
            Name of the input element the error is about (a node id, a
            token, a file name, a limit name).

    """

    def __init__(
        self,
        msg: Optional[str] = None,
        errno: Optional[int] = None,
        nm: Optional[str] = None,
    ):
        super().__init__(msg)
        self.msg = (msg or str()).strip("\n")
        self.errno = errno
        self.nm = nm

    def __str__(self):
        """Default error message."""
        return f"{self.msg}" if self.msg else f"Exception encountered"

    @staticmethod
    def format_error_args(
        prefix: Optional[str] = None,
        sep: Optional[str] = None,
        lines: Optional[int] = None,
        _filter: bool = True,
        **kwargs: Any,
    ) -> str:
        """Formats a dictionary of arguments into an aligned/indented error msg.

        Placed below primary msg such that a primary msg of 'This is a __ error.'
        combined with the returned value from this method provided with
        kwargs={'argument-description': 'argument-value', 'arg2-desc': 'arg2-value'}
        would produce the following error message:

            ```
            This is a ClassName error.
                argument-description: argument-value
                           arg2-desc: arg2-value
            ```

        Args:
            prefix (str):
                Character to prefix bullets with; defaults to '\t'.
            sep (str):
                Character to separate arguments/values with; defaults to ':'.
            lines (int):
                Number of lines to include between arguments; defaults to 1.
            _filter (bool):
                Indicator of whether to filter out key/value pairs that contain
                empty values; defaults to `True`.
            **kwargs:
                Argument keys and values to be converted into a list.

        Returns (str):
            Formatted arguments as a string.

        """
        prefix = prefix or "\t"
        line_sep = "\n" * (lines or 1)
        sep = sep or ": "

        if _filter:
            kwargs = {k: v for k, v in kwargs.items() if v is not None and v != ""}
        if not kwargs:
            return str()

        longest = max(len(k) for k in kwargs)
        args = [f"{prefix}{k.rjust(longest)}{sep}{v}" for k, v in kwargs.items()]

        return line_sep.join(args)


class InternalError(Error):
    """Exceptions raised from an internal state that should not exist."""

    def __str__(self):
        """InternalError message."""
        str_args = self.format_error_args(
            **{"name": self.nm, "msg": self.msg, "errno": self.errno},
        )
        return f"An internal exception was raised.\n{str_args}"


# -- text formats --------------------------------------------------------------


class FormatError(Error):
    """Base class for errors in one of the line-oriented text formats.

    Args:
        msg (str):
            What is wrong with the input.
        line (Optional[int]):
            1-based line number of the offending line.
        nm (Optional[str]):
            The offending token.

    """

    fmt: str = "input"

    def __init__(
        self,
        msg: Optional[str] = None,
        line: Optional[int] = None,
        nm: Optional[str] = None,
        errno: Optional[int] = None,
    ):
        super().__init__(msg=msg, errno=errno, nm=nm)
        self.line = line

    def __str__(self):
        str_args = self.format_error_args(
            **{"line": self.line, "element": self.nm, "msg": self.msg}
        )
        return f"Malformed {self.fmt}.\n{str_args}"


class CircuitFormatError(FormatError):
    """Circuit text that violates the circuit format."""

    fmt = "circuit"


class UndefinedNodeError(CircuitFormatError):
    """A child id that no node line ever defines."""


class DuplicateNodeError(CircuitFormatError):
    """Two node lines with the same id."""


class ForwardReferenceError(CircuitFormatError):
    """A child id that is defined, but only after the referencing node."""


class ZeroWeightError(CircuitFormatError):
    """A sum edge written with weight 0."""


class MissingOutputError(CircuitFormatError):
    """Circuit text without an ``output`` line."""


class TableFormatError(FormatError):
    """Truth-table text that violates the table format."""

    fmt = "truth table"


class XorFormatError(FormatError):
    """XOR-CSP text that violates the xorcsp format."""

    fmt = "xorcsp formula"


class NNFFormatError(FormatError):
    """NNF text that violates the NNF interchange format."""

    fmt = "NNF"


class DecomposabilityError(NNFFormatError):
    """An AND gate whose children share a variable."""

    def __init__(
        self,
        gate: int,
        shared: int,
        line: Optional[int] = None,
    ):
        super().__init__(
            msg=f"children of AND gate {gate} share variable {shared}",
            line=line,
            nm=str(gate),
        )
        self.gate = gate
        self.shared = shared


# -- capacity / certificates ---------------------------------------------------


class CapacityError(Error):
    """A configured capacity limit would be exceeded.

    Args:
        limit (str):
            Name of the limit as written in ``marginal.toml`` (e.g. 'table-n').
        allowed (int):
            The configured value of the limit.
        requested (int):
            The size that was asked for.
        where (Optional[str]):
            Where in the input the limit was hit (e.g. 'node 12').

    """

    def __init__(
        self,
        limit: str,
        allowed: int,
        requested: int,
        where: Optional[str] = None,
    ):
        super().__init__(msg=f"{limit} exceeded", nm=limit)
        self.limit = limit
        self.allowed = allowed
        self.requested = requested
        self.where = where

    def __str__(self):
        str_args = self.format_error_args(
            **{
                "limit": self.limit,
                "allowed": self.allowed,
                "requested": self.requested,
                "at": self.where,
            }
        )
        return f"Capacity limit exceeded.\n{str_args}"


class UncertifiedCircuitError(Error):
    """A query was asked of a circuit with no multilinearity certificate.

    Args:
        missing (str):
            The certificate that could not be produced (e.g. 'syntactic').
        violator (Optional[int]):
            First product node failing the syntactic check, if known.

    """

    def __init__(
        self,
        missing: str,
        violator: Optional[int] = None,
        msg: Optional[str] = None,
    ):
        super().__init__(
            msg=msg
            or "supply a semantic certificate (check-ml) or trust the circuit",
            nm=missing,
        )
        self.missing = missing
        self.violator = violator

    def __str__(self):
        str_args = self.format_error_args(
            **{
                "missing certificate": self.missing,
                "violating product node": self.violator,
                "hint": self.msg,
            }
        )
        return f"Circuit is not certified multilinear.\n{str_args}"


class NotSyntacticallyMultilinearError(UncertifiedCircuitError):
    """The syntactic network-circuit transform was asked of a circuit that
    fails the syntactic check."""

    def __init__(self, violator: Optional[int] = None):
        super().__init__(
            missing="syntactic",
            violator=violator,
            msg="use network_eval for finally multilinear circuits",
        )


# -- evidence / queries --------------------------------------------------------


class EvidenceError(Error):
    """Malformed evidence word or virtual-evidence list."""

    def __init__(
        self,
        msg: Optional[str] = None,
        nm: Optional[str] = None,
        position: Optional[int] = None,
    ):
        super().__init__(msg=msg, nm=nm)
        self.position = position

    def __str__(self):
        str_args = self.format_error_args(
            **{"element": self.nm, "position": self.position, "msg": self.msg}
        )
        return f"Invalid evidence.\n{str_args}"


class UsageError(Error):
    """Inputs that are individually valid but inconsistent with each other;
    exit code 2 at the command line."""

    def __str__(self):
        str_args = self.format_error_args(**{"element": self.nm, "msg": self.msg})
        return f"Usage error.\n{str_args}"


class EvidenceLengthError(UsageError):
    """Evidence length differs from the number of variables."""

    def __init__(self, expected: int, received: int, nm: Optional[str] = None):
        super().__init__(
            msg=f"expected {expected} entries, received {received}",
            nm=nm or "evidence",
        )
        self.expected = expected
        self.received = received


class WeightRangeError(UsageError):
    """Hamming weight outside 0..n."""

    def __init__(self, k: int, n: int):
        super().__init__(msg=f"k={k} outside 0..{n}", nm="k")
        self.k = k
        self.n = n


class DuplicateAbscissaError(Error):
    """Two interpolation samples share an abscissa."""

    def __init__(self, abscissa: Any):
        super().__init__(msg=f"abscissa {abscissa} appears more than once")
        self.abscissa = abscissa


class UndefinedPosteriorError(Error):
    """The posterior normalizer is zero."""

    def __str__(self):
        return (
            "Posterior is undefined: the virtual-evidence normalizer "
            "(all coordinates marginalized) is zero."
        )


marginal_errors = (
    Error,
    InternalError,
    FormatError,
    CircuitFormatError,
    UndefinedNodeError,
    DuplicateNodeError,
    ForwardReferenceError,
    ZeroWeightError,
    MissingOutputError,
    TableFormatError,
    XorFormatError,
    NNFFormatError,
    DecomposabilityError,
    CapacityError,
    UncertifiedCircuitError,
    NotSyntacticallyMultilinearError,
    EvidenceError,
    UsageError,
    EvidenceLengthError,
    WeightRangeError,
    DuplicateAbscissaError,
    UndefinedPosteriorError,
)

__all__ = [e.__name__ for e in marginal_errors] + ["marginal_errors"]
