"""
Arithmetic-circuit IR, its text format and structural validation.

A :class:`Circuit` is an immutable, topologically numbered list of nodes with a
single output.  Four node kinds exist:

-   :class:`Var`: input variable ``x_i``
-   :class:`Const`: a rational constant
-   :class:`Sum`: weighted sum ``w_1 * c_1 + ... + w_k * c_k`` (nonzero weights)
-   :class:`Prod`: product of its children

Text format::

    circuit <n_vars>
    node <id> var <i>
    node <id> const <a>/<b>
    node <id> sum [<w>:]<child> ...
    node <id> prod <child> ...
    output <id>

"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import errors
from .base import Generic
from .rational import (
    RationalLike,
    as_rational,
    bitwidth,
    format_rational,
    parse_rational,
)
from .utils.parsing import content_lines, is_natural

logger = logging.getLogger(__name__)


# -- node kinds ----------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    id: int
    index: int

    kind = "var"

    @property
    def children(self) -> Tuple[int, ...]:
        return ()


@dataclass(frozen=True)
class Const:
    id: int
    value: Fraction

    kind = "const"

    @property
    def children(self) -> Tuple[int, ...]:
        return ()


@dataclass(frozen=True)
class Sum:
    id: int
    edges: Tuple[Tuple[Fraction, int], ...]

    kind = "sum"

    @property
    def children(self) -> Tuple[int, ...]:
        return tuple(c for _, c in self.edges)

    @property
    def weights(self) -> Tuple[Fraction, ...]:
        return tuple(w for w, _ in self.edges)


@dataclass(frozen=True)
class Prod:
    id: int
    factors: Tuple[int, ...]

    kind = "prod"

    @property
    def children(self) -> Tuple[int, ...]:
        return self.factors


Node = Union[Var, Const, Sum, Prod]


@dataclass(frozen=True)
class Circuit:
    """An arithmetic circuit over ``n_vars`` inputs.

    Attributes:
        n_vars (int):
            Number of input variables.
        nodes (Tuple[Node, ...]):
            Nodes in topological order; ``nodes[i].id == i`` in a valid circuit.
        output (int):
            Id of the output node.

    Construction does not validate; use :func:`validate` for a report or
    :func:`parse_circuit`/:meth:`CircuitBuilder.build` for checked circuits.

    """

    n_vars: int
    nodes: Tuple[Node, ...]
    output: int

    def __len__(self) -> int:
        return len(self.nodes)

    def __getitem__(self, item: int) -> Node:
        return self.nodes[item]

    @property
    def size(self) -> int:
        """Number of nodes plus number of edges."""
        return len(self.nodes) + sum(len(n.children) for n in self.nodes)

    def variable_sets(self) -> List[int]:
        """Bitmask of the variables reachable below each node."""
        masks: List[int] = []
        for node in self.nodes:
            if isinstance(node, Var):
                masks.append(1 << node.index)
            else:
                m = 0
                for c in node.children:
                    m |= masks[c]
                masks.append(m)
        return masks

    def __str__(self):
        return f"marginal.Circuit(n_vars={self.n_vars}, nodes={len(self.nodes)})"


# -- construction --------------------------------------------------------------


class CircuitBuilder(Generic):
    """Appends nodes with dense ids; memoizes inputs and constants.

    Example::

        b = CircuitBuilder(n_vars=2)
        out = b.prod([b.var(0), b.sum([(1, b.const(1)), (-1, b.var(1))])])
        c = b.build(out)

    """

    def __init__(self, n_vars: int):
        super().__init__()
        self.n_vars = n_vars
        self.nodes: List[Node] = []
        self._vars: Dict[int, int] = {}
        self._consts: Dict[Fraction, int] = {}

    def var(self, index: int) -> int:
        if not 0 <= index < self.n_vars:
            raise ValueError(f"variable {index} outside 0..{self.n_vars - 1}")
        if index not in self._vars:
            self._vars[index] = self._append(Var(len(self.nodes), index))
        return self._vars[index]

    def const(self, value: RationalLike) -> int:
        value = as_rational(value)
        if value not in self._consts:
            self._consts[value] = self._append(Const(len(self.nodes), value))
        return self._consts[value]

    def sum(self, edges: Iterable[Tuple[RationalLike, int]]) -> int:
        edges = tuple((as_rational(w), int(c)) for w, c in edges)
        if not edges:
            raise ValueError("sum node needs at least one child")
        if any(w == 0 for w, _ in edges):
            raise ValueError("sum edge weights must be nonzero")
        self._check_children(c for _, c in edges)
        return self._append(Sum(len(self.nodes), edges))

    def prod(self, factors: Iterable[int]) -> int:
        factors = tuple(int(c) for c in factors)
        if not factors:
            raise ValueError("product node needs at least one child")
        self._check_children(factors)
        return self._append(Prod(len(self.nodes), factors))

    def add(self, *children: int) -> int:
        """Unit-weight sum."""
        return self.sum((1, c) for c in children)

    def mul(self, *children: int) -> int:
        return self.prod(children)

    def build(self, output: int, prune_unreachable: bool = True) -> Circuit:
        c = Circuit(n_vars=self.n_vars, nodes=tuple(self.nodes), output=output)
        return prune(c, warn=False) if prune_unreachable else c

    def _check_children(self, children: Iterable[int]):
        for c in children:
            if not 0 <= c < len(self.nodes):
                raise ValueError(f"child {c} is not an existing node")

    def _append(self, node: Node) -> int:
        self.nodes.append(node)
        return node.id


# -- text format ---------------------------------------------------------------


def parse_circuit(text: str, prune_unreachable: bool = True) -> Circuit:
    """Parses circuit text into a validated :class:`Circuit`.

    Args:
        text (str):
            Circuit text; ``#`` starts a comment.
        prune_unreachable (bool):
            Drop nodes that the output does not reach (with a warning);
            defaults to `True`.

    Raises:
        CircuitFormatError: or one of its subclasses, naming the line and the
            offending element.

    """
    lines = list(content_lines(text))
    if not lines:
        raise errors.CircuitFormatError(msg="empty input", line=1)

    lineno, tokens = lines[0]
    if tokens[0] != "circuit" or len(tokens) != 2 or not is_natural(tokens[1]):
        raise errors.CircuitFormatError(
            msg="expected header 'circuit <n_vars>'", line=lineno, nm=" ".join(tokens)
        )
    n_vars = int(tokens[1])

    # first pass: where is every id defined
    defined_at: Dict[int, int] = {}
    body = lines[1:]
    output_line: Optional[Tuple[int, List[str]]] = None
    for lineno, tokens in body:
        if output_line is not None:
            raise errors.CircuitFormatError(
                msg="content after the output line", line=lineno, nm=tokens[0]
            )
        if tokens[0] == "output":
            output_line = (lineno, tokens)
            continue
        if tokens[0] != "node" or len(tokens) < 3:
            raise errors.CircuitFormatError(
                msg="expected 'node <id> <kind> ...' or 'output <id>'",
                line=lineno,
                nm=tokens[0],
            )
        nid = _parse_id(tokens[1], lineno)
        if nid in defined_at:
            raise errors.DuplicateNodeError(
                msg=f"node {nid} already defined on line {defined_at[nid]}",
                line=lineno,
                nm=str(nid),
            )
        defined_at[nid] = lineno

    if output_line is None:
        raise errors.MissingOutputError(msg="no 'output <id>' line", line=lines[-1][0])

    nodes: List[Node] = []
    for lineno, tokens in body:
        if tokens[0] == "output":
            break
        nid = int(tokens[1])
        if nid != len(nodes):
            raise errors.CircuitFormatError(
                msg=f"node ids must be dense and in order; expected {len(nodes)}",
                line=lineno,
                nm=str(nid),
            )
        nodes.append(_parse_node(nid, tokens[2], tokens[3:], lineno, n_vars, defined_at))

    lineno, tokens = output_line
    if len(tokens) != 2:
        raise errors.CircuitFormatError(
            msg="expected 'output <id>'", line=lineno, nm=" ".join(tokens)
        )
    out = _parse_id(tokens[1], lineno)
    if out not in defined_at:
        raise errors.UndefinedNodeError(
            msg=f"output node {out} is not defined", line=lineno, nm=str(out)
        )

    c = Circuit(n_vars=n_vars, nodes=tuple(nodes), output=out)
    return prune(c) if prune_unreachable else c


def _parse_id(token: str, lineno: int) -> int:
    if not is_natural(token):
        raise errors.CircuitFormatError(
            msg="node ids are non-negative integers", line=lineno, nm=token
        )
    return int(token)


def _parse_child(
    token: str, nid: int, lineno: int, defined_at: Dict[int, int]
) -> int:
    child = _parse_id(token, lineno)
    if child not in defined_at:
        raise errors.UndefinedNodeError(
            msg=f"node {nid} references undefined node {child}",
            line=lineno,
            nm=str(child),
        )
    if child >= nid:
        raise errors.ForwardReferenceError(
            msg=f"node {nid} references node {child}, defined on line {defined_at[child]}",
            line=lineno,
            nm=str(child),
        )
    return child


def _parse_node(
    nid: int,
    kind: str,
    args: List[str],
    lineno: int,
    n_vars: int,
    defined_at: Dict[int, int],
) -> Node:
    if kind == "var":
        if len(args) != 1 or not is_natural(args[0]):
            raise errors.CircuitFormatError(
                msg="expected 'var <index>'", line=lineno, nm=" ".join(args) or kind
            )
        index = int(args[0])
        if index >= n_vars:
            raise errors.CircuitFormatError(
                msg=f"variable index outside 0..{n_vars - 1}", line=lineno, nm=args[0]
            )
        return Var(nid, index)

    if kind == "const":
        if len(args) != 1:
            raise errors.CircuitFormatError(
                msg="expected 'const <a>/<b>'", line=lineno, nm=" ".join(args) or kind
            )
        return Const(nid, _rational(args[0], lineno))

    if kind == "sum":
        if not args:
            raise errors.CircuitFormatError(
                msg="sum node needs at least one child", line=lineno, nm=str(nid)
            )
        edges = []
        for token in args:
            w_token, _, c_token = token.rpartition(":")
            weight = _rational(w_token, lineno) if w_token else Fraction(1)
            if weight == 0:
                raise errors.ZeroWeightError(
                    msg=f"zero weight on an edge of sum node {nid}",
                    line=lineno,
                    nm=token,
                )
            edges.append((weight, _parse_child(c_token, nid, lineno, defined_at)))
        return Sum(nid, tuple(edges))

    if kind == "prod":
        if not args:
            raise errors.CircuitFormatError(
                msg="product node needs at least one child", line=lineno, nm=str(nid)
            )
        return Prod(nid, tuple(_parse_child(t, nid, lineno, defined_at) for t in args))

    raise errors.CircuitFormatError(
        msg="node kind must be one of var, const, sum, prod", line=lineno, nm=kind
    )


def _rational(token: str, lineno: int) -> Fraction:
    try:
        return parse_rational(token)
    except ValueError as e:
        raise errors.CircuitFormatError(msg=str(e), line=lineno, nm=token) from e


def serialize_circuit(c: Circuit) -> str:
    """Writes ``c`` in the circuit text format; rationals are written exactly."""
    lines = [f"circuit {c.n_vars}"]
    for node in c.nodes:
        if isinstance(node, Var):
            body = f"var {node.index}"
        elif isinstance(node, Const):
            body = f"const {format_rational(node.value)}"
        elif isinstance(node, Sum):
            body = "sum " + " ".join(
                str(child) if w == 1 else f"{format_rational(w)}:{child}"
                for w, child in node.edges
            )
        else:
            body = "prod " + " ".join(str(child) for child in node.factors)
        lines.append(f"node {node.id} {body}")
    lines.append(f"output {c.output}")
    return "\n".join(lines) + "\n"


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class Finding:
    check: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    """Pass/fail per structural invariant of a circuit."""

    findings: Tuple[Finding, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(f.passed for f in self.findings)

    def __getitem__(self, check: str) -> Finding:
        for f in self.findings:
            if f.check == check:
                return f
        raise KeyError(check)

    def __bool__(self):
        return self.ok


VALIDATION_CHECKS = (
    "dense-ids",
    "var-range",
    "arity",
    "topological-numbering",
    "nonzero-weights",
    "output-defined",
    "single-output",
    "reachability",
)


def validate(c: Circuit) -> ValidationReport:
    """Checks every structural invariant of ``c``; never raises."""
    n = len(c.nodes)
    problems: Dict[str, List[str]] = {k: [] for k in VALIDATION_CHECKS}

    for pos, node in enumerate(c.nodes):
        if node.id != pos:
            problems["dense-ids"].append(f"position {pos} holds node {node.id}")
        if isinstance(node, Var) and not 0 <= node.index < c.n_vars:
            problems["var-range"].append(f"node {node.id} reads x{node.index}")
        if isinstance(node, (Sum, Prod)) and not node.children:
            problems["arity"].append(f"node {node.id} has no children")
        for child in node.children:
            if not 0 <= child < pos:
                problems["topological-numbering"].append(
                    f"node {node.id} references node {child}"
                )
        if isinstance(node, Sum):
            for w, child in node.edges:
                if w == 0:
                    problems["nonzero-weights"].append(
                        f"node {node.id} edge to {child}"
                    )

    if not 0 <= c.output < n:
        problems["output-defined"].append(f"output {c.output} of {n} nodes")
    else:
        parents = [0] * n
        for node in c.nodes:
            for child in node.children:
                if 0 <= child < n:
                    parents[child] += 1
        sinks = [i for i in range(n) if parents[i] == 0]
        if sinks != [c.output]:
            problems["single-output"].append(
                "sinks " + ", ".join(str(s) for s in sinks)
            )
        reached = _reachable(c)
        missing = [i for i in range(n) if not reached[i]]
        if missing:
            problems["reachability"].append(
                "unreachable " + ", ".join(str(i) for i in missing)
            )

    return ValidationReport(
        findings=tuple(
            Finding(check=k, passed=not v, detail="; ".join(v))
            for k, v in problems.items()
        )
    )


def _reachable(c: Circuit) -> List[bool]:
    reached = [False] * len(c.nodes)
    stack = [c.output]
    while stack:
        i = stack.pop()
        if reached[i]:
            continue
        reached[i] = True
        stack.extend(ch for ch in c.nodes[i].children if 0 <= ch < len(c.nodes))
    return reached


def prune(c: Circuit, warn: bool = True) -> Circuit:
    """Drops nodes the output does not reach and renumbers densely."""
    reached = _reachable(c)
    if all(reached):
        return c
    dropped = [i for i, r in enumerate(reached) if not r]
    if warn:
        logger.warning(
            "pruned %d node(s) unreachable from output %d: %s",
            len(dropped),
            c.output,
            ", ".join(str(i) for i in dropped),
        )
    renumber: Dict[int, int] = {}
    nodes: List[Node] = []
    for node in c.nodes:
        if not reached[node.id]:
            continue
        nid = len(nodes)
        renumber[node.id] = nid
        nodes.append(_renumbered(node, nid, renumber))
    return Circuit(n_vars=c.n_vars, nodes=tuple(nodes), output=renumber[c.output])


def _renumbered(node: Node, nid: int, renumber: Dict[int, int]) -> Node:
    if isinstance(node, Var):
        return Var(nid, node.index)
    if isinstance(node, Const):
        return Const(nid, node.value)
    if isinstance(node, Sum):
        return Sum(nid, tuple((w, renumber[ch]) for w, ch in node.edges))
    return Prod(nid, tuple(renumber[ch] for ch in node.factors))


# -- transforms ----------------------------------------------------------------


def binarize(c: Circuit) -> Circuit:
    """Rewrites every node with more than two children as a balanced tree of
    binary nodes; the computed polynomial is unchanged.

    Edge weights stay on the leaves of each rebuilt sum tree, so inner edges
    carry weight 1.

    """
    b = CircuitBuilder(c.n_vars)
    new: List[int] = []
    for node in c.nodes:
        if isinstance(node, Var):
            new.append(b.var(node.index))
        elif isinstance(node, Const):
            new.append(b.const(node.value))
        elif isinstance(node, Sum):
            edges = [(w, new[ch]) for w, ch in node.edges]
            new.append(_balanced_sum(b, edges))
        else:
            new.append(_balanced_prod(b, [new[ch] for ch in node.factors]))
    return b.build(new[c.output])


def _balanced_sum(b: CircuitBuilder, edges: Sequence[Tuple[Fraction, int]]) -> int:
    if len(edges) <= 2:
        return b.sum(edges)
    mid = len(edges) // 2
    return b.add(_balanced_sum(b, edges[:mid]), _balanced_sum(b, edges[mid:]))


def _balanced_prod(b: CircuitBuilder, factors: Sequence[int]) -> int:
    if len(factors) <= 2:
        return b.prod(factors)
    mid = len(factors) // 2
    return b.mul(_balanced_prod(b, factors[:mid]), _balanced_prod(b, factors[mid:]))


def max_fan_in(c: Circuit) -> int:
    return max((len(n.children) for n in c.nodes), default=0)


def encoded_size(c: Circuit) -> int:
    """Bits needed to write ``c`` in a fixed binary encoding.

    Each node costs two tag bits plus the base-two length of every number it
    carries (variable index, constant, edge weights, child ids).

    """
    total = 0
    for node in c.nodes:
        total += 2
        if isinstance(node, Var):
            total += bitwidth(node.index)
        elif isinstance(node, Const):
            total += bitwidth(node.value.numerator) + bitwidth(node.value.denominator)
        elif isinstance(node, Sum):
            for w, ch in node.edges:
                total += bitwidth(w.numerator) + bitwidth(w.denominator) + bitwidth(ch)
        else:
            total += sum(bitwidth(ch) for ch in node.factors)
    return total
