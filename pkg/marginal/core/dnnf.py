"""
d-DNNF import.

Reads the c2d NNF interchange format::

    c <comment>
    nnf <v> <e> <n>
    L <lit>                  literal; -j is the negation of variable j
    A <c> <i1> ... <ic>      AND of c earlier nodes; 'A 0' is true
    O <j> <c> <i1> ... <ic>  OR of c earlier nodes deciding on j; 'O 0 0' is false

Nodes are numbered from 0 in order of appearance and the last one is the
root.  A decomposable NNF translates to a syntactically multilinear circuit
node by node; when the producer's ORs are also deterministic, that circuit
computes the formula's model indicator on ``{0,1}^n``.

"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from . import errors
from .configuration import Configuration
from .circuit import Circuit, CircuitBuilder, parse_circuit
from .utils.parsing import content_lines

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Literal:
    id: int
    lit: int
    line: Optional[int] = None

    kind = "L"

    @property
    def children(self) -> Tuple[int, ...]:
        return ()

    @property
    def var(self) -> int:
        return abs(self.lit)


@dataclass(frozen=True)
class And:
    id: int
    children: Tuple[int, ...]
    line: Optional[int] = None

    kind = "A"


@dataclass(frozen=True)
class Or:
    id: int
    decision: int
    children: Tuple[int, ...]
    line: Optional[int] = None

    kind = "O"


NNFNode = Union[Literal, And, Or]


@dataclass(frozen=True)
class NNF:
    """A parsed NNF; variables are 1-based as in the file.

    Attributes:
        n_vars (int):
            Variable count from the header.
        nodes (Tuple[NNFNode, ...]):
            Nodes in file order; the last is the root.
        declared_nodes (int), declared_edges (int):
            Counts from the header, kept for diagnostics.

    """

    n_vars: int
    nodes: Tuple[NNFNode, ...]
    declared_nodes: int = 0
    declared_edges: int = 0

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def edge_count(self) -> int:
        return sum(len(n.children) for n in self.nodes)

    def variable_sets(self) -> List[int]:
        """Bitmask of the variables below each node (bit j-1 for variable j)."""
        masks: List[int] = []
        for node in self.nodes:
            if isinstance(node, Literal):
                masks.append(1 << (node.var - 1))
            else:
                m = 0
                for c in node.children:
                    m |= masks[c]
                masks.append(m)
        return masks

    def reachable(self) -> List[bool]:
        reached = [False] * len(self.nodes)
        stack = [self.root]
        while stack:
            i = stack.pop()
            if not reached[i]:
                reached[i] = True
                stack.extend(self.nodes[i].children)
        return reached

    def check_decomposable(self):
        """Raises :class:`DecomposabilityError` for the first AND whose
        children share a variable."""
        masks = self.variable_sets()
        for node in self.nodes:
            if not isinstance(node, And):
                continue
            seen = 0
            for c in node.children:
                shared = seen & masks[c]
                if shared:
                    raise errors.DecomposabilityError(
                        gate=node.id, shared=(shared & -shared).bit_length(), line=node.line
                    )
                seen |= masks[c]

    def satisfied_by(self, x: int) -> bool:
        """Boolean value of the formula at ``x`` (bit j-1 is variable j)."""
        vals: List[bool] = []
        for node in self.nodes:
            if isinstance(node, Literal):
                bit = bool(x >> (node.var - 1) & 1)
                vals.append(bit if node.lit > 0 else not bit)
            elif isinstance(node, And):
                vals.append(all(vals[c] for c in node.children))
            else:
                vals.append(any(vals[c] for c in node.children))
        return vals[self.root]

    def model_count(self, limit: Optional[int] = None) -> int:
        """Models by enumeration of ``{0,1}^n``.

        Raises:
            CapacityError: ``n_vars`` above the table limit.

        """
        limit = Configuration().limits.table_n if limit is None else limit
        if self.n_vars > limit:
            raise errors.CapacityError(
                limit="table-n", allowed=limit, requested=self.n_vars
            )
        return sum(1 for x in range(1 << self.n_vars) if self.satisfied_by(x))

    def to_circuit(self) -> Circuit:
        """Literal x becomes Var, literal -x becomes ``1 - x``, AND becomes a
        product, OR a unit-weight sum; 'A 0' and 'O 0 0' become the constants
        1 and 0.  Circuit variable i is NNF variable i + 1."""
        b = CircuitBuilder(self.n_vars)
        negations: Dict[int, int] = {}
        new: List[int] = []
        for node in self.nodes:
            if isinstance(node, Literal):
                v = b.var(node.var - 1)
                if node.lit < 0:
                    if node.var not in negations:
                        negations[node.var] = b.sum([(1, b.const(1)), (-1, v)])
                    v = negations[node.var]
                new.append(v)
            elif not node.children:
                new.append(b.const(1 if isinstance(node, And) else 0))
            elif isinstance(node, And):
                new.append(b.prod(new[c] for c in node.children))
            else:
                new.append(b.add(*(new[c] for c in node.children)))
        return b.build(new[self.root])


# -- parsing -------------------------------------------------------------------


def is_nnf_text(text: str) -> bool:
    """True if the first line that is not a ``c`` comment starts with ``nnf``."""
    for _, tokens in content_lines(text, comment=""):
        if tokens[0] != "c":
            return tokens[0] == "nnf"
    return False


def _ints(tokens: List[str], lineno: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as e:
        raise errors.NNFFormatError(
            msg="non-numeric argument", line=lineno, nm=" ".join(tokens)
        ) from e


def parse_nnf(text: str) -> NNF:
    """Parses NNF text.

    Raises:
        NNFFormatError: naming the line and the offending element.

    """
    header: Optional[Tuple[int, int, int]] = None
    nodes: List[NNFNode] = []
    for lineno, tokens in content_lines(text, comment=""):
        tag = tokens[0]
        if tag == "c":
            continue
        if header is None:
            if tag != "nnf" or len(tokens) != 4:
                raise errors.NNFFormatError(
                    msg="expected header 'nnf <v> <e> <n>'",
                    line=lineno,
                    nm=" ".join(tokens),
                )
            v, e, n = _ints(tokens[1:], lineno)
            header = (v, e, n)
            continue

        nid = len(nodes)
        args = _ints(tokens[1:], lineno)
        if tag == "L":
            if len(args) != 1:
                raise errors.NNFFormatError(
                    msg="literal line takes one argument", line=lineno, nm=" ".join(tokens)
                )
            if not 1 <= abs(args[0]) <= header[2]:
                raise errors.NNFFormatError(
                    msg=f"literal outside 1..{header[2]}", line=lineno, nm=str(args[0])
                )
            nodes.append(Literal(nid, args[0], line=lineno))
            continue
        if tag == "A":
            decision, counted = None, args
        elif tag == "O":
            if not args:
                raise errors.NNFFormatError(
                    msg="OR line needs a decision variable", line=lineno, nm="O"
                )
            decision, counted = args[0], args[1:]
        else:
            raise errors.NNFFormatError(
                msg="expected an L, A or O line", line=lineno, nm=tag
            )
        if not counted or counted[0] != len(counted) - 1:
            raise errors.NNFFormatError(
                msg="child count does not match the listed children",
                line=lineno,
                nm=" ".join(tokens),
            )
        children = tuple(counted[1:])
        for c in children:
            if not 0 <= c < nid:
                raise errors.NNFFormatError(
                    msg=f"child {c} is not an earlier node", line=lineno, nm=str(c)
                )
        nodes.append(
            And(nid, children, line=lineno)
            if decision is None
            else Or(nid, decision, children, line=lineno)
        )

    if header is None:
        raise errors.NNFFormatError(msg="no 'nnf' header found", line=1)
    if not nodes:
        raise errors.NNFFormatError(msg="no nodes", nm="nnf")
    v, e, n = header
    nnf = NNF(n_vars=n, nodes=tuple(nodes), declared_nodes=v, declared_edges=e)
    if v != len(nodes):
        logger.warning("NNF header declares %d nodes; found %d", v, len(nodes))
    if e != nnf.edge_count:
        logger.warning("NNF header declares %d edges; found %d", e, nnf.edge_count)
    return nnf


def import_dnnf(text: str) -> Circuit:
    """NNF text to a syntactically multilinear :class:`Circuit`.

    Decomposability is verified; determinism is the producer's contract.

    Raises:
        NNFFormatError: malformed input.
        DecomposabilityError: an AND gate with children sharing a variable.

    """
    nnf = parse_nnf(text)
    nnf.check_decomposable()
    unreached = [i for i, r in enumerate(nnf.reachable()) if not r]
    if unreached:
        logger.warning(
            "pruned %d NNF node(s) unreachable from the root: %s",
            len(unreached),
            ", ".join(str(i) for i in unreached),
        )
    return nnf.to_circuit()


def read_circuit_text(text: str) -> Circuit:
    """Circuit text, or NNF text (detected from its header) imported."""
    if is_nnf_text(text):
        return import_dnnf(text)
    return parse_circuit(text)
