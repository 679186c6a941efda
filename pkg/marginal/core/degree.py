"""
Structural analyses of a circuit: formal degree and syntactic multilinearity.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .circuit import Circuit, Const, Prod, Sum, Var


@dataclass(frozen=True)
class DegreeReport:
    """Formal degrees, constants counted as fresh variables.

    Attributes:
        per_node_total_degree (Tuple[int, ...]):
            Degree bound of every node.
        output_total_degree (int):
            Degree bound of the output node.
        per_variable_output_degree (Tuple[int, ...]):
            Upper bound on the output's degree in each input variable.

    """

    per_node_total_degree: Tuple[int, ...]
    output_total_degree: int
    per_variable_output_degree: Tuple[int, ...]

    @property
    def input_degree_bound(self) -> int:
        """Bound on the output's total degree in the inputs alone."""
        return min(self.output_total_degree, sum(self.per_variable_output_degree))


def formal_degree(c: Circuit) -> DegreeReport:
    """Degrees by the syntactic recurrence.

    -   Var and Const: 1
    -   Sum: max over children of the child degree, plus 1 on edges whose
        weight differs from 1
    -   Prod: sum of child degrees

    """
    total: List[int] = []
    per_var: List[Tuple[int, ...]] = []
    zero = (0,) * c.n_vars
    for node in c.nodes:
        if isinstance(node, Var):
            total.append(1)
            d = list(zero)
            d[node.index] = 1
            per_var.append(tuple(d))
        elif isinstance(node, Const):
            total.append(1)
            per_var.append(zero)
        elif isinstance(node, Sum):
            total.append(
                max(total[ch] + (0 if w == 1 else 1) for w, ch in node.edges)
            )
            per_var.append(
                tuple(max(col) for col in zip(*(per_var[ch] for ch in node.children)))
            )
        else:
            total.append(sum(total[ch] for ch in node.factors))
            per_var.append(
                tuple(sum(col) for col in zip(*(per_var[ch] for ch in node.factors)))
            )
    return DegreeReport(
        per_node_total_degree=tuple(total),
        output_total_degree=total[c.output],
        per_variable_output_degree=per_var[c.output] if c.nodes else zero,
    )


@dataclass(frozen=True)
class SyntacticCheck:
    """Outcome of the syntactic multilinearity check."""

    is_multilinear: bool
    violator: Optional[int] = None
    shared_variable: Optional[int] = None

    def __bool__(self):
        return self.is_multilinear


def check_syntactic_multilinearity(c: Circuit) -> SyntacticCheck:
    """True iff every product's children reach pairwise-disjoint variable sets.

    Products are inspected in id order and the first failing one is reported.

    """
    masks = c.variable_sets()
    for node in c.nodes:
        if not isinstance(node, Prod):
            continue
        seen = 0
        for ch in node.factors:
            overlap = seen & masks[ch]
            if overlap:
                shared = (overlap & -overlap).bit_length() - 1
                return SyntacticCheck(False, violator=node.id, shared_variable=shared)
            seen |= masks[ch]
    return SyntacticCheck(True)
