"""
Property checks against brute force, shared by the ``oracle`` command and the
test suite.

Each check runs over every (circuit, query) case and reports how many held:

-   ``mar``, ``hmar``, ``profile``, ``vmar``, ``ve``: query against its
    truth-table oracle
-   ``lemma``: ``sum_x f(x) == 2^n p(1/2, ..., 1/2)``
-   ``paths``: integer reduction against direct evaluation at rational points
-   ``bitwidth``: integer-mode widths within ``(3d - 1) * max(N, size)``, on
    circuits with integer coefficients
-   ``moebius``: the Möbius transform of the table equals the sparse expansion
-   ``model-count`` and ``indicator`` (NNF input): the circuit against the
    formula, by enumeration

"""
from __future__ import annotations

import logging
import random
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from . import cfg, errors
from .configuration import Configuration
from .analysis import Certificate, certify, expand_sparse
from .circuit import Circuit, Const, Sum
from .dnnf import NNF
from .evaluation import bitwidth_bound, eval_direct, eval_integer, eval_via_integer_reduction
from .generate import (
    random_circuit,
    random_evidence,
    random_point,
    random_virtual_evidence,
)
from .multilinear import (
    brute_hmar_profile,
    brute_mar,
    brute_ve,
    brute_vmar,
    coefficients_from_table,
    table_from_circuit,
)
from .polynomial import SparseMultilinearPoly, TruthTable
from .query import hmar, hmar_profile, mar, ve_marginal, vmar
from .report import CheckOutcome

logger = logging.getLogger(__name__)


@dataclass
class Case:
    """A circuit under test with its certificate and truth table."""

    name: str
    circuit: Circuit
    certificate: Certificate
    table: TruthTable
    nnf: Optional[NNF] = None


class Tally:
    """Passed/total counters per check, in first-seen order."""

    def __init__(self):
        self.counts: Dict[str, List[int]] = OrderedDict()
        self.failures: Dict[str, str] = {}

    def record(self, check: str, held: bool, detail: Callable[[], str] = str):
        passed, total = self.counts.setdefault(check, [0, 0])
        self.counts[check] = [passed + int(held), total + 1]
        if not held:
            self.failures.setdefault(check, detail())
            logger.debug("oracle check '%s' failed: %s", check, self.failures[check])

    def outcomes(self) -> List[CheckOutcome]:
        return [
            CheckOutcome(name, passed, total, self.failures.get(name, ""))
            for name, (passed, total) in self.counts.items()
        ]


def has_integer_coefficients(c: Circuit) -> bool:
    """True if every constant and edge weight of ``c`` is an integer."""
    for node in c.nodes:
        if isinstance(node, Const) and node.value.denominator != 1:
            return False
        if isinstance(node, Sum) and any(w.denominator != 1 for w in node.weights):
            return False
    return True


def make_case(
    name: str,
    c: Circuit,
    certificate: Optional[Certificate] = None,
    limits: Optional[cfg.Limits] = None,
    nnf: Optional[NNF] = None,
) -> Case:
    limits = limits or Configuration().limits
    certificate = certificate or certify(c, mode="auto", limits=limits)
    return Case(
        name=name,
        circuit=c,
        certificate=certificate,
        table=table_from_circuit(c, limit=limits.table_n),
        nnf=nnf,
    )


def check_case(
    case: Case,
    rng: random.Random,
    tally: Tally,
    queries: int = 10,
    limits: Optional[cfg.Limits] = None,
):
    """Runs every check on one case, ``queries`` random queries per check."""
    limits = limits or Configuration().limits
    c, cert, t, n = case.circuit, case.certificate, case.table, case.circuit.n_vars

    for _ in range(queries):
        m = random_evidence(n, rng)
        got, want = mar(c, m, certificate=cert), brute_mar(t, m, limit=limits.table_n)
        tally.record("mar", got == want, lambda: f"{case.name} m={m}: {got} != {want}")

        k = rng.randint(0, n)
        got_k = hmar(c, m, k, certificate=cert)
        want_profile = brute_hmar_profile(t, m, limit=limits.table_n)
        tally.record(
            "hmar",
            got_k == want_profile[k],
            lambda: f"{case.name} m={m} k={k}: {got_k} != {want_profile[k]}",
        )

        profile = hmar_profile(c, m, certificate=cert)
        tally.record(
            "profile",
            list(profile) == want_profile and profile.total() == want,
            lambda: f"{case.name} m={m}: {list(profile)} != {want_profile}",
        )

        w = random_virtual_evidence(n, rng)
        got_ve = ve_marginal(c, w, m, certificate=cert)
        want_ve = brute_ve(t, w, m, limit=limits.table_n)
        tally.record(
            "ve", got_ve == want_ve, lambda: f"{case.name} w={w} m={m}: {got_ve} != {want_ve}"
        )

    coefficients = coefficients_from_table(t)
    integral = has_integer_coefficients(c)
    for _ in range(queries):
        point = random_point(n, rng)
        got, want = vmar(c, point, certificate=cert), brute_vmar(coefficients, point)
        tally.record("vmar", got == want, lambda: f"{case.name} at {point}: {got} != {want}")

        via = eval_via_integer_reduction(c, point, multilinear=True)
        direct = eval_direct(c, point)
        tally.record("paths", via == direct, lambda: f"{case.name} at {point}: {via} != {direct}")

        if integral:
            ints = [rng.randint(-9, 9) for _ in range(n)]
            trace = eval_integer(c, ints)
            bound = bitwidth_bound(c, ints)
            tally.record(
                "bitwidth",
                trace.max_bitwidth_seen <= bound,
                lambda: f"{case.name} at {ints}: {trace.max_bitwidth_seen} > {bound}",
            )

    total = t.total()
    half = 2 ** n * eval_direct(c, [Fraction(1, 2)] * n)
    tally.record("lemma", half == total, lambda: f"{case.name}: {half} != {total}")

    try:
        expanded = expand_sparse(c, cap=limits.monomials)
    except errors.CapacityError as e:
        logger.info("moebius check skipped for %s: %s", case.name, e)
    else:
        held = isinstance(expanded, SparseMultilinearPoly) and expanded == coefficients
        tally.record("moebius", held, lambda: f"{case.name}: {expanded} != {coefficients}")

    if case.nnf is not None:
        models = case.nnf.model_count(limit=limits.table_n)
        tally.record(
            "model-count", total == models, lambda: f"{case.name}: {total} != {models}"
        )
        agree = all(
            t[x] == int(case.nnf.satisfied_by(x)) for x in range(1 << case.nnf.n_vars)
        )
        tally.record("indicator", agree, lambda: f"{case.name}: table differs from formula")


def random_cases(
    count: int,
    rng: random.Random,
    max_n: int = 8,
    limits: Optional[cfg.Limits] = None,
    min_n: int = 1,
) -> Iterable[Case]:
    """``count`` random certified circuits with ``min_n <= n <= max_n``;
    about one in five carries a cancellation gadget and is certified by
    exhaustive expansion.  ``max_n`` is capped by table-n and exhaustive-n."""
    limits = limits or Configuration().limits
    max_n = max(1, min(max_n, limits.table_n, limits.exhaustive_n))
    min_n = max(1, min(min_n, max_n))
    for i in range(count):
        n = rng.randint(min_n, max_n)
        c = random_circuit(
            n,
            rng,
            gates=rng.randint(3, 15),
            integer_weights=rng.random() < 0.5,
            cancellation=rng.random() < 0.2,
        )
        yield make_case(f"random-{i}", c, limits=limits)


def run_oracle(
    cases: Iterable[Case],
    rng: random.Random,
    queries: int = 10,
    limits: Optional[cfg.Limits] = None,
) -> Tuple[List[CheckOutcome], int]:
    """Runs :func:`check_case` over ``cases``.

    Returns (Tuple[List[CheckOutcome], int]):
        Outcome per check, and the number of cases run.

    """
    tally = Tally()
    seen = 0
    for case in cases:
        check_case(case, rng, tally, queries=queries, limits=limits)
        seen += 1
    return tally.outcomes(), seen
