"""
Command-line interface: ``marginal <command> [options]``.

Results go to stdout (exact ``a/b`` rationals; ``--decimal`` adds a decimal
rendering, ``--porcelain`` switches to ``key: value`` lines); diagnostics and
errors go to stderr.  Exit codes: 0 on success, 1 on domain errors and failed
oracle checks, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import itertools
import logging
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Optional, Sequence, TextIO, Tuple

from pydantic import ValidationError

from marginal.core import errors
from marginal.core.affine import (
    brute_kones,
    count_solutions,
    enumerate_solutions,
    faff_mar,
    gf2_eliminate,
    parse_xor_formula,
    reduce_kones_to_hmar,
    weight_histogram,
)
from marginal.core.analysis import (
    Certificate,
    certify,
    check_semantic_multilinearity,
    expand_sparse,
)
from marginal.core.base import Generic
from marginal.core.circuit import Circuit, serialize_circuit, validate
from marginal.core.configuration import Configuration
from marginal.core.degree import check_syntactic_multilinearity, formal_degree
from marginal.core.dnnf import import_dnnf, is_nnf_text, parse_nnf, read_circuit_text
from marginal.core.evaluation import bitwidth_bound, eval_direct, eval_integer, integer_reduction
from marginal.core.evidence import EvidenceString, VirtualEvidence
from marginal.core.multilinear import (
    coefficients_from_table,
    network_circuit_syntactic,
    network_eval,
    network_from_table,
    parse_table,
    table_from_circuit,
)
from marginal.core.oracle import make_case, random_cases, run_oracle
from marginal.core.polynomial import (
    SparseMultilinearPoly,
    exponent_str,
    network_monomial,
    popcount,
    subset_str,
)
from marginal.core.query import (
    ROUTES,
    hmar,
    hmar_profile,
    mar,
    ve_hmar_profile,
    ve_marginal,
    ve_posterior,
    vmar,
)
from marginal.core.rational import parse_rational
from marginal.core.report import CheckOutcome, Report, emit_report
from marginal.core.request import COMMANDS, QueryRequest, read_text
from marginal.core.utils import Console

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


# -- argument parsing ----------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--trust", action="store_true", help="treat the circuit as multilinear unchecked"
    )
    common.add_argument("--limit-n", type=int, help="override exhaustive-n, table-n and kones-n")
    common.add_argument("--limit-dim", type=int, help="override solution-dim")
    common.add_argument("--limit-monomials", type=int, help="override monomials")
    common.add_argument("--profile", help="capacity profile (default: $MARGINAL_PROFILE)")
    common.add_argument("--config", type=Path, help="configuration file to merge over defaults")
    common.add_argument("--decimal", action="store_true", help="render rationals as decimals")
    common.add_argument("--porcelain", action="store_true", help="key: value output")
    common.add_argument("-v", "--verbose", action="count", default=0)
    return common


def _circuit_args(p: argparse.ArgumentParser):
    p.add_argument("circuit", type=Path, nargs="?")
    p.add_argument("--inline", dest="circuit_text", help="circuit text instead of a file")


def argparser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="marginal",
        description="Exact marginalization over multilinear arithmetic circuits.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    common = [_common()]

    def command(name: str, help_: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=common, help=help_)

    for name, help_ in (
        ("validate", "check a circuit's structure"),
        ("degree", "formal degrees of the output"),
    ):
        _circuit_args(command(name, help_))

    p = command("check-ml", "decide multilinearity of the output")
    _circuit_args(p)
    p.add_argument(
        "--mode", choices=("auto", "syntactic", "exhaustive", "randomized"), default=None
    )

    p = command("eval", "evaluate at a rational point")
    _circuit_args(p)
    p.add_argument("--point", required=True, help="comma-separated rationals")
    p.add_argument(
        "--mode", dest="eval_mode", choices=("direct", "integer", "reduction"), default=None
    )

    p = command("mar", "sum over the points consistent with the evidence")
    _circuit_args(p)
    p.add_argument("-e", "--evidence", help="word over 0, 1, * (default: all *)")

    p = command("hmar", "as mar, restricted to Hamming weight k")
    _circuit_args(p)
    p.add_argument("-e", "--evidence")
    p.add_argument("-k", type=int, required=True)

    p = command("profile", "hmar for every k at once")
    _circuit_args(p)
    p.add_argument("-e", "--evidence")
    p.add_argument("-w", "--weights", help="virtual evidence a/b:c/d,...")
    p.add_argument("--route", choices=ROUTES, default=None)

    p = command("vmar", "multilinear representation at a rational point")
    _circuit_args(p)
    p.add_argument("--point", required=True)

    p = command("ve", "marginal under virtual evidence")
    _circuit_args(p)
    p.add_argument("-w", "--weights", required=True, help="a/b:c/d,... one pair per variable")
    p.add_argument("-e", "--evidence")
    p.add_argument("--posterior", action="store_true", help="normalize by the all-* marginal")

    p = command("network", "network polynomial: coefficients, a value, or a circuit")
    _circuit_args(p)
    p.add_argument("--x")
    p.add_argument("--xbar")
    p.add_argument("-o", "--out", type=Path, help="write the network circuit here")

    p = command("expand", "sparse expansion of the output")
    _circuit_args(p)
    p.add_argument("--constants-as-variables", action="store_true")

    p = command("interpolate-table", "multilinear coefficients of a truth table")
    p.add_argument("table", type=Path)

    p = command("faff", "marginal of the affine separating function")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-e", "--evidence")

    p = command("reduce", "encode #k-ONES of an XOR formula as weighted f_aff marginal")
    p.add_argument("formula", type=Path)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="check both sides by enumeration")

    p = command("count-affine", "count solutions of an XOR formula")
    p.add_argument("formula", type=Path)
    p.add_argument("-e", "--evidence")
    p.add_argument("--histogram", action="store_true")

    p = command("oracle", "property checks against brute force")
    _circuit_args(p)
    p.add_argument("--random", type=int, help="also check N random circuits")
    p.add_argument("--seed", type=int)
    p.add_argument("--n", type=int, help="largest n for random circuits (default 8)")
    p.add_argument("--queries", type=int, help="random queries per check (default 10)")

    p = command("import", "convert an NNF file to circuit text")
    _circuit_args(p)
    p.add_argument("-o", "--out", type=Path)

    assert set(sub.choices) == set(COMMANDS)
    return parser


def parse_point(text: str, nm: str) -> Tuple[Fraction, ...]:
    values = []
    for pos, token in enumerate(t.strip() for t in text.split(",")):
        try:
            values.append(parse_rational(token))
        except ValueError as e:
            raise errors.UsageError(msg=f"{nm}[{pos}]: {e}", nm=token) from e
    return tuple(values)


def write_text(path: Path, text: str):
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise errors.UsageError(msg=f"cannot write: {e.strerror}", nm=str(path)) from e


# -- dispatch ------------------------------------------------------------------


class Runner(Generic):
    """Executes one :class:`QueryRequest` into a :class:`Report`."""

    class Stdout(Console):
        """Errors and notices on stderr."""

        def error(self, e: Exception):
            self.p(f"marginal: {e}")

    def __init__(
        self,
        request: QueryRequest,
        configuration: Optional[Configuration] = None,
    ):
        super().__init__()
        self.request = request
        self.configuration = (
            configuration
            or Configuration(profile=request.profile, from_config=request.config)
        ).with_overrides(
            limit_n=request.limit_n,
            limit_dim=request.limit_dim,
            limit_monomials=request.limit_monomials,
        )
        self.limits = self.configuration.limits
        self._circuit: Optional[Circuit] = None

    @property
    def circuit(self) -> Circuit:
        if self._circuit is None:
            self._circuit = read_circuit_text(self.request.read_circuit_text())
        return self._circuit

    def certificate(self, c: Circuit) -> Certificate:
        return certify(
            c,
            mode="trust" if self.request.trust else "auto",
            limits=self.limits,
            sampling=self.configuration.sampling,
        )

    def evidence(self) -> Optional[EvidenceString]:
        e = self.request.evidence
        return EvidenceString.parse(e) if e is not None else None

    def execute(self) -> Report:
        name = self.request.command
        handler: Callable[[Report], None] = getattr(self, "_" + name.replace("-", "_"))
        report = Report(name)
        handler(report)
        return report

    # -- circuit structure --

    def _validate(self, report: Report):
        c = self.circuit
        found = validate(c)
        check = check_syntactic_multilinearity(c)
        report.add("n-vars", c.n_vars).add("nodes", len(c)).add("size", c.size)
        report.add("syntactically-multilinear", bool(check))
        if not check:
            report.add("violator", check.violator)
        for f in found.findings:
            report.check(CheckOutcome(f.check, int(f.passed), 1, f.detail))
        report.result("valid" if found else "invalid")

    def _degree(self, report: Report):
        d = formal_degree(self.circuit)
        report.add("input-degree-bound", d.input_degree_bound)
        report.table(
            "degree",
            [
                {"variable": f"x{i + 1}", "degree": v}
                for i, v in enumerate(d.per_variable_output_degree)
            ],
        )
        report.result(d.output_total_degree)

    def _check_ml(self, report: Report):
        c = self.circuit
        mode = self.request.mode or "auto"
        if mode in ("auto", "syntactic"):
            check = check_syntactic_multilinearity(c)
            report.add("mode", "syntactic")
            if check:
                report.result("multilinear")
                return
            report.add("violator", check.violator)
            report.add("shared-variable", f"x{check.shared_variable + 1}")
            if mode == "syntactic":
                report.result("not-syntactically-multilinear")
                return
            mode = "exhaustive" if c.n_vars <= self.limits.exhaustive_n else "randomized"
        verdict = check_semantic_multilinearity(
            c, mode=mode, limits=self.limits, sampling=self.configuration.sampling
        )
        report.add("mode", verdict.mode)
        if verdict.witness is not None:
            report.add("witness", f"x{verdict.witness + 1}")
        if verdict.monomial is not None:
            report.add("monomial", exponent_str(verdict.monomial))
        if verdict.failure_bound is not None:
            report.add("failure-bound", verdict.failure_bound)
        report.result(verdict.status.value)

    def _expand(self, report: Report):
        c = self.circuit
        poly = expand_sparse(
            c,
            cap=self.limits.monomials,
            constants_as_variables=self.request.constants_as_variables,
        )
        if isinstance(poly, SparseMultilinearPoly):
            rows = [
                {"monomial": subset_str(s, poly.n) or "1", "coefficient": v}
                for s, v in poly.items()
            ]
        else:
            rows = [{"monomial": exponent_str(e) or "1", "coefficient": v} for e, v in poly.items()]
        report.add("multilinear", isinstance(poly, SparseMultilinearPoly))
        report.add("monomials", len(poly))
        report.table("expansion", rows)

    # -- evaluation and queries --

    def _eval(self, report: Report):
        c = self.circuit
        point = parse_point(self.request.point, "point")
        mode = self.request.eval_mode or "direct"
        report.add("mode", mode)
        if mode == "direct":
            report.result(eval_direct(c, point))
        elif mode == "integer":
            trace = eval_integer(c, point)
            report.add("max-bitwidth", trace.max_bitwidth_seen)
            report.add("bitwidth-bound", bitwidth_bound(c, point))
            report.add("nodes-evaluated", trace.node_count_evaluated)
            report.result(trace.value)
        else:
            trace = integer_reduction(c, point)
            report.add("common-denominator", trace.common_denominator)
            report.add("degree", trace.degree)
            report.add("max-bitwidth", trace.max_bitwidth_seen)
            report.result(trace.value)

    def _mar(self, report: Report):
        c = self.circuit
        cert = self.certificate(c)
        m = self.evidence()
        report.add("evidence", m if m is not None else EvidenceString.stars(c.n_vars))
        report.add("certificate", cert.kind)
        report.result(mar(c, m, certificate=cert))

    def _hmar(self, report: Report):
        c = self.circuit
        cert = self.certificate(c)
        m = self.evidence()
        report.add("evidence", m if m is not None else EvidenceString.stars(c.n_vars))
        report.add("k", self.request.k)
        report.add("certificate", cert.kind)
        report.result(hmar(c, m, self.request.k, certificate=cert))

    def _profile(self, report: Report):
        c = self.circuit
        cert = self.certificate(c)
        m = self.evidence()
        if self.request.weights is not None:
            if self.request.route not in (None, "evaluation"):
                raise errors.UsageError(
                    msg="weighted profiles use the evaluation route", nm=self.request.route
                )
            w = VirtualEvidence.parse(self.request.weights)
            report.add("weights", w, echo=True)
            profile = ve_hmar_profile(c, w, m, certificate=cert)
        else:
            route = self.request.route or "evaluation"
            report.add("route", route)
            profile = hmar_profile(c, m, certificate=cert, route=route)
        report.add("evidence", profile.evidence)
        report.add("certificate", cert.kind)
        report.table("profile", [{"k": k, "value": v} for k, v in enumerate(profile)])

    def _vmar(self, report: Report):
        c = self.circuit
        cert = self.certificate(c)
        report.add("certificate", cert.kind)
        report.result(vmar(c, parse_point(self.request.point, "point"), certificate=cert))

    def _ve(self, report: Report):
        c = self.circuit
        cert = self.certificate(c)
        w = VirtualEvidence.parse(self.request.weights)
        m = self.evidence()
        report.add("weights", w, echo=True)
        report.add("evidence", m if m is not None else EvidenceString.stars(c.n_vars))
        report.add("certificate", cert.kind)
        if self.request.posterior:
            report.add("quantity", "posterior")
            report.result(ve_posterior(c, w, m, certificate=cert))
        else:
            report.add("quantity", "marginal")
            report.result(ve_marginal(c, w, m, certificate=cert))

    def _network(self, report: Report):
        c = self.circuit
        if self.request.x is not None:
            cert = self.certificate(c)
            x = parse_point(self.request.x, "x")
            xbar = parse_point(self.request.xbar, "xbar")
            report.add("certificate", cert.kind)
            report.result(network_eval(c, x, xbar, certificate=cert))
        elif self.request.out is not None:
            network = network_circuit_syntactic(c)
            write_text(self.request.out, serialize_circuit(network))
            report.add("n-vars", network.n_vars).add("nodes", len(network))
            report.result(str(self.request.out))
        else:
            poly = network_from_table(table_from_circuit(c, limit=self.limits.table_n))
            rows = [
                {"monomial": network_monomial(s, poly.n), "coefficient": poly.terms[s]}
                for s in sorted(poly.terms, key=lambda s: (popcount(s), s))
            ]
            report.table("network", rows)

    def _interpolate_table(self, report: Report):
        t = parse_table(read_text(self.request.table, nm="table"))
        if t.n > self.limits.table_n:
            raise errors.CapacityError(
                limit="table-n", allowed=self.limits.table_n, requested=t.n
            )
        poly = coefficients_from_table(t)
        report.add("n-vars", t.n).add("monomials", len(poly))
        report.table(
            "coefficients",
            [{"monomial": subset_str(s, t.n) or "1", "coefficient": v} for s, v in poly.items()],
        )

    # -- affine --

    def _faff(self, report: Report):
        n = self.request.n
        report.add("n", n).add("n-vars", 2 * n ** 3 + n)
        report.result(faff_mar(n, self.evidence(), limit=self.limits.faff_n))

    def _reduce(self, report: Report):
        phi = parse_xor_formula(read_text(self.request.formula, nm="formula"))
        k = self.request.k
        reduction = reduce_kones_to_hmar(phi, k, limit=self.limits.faff_n)
        report.add("n", phi.n).add("clauses", len(phi)).add("k", k)
        report.add("target-weight", reduction.weight, echo=True)
        report.result(str(reduction.evidence))
        if not self.request.verify:
            return

        instance = reduction.instance
        kones = brute_kones(phi, k, limit=self.limits.kones_n)
        system = instance.system().fix(reduction.evidence)
        histogram = weight_histogram(system, limit=self.limits.solution_dim)
        report.add("kones", kones).add("hmar", histogram[reduction.weight])
        report.check(
            CheckOutcome(
                "reduction-identity",
                int(kones == histogram[reduction.weight]),
                1,
                f"{kones} != {histogram[reduction.weight]}",
            )
        )
        balanced = total = 0
        for x in enumerate_solutions(gf2_eliminate(system), limit=self.limits.solution_dim):
            _, y, z = instance.block_weights(x)
            balanced += int(y + z == instance.cube)
            total += 1
        report.check(CheckOutcome("weight-balance", balanced, total))

    def _count_affine(self, report: Report):
        phi = parse_xor_formula(read_text(self.request.formula, nm="formula"))
        system = phi.to_system()
        m = self.evidence()
        if m is not None:
            system = system.fix(m)
        result = gf2_eliminate(system)
        report.add("n-vars", phi.n).add("rank", result.rank).add("consistent", result.consistent)
        report.result(count_solutions(system))
        if self.request.histogram:
            histogram = weight_histogram(system, limit=self.limits.solution_dim)
            report.table("histogram", [{"weight": k, "count": v} for k, v in enumerate(histogram)])

    # -- oracle / import --

    def _oracle(self, report: Report):
        request = self.request
        seed = request.seed if request.seed is not None else self.configuration.sampling.seed
        rng = random.Random(seed)
        cases: List = []
        if request.circuit is not None or request.circuit_text is not None:
            text = request.read_circuit_text()
            name = request.circuit.name if request.circuit else "inline"
            if is_nnf_text(text):
                nnf = parse_nnf(text)
                nnf.check_decomposable()
                c = nnf.to_circuit()
                cases.append(make_case(name, c, self.certificate(c), self.limits, nnf=nnf))
            else:
                c = read_circuit_text(text)
                cases.append(make_case(name, c, self.certificate(c), self.limits))
        generated = (
            random_cases(request.random, rng, max_n=request.n or 8, limits=self.limits)
            if request.random
            else ()
        )
        outcomes, seen = run_oracle(
            itertools.chain(cases, generated),
            rng,
            queries=request.queries or 10,
            limits=self.limits,
        )
        report.add("seed", seed).add("cases", seen)
        for outcome in outcomes:
            report.check(outcome)

    def _import(self, report: Report):
        text = self.request.read_circuit_text()
        if not is_nnf_text(text):
            raise errors.UsageError(msg="input is not in NNF format", nm="import")
        c = import_dnnf(text)
        report.add("n-vars", c.n_vars).add("nodes", len(c))
        if self.request.out is not None:
            write_text(self.request.out, serialize_circuit(c))
            report.result(str(self.request.out))
        else:
            report.body(serialize_circuit(c))


# -- entry points --------------------------------------------------------------


def run(
    request: QueryRequest,
    configuration: Optional[Configuration] = None,
    stream: Optional[TextIO] = None,
    err_stream: Optional[TextIO] = None,
) -> Tuple[int, str]:
    """Executes ``request``.

    Returns (Tuple[int, str]):
        Exit code and the rendered output.

    """
    stderr = Runner.Stdout(stream=err_stream or sys.stderr)
    try:
        runner = Runner(request, configuration=configuration)
        report = runner.execute()
        text = emit_report(
            report,
            porcelain=request.porcelain,
            decimal=request.decimal,
            output=runner.configuration.output,
            stream=stream,
        )
    except errors.UsageError as e:
        stderr.error(e)
        return EXIT_USAGE, ""
    except errors.Error as e:
        stderr.error(e)
        return EXIT_DOMAIN, ""
    return (EXIT_OK if report.ok else EXIT_DOMAIN), text


def to_request(namespace: argparse.Namespace) -> QueryRequest:
    fields = {k: v for k, v in vars(namespace).items() if v is not None}
    return QueryRequest(**fields)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = argparser().parse_args(argv)
    logging.basicConfig(
        level=max(logging.DEBUG, logging.WARNING - 10 * args.verbose),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        request = to_request(args)
    except ValidationError as e:
        Runner.Stdout(stream=sys.stderr).p(f"marginal: usage error\n{e}")
        return EXIT_USAGE
    code, _ = run(request)
    return code


if __name__ == "__main__":
    sys.exit(main())
