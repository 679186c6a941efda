"""Unit tests for truth tables, subset transforms and network polynomials."""
from fractions import Fraction

import pytest

from marginal.core import errors
from marginal.core.analysis import expand_sparse
from marginal.core.evaluation import eval_direct
from marginal.core.generate import random_point
from marginal.core.multilinear import (
    brute_hmar,
    brute_hmar_profile,
    brute_mar,
    brute_ve,
    brute_vmar,
    coefficients_from_table,
    network_circuit_syntactic,
    network_eval,
    network_from_table,
    parse_table,
    serialize_table,
    table_from_circuit,
    table_from_coefficients,
)
from marginal.core.evidence import VirtualEvidence
from marginal.core.polynomial import TruthTable

from test import FILES, fr


@pytest.mark.multilinear
def test_example_table(example_table):
    assert example_table.n == 3
    assert example_table.values == tuple(
        fr("1/20", "3/20", "1/10", "3/10", "3/50", "9/50", "1/25", "3/25")
    )
    assert example_table.total() == 1


@pytest.mark.multilinear
def test_parse_table_file_matches_circuit(example_table):
    assert parse_table(FILES["example.table"].read_text()) == example_table
    assert parse_table(serialize_table(example_table)) == example_table


@pytest.mark.multilinear
def test_parse_table_defaults_missing_rows_to_zero(caplog):
    t = parse_table("table 2\n11 1/2\n")
    assert t.values == tuple(fr(0, 0, 0, "1/2"))
    assert "3 of 4 rows missing" in caplog.text


@pytest.mark.multilinear
@pytest.mark.exceptions
@pytest.mark.parametrize(
    "text,line",
    [
        ("tabel 2\n", 1),
        ("table 2\n012 1\n", 2),
        ("table 2\n01 1\n01 2\n", 3),
        ("table 1\n1 1/0\n", 2),
        ("table 1\n1\n", 2),
        ("table \u00b2\n", 1),
    ],
    ids=["header", "bitstring", "duplicate", "rational", "arity", "superscript-header"],
)
def test_parse_table_errors(text, line):
    with pytest.raises(errors.TableFormatError) as e:
        parse_table(text)
    assert e.value.line == line


@pytest.mark.multilinear
def test_table_limit():
    from marginal.core.circuit import CircuitBuilder

    b = CircuitBuilder(4)
    c = b.build(b.var(3))
    with pytest.raises(errors.CapacityError) as e:
        table_from_circuit(c, limit=3)
    assert (e.value.allowed, e.value.requested) == (3, 4)


@pytest.mark.multilinear
@pytest.mark.configuration
def test_table_n_boundary(limits, monkeypatch):
    """n = table-n passes the limit and reaches evaluation; one more does not."""
    from marginal.core import multilinear
    from marginal.core.circuit import CircuitBuilder

    class Evaluating(Exception):
        pass

    def evaluator(c):
        raise Evaluating(c.n_vars)

    monkeypatch.delenv("MARGINAL_PROFILE", raising=False)
    monkeypatch.setattr(multilinear, "Evaluator", evaluator)
    n = limits.table_n
    assert n == 20
    b = CircuitBuilder(n)
    with pytest.raises(Evaluating):
        table_from_circuit(b.build(b.var(n - 1)))
    b = CircuitBuilder(n + 1)
    with pytest.raises(errors.CapacityError) as e:
        table_from_circuit(b.build(b.var(n)))
    assert (e.value.limit, e.value.allowed, e.value.requested) == ("table-n", n, n + 1)


# -- subset transforms ---------------------------------------------------------


@pytest.mark.multilinear
def test_mobius_recovers_expansion(example, example_table):
    assert coefficients_from_table(example_table) == expand_sparse(example)


@pytest.mark.multilinear
def test_zeta_inverts_mobius(random_suite):
    for case in random_suite[:30]:
        assert table_from_coefficients(coefficients_from_table(case.table)) == case.table


@pytest.mark.multilinear
def test_coefficients_of_single_point_indicator():
    """f = [x = (1, 1)] is x1 x2."""
    p = coefficients_from_table(TruthTable(2, fr(0, 0, 0, 1)))
    assert p.terms == {0b11: Fraction(1)}


# -- network polynomials -------------------------------------------------------


@pytest.mark.multilinear
def test_network_eval_worked_example(example, example_table, example_certificate):
    """x = (0, 2, 2), xbar = (1, 1, 1) is the profile polynomial at t = 2."""
    x, xbar = fr(0, 2, 2), fr(1, 1, 1)
    assert network_eval(example, x, xbar, example_certificate) == Fraction(53, 100)
    assert network_eval(network_from_table(example_table), x, xbar) == Fraction(53, 100)


@pytest.mark.multilinear
def test_network_eval_degenerate_coordinates(example, example_table, example_certificate):
    """Coordinates with x_i + xbar_i = 0 take the split path."""
    sparse = network_from_table(example_table)
    for x, xbar in [
        (fr(2, 1, 1), fr(-2, 1, 1)),
        (fr(3, "1/2", 0), fr(-3, "-1/2", 0)),
        (fr(0, 0, 0), fr(0, 0, 0)),
    ]:
        assert network_eval(example, x, xbar, example_certificate) == sparse.evaluate(x, xbar)


@pytest.mark.multilinear
def test_network_eval_unit_point_is_total_mass(example, example_certificate):
    assert network_eval(example, fr(1, 1, 1), fr(1, 1, 1), example_certificate) == 1


@pytest.mark.multilinear
def test_network_eval_length_checks(example):
    with pytest.raises(errors.EvidenceLengthError) as e:
        network_eval(example, fr(1, 1, 1), fr(1, 1))
    assert e.value.nm == "xbar"


@pytest.mark.multilinear
def test_network_circuit_syntactic(example, example_table, rng):
    """Input 2i is x_i and 2i+1 is xbar_i."""
    nc = network_circuit_syntactic(example)
    assert nc.n_vars == 6
    sparse = network_from_table(example_table)
    for _ in range(20):
        x, xbar = random_point(3, rng), random_point(3, rng)
        interleaved = [v for pair in zip(x, xbar) for v in pair]
        assert eval_direct(nc, interleaved) == sparse.evaluate(x, xbar)


@pytest.mark.multilinear
def test_network_circuit_on_random_suite(random_suite, rng):
    syntactic = [case for case in random_suite if case.certificate.kind == "syntactic"]
    for case in syntactic[:25]:
        c = case.circuit
        nc = network_circuit_syntactic(c)
        x, xbar = random_point(c.n_vars, rng), random_point(c.n_vars, rng)
        interleaved = [v for pair in zip(x, xbar) for v in pair]
        assert eval_direct(nc, interleaved) == network_eval(c, x, xbar, case.certificate)


@pytest.mark.multilinear
@pytest.mark.exceptions
def test_network_circuit_refuses_non_syntactic(cancellation):
    with pytest.raises(errors.NotSyntacticallyMultilinearError) as e:
        network_circuit_syntactic(cancellation)
    assert e.value.violator is not None


# -- brute-force oracles -------------------------------------------------------


@pytest.mark.multilinear
def test_brute_oracles_on_example(example, example_table):
    assert brute_mar(example_table, "0**") == Fraction(1, 4)
    assert brute_mar(example_table, "1**") == Fraction(3, 4)
    assert brute_hmar(example_table, "0**", 1) == Fraction(4, 25)
    assert brute_hmar_profile(example_table, "0**") == fr("1/20", "4/25", "1/25", 0)
    assert brute_vmar(expand_sparse(example), fr(1, 1, 0)) == Fraction(3, 10)

    w = VirtualEvidence.of([(1, 0), (1, 1), (1, 1)])
    assert brute_ve(example_table, w, "***") == Fraction(3, 4)
