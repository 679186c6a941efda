"""Tests for report rendering."""
import io
from fractions import Fraction

import pytest

from marginal.core.cfg import Output
from marginal.core.report import CheckOutcome, Report, emit_report, render, render_value


@pytest.fixture()
def report():
    return (
        Report("hmar")
        .add("evidence", "0**")
        .add("k", 1, echo=True)
        .result(Fraction(4, 25))
    )


@pytest.mark.report
@pytest.mark.parametrize(
    "value,decimal,expected",
    [
        (Fraction(4, 25), False, "4/25"),
        (Fraction(4, 25), True, "0.16"),
        (3, False, "3"),
        (True, False, "true"),
        (None, False, "none"),
        ([Fraction(1, 20), Fraction(4, 25), 0], False, "1/20,4/25,0"),
        ("syntactic", True, "syntactic"),
    ],
)
def test_render_value(value, decimal, expected):
    assert render_value(value, decimal=decimal) == expected


@pytest.mark.report
def test_human_rendering_prints_result_and_echoed_fields(report):
    assert render(report) == "k: 1\n4/25\n"


@pytest.mark.report
def test_porcelain_rendering(report):
    assert render(report, porcelain=True) == (
        "command: hmar\nevidence: 0**\nk: 1\nresult: 4/25\n"
    )
    assert "result-decimal: 0.16" in render(report, porcelain=True, decimal=True)


@pytest.mark.report
def test_tables():
    r = Report("profile").table(
        "profile",
        [{"k": k, "value": v} for k, v in enumerate([Fraction(1, 20), Fraction(4, 25)])],
    )
    porcelain = render(r, porcelain=True)
    assert "profile[0]: 1/20" in porcelain
    assert "profile[1]: 4/25" in porcelain

    human = render(r, output=Output(tablefmt="github"))
    assert human.startswith("|")
    assert "4/25" in human


@pytest.mark.report
def test_checks():
    r = Report("oracle")
    r.check(CheckOutcome("mar", 10, 10))
    r.check(CheckOutcome("hmar", 9, 10, detail="random-3 m=0*: 1 != 2"))
    assert not r.ok
    human = render(r)
    assert "PASS mar (10/10)" in human
    assert "FAIL hmar (9/10)  random-3 m=0*: 1 != 2" in human
    assert "hmar: FAIL 9/10" in render(r, porcelain=True)


@pytest.mark.report
def test_rendering_is_deterministic(report):
    assert render(report, decimal=True) == render(report, decimal=True)


@pytest.mark.report
def test_body_and_empty_report():
    assert render(Report("validate")) == ""
    r = Report("import").body("circuit 1\nnode 0 var 0\noutput 0\n")
    assert render(r).endswith("output 0\n")


@pytest.mark.report
def test_emit_report_writes_to_stream(report):
    stream = io.StringIO()
    text = emit_report(report, stream=stream)
    assert stream.getvalue() == text
