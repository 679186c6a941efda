"""The ``marginal`` command line, through :func:`marginal.cli.main`."""
import pytest

from marginal import cli
from marginal.core import Configuration, paths
from marginal.core.request import QueryRequest

from test import DATA_DIR, DNNF_DIR, FILES


def run(capsys, *argv):
    """(exit code, stdout, stderr) of one invocation."""
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# -- worked examples -----------------------------------------------------------


@pytest.mark.cli
def test_mar(capsys, example_path):
    assert run(capsys, "mar", example_path, "--evidence", "0**")[:2] == (0, "1/4\n")


@pytest.mark.cli
def test_hmar(capsys, example_path):
    assert run(capsys, "hmar", example_path, "--evidence", "0**", "-k", "1")[:2] == (0, "4/25\n")


@pytest.mark.cli
def test_mar_decimal(capsys, example_path):
    assert run(capsys, "mar", example_path, "-e", "0**", "--decimal")[1] == "0.25\n"


@pytest.mark.cli
def test_mar_porcelain(capsys, example_path):
    code, out, _ = run(capsys, "mar", example_path, "-e", "0**", "--porcelain")
    assert code == 0
    assert out == "command: mar\nevidence: 0**\ncertificate: syntactic\nresult: 1/4\n"


@pytest.mark.cli
def test_profile_porcelain(capsys, example_path):
    code, out, _ = run(capsys, "profile", example_path, "-e", "0**", "--route", "network", "--porcelain")
    assert code == 0
    for line in ("profile[0]: 1/20", "profile[1]: 4/25", "profile[2]: 1/25", "profile[3]: 0"):
        assert line in out


@pytest.mark.cli
def test_ve_posterior(capsys, example_path):
    code, out, _ = run(
        capsys, "ve", example_path, "-w", "1:0,1:1,1:1", "-e", "*1*", "--posterior"
    )
    assert (code, out) == (0, "weights: 1:0,1:1,1:1\n14/25\n")


@pytest.mark.cli
def test_eval_and_vmar(capsys, example_path):
    assert run(capsys, "eval", example_path, "--point", "1,1,0")[1] == "3/10\n"
    assert run(capsys, "vmar", example_path, "--point", "1/2,1/2,1/2")[1] == "1/8\n"
    code, out, _ = run(
        capsys, "eval", example_path, "--point", "1/2,1/2,1/2", "--mode", "reduction", "--porcelain"
    )
    assert "common-denominator: 8" in out
    assert "result: 1/8" in out


@pytest.mark.cli
def test_degree(capsys, example_path):
    code, out, _ = run(capsys, "degree", example_path, "--porcelain")
    assert code == 0
    assert "input-degree-bound: 3" in out
    assert "result: 6" in out
    assert "degree[x1]: 1" in out


@pytest.mark.cli
def test_network_value(capsys, example_path):
    out = run(capsys, "network", example_path, "--x", "0,2,2", "--xbar", "1,1,1")[1]
    assert out == "53/100\n"


@pytest.mark.cli
def test_network_coefficients(capsys, example_path):
    out = run(capsys, "network", example_path, "--porcelain")[1]
    assert "network[~x1~x2~x3]: 1/20" in out
    assert "network[x1x2x3]: 3/25" in out


@pytest.mark.cli
def test_expand(capsys, example_path):
    out = run(capsys, "expand", example_path, "--porcelain")[1]
    assert "multilinear: true" in out
    assert "monomials: 8" in out
    assert "expansion[x1x2x3]: -7/50" in out


@pytest.mark.cli
def test_interpolate_table(capsys):
    out = run(capsys, "interpolate-table", FILES["example.table"], "--porcelain")[1]
    assert "coefficients[x2x3]: -7/100" in out
    assert "coefficients[1]: 1/20" in out


# -- circuit files in and out --------------------------------------------------


@pytest.mark.cli
def test_validate(capsys, example_path):
    code, out, _ = run(capsys, "validate", example_path, "--porcelain")
    assert code == 0
    assert "result: valid" in out
    assert "single-output: PASS 1/1" in out


@pytest.mark.cli
def test_network_out_then_validate(capsys, example_path, tmp_path):
    target = tmp_path / "network.circ"
    assert run(capsys, "network", example_path, "--out", target)[0] == 0
    code, out, _ = run(capsys, "validate", target, "--porcelain")
    assert code == 0
    assert "n-vars: 6" in out


@pytest.mark.cli
def test_import_then_query(capsys, tmp_path):
    target = tmp_path / "majority3.circ"
    assert run(capsys, "import", DNNF_DIR / "majority3.nnf", "-o", target)[0] == 0
    assert target.read_text().startswith("circuit 3")
    assert run(capsys, "mar", target)[1] == "4\n"
    # nnf input is accepted directly too
    assert run(capsys, "hmar", DNNF_DIR / "majority3.nnf", "-k", "2")[1] == "3\n"


@pytest.mark.cli
def test_import_to_stdout(capsys):
    code, out, _ = run(capsys, "import", DNNF_DIR / "and2.nnf")
    assert code == 0
    assert "circuit 2" in out
    assert out.rstrip().splitlines()[-1].startswith("output ")


@pytest.mark.cli
def test_inline_circuit(capsys):
    text = "circuit 1\nnode 0 var 0\noutput 0\n"
    assert run(capsys, "mar", "--inline", text)[1] == "1\n"


# -- multilinearity and certificates -------------------------------------------


@pytest.mark.cli
def test_check_ml(capsys):
    square = FILES["square.circ"]
    cancellation = FILES["cancellation.circ"]
    code, out, _ = run(capsys, "check-ml", square, "--porcelain")
    assert code == 0
    assert "result: not_multilinear" in out
    assert "witness: x1" in out
    assert run(capsys, "check-ml", cancellation)[1] == "multilinear\n"
    assert run(capsys, "check-ml", cancellation, "--mode", "syntactic")[1] == (
        "not-syntactically-multilinear\n"
    )


@pytest.mark.cli
def test_uncertified_circuit_and_trust(capsys):
    square = FILES["square.circ"]
    code, out, err = run(capsys, "mar", square)
    assert (code, out) == (1, "")
    assert "not certified multilinear" in err
    assert run(capsys, "mar", square, "--trust")[1] == "1/2\n"


@pytest.mark.cli
def test_capacity_override(capsys):
    code, _, err = run(
        capsys, "check-ml", FILES["cancellation.circ"], "--mode", "exhaustive", "--limit-n", "1"
    )
    assert code == 1
    assert "exhaustive-n" in err


# -- affine --------------------------------------------------------------------


@pytest.mark.cli
def test_faff(capsys):
    assert run(capsys, "faff", "--n", "2")[1] == "4\n"


@pytest.mark.cli
def test_count_affine(capsys, xor_path):
    code, out, _ = run(capsys, "count-affine", xor_path("chain.xor"), "--histogram", "--porcelain")
    assert code == 0
    assert "result: 4" in out
    assert "histogram[1]: 2" in out
    assert run(capsys, "count-affine", xor_path("chain.xor"), "-e", "1***")[1] == "2\n"


@pytest.mark.cli
def test_reduce_verify(capsys, xor_path):
    code, out, _ = run(capsys, "reduce", xor_path("chain.xor"), "-k", "2", "--verify", "--porcelain")
    assert code == 0
    assert "target-weight: 66" in out
    assert "reduction-identity: PASS 1/1" in out
    assert "weight-balance: PASS 4/4" in out


# -- oracle --------------------------------------------------------------------


@pytest.mark.cli
def test_oracle_on_file_and_random(capsys, example_path):
    code, out, _ = run(capsys, "oracle", example_path, "--random", "5", "--seed", "3", "--porcelain")
    assert code == 0
    assert "cases: 6" in out
    assert "mar: PASS" in out
    assert "FAIL" not in out


@pytest.mark.cli
def test_oracle_on_nnf(capsys):
    code, out, _ = run(capsys, "oracle", DNNF_DIR / "parity3.nnf", "--porcelain")
    assert code == 0
    assert "model-count: PASS 1/1" in out
    assert "indicator: PASS 1/1" in out


# -- usage errors exit with 2 --------------------------------------------------


@pytest.mark.cli
@pytest.mark.exceptions
@pytest.mark.parametrize(
    "argv,fragment",
    [
        (["mar", "{example}", "-e", "0*"], "expected 3 entries, received 2"),
        (["hmar", "{example}", "-k", "4"], "k=4 outside 0..3"),
        (["eval", "{example}", "--point", "1/2,1,1", "--mode", "integer"], "integer inputs"),
        (["eval", "{example}", "--point", "1,x,1"], "point[1]"),
        (["mar", "{example}", "--profile", "nope"], "unknown capacity profile"),
        (["oracle"], "circuit or --random"),
        (["mar", "{missing}"], "cannot read circuit file"),
    ],
    ids=["evidence-length", "weight-range", "integer-mode", "bad-point", "profile", "oracle", "missing"],
)
def test_usage_errors(capsys, example_path, any_invalid_file_path, argv, fragment):
    argv = [a.format(example=example_path, missing=any_invalid_file_path) for a in argv]
    code, out, err = run(capsys, *argv)
    assert (code, out) == (2, "")
    assert fragment in err


@pytest.mark.cli
@pytest.mark.exceptions
@pytest.mark.configuration
def test_invalid_config_value_exits_with_2(capsys, example_path, tmp_path):
    bad = tmp_path / "marginal.toml"
    bad.write_text('[limits]\nexhaustive-n = "lots"\n')
    code, out, err = run(capsys, "mar", example_path, "-e", "0**", "--config", bad)
    assert (code, out) == (2, "")
    assert "exhaustive-n" in err


@pytest.mark.cli
@pytest.mark.exceptions
def test_argparse_errors_exit_with_2(capsys, example_path):
    with pytest.raises(SystemExit) as e:
        cli.main(["hmar", str(example_path)])
    assert e.value.code == 2


@pytest.mark.cli
@pytest.mark.exceptions
def test_domain_errors_exit_with_1(capsys, tmp_path):
    bad = tmp_path / "bad.circ"
    bad.write_text("circuit 1\nnode 0 var 0\nnode 1 sum 0:0\noutput 1\n")
    code, _, err = run(capsys, "validate", bad)
    assert code == 1
    assert "line: 3" in err
    assert run(capsys, "interpolate-table", DATA_DIR / "tables" / "example.table", "--limit-n", "2")[0] == 1


@pytest.mark.cli
@pytest.mark.exceptions
def test_superscript_header_is_a_format_error(capsys, tmp_path):
    bad = tmp_path / "superscript.circ"
    bad.write_text("circuit ²\nnode 0 const 1\noutput 0\n", encoding="utf-8")
    code, out, err = run(capsys, "mar", bad)
    assert (code, out) == (1, "")
    assert "line: 1" in err


# -- shared configuration ------------------------------------------------------


@pytest.mark.cli
@pytest.mark.configuration
def test_overrides_do_not_leak_between_runs(capsys, monkeypatch):
    monkeypatch.delenv("MARGINAL_PROFILE", raising=False)
    shared = Configuration(from_config=paths.DEFAULTS_PATH)
    fields = {"command": "check-ml", "circuit": FILES["cancellation.circ"], "mode": "exhaustive"}
    code, _ = cli.run(QueryRequest(**fields, limit_n=1), configuration=shared)
    assert code == 1
    assert "exhaustive-n" in capsys.readouterr().err
    code, text = cli.run(QueryRequest(**fields), configuration=shared)
    assert (code, text.strip()) == (0, "multilinear")
    assert shared.limits.exhaustive_n == 14
