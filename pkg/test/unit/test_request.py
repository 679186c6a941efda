"""Tests for the command request model."""
from pathlib import Path

import pytest
from pydantic import ValidationError

from marginal.core import errors
from marginal.core.request import COMMANDS, NEEDS_CIRCUIT, QueryRequest, read_text


@pytest.mark.cli
def test_commands():
    assert "mar" in NEEDS_CIRCUIT
    assert "oracle" not in NEEDS_CIRCUIT
    assert "faff" not in NEEDS_CIRCUIT
    assert len(COMMANDS) == 17


@pytest.mark.cli
def test_valid_request_by_alias_or_field_name():
    r = QueryRequest(**{"command": "hmar", "circuit": "example.circ", "k": 1, "limit-n": 4})
    assert r.circuit == Path("example.circ")
    assert r.limit_n == 4
    assert QueryRequest(command="ve", circuit_text="...", weights="1:1").weights == "1:1"


@pytest.mark.cli
@pytest.mark.exceptions
@pytest.mark.parametrize(
    "fields,fragment",
    [
        ({"command": "nope"}, "unknown command"),
        ({"command": "mar", "circuit": "c", "k": 1}, "does not take k"),
        ({"command": "hmar", "circuit": "c"}, "requires k"),
        ({"command": "mar"}, "requires a circuit"),
        ({"command": "oracle"}, "circuit or --random"),
        ({"command": "network", "circuit": "c", "x": "1"}, "--x and --xbar together"),
        ({"command": "faff", "n": -1}, "greater than or equal to 0"),
        ({"command": "oracle", "random": 0}, "greater than or equal to 1"),
        ({"command": "mar", "circuit": "c", "posterior": True}, "does not take posterior"),
    ],
    ids=[
        "unknown",
        "stray-k",
        "missing-k",
        "missing-circuit",
        "oracle-input",
        "network-pair",
        "negative-n",
        "random-zero",
        "stray-flag",
    ],
)
def test_inconsistent_requests(fields, fragment):
    with pytest.raises(ValidationError) as e:
        QueryRequest(**fields)
    assert fragment in str(e.value)


@pytest.mark.cli
def test_read_circuit_text_prefers_inline(tmp_path):
    path = tmp_path / "c.circ"
    path.write_text("from file")
    assert QueryRequest(command="validate", circuit=path).read_circuit_text() == "from file"
    inline = QueryRequest(command="validate", circuit=path, circuit_text="inline")
    assert inline.read_circuit_text() == "inline"


@pytest.mark.cli
@pytest.mark.exceptions
def test_unreadable_files_are_usage_errors(tmp_path):
    with pytest.raises(errors.UsageError) as e:
        QueryRequest(command="validate", circuit=tmp_path / "missing.circ").read_circuit_text()
    assert e.value.nm.endswith("missing.circ")
    with pytest.raises(errors.UsageError):
        read_text(None, nm="table")


@pytest.mark.cli
@pytest.mark.exceptions
def test_non_utf8_files_are_usage_errors(tmp_path):
    path = tmp_path / "latin1.circ"
    path.write_bytes("circuit ²\n".encode("latin-1"))
    with pytest.raises(errors.UsageError) as e:
        read_text(path, nm="circuit")
    assert "utf-8" in e.value.msg
