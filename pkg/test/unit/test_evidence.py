"""Unit tests for marginal.core.evidence."""
from fractions import Fraction

import pytest

from marginal.core import errors
from marginal.core.evidence import (
    EvidenceString,
    VirtualEvidence,
    consistent_points,
    hard_evidence,
    resolve_evidence,
)


@pytest.mark.evidence
def test_evidence_string_masks():
    m = EvidenceString.parse("0*1*")
    assert len(m) == 4
    assert str(m) == "0*1*"
    assert (m.ones, m.n_stars) == (1, 2)
    assert m.fixed_mask == 0b0101
    assert m.ones_mask == 0b0100
    assert m.consistent(0b0110)
    assert not m.consistent(0b0111)


@pytest.mark.evidence
def test_consistent_points_enumerates_every_completion():
    m = EvidenceString.parse("0*1*")
    assert list(consistent_points(m)) == [0b0100, 0b0110, 0b1100, 0b1110]
    assert list(consistent_points(EvidenceString.parse("101"))) == [0b101]
    assert len(list(consistent_points(EvidenceString.stars(5)))) == 32


@pytest.mark.evidence
def test_from_assignment_and_with_entry():
    m = EvidenceString.from_assignment(0b110, 3)
    assert str(m) == "011"
    assert str(m.with_entry(0, "*")) == "*11"


@pytest.mark.evidence
@pytest.mark.exceptions
def test_malformed_evidence_names_position():
    with pytest.raises(errors.EvidenceError) as e:
        EvidenceString.parse("01x")
    assert e.value.position == 2
    assert e.value.nm == "'x'"


@pytest.mark.evidence
def test_resolve_evidence():
    assert str(resolve_evidence(None, 3)) == "***"
    assert str(resolve_evidence(["0", "*", "1"], 3)) == "0*1"
    with pytest.raises(errors.EvidenceLengthError) as e:
        resolve_evidence("0*", 3)
    assert (e.value.expected, e.value.received) == (3, 2)


# -- virtual evidence ----------------------------------------------------------


@pytest.mark.evidence
def test_virtual_evidence_parse_and_weight():
    w = VirtualEvidence.parse("1:0, 1/2:3/2, 2:1")
    assert w[1] == (Fraction(1, 2), Fraction(3, 2))
    assert str(w) == "1:0,1/2:3/2,2:1"
    # x = (1, 0, 1): 1 * 3/2 * 2
    assert w.weight(0b101) == 3
    assert w.weight(0b000) == 0


@pytest.mark.evidence
@pytest.mark.exceptions
@pytest.mark.parametrize(
    "text,position",
    [("1:1,-1:2", 1), ("0:0", 0), ("1:1,2", 1), ("1:x", 0)],
    ids=["negative", "both-zero", "missing-colon", "bad-rational"],
)
def test_virtual_evidence_refusals(text, position):
    with pytest.raises(errors.EvidenceError) as e:
        VirtualEvidence.parse(text)
    assert e.value.position == position


@pytest.mark.evidence
def test_hard_evidence_matches_fixing_entries():
    m = EvidenceString.parse("1*0")
    w = hard_evidence(m)
    for x in range(8):
        assert w.weight(x) == (1 if m.consistent(x) else 0)


@pytest.mark.evidence
def test_compose_is_commutative_and_multiplies_weights():
    w1 = VirtualEvidence.of([(1, 2), ("1/3", 1)])
    w2 = VirtualEvidence.of([(3, 1), (2, 5)])
    assert w1.compose(w2) == w2.compose(w1)
    composed = w1.compose(w2)
    for x in range(4):
        assert composed.weight(x) == w1.weight(x) * w2.weight(x)


@pytest.mark.evidence
@pytest.mark.exceptions
def test_compose_refuses_a_dead_coordinate():
    with pytest.raises(errors.EvidenceError):
        VirtualEvidence.of([(1, 0)]).compose(VirtualEvidence.of([(0, 1)]))
    with pytest.raises(errors.EvidenceLengthError):
        VirtualEvidence.unit(2).compose(VirtualEvidence.unit(3))
