"""Unit tests for GF(2) elimination, XOR formulas and the f_aff family."""
from math import comb

import pytest

from marginal.core import errors
from marginal.core.affine import (
    FaffInstance,
    GF2System,
    XorFormula,
    brute_kones,
    count_solutions,
    enumerate_solutions,
    faff_mar,
    gf2_eliminate,
    parse_xor_formula,
    reduce_kones_to_hmar,
    serialize_xor_formula,
    weight_histogram,
)
from marginal.core.generate import random_gf2_system, random_xor_formula
from marginal.core.polynomial import popcount

from test import FILES


def xor(name: str) -> XorFormula:
    return parse_xor_formula(FILES[name].read_text())


# -- elimination ---------------------------------------------------------------


@pytest.mark.affine
@pytest.mark.parametrize(
    "system,expected",
    [
        (GF2System(3), 8),
        (GF2System(2, ((0b11, 1), (0b10, 1))), 1),
        (GF2System(1, ((0b1, 1), (0b1, 0))), 0),
        (GF2System(3, ((0b011, 1), (0b011, 1), (0b110, 0))), 2),
        (GF2System(2, ((0, 0),)), 4),
        (GF2System(2, ((0, 1),)), 0),
    ],
    ids=["empty", "unique", "inconsistent", "duplicate-rows", "trivial", "zero-is-one"],
)
def test_count_solutions(system, expected):
    assert count_solutions(system) == expected


@pytest.mark.affine
def test_elimination_agrees_with_enumeration(rng):
    """Solutions by elimination equal the brute-force solution set."""
    for _ in range(60):
        n = rng.randint(1, 10)
        s = random_gf2_system(n, rng.randint(0, n + 2), rng)
        result = gf2_eliminate(s)
        expected = {x for x in range(1 << n) if s.satisfied_by(x)}
        got = list(enumerate_solutions(result))
        assert len(got) == len(set(got))
        assert set(got) == expected
        assert count_solutions(s) == len(expected)


@pytest.mark.affine
def test_elimination_result_shape():
    result = gf2_eliminate(GF2System(4, ((0b0011, 1), (0b0110, 0))))
    assert result.rank == 2
    assert result.dimension == 2
    assert len(result.null_basis) == len(result.free) == 2
    assert GF2System(4, ((0b0011, 1), (0b0110, 0))).satisfied_by(result.particular)


@pytest.mark.affine
def test_enumeration_limit():
    with pytest.raises(errors.CapacityError) as e:
        list(enumerate_solutions(gf2_eliminate(GF2System(6)), limit=5))
    assert (e.value.limit, e.value.requested) == ("solution-dim", 6)


@pytest.mark.affine
@pytest.mark.configuration
def test_solution_dim_boundary(limits, monkeypatch):
    """The configured dimension is enumerated; one more is refused."""
    monkeypatch.delenv("MARGINAL_PROFILE", raising=False)
    dim = limits.solution_dim
    assert dim == 24
    assert next(enumerate_solutions(gf2_eliminate(GF2System(dim)))) == 0
    with pytest.raises(errors.CapacityError) as e:
        next(enumerate_solutions(gf2_eliminate(GF2System(dim + 1))))
    assert (e.value.limit, e.value.allowed, e.value.requested) == ("solution-dim", dim, dim + 1)


@pytest.mark.affine
def test_system_rejects_out_of_range_rows():
    with pytest.raises(errors.UsageError):
        GF2System(2, ((0b100, 1),))


@pytest.mark.affine
def test_weight_histogram_with_evidence():
    s = GF2System(3, ((0b011, 1),))
    assert weight_histogram(s) == [0, 2, 2, 0]
    assert weight_histogram(s, "**1") == [0, 0, 2, 0]
    assert weight_histogram(s, "1*0") == [0, 1, 0, 0]


# -- XOR formulas --------------------------------------------------------------


@pytest.mark.affine
@pytest.mark.parametrize(
    "name,counts",
    [
        ("single.xor", [0, 1, 1]),
        ("duplicates.xor", [0, 1, 0, 1]),
        ("empty.xor", [comb(4, k) for k in range(5)]),
        ("chain.xor", [0, 2, 1, 0, 1]),
    ],
)
def test_brute_kones_on_files(name, counts):
    phi = xor(name)
    assert [brute_kones(phi, k) for k in range(phi.n + 1)] == counts
    assert weight_histogram(phi.to_system()) == counts


@pytest.mark.affine
def test_brute_kones_out_of_range_k_is_zero():
    phi = xor("single.xor")
    assert brute_kones(phi, -1) == brute_kones(phi, 3) == 0


@pytest.mark.affine
def test_repeated_index_cancels():
    assert XorFormula.clause_mask((1, 2, 2)) == 0b1
    assert XorFormula.clause_mask((3, 3, 3)) == 0b100


@pytest.mark.affine
def test_parse_serialize_xor():
    phi = xor("chain.xor")
    assert (phi.n, phi.clauses) == (4, ((1, 2, 3), (2, 3, 4)))
    assert parse_xor_formula(serialize_xor_formula(phi)) == phi


@pytest.mark.affine
@pytest.mark.exceptions
@pytest.mark.parametrize(
    "text,line,element",
    [
        ("xor 3\n", 1, "xor 3"),
        ("xorcsp 3\nc 1 2\n", 2, "c 1 2"),
        ("xorcsp 3\nc 1 2 4\n", 2, "4"),
        ("xorcsp 3\nc 1 a 2\n", 2, "1 a 2"),
        ("", 1, None),
        ("xorcsp \u00b3\n", 1, "xorcsp \u00b3"),
        ("xorcsp 3\nc 1 \u00b2 3\n", 2, "1 \u00b2 3"),
    ],
    ids=["header", "arity", "range", "integer", "empty", "superscript-header", "superscript-index"],
)
def test_parse_xor_errors(text, line, element):
    with pytest.raises(errors.XorFormatError) as e:
        parse_xor_formula(text)
    assert (e.value.line, e.value.nm) == (line, element)


# -- f_aff ---------------------------------------------------------------------


@pytest.mark.affine
def test_faff_layout():
    instance = FaffInstance(2)
    assert instance.n_vars == 18
    assert instance.x_var(1) == 0
    assert instance.y_var(1, 1, 1) == 2
    assert instance.y_var(2, 2, 2) == 9
    assert instance.z_var(1, 1, 1) == 10
    assert instance.z_var(1, 2, 1) == 12
    names = instance.names()
    assert names[:3] == ["x1", "x2", "y111"]
    assert names[instance.z_var(2, 1, 2)] == "z212"
    with pytest.raises(errors.UsageError):
        instance.y_var(3, 1, 1)


@pytest.mark.affine
@pytest.mark.parametrize("n", [1, 2, 3])
def test_faff_marginal_without_evidence(n):
    """Each x determines every y and z, so there are 2^n solutions."""
    assert faff_mar(n) == 2 ** n


@pytest.mark.affine
def test_faff_solutions_weigh_n_cubed_outside_x():
    """|y| + |z| = n^3 on every solution."""
    instance = FaffInstance(2)
    for x in enumerate_solutions(gf2_eliminate(instance.system())):
        assert instance.evaluate(x) == 1
        _, y, z = instance.block_weights(x)
        assert y + z == instance.cube


@pytest.mark.affine
def test_faff_marginal_with_evidence():
    instance = FaffInstance(2)
    fixed = ["*"] * instance.n_vars
    fixed[instance.x_var(1)] = "1"
    assert faff_mar(2, "".join(fixed)) == 2
    fixed[instance.y_var(1, 1, 1)] = "1"  # y111 = 1 + 3 x1 = 0
    assert faff_mar(2, "".join(fixed)) == 0
    with pytest.raises(errors.EvidenceLengthError):
        faff_mar(2, "1*")


@pytest.mark.affine
def test_faff_limit():
    with pytest.raises(errors.CapacityError) as e:
        faff_mar(3, limit=2)
    assert e.value.limit == "faff-n"


# -- reduction -----------------------------------------------------------------


@pytest.mark.affine
def test_reduction_evidence():
    reduction = reduce_kones_to_hmar(xor("single.xor"), 1)
    instance = reduction.instance
    assert reduction.weight == 1 + 8
    assert reduction.evidence[instance.y_var(1, 2, 2)] == "0"
    assert reduction.evidence[instance.z_var(1, 2, 2)] == "1"
    assert reduction.evidence.n_stars == instance.n_vars - 2


@pytest.mark.affine
def test_reduction_identity_on_files():
    for name in ("single.xor", "duplicates.xor", "chain.xor", "empty.xor"):
        phi = xor(name)
        for k in range(phi.n + 1):
            reduction = reduce_kones_to_hmar(phi, k)
            histogram = weight_histogram(reduction.instance.system(), reduction.evidence)
            assert histogram[reduction.weight] == brute_kones(phi, k)


@pytest.mark.affine
def test_reduction_identity_on_random_formulas(rng):
    for _ in range(40):
        n = rng.randint(1, 3)
        phi = random_xor_formula(n, rng.randint(0, 4), rng)
        k = rng.randint(0, n)
        reduction = reduce_kones_to_hmar(phi, k)
        histogram = weight_histogram(reduction.instance.system(), reduction.evidence)
        assert histogram[reduction.weight] == brute_kones(phi, k)


@pytest.mark.affine
@pytest.mark.exceptions
def test_reduction_weight_range():
    with pytest.raises(errors.WeightRangeError) as e:
        reduce_kones_to_hmar(xor("single.xor"), 3)
    assert (e.value.k, e.value.n) == (3, 2)


@pytest.mark.affine
def test_brute_kones_matches_direct_enumeration(rng):
    for _ in range(30):
        n = rng.randint(1, 6)
        phi = random_xor_formula(n, rng.randint(0, 5), rng)
        for k in range(n + 1):
            expected = sum(
                1
                for x in range(1 << n)
                if popcount(x) == k and phi.satisfied_by(x)
            )
            assert brute_kones(phi, k) == expected


@pytest.mark.affine
def test_satisfied_by_uses_one_based_clauses():
    phi = XorFormula(3, ((1, 2, 3),))
    solutions = [x for x in range(8) if phi.satisfied_by(x)]
    assert solutions == [x for x in range(8) if popcount(x) % 2 == 1]


@pytest.mark.slow
@pytest.mark.affine
def test_counting_against_enumeration_up_to_twenty_variables(rng):
    """200 systems with up to 14 variables, then a 30 x 20 system."""
    systems = []
    for _ in range(200):
        n = rng.randint(1, 14)
        systems.append(random_gf2_system(n, rng.randint(0, 2 * n), rng))
    systems.append(random_gf2_system(20, 30, rng, density=0.1))
    for s in systems:
        assert count_solutions(s) == sum(
            1 for x in range(1 << s.n_vars) if s.satisfied_by(x)
        )


# -- configured limits ---------------------------------------------------------


@pytest.mark.affine
@pytest.mark.configuration
def test_kones_n_boundary(limits, monkeypatch):
    """k = 0 keeps the count cheap at the largest accepted n."""
    monkeypatch.delenv("MARGINAL_PROFILE", raising=False)
    n = limits.kones_n
    assert n == 24
    assert brute_kones(XorFormula(n, ()), 0) == 1
    with pytest.raises(errors.CapacityError) as e:
        brute_kones(XorFormula(n + 1, ()), 0)
    assert (e.value.limit, e.value.allowed, e.value.requested) == ("kones-n", n, n + 1)


@pytest.mark.affine
@pytest.mark.configuration
def test_default_limits_follow_the_profile(monkeypatch):
    monkeypatch.setenv("MARGINAL_PROFILE", "large")
    assert brute_kones(XorFormula(25, ()), 0) == 1
    with pytest.raises(errors.CapacityError) as e:
        brute_kones(XorFormula(29, ()), 0)
    assert e.value.allowed == 28
