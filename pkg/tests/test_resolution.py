"""Resolution construction, verification, and Ext-algebra extraction."""

from fractions import Fraction as Q

import pytest

from conftest import NOT_CY, SUBCASE_BATTERY, SUBCASE_EXT, SUBCASE_SIZE
from skewdg.dg import DgSpec
from skewdg.finalg import frobenius, radical_filtration, recognize_truncated, socle_dim
from skewdg.linalg import Mat
from skewdg.resolution import (
    SIX_REPRESENTATIVES,
    InfinitePattern,
    SemifreeResolution,
    UnsupportedCase,
    build_resolution,
    eilenberg_moore,
    ext_algebra,
    published_resolution,
    resolution_from_dict,
    verify_resolution,
)
from skewdg.skew import SkewElement, parse_element


def test_case_1_1_structure():
    m = Mat([[1, 0, 1], [0, 1, 0], [1, 0, 1]])
    res = build_resolution(m)
    assert res.size == 3
    assert str(res.named["t"]) == "x1 - x3"
    assert str(res.named["sigma"]) == "x1"
    assert res.entry(1, 0) == res.named["t"]
    assert res.entry(2, 0) == res.named["sigma"]
    assert res.entry(2, 1) == res.named["t"]


def test_case_1_2_4_structure():
    m = Mat([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    res = build_resolution(m)
    assert res.size == 8
    # The staircase with entries t3 x3, sigma, lambda, eta.
    expect = [
        ["x3"],
        ["x2", "x3"],
        ["0", "x2", "x3"],
        ["x1", "0", "x2", "x3"],
        ["0", "x1", "0", "x2", "x3"],
        ["0", "0", "x1", "0", "x2", "x3"],
        ["0", "0", "0", "x1", "0", "x2", "x3"],
    ]
    for j, row in enumerate(expect, start=1):
        assert [str(res.entry(j, l)) for l in range(j)] == row


def test_rank3_resolution():
    res = build_resolution(Mat.identity(3))
    assert res.size == 1
    check = verify_resolution(res.spec, res, dmax=6)
    assert check.passed
    assert check.cohomology_dims[0] == 1


def test_unsupported_branches():
    with pytest.raises(UnsupportedCase):
        build_resolution(Mat([[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
    with pytest.raises(UnsupportedCase):
        build_resolution(Mat.zero(3, 3))


def test_battery_sizes_verification_and_ext(subcase_resolutions):
    for key, data in subcase_resolutions.items():
        if key == "_elapsed":
            continue
        sub = data["subcase"]
        assert data["resolution"].size == SUBCASE_SIZE[sub], key
        assert data["verified"].passed, (key, data["verified"].failures)
        assert data["ext_dim"] == SUBCASE_EXT[sub], key
        assert data["truncated"] == SUBCASE_EXT[sub], key
        assert data["socle"] == 1
        assert data["frobenius"].frobenius and data["frobenius"].symmetric


def test_mutated_resolution_fails_square_zero():
    m = Mat([[1, 0, 1], [0, 1, 0], [1, 0, 1]])
    res = build_resolution(m)
    rows = [row[:] for row in res.d]
    rows[2][0] = rows[2][0] + SkewElement.variable(2, 3)
    bad = SemifreeResolution(res.spec, rows, res.subcase, res.named)
    check = verify_resolution(res.spec, bad, dmax=4)
    assert not check.square_zero
    assert any(f[0] == "square-zero" and (f[1], f[2]) == (2, 0) for f in check.failures)


def test_mutated_entry_degree_fails_minimality():
    m = Mat([[1, 0, 1], [0, 1, 0], [1, 0, 1]])
    res = build_resolution(m)
    rows = [row[:] for row in res.d]
    rows[1][0] = rows[1][0] + SkewElement.one(3)
    bad = SemifreeResolution(res.spec, rows, res.subcase, res.named)
    assert not verify_resolution(res.spec, bad, dmax=3).minimal


def test_quadric_correction_term():
    # The fourth row of the two-generator resolution needs d(w) to hit the
    # quadric exactly; for the all-ones family the solver returns x1.
    m = Mat([[1, 1, 1], [1, 1, 1], [1, 1, 1]])
    res = build_resolution(m)
    assert res.size == 4
    assert str(res.named["w"]) == "x1"
    assert res.relation == (1, 1, Q(-1, 2))
    assert verify_resolution(res.spec, res, dmax=5).passed
    ext = ext_algebra(res)
    assert ext.dim == 4
    verdict = frobenius(ext)
    assert verdict.frobenius and verdict.symmetric


def test_quadric_case5_and_m6():
    for entry in ([[2, 1, 1], [2, 1, 1], [0, 0, 0]], [[1, 1, 0], [0, 0, 0], [1, 1, 0]]):
        res = build_resolution(Mat(entry))
        assert res.size == 4
        assert verify_resolution(res.spec, res, dmax=5).passed


def test_nonsmooth_families_return_patterns():
    for entry in NOT_CY:
        out = build_resolution(Mat(entry), truncate=8)
        assert isinstance(out, InfinitePattern)
        t1, t2, t3 = out.relation_coeffs
        assert t1 * t2 == t3 * t3
        trunc = out.truncation
        assert trunc is not None and trunc.size <= 8
        # The prefix is minimal and square-zero as far as it goes.
        check = verify_resolution(trunc.spec, trunc, dmax=3)
        assert check.minimal and check.square_zero


def test_published_fixtures_m1_m6_verify_others_fail():
    good, bad = {"M1", "M6"}, {"M2", "M3", "M4", "M5"}
    for name in good:
        res = published_resolution(name)
        assert verify_resolution(res.spec, res, dmax=4).passed, name
    for name in bad:
        res = published_resolution(name)
        check = verify_resolution(res.spec, res, dmax=4)
        assert check.square_zero, name
        assert not check.exact, name
        # The defect is a surviving degree-one class.
        assert check.cohomology_dims[1] == 1, name


def test_representative_resolutions(representative_resolutions):
    # Verified minimal sizes for the six equality-family representatives.
    expected_size = {"M1": 8, "M2": 8, "M3": 6, "M4": 8, "M5": 6, "M6": 4}
    for name, data in representative_resolutions.items():
        assert data["resolution"].size == expected_size[name], name
        assert data["verified"].passed, (name, data["verified"].failures)
        assert data["ext"].dim == expected_size[name]
        assert data["socle"] == 1
        assert data["frobenius"].frobenius and data["frobenius"].symmetric


def test_m1_filtration_matches_two_generator_structure(representative_resolutions):
    ext = representative_resolutions["M1"]["ext"]
    assert ext.dim == 8
    assert radical_filtration(ext) == [1, 2, 2, 2, 1]
    assert recognize_truncated(ext) is None  # two radical generators


def test_equality_case_normalization_records_witness():
    # A scaled case-9 matrix normalizes to a representative with a witness.
    m = Mat([[0, 4, 0], [0, 0, 0], [0, 0, 0]])
    res = build_resolution(m)
    assert res.normalization["representative"] == "M2"
    assert res.normalization["status"] == "Witness"


def test_equality_case_closure_only_normalization():
    # Coupled scale constraints d1 = 2 d2^2 = 3 d3^2 force an irrational
    # ratio; the normalization is only available over the closure, and the
    # Ext data of the representative is emitted anyway.
    m = Mat([[0, 2, 3], [0, 0, 0], [0, 0, 0]])
    from skewdg.qpl import iso_solve
    assert iso_solve(m, SIX_REPRESENTATIVES["M1"]).status == "ClosureOnly"
    res = build_resolution(m)
    assert res.normalization["status"] == "ClosureOnly"
    assert res.normalization["representative"] == "M1"
    assert ext_algebra(res).dim == 8


def test_eilenberg_moore_agrees_on_flowchart_case():
    # The generic builder independently reproduces the staircase size.
    m = Mat([[1, 0, 1], [0, 1, 0], [1, 0, 1]])
    grid, complete = eilenberg_moore(DgSpec(m), max_size=16)
    assert complete and len(grid) == 3
    res = SemifreeResolution(DgSpec(m), grid, None)
    assert verify_resolution(DgSpec(m), res, dmax=5).passed


def test_serialization_roundtrip():
    for entry in ([[1, 1, 1], [1, 1, 1], [1, 1, 1]], [[1, 0, 1], [0, 1, 0], [1, 0, 1]],
                  [[0, 1, 0], [0, 0, 0], [0, 0, 0]]):
        res = build_resolution(Mat(entry))
        data = res.as_dict()
        back = resolution_from_dict(data)
        again = back.as_dict()
        for key in ("size", "matrix", "rows", "named_elements", "relation"):
            assert data.get(key) == again.get(key), key
