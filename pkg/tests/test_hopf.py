import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dycoh import GF, QQ, cobar_oracle, cyclic, symmetric
from dycoh.hopf import (
    HopfBackend,
    HopfData,
    convolution_yd,
    dual_group_algebra,
    group_algebra,
    naturality_check,
    regular_yd,
    sweedler,
    trivial_yd,
    validate_hopf,
    validate_yd_coalgebra,
)
from dycoh.linalg import rank_array
from dycoh.report import StructureError


def backend(hd):
    return HopfBackend(hd, trivial_yd(hd))


@pytest.mark.parametrize(
    "hd",
    [group_algebra(cyclic(2), QQ), sweedler(QQ), sweedler(GF(3)), dual_group_algebra(symmetric(3), QQ)],
    ids=["kZ2", "sweedler-Q", "sweedler-F3", "dual-kS3"],
)
def test_hopf_presets_validate(hd):
    rep = validate_hopf(hd)
    assert rep.passed, rep.failures()
    assert validate_yd_coalgebra(hd, trivial_yd(hd)).passed


def test_corrupted_multiplication_reports_associativity():
    hd = sweedler(QQ)
    mult = np.array(hd.mult, dtype=object)
    mult[1, 1] = [0, 0, 1, 0]  # g·g = x
    bad = HopfData(QQ, mult, hd.unit, hd.comul, hd.counit, hd.antipode)
    rep = validate_hopf(bad)
    assert rep.status("associativity") == "fail"
    assert set(rep.entries["associativity"].witness) == {"i", "j", "k", "out"}


def test_regular_coefficient_is_not_a_center_coalgebra():
    hd = sweedler(QQ)
    failed = [e.identity for e in validate_yd_coalgebra(hd, regular_yd(hd)).failures()]
    assert "Yetter-Drinfeld compatibility" in failed


def test_convolution_coefficient_over_group_algebra():
    hd = group_algebra(cyclic(3), QQ)
    assert validate_yd_coalgebra(hd, convolution_yd(cyclic(3), hd)).passed
    with pytest.raises(StructureError):
        convolution_yd(cyclic(2), hd)


def test_shape_mismatch_is_structure_error():
    hd = sweedler(QQ)
    with pytest.raises(StructureError):
        HopfData(QQ, hd.mult[:3], hd.unit, hd.comul, hd.counit, hd.antipode)


def test_sweedler_needs_odd_characteristic():
    with pytest.raises(ValueError):
        sweedler(GF(2))


def test_sweedler_low_degrees():
    b = backend(sweedler(QQ))
    assert [b.dim(n) for n in range(4)] == [1, 4, 16, 64]
    assert b.delta(b.eps()).is_zero()
    assert b.eps().data.tolist() == [1]
    pi = b.pi().data[..., 0]
    assert pi[0, 0] == 1 and np.count_nonzero(pi) == 1


def test_delta_zero_on_degree_zero_for_trivial_coefficient():
    b = backend(sweedler(QQ))
    assert b.delta(b.cochain(0, [7])).is_zero()


def test_sweedler_delta_ranks():
    b = backend(sweedler(QQ))
    assert [rank_array(b.field, b.delta_matrix(n)) for n in range(4)] == [0, 4, 11, 53]


@pytest.mark.parametrize("fld", [QQ, GF(3)], ids=str)
def test_group_algebra_ranks_match_cobar(fld):
    hd = group_algebra(cyclic(2), fld)
    b = backend(hd)
    ranks = [rank_array(fld, b.delta_matrix(n)) for n in range(4)]
    assert ranks == [0, 2, 2, 6]
    dims = [b.dim(n) for n in range(4)]
    betti = [dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(3)]
    assert betti == cobar_oracle(fld, hd.comul, hd.unit, 2)


@pytest.mark.parametrize("expression", ["delta", "cup", "sqcup", "diamond_i"])
def test_results_are_natural(expression):
    b = backend(sweedler(GF(3)))
    rng = np.random.default_rng(5)
    ops = [b.random(1, rng)] if expression == "delta" else [b.random(1, rng), b.random(2, rng)]
    i = 0 if expression == "diamond_i" else None
    assert naturality_check(b, expression, ops, rng, i=i)


@pytest.mark.parametrize(
    "hd, kind",
    [(sweedler(QQ), "trivial"), (sweedler(QQ), "regular"), (group_algebra(cyclic(3), QQ), "convolution"), (dual_group_algebra(symmetric(3), GF(5)), "trivial")],
    ids=["sweedler", "sweedler-regular", "kZ3-convolution", "dual-kS3"],
)
def test_equivariance_matrix_matches_evaluator(hd, kind):
    yd = {"trivial": trivial_yd, "regular": regular_yd}.get(kind, lambda h: convolution_yd(cyclic(3), h))(hd)
    b = HopfBackend(hd, yd)
    for n in range(3):
        assert np.array_equal(b.equivariance_matrix(n), b.equivariance_matrix_evaluator(n))
    if kind == "regular":
        assert b.equivariance_matrix(1).any()


SW = backend(sweedler(GF(3)))


@given(st.integers(0, 2), st.integers(0, 2**32 - 1))
def test_sweedler_delta_squares_to_zero(n, seed):
    f = SW.random(n, np.random.default_rng(seed))
    assert SW.delta(SW.delta(f)).is_zero()


@given(st.integers(0, 1), st.integers(0, 1), st.integers(0, 2**32 - 1))
def test_sweedler_epsilon_is_unit(m, n, seed):
    f = SW.random(m, np.random.default_rng(seed))
    assert SW.cup(SW.eps(), f) == f == SW.sqcup(f, SW.eps())
