import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dycoh import (
    GF,
    QQ,
    VecGBackend,
    betti_numbers,
    check_gerstenhaber_equivariant,
    check_graded_commutativity,
    cobar_oracle,
    cohomology,
    cyclic,
    group_algebra,
    grouplike_coefficient,
    in_coboundaries,
    is_coboundary,
    klein_four,
    skew_primitive_coefficient,
    sweedler,
    symmetric,
    trivial_yd,
    unit_coefficient,
)
from dycoh.cohomology import group_cohomology_oracle
from dycoh.hopf import HopfBackend
from dycoh.mutants import WRONG_COMMUTATIVITY_SIGN_OFFSET

# H^n(G; k), n = 0..3, from the bar complex; frozen after the first oracle run
GROUP_COHOMOLOGY = {
    ("Z2", 0): [1, 0, 0, 0],
    ("Z2", 2): [1, 1, 1, 1],
    ("Z2", 3): [1, 0, 0, 0],
    ("Z3", 0): [1, 0, 0, 0],
    ("Z3", 2): [1, 0, 0, 0],
    ("Z3", 3): [1, 1, 1, 1],
    ("V4", 0): [1, 0, 0, 0],
    ("V4", 2): [1, 2, 3, 4],
    ("V4", 3): [1, 0, 0, 0],
    ("S3", 0): [1, 0, 0, 0],
    ("S3", 2): [1, 1, 1, 1],
    ("S3", 3): [1, 0, 0, 1],
}
GROUPS = {"Z2": cyclic(2), "Z3": cyclic(3), "V4": klein_four(), "S3": symmetric(3)}
TRANSPOSITIONS = ["(12)", "(13)", "(23)"]


def field(p):
    return QQ if p == 0 else GF(p)


@pytest.mark.parametrize("key", sorted(GROUP_COHOMOLOGY), ids=lambda k: f"{k[0]}-char{k[1]}")
def test_bar_oracle_frozen_values(key):
    name, p = key
    assert group_cohomology_oracle(GROUPS[name], field(p), 3) == GROUP_COHOMOLOGY[key]


@pytest.mark.parametrize("key", [("Z2", 2), ("Z3", 3), ("V4", 2), ("S3", 3), ("S3", 0)], ids=lambda k: f"{k[0]}-char{k[1]}")
def test_unit_coefficient_matches_oracle(key):
    name, p = key
    b = VecGBackend(unit_coefficient(GROUPS[name], field(p)))
    assert betti_numbers(b, 3) == GROUP_COHOMOLOGY[key]


def test_hopf_betti_matches_cobar():
    sw = sweedler(QQ)
    assert betti_numbers(HopfBackend(sw, trivial_yd(sw)), 2) == [1, 0, 1] == cobar_oracle(QQ, sw.comul, sw.unit, 2)
    k2 = group_algebra(cyclic(2), QQ)
    assert betti_numbers(HopfBackend(k2, trivial_yd(k2)), 3) == [1, 0, 0, 0] == cobar_oracle(QQ, k2.comul, k2.unit, 3)


def test_equivariant_betti_values():
    skew = VecGBackend(skew_primitive_coefficient(cyclic(2), QQ, [1, -1]))
    assert betti_numbers(skew, 3) == [2, 0, 0, 0]
    assert betti_numbers(skew, 3, True) == [1, 0, 0, 0]
    skew7 = VecGBackend(skew_primitive_coefficient(cyclic(3), GF(7), [1, 2, 4]))
    assert betti_numbers(skew7, 2) == [2, 0, 0]
    assert betti_numbers(skew7, 2, True) == [1, 0, 0]
    gl = VecGBackend(grouplike_coefficient(symmetric(3), GF(3), TRANSPOSITIONS))
    assert betti_numbers(gl, 2) == betti_numbers(gl, 2, True) == [1, 0, 0]


def test_representatives_are_cocycles_not_coboundaries():
    b = VecGBackend(unit_coefficient(klein_four(), GF(2)))
    sl = cohomology(b, 2)
    reps = sl.representatives(b)
    assert len(reps) == sl.betti == 3
    for r in reps:
        assert b.delta(r).is_zero()
        assert is_coboundary(b, r) is None


def test_coboundary_witnesses():
    b = VecGBackend(unit_coefficient(cyclic(2), GF(2)))
    zero = b.zero(2)
    w = is_coboundary(b, zero)
    assert w is not None and b.delta(w) == zero
    g = b.random(1, np.random.default_rng(4))
    w = is_coboundary(b, b.delta(g))
    assert w is not None and b.delta(w) == b.delta(g)
    assert is_coboundary(b, b.eps()) is None


def test_gerstenhaber_suite_refuses_full_complex():
    b = VecGBackend(unit_coefficient(cyclic(2), QQ))
    with pytest.raises(ValueError):
        check_gerstenhaber_equivariant(b, 2, 1, 0, restrict_equivariant=False)


def test_gerstenhaber_suite_on_skew_coefficient():
    b = VecGBackend(skew_primitive_coefficient(cyclic(2), QQ, [1, -1]))
    rep = check_gerstenhaber_equivariant(b, 2, 2, 0)
    assert rep.passed, [e.identity for e in rep.failures()]
    assert rep.meta["equivariant_betti"] == [1, 0, 0]


def test_graded_commutativity_and_its_sign():
    b = VecGBackend(unit_coefficient(cyclic(3), GF(3)))
    for m, n in ((1, 1), (1, 2), (2, 2)):
        rep = check_graded_commutativity(b, m, n)
        assert rep.passed and rep.meta["pairs"] == 1
    bad = check_graded_commutativity(b, 1, 2, sign_offset=WRONG_COMMUTATIVITY_SIGN_OFFSET)
    assert not bad.passed
    assert bad.failures()[0].witness["degrees"] == [1, 2]


def test_graded_commutativity_with_no_pairs():
    b = VecGBackend(grouplike_coefficient(symmetric(3), GF(3), TRANSPOSITIONS))
    rep = check_graded_commutativity(b, 1, 1)
    assert rep.passed and rep.meta["pairs"] == 0


BACKENDS = [
    VecGBackend(unit_coefficient(cyclic(2), GF(2))),
    VecGBackend(skew_primitive_coefficient(cyclic(2), QQ, [1, -1])),
    VecGBackend(grouplike_coefficient(cyclic(2), GF(3), [0, 1])),
]


@given(st.sampled_from(BACKENDS), st.integers(0, 2), st.integers(0, 2**32 - 1))
def test_every_coboundary_has_a_preimage(b, n, seed):
    g = b.random(n, np.random.default_rng(seed))
    w = is_coboundary(b, b.delta(g))
    assert w is not None
    assert b.delta(w) == b.delta(g)


@given(st.sampled_from(BACKENDS), st.integers(1, 2), st.integers(0, 2**32 - 1))
def test_equivariant_coboundaries_stay_equivariant(b, n, seed):
    g = b.random_equivariant(n - 1, np.random.default_rng(seed))
    assert in_coboundaries(b, [b.delta(g)], True) == [True]
    w = is_coboundary(b, b.delta(g), True)
    assert b.delta(w) == b.delta(g)
    assert b.field.is_zero(b.field.matmul(b.equivariance_matrix(n - 1), w.coords))
