from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cellassoc.closed_form import (
    DomainError,
    fmt,
    formula,
    gamma_d,
    parse_rational,
    pudof_downlink_zf,
    pudof_joint_zf_inner,
    pudof_uplink_zf_exact,
    pudof_uplink_zf_inner,
    uplink_regime,
)


@pytest.mark.parametrize("L,Nc,v", [(3, 3, F(2, 3)), (1, 1, F(2, 3)), (2, 1, F(1, 2))])
def test_downlink(L, Nc, v):
    assert pudof_downlink_zf(L, Nc) == v


@pytest.mark.parametrize("L,Nc,v,regime", [
    (3, 4, F(1), "full"),
    (4, 2, F(1, 2), "block"),
    (5, 1, F(2, 7), "split"),
    (5, 2, F(4, 9), "gap"),
])
def test_uplink_inner(L, Nc, v, regime):
    assert pudof_uplink_zf_inner(L, Nc) == v
    assert uplink_regime(L, Nc) == regime


def test_gap_takes_max_of_both_branches():
    for L in range(3, 30, 2):
        Nc = (L - 1) // 2
        assert uplink_regime(L, Nc) == "gap"
        assert pudof_uplink_zf_inner(L, Nc) == max(F(Nc + 1, L + 2), F(2 * Nc, 2 * Nc + L))


def test_gap_only_for_odd_L():
    for L in range(1, 40):
        for Nc in range(1, 2 * L):
            assert (uplink_regime(L, Nc) == "gap") == (L % 2 == 1 and 2 * Nc == L - 1)


@pytest.mark.parametrize("L,Nc,v", [(4, 4, F(5, 6)), (4, 2, F(1, 2))])
def test_uplink_exact(L, Nc, v):
    assert pudof_uplink_zf_exact(L, Nc) == v


@pytest.mark.parametrize("L,Nc", [(3, 1), (5, 2), (2, 3)])
def test_uplink_exact_domain(L, Nc):
    with pytest.raises(DomainError):
        pudof_uplink_zf_exact(L, Nc)


@pytest.mark.parametrize("L,Nc,v", [(5, 7, F(4, 7)), (4, 6, F(2, 3)), (1, 3, F(4, 5))])
def test_gamma_d(L, Nc, v):
    assert gamma_d(L, Nc) == v


def test_gamma_d_domain():
    with pytest.raises(DomainError):
        gamma_d(3, 3)


@pytest.mark.parametrize("L,Nc,v", [(5, 7, F(11, 14)), (3, 2, F(4, 7)), (2, 4, F(5, 6))])
def test_joint(L, Nc, v):
    assert pudof_joint_zf_inner(L, Nc) == v


def test_gamma_simplified_identity():
    for L in range(1, 21):
        for Nc in range(L + 1, 2 * L):
            assert gamma_d(L, Nc) == F(Nc - (L + 1) // 2, Nc)


def test_downlink_strictly_monotone():
    for L in range(1, 15):
        for Nc in range(1, 15):
            assert pudof_downlink_zf(L, Nc + 1) > pudof_downlink_zf(L, Nc)
            assert pudof_downlink_zf(L + 1, Nc) < pudof_downlink_zf(L, Nc)


def test_joint_matches_downlink_below_L_plus_one():
    for L in range(1, 15):
        for Nc in range(1, L + 1):
            assert pudof_joint_zf_inner(L, Nc) == pudof_downlink_zf(L, Nc)


@given(st.integers(1, 40), st.integers(1, 80), st.sampled_from(["down", "up", "joint"]))
def test_values_in_unit_interval(L, Nc, mode):
    v = formula(mode, L, Nc)
    assert isinstance(v, F) and 0 < v <= 1


@given(st.fractions(min_value=0, max_value=10))
def test_fmt_roundtrip(x):
    s = fmt(x)
    assert "/" in s and parse_rational(s) == x


def test_fmt_keeps_unit_denominator():
    assert fmt(3) == "3/1" and fmt(F(6, 4)) == "3/2"
