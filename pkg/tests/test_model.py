import pytest
from hypothesis import given
from hypothesis import strategies as st

from cellassoc.model import (
    CellAssociation,
    NetworkConfig,
    StructureError,
    bs_neighbors,
    coverage,
    mt_neighbors,
    validate_association,
)


@st.composite
def configs(draw, max_K=12, max_L=5, max_Nc=5):
    return NetworkConfig(draw(st.integers(1, max_K)), draw(st.integers(1, max_L)), draw(st.integers(1, max_Nc)))


@pytest.mark.parametrize("i,K,L,expected", [(5, 10, 2, {3, 4, 5}), (1, 10, 3, {1}), (4, 4, 4, {1, 2, 3, 4})])
def test_mt_neighbors(i, K, L, expected):
    assert mt_neighbors(i, NetworkConfig(K, L, 1)) == expected


@pytest.mark.parametrize("j,K,L,expected", [(3, 10, 2, {3, 4, 5}), (10, 10, 2, {10}), (1, 2, 5, {1, 2})])
def test_bs_neighbors(j, K, L, expected):
    assert bs_neighbors(j, NetworkConfig(K, L, 1)) == expected


@pytest.mark.parametrize("S,L,expected", [({1, 2}, 1, {1, 2, 3}), (set(), 1, set()), ({1, 5}, 2, {1, 2, 3, 5, 6, 7})])
def test_coverage(S, L, expected):
    assert coverage(S, NetworkConfig(10, L, 1)) == expected


@pytest.mark.parametrize("bad", [0, 11, -1])
def test_index_out_of_range(bad):
    cfg = NetworkConfig(10, 2, 1)
    with pytest.raises(IndexError):
        mt_neighbors(bad, cfg)
    with pytest.raises(IndexError):
        bs_neighbors(bad, cfg)


@pytest.mark.parametrize("args", [(0, 1, 1), (1, 0, 1), (1, 1, 0)])
def test_config_rejects_nonpositive(args):
    with pytest.raises(ValueError):
        NetworkConfig(*args)


def test_validate_association_examples():
    assert validate_association(CellAssociation.from_lists([{1}, {1, 2}, {2, 3}]), NetworkConfig(3, 1, 2)) == []
    report = validate_association(CellAssociation.from_lists([{1, 2}, {2}]), NetworkConfig(2, 1, 1))
    assert [(v.user, v.size) for v in report] == [(1, 2)]
    assert validate_association(CellAssociation.empty(1), NetworkConfig(1, 1, 1)) == []


def test_validate_association_out_of_range_member():
    report = validate_association(CellAssociation.from_lists([{3}, set()]), NetworkConfig(2, 1, 1))
    assert report[0].user == 1 and report[0].out_of_range


def test_wrong_length_is_structural():
    with pytest.raises(StructureError):
        validate_association(CellAssociation.empty(2), NetworkConfig(3, 1, 1))


def test_association_indexing_and_lists():
    a = CellAssociation.from_lists([[2, 1], [], [3]])
    assert a[1] == {1, 2} and len(a) == 3
    assert a.as_lists() == [[1, 2], [], [3]]
    assert CellAssociation.from_lists(a.as_lists()) == a


@given(configs())
def test_duality_and_neighbor_count(cfg):
    for i in cfg.users:
        assert len(mt_neighbors(i, cfg)) == min(i, cfg.L + 1)
        for j in cfg.users:
            assert (j in mt_neighbors(i, cfg)) == (i in bs_neighbors(j, cfg))


@given(configs(), st.data())
def test_coverage_monotone(cfg, data):
    S = data.draw(st.sets(st.integers(1, cfg.K)))
    extra = data.draw(st.sets(st.integers(1, cfg.K)))
    assert coverage(S, cfg) <= coverage(S | extra, cfg)
    for j in S:
        assert coverage({j}, cfg) == bs_neighbors(j, cfg)
