import pytest

from conftest import CORPUS, TRI, ring
from perpcalc.errors import GuardExceeded
from perpcalc.modules import free_module, zero_module
from perpcalc.oracle import (OracleDual, OracleModule, cross_check, oracle_hom_set, oracle_perp,
                             oracle_submodules)


def test_oracle_submodule_counts():
    assert len(oracle_submodules(OracleModule(ring("zmod 4"), "right", 1))) == 3
    assert len(oracle_submodules(OracleModule(ring("gf 2 1"), "right", 2))) == 5
    assert len(oracle_submodules(OracleModule(ring("zmod 4"), "right", 0))) == 1


def test_oracle_hom_sets():
    R4 = ring("zmod 4")
    Q = OracleModule(R4, "right", 1, [(2,)])
    assert len(oracle_hom_set(Q)) == 2
    assert len(oracle_hom_set(Q, OracleModule(R4, "right", 0))) == 1
    Z2 = OracleModule(ring("zmod 2"), "right", 1)
    assert len(oracle_hom_set(Z2, Z2)) == 2


def test_oracle_perps():
    M = OracleModule(ring("zmod 4"), "right", 1)
    D = OracleDual(M)
    assert oracle_perp(D, X={(0,), (2,)}) == {(0,), (2,)}
    assert oracle_perp(D, X={(0,)}) == {h.images for h in D.homs}
    assert oracle_perp(D, Y={h.images for h in D.homs}) == {(0,)}


def test_bound():
    with pytest.raises(GuardExceeded):
        OracleModule(ring("zmod 9"), "right", 2)
    with pytest.raises(GuardExceeded):
        cross_check(free_module(ring("zmod 9"), 2))


@pytest.mark.parametrize("M", [
    lambda: free_module(ring("zmod 4"), 2),
    lambda: free_module(ring(TRI), 1),
    lambda: free_module(ring(TRI), 1, "left"),
    lambda: zero_module(ring("zmod 4")),
])
def test_cross_check_examples(M):
    rep = cross_check(M())
    assert rep.passed, rep.mismatches[:2]


@pytest.mark.parametrize("text", CORPUS)
def test_hom_count_matches_dual_carrier(text):
    from perpcalc.duality import dual_module
    for side in ("right", "left"):
        M = free_module(ring(text), 1, side)
        assert len(oracle_hom_set(OracleModule.from_module(M))) == dual_module(M).size


def test_mismatch_is_reported():
    rep = cross_check(free_module(ring("zmod 2"), 1))
    rep.compare("synthetic", {(0,)}, {(0,), (1,)})
    assert not rep.passed and rep.mismatches[-1]["oracle"] == [[0], [1]]
