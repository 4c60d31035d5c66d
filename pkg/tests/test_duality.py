import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import CORPUS, LOCAL, ring
from perpcalc.duality import (check_galois_laws, check_sum_intersect_laws, closure, dual_module,
                              eval_dual, is_dense, perp_of_dual_submodule, perp_of_submodule,
                              phi_kernel, phi_map)
from perpcalc.errors import PreconditionError
from perpcalc.modules import (free_module, module_from_relations, quotient_module, submodule_generated,
                              zero_module)


def sub_of(M, vecs):
    return submodule_generated(M, [M.element(v) for v in vecs])


def vecs(S):
    return sorted(S.module.vector(int(c)) for c in S.elements)


@pytest.fixture
def Z4():
    return free_module(ring("zmod 4"), 1)


def test_dual_of_free_is_everything(Z4):
    D = dual_module(Z4)
    assert D.size == 4 and D.ambient.side == "left"


def test_dual_of_cyclic_quotient(Z4):
    M = module_from_relations(ring("zmod 4"), 1, "right", [(2,)])
    D = dual_module(M)
    assert vecs(D.carrier) == [(0,), (2,)]


def test_dual_of_zero_module():
    D = dual_module(zero_module(ring("zmod 4")))
    assert D.size == 1


def test_eval():
    F = free_module(ring("zmod 4"), 2)
    D = dual_module(F)
    x = D.ambient.element((1, 1))
    m = F.element((2, 3))
    assert eval_dual(D, x, m) == 1
    assert all(eval_dual(D, 0, int(c)) == 0 for c in F.elements)


def test_perps_over_zmod4(Z4):
    D = dual_module(Z4)
    X = sub_of(Z4, [(2,)])
    assert perp_of_submodule(Z4.zero()).mask == D.carrier.mask
    assert perp_of_submodule(Z4.whole()).cardinality == 1
    assert vecs(perp_of_submodule(X)) == [(0,), (2,)]
    assert vecs(perp_of_dual_submodule(D, D.ambient.zero())) == vecs(Z4.whole())
    assert vecs(perp_of_dual_submodule(D, D.carrier)) == [(0,)]
    Y = sub_of(D.ambient, [(2,)])
    assert vecs(perp_of_dual_submodule(D, Y)) == [(0,), (2,)]


def test_perp_brute_force_on_local_ring():
    R = ring(LOCAL)
    M = free_module(R, 1)
    D = dual_module(M)
    for X in M.lattice():
        # f_a(m) = a m for the right module R
        brute = {a for a in range(R.order) if all(R.mul[a, int(m)] == 0 for m in X.elements)}
        assert {int(c) for c in D.perp(X).elements} == brute


def test_closure_is_identity_on_finite(Z4):
    D = dual_module(Z4)
    for Y in D.lattice():
        assert closure(D, Y) == Y


def test_phi():
    assert phi_map(zero_module(ring("zmod 4"))).bijective
    for text in CORPUS:
        assert phi_kernel(free_module(ring(text), 1)).cardinality == 1
    R = ring(LOCAL)
    F = free_module(R, 1)
    x = R.parse("x")
    Q, _ = quotient_module(F, submodule_generated(F, [x]))
    ker = phi_kernel(Q)
    assert ker.cardinality == 2
    assert [R.format(v[0]) for v in vecs(ker)] == ["0", "y"]
    F2 = free_module(ring("gf 2 2 x^2+x+1"), 2)
    assert phi_map(F2).bijective


@pytest.mark.parametrize("text", ["zmod 4", "tri 2 over gf 2 1", LOCAL])
def test_galois_laws(text):
    for n in (1, 2):
        rep = check_galois_laws(free_module(ring(text), n))
        assert rep.ok, rep.violations[:3]
    assert check_galois_laws(zero_module(ring(text))).ok


def test_sum_intersect_zmod4(Z4):
    X, Y = sub_of(Z4, [(2,)]), Z4.whole()
    D = dual_module(Z4)
    lhs = D.perp(X)  # (X meet Y)^perp
    from perpcalc.modules import submodule_sum
    assert submodule_sum([D.perp(X), D.perp(Y)]) == lhs
    assert vecs(lhs) == [(0,), (2,)]
    rep = check_sum_intersect_laws(Z4, families=[[X, X]], dual_families=[])
    assert rep.ok and not rep.strict


def test_sum_intersect_zmod6_equality():
    M = free_module(ring("zmod 6"), 1)
    rep = check_sum_intersect_laws(M)
    assert len(M.lattice()) == 4
    assert rep.ok and not rep.strict
    assert rep.checked["perp_of_meet_X_equal"] > 0 and rep.checked["perp_of_meet_Y_equal"] > 0


def test_sum_intersect_strict_on_local():
    rep = check_sum_intersect_laws(free_module(ring(LOCAL), 2))
    assert rep.ok
    assert rep.strict


def test_is_dense(Z4):
    D = dual_module(Z4)
    assert is_dense(D, D.carrier)
    assert not is_dense(D, D.ambient.zero())
    assert not is_dense(D, sub_of(D.ambient, [(2,)]))
    L = dual_module(free_module(ring(LOCAL), 1))
    with pytest.raises(PreconditionError):
        is_dense(L, L.carrier)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CORPUS), st.sampled_from(["right", "left"]), st.data())
def test_perp_is_antitone_and_extensive(text, side, data):
    M = free_module(ring(text), 2, side)
    lat = M.lattice()
    i = data.draw(st.integers(0, len(lat) - 1))
    j = data.draw(st.integers(0, len(lat) - 1))
    X, Y = lat[i], lat[j]
    D = dual_module(M)
    if X <= Y:
        assert D.perp(Y) <= D.perp(X)
    assert X <= D.perp_dual(D.perp(X))
    # perp of a sum is the meet of perps
    from perpcalc.modules import submodule_intersect, submodule_sum
    assert D.perp(submodule_sum([X, Y])) == submodule_intersect([D.perp(X), D.perp(Y)])
