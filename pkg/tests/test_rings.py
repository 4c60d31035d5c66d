import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import CORPUS, ring
from perpcalc.errors import GuardExceeded
from perpcalc.rings import FiniteRing, build_ring, opposite_ring, ring_axiom_audit


def test_zmod4_order_and_commutative():
    R = build_ring("zmod 4")
    assert R.order == 4 and R.commutative


def test_gf4_is_a_field():
    R = build_ring("gf 2 2 x^2+x+1")
    units = [a for a in range(R.order) if any(R.mul[a, b] == R.one for b in range(R.order))]
    assert R.order == 4 and len(units) == 3


def test_tri2_noncommutative():
    R = build_ring("tri 2 over gf 2 1")
    assert R.order == 8
    assert any(R.mul[a, b] != R.mul[b, a] for a in range(8) for b in range(8))


@pytest.mark.parametrize("text", CORPUS + ["prod(zmod 2, zmod 3)", "mat 2 over gf 2 1", "gf 3 2 x^2+1"])
def test_corpus_passes_audit(text):
    rep = ring_axiom_audit(build_ring(text))
    assert rep.ok, rep.violations


def test_product_order():
    R = build_ring("prod(zmod 2, zmod 3)")
    assert R.order == 6 and ring_axiom_audit(R).ok


def test_corrupted_table_is_caught():
    R = build_ring("zmod 6")
    mul = R.mul.copy()
    mul[2, 3] = 1
    bad = FiniteRing(R.add, mul, R.one, "broken", R.codec)
    rep = ring_axiom_audit(bad)
    assert not rep.ok
    broken = {k for k, v in rep.counts.items() if v}
    assert broken & {"left_distributive", "right_distributive", "mul_associative"}


def test_opposite():
    R = build_ring("zmod 4")
    assert np.array_equal(opposite_ring(R).mul, R.mul)
    T = build_ring("tri 2 over gf 2 1")
    Top = opposite_ring(T)
    a, b = next((a, b) for a in range(8) for b in range(8) if T.mul[a, b] != T.mul[b, a])
    assert Top.mul[a, b] == T.mul[b, a] and Top.mul[b, a] == T.mul[a, b]
    assert opposite_ring(Top) is T


def test_mat2_over_gf2_matches_matrix_arithmetic():
    R = build_ring("mat 2 over gf 2 1")
    assert R.order == 16
    mats = [np.array([[int(R.format(i).strip("()").split()[k]) for k in range(2)],
                      [int(R.format(i).strip("()").split()[k]) for k in range(2, 4)]]) for i in range(16)]
    lookup = {m.tobytes(): i for i, m in enumerate(mats)}
    for a, b in itertools.product(range(16), repeat=2):
        assert R.mul[a, b] == lookup[((mats[a] @ mats[b]) % 2).tobytes()]


def test_quot_local_ring_multiplication():
    R = build_ring("quot gf2 [x,y]/(x^2,xy,y^2)")
    x, y = R.parse("x"), R.parse("y")
    assert R.order == 8
    assert R.mul[x, x] == 0 and R.mul[x, y] == 0 and R.mul[y, y] == 0
    assert R.format(R.add[x, y]) == "x+y"


def test_univariate_quot_over_composite_base():
    R = build_ring("quot zmod 4 [x]/(x^2+2)")
    x = R.parse("x")
    assert R.order == 16
    assert R.format(R.mul[x, x]) == "2"
    assert ring_axiom_audit(R).ok


def test_guard():
    with pytest.raises(GuardExceeded):
        build_ring("gf 2 8 x^8+x^4+x^3+x+1", max_order=100)


def test_element_literals_round_trip():
    for text in CORPUS:
        R = ring(text)
        for i in range(R.order):
            assert R.parse(R.format(i)) == i


def test_digest_is_stable():
    assert build_ring("zmod 9").digest == build_ring("zmod 9").digest
    assert build_ring("zmod 9").digest != build_ring("zmod 8").digest


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 40))
def test_zmod_tables_match_integer_arithmetic(n):
    R = build_ring(f"zmod {n}")
    a = np.arange(n)
    assert np.array_equal(R.add, (a[:, None] + a[None, :]) % n)
    assert np.array_equal(R.mul, (a[:, None] * a[None, :]) % n)
