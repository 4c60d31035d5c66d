import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import CORPUS, ring
from perpcalc.errors import GuardExceeded, ModuleMismatch, SpecSyntaxError
from perpcalc.modules import (enumerate_elements, enumerate_submodules, free_module, minimal_generators,
                              module_from_relations, parse_module_spec, quotient_module,
                              submodule_generated, submodule_intersect, submodule_sum, zero_module)


def sub_of(M, vectors):
    return submodule_generated(M, [M.element(v) for v in vectors])


def vectors(S):
    return sorted(S.module.vector(int(c)) for c in S.elements)


def test_free_module_sizes():
    assert free_module(ring("zmod 4"), 1).size == 4
    assert free_module(ring("zmod 4"), 2).size == 16
    assert free_module(ring("tri 2 over gf 2 1"), 2).size == 64


def test_quotients():
    M = free_module(ring("zmod 4"), 1)
    X = sub_of(M, [(2,)])
    Q, proj = quotient_module(M, X)
    assert Q.size == 2
    assert [Q.vector(int(c)) for c in Q.elements] == [(0,), (1,)]
    assert list(proj) == [0, 1, 0, 1]
    Z, _ = quotient_module(M, M.zero())
    assert list(Z.elements) == list(M.elements)
    assert quotient_module(M, M.whole())[0].size == 1


def test_quotient_rejects_foreign_submodule():
    R = ring("zmod 4")
    with pytest.raises(ModuleMismatch):
        quotient_module(free_module(R, 1, "right"), free_module(R, 1, "left").zero())


def test_generated():
    M = free_module(ring("zmod 4"), 1)
    assert vectors(submodule_generated(M, [])) == [(0,)]
    assert vectors(sub_of(M, [(2,)])) == [(0,), (2,)]
    M2 = free_module(ring("zmod 4"), 2)
    assert vectors(sub_of(M2, [(1, 0)])) == [(0, 0), (1, 0), (2, 0), (3, 0)]


def test_left_and_right_spans_differ_over_tri2():
    R = ring("tri 2 over gf 2 1")
    # some element generates different one-sided ideals
    e12 = next(a for a in range(R.order)
               if {int(R.mul[a, r]) for r in range(R.order)} != {int(R.mul[r, a]) for r in range(R.order)})
    right = submodule_generated(free_module(R, 1, "right"), [e12])
    left = submodule_generated(free_module(R, 1, "left"), [e12])
    brute_right = {int(R.mul[e12, r]) for r in range(R.order)}
    brute_left = {int(R.mul[r, e12]) for r in range(R.order)}
    assert {int(c) for c in right.elements} == brute_right
    assert {int(c) for c in left.elements} == brute_left
    assert brute_left != brute_right


def test_sum_and_intersect():
    M = free_module(ring("zmod 4"), 1)
    X = sub_of(M, [(2,)])
    assert submodule_sum([X, X]) == X
    assert submodule_sum([M.zero(), X]) == X
    assert submodule_intersect([X, X]) == X
    assert submodule_intersect([X, M.whole()]) == X
    F = free_module(ring("zmod 2"), 2)
    assert submodule_sum([sub_of(F, [(1, 0)]), sub_of(F, [(0, 1)])]).cardinality == 4
    assert submodule_intersect([sub_of(F, [(1, 1)]), sub_of(F, [(1, 0)])]).cardinality == 1


def test_enumerate_small():
    assert [vectors(S) for S in enumerate_submodules(free_module(ring("zmod 4"), 1))] == [
        [(0,)], [(0,), (2,)], [(0,), (1,), (2,), (3,)]]
    assert len(enumerate_submodules(free_module(ring("gf 2 1"), 2))) == 5
    assert len(enumerate_submodules(zero_module(ring("zmod 4")))) == 1


def _subgroups_of_zn_squared(n):
    """Every subgroup of (Z/n)^2 is generated by two elements; span all pairs."""
    elems = list(itertools.product(range(n), repeat=2))
    found = set()
    for a, b in itertools.combinations_with_replacement(elems, 2):
        found.add(frozenset(((i * a[0] + j * b[0]) % n, (i * a[1] + j * b[1]) % n)
                            for i in range(n) for j in range(n)))
    return found


@pytest.mark.parametrize("n", [2, 4, 6, 8, 9])
def test_zmod_square_lattice_matches_subgroup_count(n):
    F = free_module(ring(f"zmod {n}"), 2)
    mine = {frozenset(F.vector(int(c)) for c in S.elements) for S in F.lattice()}
    assert mine == _subgroups_of_zn_squared(n)


def test_enumerate_elements_lexicographic():
    F = free_module(ring("zmod 2"), 2)
    assert [F.vector(c) for c in enumerate_elements(F)] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    Q, _ = quotient_module(free_module(ring("zmod 4"), 1), sub_of(free_module(ring("zmod 4"), 1), [(2,)]))
    assert [Q.vector(c) for c in enumerate_elements(Q)] == [(0,), (1,)]
    assert list(enumerate_elements(zero_module(ring("zmod 4")))) == [0]


def test_lattice_sorted_and_closed_under_join():
    F = free_module(ring("zmod 6"), 2)
    lat = F.lattice()
    keys = [S.sort_key() for S in lat]
    assert keys == sorted(keys)
    masks = {S.mask for S in lat}
    for a, b in itertools.combinations(lat, 2):
        assert submodule_sum([a, b]).mask in masks
        assert submodule_intersect([a, b]).mask in masks


def test_module_spec_parsing():
    R = ring("zmod 4")
    M = parse_module_spec(R, "free 2 / [(2, 0); (0, 2)]")
    assert M.size == 4
    assert parse_module_spec(R, "free 1").size == 4
    with pytest.raises(SpecSyntaxError):
        parse_module_spec(R, "fre 2")
    with pytest.raises(SpecSyntaxError):
        parse_module_spec(R, "free 2 / [(1, 0, 0)]")


def test_guard():
    with pytest.raises(GuardExceeded):
        free_module(ring("zmod 9"), 3, "right", max_order=100)


def test_minimal_generators_regenerate():
    for text in CORPUS[:4]:
        F = free_module(ring(text), 2)
        for S in F.lattice():
            gens = minimal_generators(S)
            assert submodule_generated(F, F.elements[gens]).mask == S.mask


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.sampled_from(["right", "left"]),
       st.lists(st.tuples(st.integers(0, 255), st.integers(0, 255)), max_size=3))
def test_relations_module_matches_coset_count(text, side, raw):
    R = ring(text)
    rels = [(a % R.order, b % R.order) for a, b in raw]
    M = module_from_relations(R, 2, side, rels)
    F = free_module(R, 2, side)
    K = submodule_generated(F, [F.element(v) for v in rels])
    assert M.size * K.cardinality == F.size
    # canonical representatives are minimal in their cosets
    for c in M.elements:
        assert M.canon[int(c)] == c
