import itertools

import pytest

from conftest import CORPUS, LOCAL, NON_PF, PF_CORPUS, TRI, ring
from perpcalc.modules import free_module, zero_module
from perpcalc.pf import (find_witness, has_perp_equivalence, is_kasch, is_pf, is_self_injective,
                         verify_cogeneration_equivalences, verify_lemma_f8, verify_main_theorem,
                         verify_phi_iso_fg)


def test_self_injective_examples():
    assert is_self_injective(ring("zmod 4"), "right").holds
    assert is_self_injective(ring("gf 2 1"), "right").holds
    v = is_self_injective(ring(LOCAL), "right")
    assert not v.holds and v.witness["kind"] == "baer"


def _is_non_extendable_hom(R, ideal, h):
    """h: ideal -> R (dict) is additive, right linear, and no a gives h(i) = a i."""
    for a, b in itertools.product(ideal, repeat=2):
        if h[int(R.add[a, b])] != R.add[h[a], h[b]]:
            return False
    for a, r in itertools.product(ideal, range(R.order)):
        if h[int(R.mul[a, r])] != R.mul[h[a], r]:
            return False
    return not any(all(R.mul[a, i] == h[i] for i in ideal) for a in range(R.order))


def test_swap_on_maximal_ideal_is_a_baer_witness():
    R = ring(LOCAL)
    x, y = R.parse("x"), R.parse("y")
    xy = int(R.add[x, y])
    ideal = [0, x, y, xy]
    h = {0: 0, x: y, y: x, xy: xy}
    assert _is_non_extendable_hom(R, ideal, h)


def test_reported_baer_witness_replays():
    R = ring(LOCAL)
    w = is_self_injective(R, "right").witness
    ideal = [R.parse(t.strip("()")) for t in w["ideal"]]
    gens = {R.parse(k): R.parse(v) for k, v in w["hom"].items()}
    # extend the generator images to the whole ideal by right linearity
    h = {0: 0}
    for g, img in gens.items():
        for r in range(R.order):
            h[int(R.mul[g, r])] = int(R.mul[img, r])
    for a, b in itertools.product(list(h), repeat=2):
        h.setdefault(int(R.add[a, b]), int(R.add[h[a], h[b]]))
    assert set(h) == set(ideal)
    assert _is_non_extendable_hom(R, ideal, h)


def test_kasch_examples():
    assert is_kasch(ring("zmod 4"), "right").holds
    assert is_kasch(ring(LOCAL), "right").holds and is_kasch(ring(LOCAL), "left").holds
    assert not all(is_kasch(ring(TRI), s).holds for s in ("right", "left"))


@pytest.mark.parametrize("text", CORPUS)
def test_is_pf(text):
    assert is_pf(ring(text)).is_pf == (text in PF_CORPUS)


def test_perp_equivalence_examples():
    assert has_perp_equivalence(free_module(ring("zmod 4"), 2)).holds
    pe = has_perp_equivalence(free_module(ring(LOCAL), 1))
    assert not pe.holds
    w = pe.witness.to_dict()
    assert w["submodule"] == ["(0)", "(x)"]
    assert w["double_perp"] == ["(0)", "(x)", "(y)", "(x+y)"]
    assert has_perp_equivalence(zero_module(ring("zmod 4"))).holds


@pytest.mark.parametrize("text,expected", [("zmod 4", True), (LOCAL, False), ("gf 2 2 x^2+x+1", True)])
def test_main_theorem(text, expected):
    th = verify_main_theorem(ring(text))
    assert th.consistent
    assert set(th.verdicts.values()) == {expected}
    if not expected:
        assert th.witnesses


def test_lemma_f8():
    rep = verify_lemma_f8(ring("zmod 4"), 2)
    assert rep["agree"] and rep["right"]["free"] and rep["left"]["all_quotients"]
    rep = verify_lemma_f8(ring(LOCAL), 1)
    assert rep["agree"] and not rep["right"]["free"] and not rep["right"]["all_quotients"]
    assert verify_lemma_f8(ring("gf 2 1"), 2)["agree"]


def test_phi_iso_fg():
    rep = verify_phi_iso_fg(ring("zmod 4"))
    assert rep["all_bijective"] and rep["as_expected"]
    rep = verify_phi_iso_fg(ring(LOCAL))
    assert rep["mode"] == "expect-failure" and not rep["all_bijective"] and rep["as_expected"]


def test_cogeneration():
    assert verify_cogeneration_equivalences(ring("zmod 4"))["agree"]
    rep = verify_cogeneration_equivalences(ring(LOCAL))
    assert rep["agree"]
    bad = [r for r in rep["modules"] if r["zero_double_perp_order"] > 1]
    assert bad and all(not r["phi_injective"] and not r["cogenerated"] for r in bad)


def test_cogeneration_on_r_mod_x():
    from perpcalc.modules import module_from_relations
    from perpcalc.duality import dual_module, phi_map
    R = ring(LOCAL)
    Q = module_from_relations(R, 1, "right", [(R.parse("x"),)])
    D = dual_module(Q)
    zz = D.perp_dual(D.perp(Q.zero()))
    assert zz.cardinality == 2
    assert not phi_map(Q).injective
    cols = D.table[D.carrier.indices].T
    assert len({c.tobytes() for c in cols}) < Q.size


def test_find_witness():
    assert find_witness(ring("zmod 4")) is None
    w = find_witness(ring(LOCAL)).to_dict()
    assert w["submodule"] == ["(0)", "(x)"] and w["double_perp"] == ["(0)", "(x)", "(y)", "(x+y)"]
    assert find_witness(ring(TRI)) is not None
