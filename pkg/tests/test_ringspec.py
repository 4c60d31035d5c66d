import pytest
from hypothesis import given, strategies as st

from perpcalc.errors import SpecSemanticError, SpecSyntaxError
from perpcalc.ringspec import RingSpec, is_irreducible_mod_p, parse_poly, parse_ring_spec


def test_zmod_literal():
    assert parse_ring_spec("zmod 4") == RingSpec("zmod", (4,))
    assert parse_ring_spec("zmod4") == RingSpec("zmod", (4,))


def test_gf_literal():
    spec = parse_ring_spec("gf 2 2 x^2+x+1")
    assert spec.kind == "gf" and spec.params[:2] == (2, 2)
    assert str(spec) == "gf 2 2 x^2+x+1"
    assert str(parse_ring_spec("gf2")) == "gf 2 1"


def test_nested_tri():
    spec = parse_ring_spec("tri 2 over gf 2 1")
    assert spec.kind == "tri"
    assert spec.params[0] == 2
    assert spec.params[1] == RingSpec("gf", (2, 1, "x"))


def test_quot_and_prod():
    spec = parse_ring_spec("quot gf2 [x,y]/(x^2, xy, y^2)")
    assert spec.params[1] == ("x", "y")
    assert spec.params[2] == ("x^2", "xy", "y^2")
    prod = parse_ring_spec("prod(zmod 2, zmod 3)")
    assert [str(p) for p in prod.params] == ["zmod 2", "zmod 3"]


@pytest.mark.parametrize("text", [
    "zmod 4", "gf 3 2 x^2+1", "quot gf 2 1 [x,y]/(x^2,xy,y^2)", "tri 2 over zmod 4",
    "mat 2 over gf 2 1", "prod (zmod 2, zmod 3)", "quot zmod 4 [x]/(x^2+2)",
])
def test_canonical_text_round_trips(text):
    spec = parse_ring_spec(text)
    assert parse_ring_spec(str(spec)) == spec


@pytest.mark.parametrize("text,pos", [
    ("zmod x", 5),
    ("ring 4", 0),
    ("zmod 4 extra", 7),
    ("quot gf2 [x]/(x^2", 17),
])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(SpecSyntaxError) as exc:
        parse_ring_spec(text)
    assert exc.value.pos == pos
    assert f"position {pos}" in str(exc.value)


@pytest.mark.parametrize("text", [
    "gf 4 1", "gf 2 2 x^2+1", "gf 2 2 x^3+x+1", "gf 2 3", "zmod 1", "quot gf2 [x]/(0)",
])
def test_semantic_errors(text):
    with pytest.raises(SpecSemanticError):
        parse_ring_spec(text)


def test_polynomial_vanishing_mod_p_is_rejected_at_build():
    from perpcalc.rings import build_ring

    with pytest.raises(SpecSemanticError):
        build_ring("quot gf2 [x]/(2x)")


def test_parse_poly():
    assert parse_poly("x^2+x+1", ("x",)) == {(2,): 1, (1,): 1, (0,): 1}
    assert parse_poly("3xy - y^2", ("x", "y")) == {(1, 1): 3, (0, 2): -1}


def test_irreducibility_against_root_count():
    # quadratics and cubics are irreducible exactly when they have no root
    for p in (2, 3):
        for a in range(p):
            for b in range(p):
                coeffs = [b, a, 1]
                has_root = any((x * x + a * x + b) % p == 0 for x in range(p))
                assert is_irreducible_mod_p(coeffs, p) == (not has_root)


@given(st.integers(min_value=2, max_value=500))
def test_zmod_any_modulus(n):
    spec = parse_ring_spec(f"  zmod   {n} ")
    assert spec.params == (n,)
    assert parse_ring_spec(str(spec)) == spec
