from fractions import Fraction

import pytest

from core import InvalidInput
from polyring import (Field, FreeElement, MonomialOrder, PolyRing, apply_ring_map, format_poly, leading_term,
                      monomials_of_degree, parse_poly, poly_arith)


def test_parse_and_format_are_stable(xyz):
    f = parse_poly("1 - 3/2*z + x^2*y", xyz)
    assert format_poly(f) == "x^2*y - 3/2*z + 1"
    assert parse_poly(format_poly(f), xyz) == f


def test_like_terms_collect_and_cancel(xyz):
    assert parse_poly("x*y + 2*y*x - 3*x*y", xyz).is_zero()
    assert format_poly(xyz.zero()) == "0"


@pytest.mark.parametrize("text", ["", "x^", "x**2", "2*", "x + + y", "w^2"])
def test_parse_rejects_malformed(xyz, text):
    with pytest.raises(InvalidInput):
        parse_poly(text, xyz)


def test_ring_rejects_bad_names_and_weights():
    with pytest.raises(InvalidInput):
        PolyRing(["x", "x"])
    with pytest.raises(InvalidInput):
        PolyRing(["x", "1y"])
    with pytest.raises(InvalidInput):
        PolyRing(["x", "y"], [1, 0])


def test_prime_field_normalizes_fractions():
    F = Field(7)
    assert F.name == "GF(7)"
    assert F.norm(Fraction(1, 2)) == 4
    assert F.inv(3) == 5
    assert Field().name == "QQ"
    assert Field().norm(Fraction(4, 2)) == 2


def test_arithmetic_mixes_ints_and_fractions(xyz):
    x, y, z = xyz.gens()
    f = (x + y) ** 2 - x * x - 2 * x * y
    assert f == y ** 2
    assert (x * Fraction(1, 2) + x * Fraction(1, 2)) == x
    assert 1 - x == -(x - 1)


def test_derivative(xyz):
    f = parse_poly("x^3*y + y^2", xyz)
    assert f.derivative(0) == parse_poly("3*x^2*y", xyz)
    assert f.derivative(2).is_zero()


def test_prime_field_derivative_kills_multiples_of_p():
    R = PolyRing(["x"], field=Field(5))
    assert parse_poly("x^5 + x", R).derivative(0) == R.one()


def test_weighted_degree_and_homogeneity():
    R = PolyRing(["x", "y"], [2, 3])
    f = parse_poly("x^3 - y^2", R)
    assert f.degree() == 6
    assert f.is_homogeneous()
    assert not parse_poly("x^2 - y", R).is_homogeneous()


def test_grevlex_prefers_fewer_late_variables():
    order = MonomialOrder("grevlex", (1, 1, 1))
    assert order.key((0, 2, 0)) > order.key((1, 0, 1))
    lex = MonomialOrder.parse("lex", (1, 1, 1))
    assert lex.key((1, 0, 1)) > lex.key((0, 2, 0))
    assert MonomialOrder.parse("elim:1", (1, 1, 1)).name == "elim:1"
    with pytest.raises(InvalidInput):
        MonomialOrder("deglex", (1,))


def test_monomials_of_weighted_degree():
    assert sorted(monomials_of_degree((1, 1), 2)) == [(0, 2), (1, 1), (2, 0)]
    assert monomials_of_degree((2, 3), 1) == []
    assert sorted(monomials_of_degree((2, 3), 6)) == [(0, 2), (3, 0)]


def test_apply_ring_map_parametrizes_the_cusp():
    R = PolyRing(["x", "y"])
    T = PolyRing(["t"])
    t = T.var(0)
    f = parse_poly("x^3 - y^2", R)
    assert apply_ring_map(f, [t ** 2, t ** 3]).is_zero()


def test_free_elements(xyz):
    x, y, _ = xyz.gens()
    v = FreeElement.from_polys([x, y ** 2])
    assert v.components() == [x, y ** 2]
    assert v.degree() == 2
    assert v.degree([3, 0]) == 4
    assert not v.is_homogeneous()
    assert v.is_homogeneous([1, 0])
    assert (v - v).is_zero()
    assert v.mul_poly(x).components()[0] == x ** 2
    assert FreeElement(xyz, 2, {}).degree() == -1
    with pytest.raises(InvalidInput):
        FreeElement.from_polys([])


def test_poly_arith_checks_rings(xyz):
    f = parse_poly("x + y", xyz)
    g = parse_poly("x - y", xyz)
    assert poly_arith(f, g, "mul") == parse_poly("x^2 - y^2", xyz)
    assert poly_arith(f, g, "sub") == parse_poly("2*y", xyz)
    with pytest.raises(InvalidInput):
        poly_arith(f, g, "div")
    with pytest.raises(InvalidInput):
        poly_arith(f, parse_poly("x", PolyRing(["x", "y"])), "add")


def test_leading_term_depends_on_order(xyz):
    f = parse_poly("x*z^2 + 5*y^3", xyz)
    assert leading_term(f, xyz.order("grevlex")) == ((0, 3, 0), 5)
    assert leading_term(f, xyz.order("lex")) == ((1, 0, 2), 1)
    with pytest.raises(InvalidInput):
        leading_term(xyz.zero(), xyz.order())
