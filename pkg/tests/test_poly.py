from fractions import Fraction

import pytest

from mvtk.exactalg import GREVLEX, LEX, MultiPoly, TermOrder, poly_ring


def test_parse_roundtrip():
    vs, _ = poly_ring(["a1", "a2", "a6", "a8"])
    p = MultiPoly.parse("3*a1^2*a6 - 1/2*a2*a8 + a1", vs)
    assert MultiPoly.parse(str(p), vs) == p
    assert p.coefficient((2, 0, 1, 0)) == 3
    assert p.coefficient((0, 1, 0, 1)) == Fraction(-1, 2)


def test_parse_rejects_unknown_variable():
    vs, _ = poly_ring(["x"])
    with pytest.raises(ValueError):
        MultiPoly.parse("x + y", vs)


def test_arithmetic_exact():
    vs, (x, y) = poly_ring(["x", "y"])
    p = (x + y) ** 3
    assert p.coefficient((2, 1)) == 3
    assert ((x + y) * (x - y)) == x**2 - y**2
    third = x * Fraction(1, 3)
    assert third * 3 == x


def test_grevlex_versus_lex():
    vs, (x, y, z) = poly_ring(["x", "y", "z"])
    p = x * y * z + x**3
    # same degree: grevlex prefers the monomial with smaller last exponent
    assert p.leading_monomial(GREVLEX) == (3, 0, 0)
    assert p.leading_monomial(LEX) == (3, 0, 0)
    q = x * z + y**2
    assert q.leading_monomial(GREVLEX) == (0, 2, 0)
    assert q.leading_monomial(LEX) == (1, 0, 1)


def test_block_order_dominates():
    order = TermOrder("block", 1)
    # any power of the first variable beats the rest
    assert order.key((1, 0)) > order.key((0, 5))


def test_substitute_and_evaluate():
    vs, (x, y) = poly_ring(["x", "y"])
    target, (u,) = poly_ring(["u"])
    img = (x * y + y).substitute({"x": u, "y": u**2})
    assert img == u**3 + u**2
    assert img.evaluate({"u": Fraction(2)}) == 12


def test_primitive_and_monic():
    vs, (x, y) = poly_ring(["x", "y"])
    p = x * Fraction(4, 6) + y * Fraction(2, 3)
    prim, content = p.primitive()
    assert prim == x + y
    assert content == Fraction(2, 3)
    assert (x * 2 + y * 2).monic() == x + y


def test_homogeneity():
    vs, (x, y) = poly_ring(["x", "y"])
    assert (x * y + x**2).is_homogeneous()
    assert not (x + x * y).is_homogeneous()
