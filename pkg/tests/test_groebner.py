import random
from fractions import Fraction

import pytest

from mvtk.exactalg import (
    GREVLEX,
    LEX,
    MultiPoly,
    eliminate,
    groebner,
    ideal_quotient,
    ideals_equal,
    in_ideal,
    normal_form,
    poly_ring,
    saturate,
)

A10 = tuple(f"a{k}" for k in range(1, 11))

# the rank-4 chart component: a5 and a10 vanish, three quadrics remain
A4_PRIME = ["a5", "a10", "a1*a6 + a2*a8", "a7*a8 - a6*a9", "a1*a7 + a2*a9"]


def a4_prime_gens():
    return [MultiPoly.parse(s, A10) for s in A4_PRIME]


def test_principal_ideal():
    vs, (x,) = poly_ring(["x"])
    G = groebner([x**2 - 1, x - 1], LEX)
    assert [str(g) for g in G] == ["x - 1"]


def test_zero_ideal():
    G = groebner([], GREVLEX)
    assert len(G) == 0


def test_normal_form_basics():
    vs, (x,) = poly_ring(["x"])
    G = groebner([x - 1], LEX)
    assert normal_form(x - 1, G).is_zero()
    G0 = groebner([], GREVLEX)
    assert normal_form(x, G0) == x


def test_normal_form_idempotent_and_membership():
    G = groebner(a4_prime_gens())
    vs = A10
    f = MultiPoly.parse("a9*a1*a6 + a9*a2*a8", vs)
    r = normal_form(f, G)
    assert r.is_zero()
    g = MultiPoly.parse("a1*a6", vs)
    r2 = normal_form(g, G)
    assert normal_form(r2, G) == r2
    assert not r2.is_zero()


def test_syzygy_of_the_chart_quadrics():
    # a9*(a1 a6 + a2 a8) - a6*(a1 a7 + a2 a9) + a2*(a7 a8 - a6 a9) reduces to 0
    vs = A10
    p = MultiPoly.parse(
        "a9*a1*a6 + a9*a2*a8 - a6*a1*a7 - a6*a2*a9 + a2*a7*a8 - a2*a6*a9", vs
    )
    assert not p.is_zero()
    assert normal_form(p, groebner(a4_prime_gens())).is_zero()


def test_groebner_idempotent():
    G = groebner(a4_prime_gens())
    G2 = groebner(list(G.gens))
    assert set(G.gens) == set(G2.gens)


def test_buchberger_textbook_example():
    vs, (x, y) = poly_ring(["x", "y"])
    G = groebner([x**2 - y, x**3 - x])
    # the ideal contains y^2 - y... membership checks
    assert in_ideal((x**2 - y) * y, G)
    assert in_ideal(x * (x**2 - y) - (x**3 - x), G)  # = x*y - x... sign
    assert not in_ideal(x, G)


def test_saturate_monomial():
    vs, (x, y) = poly_ring(["x", "y"])
    sat = saturate([x * y], x, cross_check=True)
    assert ideals_equal(sat, [y])
    sat2 = saturate([x**2], x, cross_check=True)
    assert ideals_equal(sat2, [MultiPoly.constant(vs, 1)])


def test_saturate_rejects_zero():
    vs, (x, y) = poly_ring(["x", "y"])
    with pytest.raises(ValueError):
        saturate([x], MultiPoly.zero(vs))


def test_saturate_extracts_a4_component():
    # closure equations with the open-locus witnesses multiplied back in
    vs = A10
    closure = [
        MultiPoly.parse(s, vs)
        for s in [
            "a1*a5",
            "a5*a8",
            "a1*a6 + a2*a8",
            "a1*a7*a8 - a1*a6*a9",
            "a8*a10",
            "a1*a7 + a2*a9 + a3*a10",
            "a5*a9 + a6*a10",
        ]
    ]
    w = MultiPoly.parse("a1*a8", vs)
    sat = saturate(closure, w)
    assert ideals_equal(sat, a4_prime_gens())


def test_eliminate_basic():
    vs, (a, b) = poly_ring(["a", "b"])
    out = eliminate([b - a**2, a], ["a"])
    assert ideals_equal(out, [MultiPoly.parse("b", ("b",))])
    out2 = eliminate([MultiPoly.parse("y*x - 1", ("y", "x"))], ["y"])
    assert out2 == []


def test_ideal_quotient():
    vs, (x, y) = poly_ring(["x", "y"])
    quo = ideal_quotient([x * y], x)
    assert ideals_equal(quo, [y])


def test_determinism():
    gens = a4_prime_gens()
    runs = [tuple(str(g) for g in groebner(gens).gens) for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]


def test_random_membership_consistency():
    rng = random.Random(7)
    vs, xs = poly_ring(["x", "y", "z"])
    for _ in range(10):
        gens = []
        for _ in range(2):
            p = MultiPoly.zero(vs)
            for _ in range(3):
                mon = tuple(rng.randint(0, 2) for _ in range(3))
                p = p + MultiPoly(vs, {mon: Fraction(rng.randint(-3, 3))})
            if not p.is_zero():
                gens.append(p)
        if not gens:
            continue
        G = groebner(gens)
        combo = MultiPoly.zero(vs)
        for g in gens:
            mon = tuple(rng.randint(0, 1) for _ in range(3))
            combo = combo + g * MultiPoly(vs, {mon: Fraction(rng.randint(1, 2))})
        assert in_ideal(combo, G)
