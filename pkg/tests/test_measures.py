import random
from fractions import Fraction

import pytest

from mvtk.exactalg import MultiPoly
from mvtk.measures import (
    ExpSum,
    RatFunc,
    dbar_i,
    expsum_mul,
    ft_i,
    ft_total_mass,
    measure_from_coeffs,
)
from mvtk.roota import (
    Weight,
    alpha_names,
    seq_weight,
    sequences,
    shuffle_permutations,
    shuffles,
)


def test_dbar_definitional_values():
    names = alpha_names(3)
    minus_one = MultiPoly.constant(names, -1)
    a1 = MultiPoly.var(names, "a1")
    assert dbar_i(3, (1,)) == RatFunc(minus_one, {a1: 1})
    a2 = MultiPoly.var(names, "a2")
    assert dbar_i(3, (1, 2)) == RatFunc(
        MultiPoly.constant(names, 1), {a1 + a2: 1, a2: 1}
    )


def test_dbar_shuffle_identity():
    lhs = dbar_i(3, (1,)) * dbar_i(3, (2,))
    rhs = dbar_i(3, (1, 2)) + dbar_i(3, (2, 1))
    assert lhs == rhs


def test_ratfunc_cancellation():
    names = alpha_names(3)
    a1 = MultiPoly.var(names, "a1")
    a2 = MultiPoly.var(names, "a2")
    r = RatFunc(a1 * a2 + a2 * a2, {a2: 1})
    assert not r.den
    assert r.num == a1 + a2


def test_ratfunc_equality_cross_multiplication():
    names = alpha_names(3)
    a1 = MultiPoly.var(names, "a1")
    a2 = MultiPoly.var(names, "a2")
    r1 = RatFunc(a1, {a1 * 2: 1})  # a1 / (2 a1) = 1/2
    assert r1 == RatFunc.constant(names, Fraction(1, 2))
    assert RatFunc(a1 + a2, {a1: 1}) != RatFunc.constant(names, 1)


def test_ft_examples():
    e = ft_i(3, (1,))
    names = alpha_names(3)
    a1 = MultiPoly.var(names, "a1")
    assert e.coefficient(Weight.zero(3)) == RatFunc(MultiPoly.constant(names, 1), {a1: 1})
    assert e.coefficient(Weight.alpha(3, 1)) == RatFunc(MultiPoly.constant(names, -1), {a1: 1})
    point = ft_i(3, ())
    assert point.coefficient(Weight.zero(3)) == RatFunc.constant(names, 1)
    assert len(point.coeffs) == 1


def test_ft_leading_coefficient_is_dbar():
    rng = random.Random(5)
    for _ in range(20):
        m = rng.choice((3, 4))
        seq = tuple(rng.randint(1, m - 1) for _ in range(rng.randint(1, 4)))
        nu = seq_weight(m, seq)
        assert ft_i(m, seq).coefficient(nu) == dbar_i(m, seq)


def test_expsum_unit():
    x = ft_i(3, (1, 2))
    assert expsum_mul(ExpSum.point_mass(3), x) == x


def test_ft_shuffle_identity_small():
    lhs = expsum_mul(ft_i(3, (1,)), ft_i(3, (2,)))
    rhs = ft_i(3, (1, 2)) + ft_i(3, (2, 1))
    assert lhs == rhs


def test_ft_shuffle_identity_exhaustive_rank3():
    # all sequence pairs of length <= 3 with letters in {1, 2, 3}
    m = 4
    letters = (1, 2, 3)
    seqs = [()]
    for L in (1, 2, 3):
        seqs += [tuple(s) for s in _tuples(letters, L)]
    for j in seqs:
        for k in seqs:
            if len(j) + len(k) == 0 or len(j) + len(k) > 4:
                continue
            lhs = expsum_mul(ft_i(m, j), ft_i(m, k))
            rhs = ExpSum(m, {})
            for s in shuffles(j, k):
                rhs = rhs + ft_i(m, s)
            assert lhs == rhs, (j, k)


def _tuples(letters, L):
    if L == 0:
        yield ()
        return
    for head in letters:
        for tail in _tuples(letters, L - 1):
            yield (head,) + tail


def test_rational_function_identity_symbolic():
    # f_p(a_1..a_p) f_q(a_{p+1}..a_{p+q}) = sum over shuffle permutations
    for p, q in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (1, 4)]:
        n = p + q
        names = tuple(f"a{k}" for k in range(1, n + 1))
        xs = [MultiPoly.var(names, f"a{k}") for k in range(1, n + 1)]

        def f_of(order):
            den = {}
            acc = MultiPoly.zero(names)
            r = RatFunc.constant(names, 1)
            for idx in order:
                acc = acc + xs[idx - 1]
                r = r.divide_by_form(acc)
            return r

        lhs = f_of(range(1, p + 1)) * f_of(range(p + 1, n + 1))
        rhs = RatFunc.constant(names, 0)
        for sigma_inv in shuffle_permutations(p, q):
            rhs = rhs + f_of(sigma_inv)
        assert lhs == rhs, (p, q)


def test_rational_function_identity_numeric():
    rng = random.Random(11)
    for _ in range(100):
        p = rng.randint(1, 3)
        q = rng.randint(1, 2)
        n = p + q
        while True:
            a = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
            try:
                def f_val(order):
                    acc = Fraction(0)
                    prod = Fraction(1)
                    for idx in order:
                        acc += a[idx - 1]
                        prod *= acc
                    return 1 / prod

                lhs = f_val(range(1, p + 1)) * f_val(range(p + 1, n + 1))
                rhs = sum(f_val(s) for s in shuffle_permutations(p, q))
                break
            except ZeroDivisionError:
                continue
        assert lhs == rhs


def test_measure_from_coeffs():
    names = alpha_names(3)
    one = measure_from_coeffs(3, {(): 1}, Weight.zero(3), "dbar")
    assert one == RatFunc.constant(names, 1)
    r = measure_from_coeffs(3, {(1,): 1}, Weight.alpha(3, 1), "dbar")
    assert r == dbar_i(3, (1,))
    with pytest.raises(ValueError):
        measure_from_coeffs(3, {(1,): 1}, Weight.alpha(3, 2), "dbar")


def test_measure_from_coeffs_shuffle_compatibility():
    # coefficient vector of a shuffle product equals the product of transforms
    m = 3
    j, k = (1,), (2, 1)
    coeffs = {}
    for s in shuffles(j, k):
        coeffs[s] = coeffs.get(s, 0) + 1
    nu = seq_weight(m, j) + seq_weight(m, k)
    assembled = measure_from_coeffs(m, coeffs, nu, "ft")
    assert assembled == expsum_mul(ft_i(m, j), ft_i(m, k))


def test_exponent_support_window():
    m = 3
    nu = Weight.from_alpha(m, (1, 1))
    e = measure_from_coeffs(m, {(1, 2): 2, (2, 1): 1}, nu, "ft")
    for beta in e.support():
        assert beta.in_Q_plus()
        assert (nu - beta).in_Q_plus()


def test_total_mass():
    from math import factorial

    for seq in [(1,), (1, 2), (2, 1, 1), (1, 2, 1, 2)]:
        m = 3
        e = ft_i(m, seq)
        assert ft_total_mass(e, len(seq)) == Fraction(1, factorial(len(seq)))


def test_expsum_serialization():
    e = ft_i(3, (1,))
    data = e.serialize()
    assert data[0]["exponent"] == "[0,0,0]"
    assert "a1" in data[0]["coeff"]
