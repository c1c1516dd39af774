"""Rational functions with factored linear denominators, and exponential sums.

A RatFunc is a polynomial numerator over a multiset of primitive linear
forms; all the denominators produced by the sequence calculus are of this
shape, so cancellation is trial exact division and never needs a general
multivariate gcd.  An ExpSum is a finite weight-indexed family of RatFunc
coefficients, the Fourier-transform picture of a simplex measure: the
product is convolution on exponents.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .exactalg.groebner import _exact_poly_division
from .exactalg.poly import MultiPoly
from .roota import Weight, alpha_names, partial_sums, seq_weight, sequences


def _canonical_linear(form: MultiPoly):
    """Normalize a nonzero linear form to primitive with positive first coeff.

    Returns (canonical form, scalar) with form == scalar * canonical.
    """
    if form.is_zero() or form.total_degree() != 1 or form.constant_term() != 0:
        raise ValueError("denominator factors must be homogeneous linear forms")
    prim, content = form.primitive()
    return prim, content


class RatFunc:
    """numerator / product of linear forms, kept factored and cancelled."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den=None):
        self.num = num
        clean: dict = {}
        scale = Fraction(1)
        for form, mult in (den or {}).items():
            if mult == 0:
                continue
            if mult < 0:
                raise ValueError("negative denominator multiplicity")
            prim, content = _canonical_linear(form)
            scale *= content**mult
            clean[prim] = clean.get(prim, 0) + mult
        if scale != 1:
            self.num = self.num * Fraction(1, 1) / scale
        self.den = clean
        self._cancel()

    def _cancel(self):
        if self.num.is_zero():
            self.den = {}
            return
        for form in list(self.den):
            while self.den.get(form, 0) > 0:
                try:
                    self.num = _exact_poly_division(self.num, form)
                except ArithmeticError:
                    break
                self.den[form] -= 1
            if self.den.get(form) == 0:
                del self.den[form]

    # -- constructors

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RatFunc":
        return cls(p, {})

    @classmethod
    def constant(cls, variables, c) -> "RatFunc":
        return cls(MultiPoly.constant(variables, c), {})

    @classmethod
    def one_over(cls, forms) -> "RatFunc":
        """1 / product of the given linear forms (a list, repeats allowed)."""
        forms = list(forms)
        if not forms:
            raise ValueError("need at least one linear form")
        variables = forms[0].variables
        den: dict = {}
        for f in forms:
            den[f] = den.get(f, 0) + 1
        return cls(MultiPoly.constant(variables, 1), den)

    @property
    def variables(self):
        return self.num.variables

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def degree(self) -> int:
        """Degree as a rational function (numerator minus denominator)."""
        return self.num.total_degree() - sum(self.den.values())

    # -- arithmetic

    def _common_den(self, other: "RatFunc"):
        forms = set(self.den) | set(other.den)
        common = {f: max(self.den.get(f, 0), other.den.get(f, 0)) for f in forms}
        a = self.num
        for f, mult in common.items():
            need = mult - self.den.get(f, 0)
            for _ in range(need):
                a = a * f
        b = other.num
        for f, mult in common.items():
            need = mult - other.den.get(f, 0)
            for _ in range(need):
                b = b * f
        return a, b, common

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.constant(self.variables, other)
        a, b, common = self._common_den(other)
        return RatFunc(a + b, common)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, dict(self.den))

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.constant(self.variables, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            den = dict(self.den)
            for f, mult in other.den.items():
                den[f] = den.get(f, 0) + mult
            return RatFunc(self.num * other.num, den)
        if isinstance(other, MultiPoly):
            return RatFunc(self.num * other, dict(self.den))
        return RatFunc(self.num * Fraction(other), dict(self.den))

    __rmul__ = __mul__

    def divide_by_form(self, form: MultiPoly) -> "RatFunc":
        den = dict(self.den)
        den[form] = den.get(form, 0) + 1
        return RatFunc(self.num, den)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            other = RatFunc.from_poly(other)
        elif not isinstance(other, RatFunc):
            try:
                other = RatFunc.constant(self.variables, other)
            except (TypeError, ValueError):
                return NotImplemented
        a, b, _ = self._common_den(other)
        return a == b

    def __hash__(self):
        return hash((self.num, frozenset(self.den.items())))

    def evaluate(self, values) -> Fraction:
        result = self.num.evaluate(values)
        for f, mult in self.den.items():
            v = f.evaluate(values)
            if v == 0:
                raise ZeroDivisionError("denominator vanishes at the point")
            result /= v**mult
        return result

    def as_poly(self) -> MultiPoly:
        if self.den:
            raise ValueError("rational function has a nontrivial denominator")
        return self.num

    def __str__(self):
        if not self.den:
            return str(self.num)
        factors = []
        for f in sorted(self.den, key=lambda p: str(p)):
            mult = self.den[f]
            factors.append(f"({f})" + (f"^{mult}" if mult > 1 else ""))
        return f"({self.num}) / ({'*'.join(factors)})"

    def __repr__(self):
        return f"RatFunc({str(self)})"


# -- the sequence calculus -----------------------------------------------------


def dbar_i(m: int, seq) -> RatFunc:
    """Product over k < p of 1/(beta_k - beta_p) for the sequence's partial sums."""
    names = alpha_names(m)
    seq = tuple(seq)
    if not seq:
        return RatFunc.constant(names, 1)
    sums = partial_sums(m, seq)
    top = sums[-1]
    forms = [(b - top).linear_form(names) for b in sums[:-1]]
    return RatFunc.one_over(forms)


def ft_i(m: int, seq) -> "ExpSum":
    """Fourier transform of the simplex measure of a sequence.

    Sum over j of e^{-beta_j} / prod_{k != j} (beta_k - beta_j); the partial
    sums are pairwise distinct in type A, which the construction checks.
    """
    names = alpha_names(m)
    seq = tuple(seq)
    sums = partial_sums(m, seq)
    if len(set(sums)) != len(sums):
        raise ValueError("repeated partial sums; transform undefined")
    coeffs: dict = {}
    for j, bj in enumerate(sums):
        forms = [(bk - bj).linear_form(names) for k, bk in enumerate(sums) if k != j]
        c = RatFunc.one_over(forms) if forms else RatFunc.constant(names, 1)
        coeffs[bj] = coeffs.get(bj, RatFunc.constant(names, 0)) + c
    return ExpSum(m, coeffs)


class ExpSum:
    """Finite sum of e^{-beta} with RatFunc coefficients, beta in Q_+."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: dict):
        self.m = m
        self.coeffs = {b: c for b, c in coeffs.items() if not c.is_zero()}

    @classmethod
    def point_mass(cls, m: int) -> "ExpSum":
        names = alpha_names(m)
        return cls(m, {Weight.zero(m): RatFunc.constant(names, 1)})

    def __add__(self, other: "ExpSum") -> "ExpSum":
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            out[b] = out[b] + c if b in out else c
        return ExpSum(self.m, out)

    def __sub__(self, other: "ExpSum") -> "ExpSum":
        return self + other.scale(-1)

    def scale(self, k) -> "ExpSum":
        return ExpSum(self.m, {b: c * k for b, c in self.coeffs.items()})

    def __mul__(self, other: "ExpSum") -> "ExpSum":
        out: dict = {}
        for b1, c1 in self.coeffs.items():
            for b2, c2 in other.coeffs.items():
                b = b1 + b2
                c = c1 * c2
                out[b] = out[b] + c if b in out else c
        return ExpSum(self.m, out)

    def __eq__(self, other):
        if not isinstance(other, ExpSum):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        names = alpha_names(self.m)
        zero = RatFunc.constant(names, 0)
        return all(
            self.coeffs.get(b, zero) == other.coeffs.get(b, zero) for b in keys
        )

    def coefficient(self, beta: Weight) -> RatFunc:
        return self.coeffs.get(beta, RatFunc.constant(alpha_names(self.m), 0))

    def support(self):
        return set(self.coeffs)

    def evaluate(self, x, t) -> Fraction:
        """Evaluate at a regular point x (trace-zero tuple) and torus point t.

        e^{-beta} evaluates to prod t_i^{-beta_i} using the sum-zero
        integer representative of beta.
        """
        values = {n: Fraction(v) for n, v in zip(alpha_names(self.m), _alpha_values(x))}
        total = Fraction(0)
        for b, c in self.coeffs.items():
            shift = sum(b.entries) // b.m
            exps = [e - shift for e in b.entries]
            tpow = Fraction(1)
            for e, ti in zip(exps, t):
                tpow *= Fraction(ti) ** (-e)
            total += tpow * c.evaluate(values)
        return total

    def serialize(self) -> list:
        out = []
        for b in sorted(self.coeffs, key=lambda w: w.entries):
            out.append({"exponent": str(b), "coeff": str(self.coeffs[b])})
        return out

    def __repr__(self):
        parts = [f"e^-{b} * {c}" for b, c in sorted(self.coeffs.items(), key=lambda kv: kv[0].entries)]
        return "ExpSum(" + " + ".join(parts) + ")"


def _alpha_values(x):
    return [Fraction(a) - Fraction(b) for a, b in zip(x, x[1:])]


def expsum_mul(a: ExpSum, b: ExpSum) -> ExpSum:
    return a * b


def measure_from_coeffs(m: int, c: dict, nu: Weight, mode: str):
    """Assemble sum of c(i) * Dbar_i (mode 'dbar') or c(i) * FT(D_i) (mode 'ft').

    The support of c must consist of sequences of weight nu.
    """
    names = alpha_names(m)
    for seq in c:
        if seq_weight(m, seq) != nu:
            raise ValueError(f"sequence {seq} does not have weight {nu}")
    if mode == "dbar":
        total = RatFunc.constant(names, 0)
        for seq in sorted(c):
            if c[seq]:
                total = total + dbar_i(m, seq) * c[seq]
        return total
    if mode == "ft":
        total = ExpSum(m, {})
        for seq in sorted(c):
            if c[seq]:
                total = total + ft_i(m, seq).scale(c[seq])
        return total
    raise ValueError(f"unknown mode {mode!r}")


def ft_total_mass(e: ExpSum, p: int, direction=None) -> Fraction:
    """Limit of the transform along alpha -> t * direction as t -> 0.

    Substituting alpha_i = c_i t turns each coefficient into a Laurent
    series in t; for the transform of a length-p sequence measure the limit
    is the coefficient of t^0, computed from truncated exponential series.
    The result should be the simplex volume 1/p!.
    """
    m = e.m
    if direction is None:
        direction = tuple(range(1, m))  # generic positive integers
    # evaluate sum_j exp(-b_j t)/prod(c_k - c_j) * t^{-p}: collect t^p coefficient
    total = Fraction(0)
    for b, coeff in e.coeffs.items():
        # coeff = q(alpha)/prod forms; along the ray: numerator ~ q(c)t^deg etc.
        # Restrict to the pure sequence shape: numerator constant, p linear forms.
        if coeff.num.is_constant():
            cnum = coeff.num.constant_term()
            forms_val = Fraction(1)
            order = 0
            for f, mult in coeff.den.items():
                v = f.evaluate({n: Fraction(c) for n, c in zip(alpha_names(m), direction)})
                forms_val *= v**mult
                order += mult
            if order != p:
                raise ValueError("coefficient is not a pure degree -p term")
            bval = b.pair(_ray_point(m, direction))
            # t^p coefficient of exp(-bval * t) is (-bval)^p / p!
            total += cnum * Fraction((-bval) ** p, factorial(p)) / forms_val
        else:
            raise ValueError("total-mass check expects simplex transforms")
    return total


def _ray_point(m: int, direction):
    """A trace-zero point whose alpha values are the direction entries."""
    # x with x_i - x_{i+1} = direction_i
    x = [Fraction(0)] * m
    for i in range(m - 2, -1, -1):
        x[i] = x[i + 1] + Fraction(direction[i])
    shift = sum(x) / m
    return [v - shift for v in x]
