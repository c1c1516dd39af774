"""Buchberger engine and ideal operations.

Deterministic by construction: normal pair selection (degree of the lcm,
then term order on the lcm), Gebauer-Moeller pair elimination, and a fully
reduced, monic output basis.  The hot loop works on primitive integer
coefficient dictionaries; Fractions only appear at the API boundary.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from .poly import GREVLEX, LEX, MultiPoly, TermOrder

IntPoly = dict  # monomial tuple -> int coefficient, content-free


# -- raw integer polynomial helpers -----------------------------------------


def _content_normalize(p: IntPoly) -> IntPoly:
    if not p:
        return p
    g = 0
    for c in p.values():
        g = gcd(g, c)
    if g > 1:
        for m in p:
            p[m] //= g
    return p


def _to_int_poly(f: MultiPoly) -> IntPoly:
    part, _ = f.primitive()
    return {m: int(c) for m, c in part.terms.items()}


def _from_int_poly(p: IntPoly, variables) -> MultiPoly:
    return MultiPoly(variables, {m: Fraction(c) for m, c in p.items()})


def _mon_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _mon_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mon_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _mon_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _lead(p: IntPoly, key: Callable) -> tuple:
    return max(p, key=key)


def _mon_mask(mon: tuple) -> int:
    mask = 0
    for i, e in enumerate(mon):
        if e:
            mask |= 1 << i
    return mask


def _normal_form_full(p: IntPoly, basis: Sequence[tuple], order) -> IntPoly:
    """Full normal form of p against basis entries (lm, poly[, deg, mask]).

    Fraction-free: rescalings applied to the working polynomial are mirrored
    on the remainder, so the output is the normal form up to overall content.
    The working terms sit behind a lazy max-heap so the running lead is
    found without rescanning.
    """
    import heapq

    heap_key = order.heap_key
    remainder: IntPoly = {}
    work = dict(p)
    heap = [(heap_key(m), m) for m in work]
    heapq.heapify(heap)
    steps = 0
    enriched = [
        e if len(e) == 4 else (e[0], e[1], sum(e[0]), _mon_mask(e[0]))
        for e in basis
    ]
    while heap:
        _, lm = heapq.heappop(heap)
        if lm not in work:
            continue
        dlm = sum(lm)
        mlm = _mon_mask(lm)
        hit = None
        for entry in enriched:
            if entry[2] > dlm or (entry[3] & ~mlm):
                continue
            if _mon_divides(entry[0], lm):
                hit = entry
                break
        if hit is None:
            remainder[lm] = work.pop(lm)
            continue
        lm_g, g = hit[0], hit[1]
        shift = _mon_div(lm, lm_g)
        trivial_shift = not any(shift)
        cp = work[lm]
        cg = g[lm_g]
        s = gcd(cp, cg)
        cp //= s
        cg //= s
        if cg != 1:
            for m in remainder:
                remainder[m] *= cg
            for m in work:
                work[m] *= cg
        for m, c in g.items():
            mm = m if trivial_shift else _mon_mul(m, shift)
            old = work.get(mm)
            v = (old or 0) - cp * c
            if v:
                work[mm] = v
                if old is None and mm != lm:
                    heapq.heappush(heap, (heap_key(mm), mm))
            else:
                work.pop(mm, None)
        work.pop(lm, None)
        steps += 1
        if steps % 8 == 0 or not work:
            gg = 0
            for c in work.values():
                gg = gcd(gg, c)
                if gg == 1:
                    break
            if gg != 1:
                for c in remainder.values():
                    gg = gcd(gg, c)
                    if gg == 1:
                        break
            if gg > 1:
                for m in work:
                    work[m] //= gg
                for m in remainder:
                    remainder[m] //= gg
    return _content_normalize(remainder)


def _spoly(f: IntPoly, lm_f: tuple, g: IntPoly, lm_g: tuple) -> IntPoly:
    l = _mon_lcm(lm_f, lm_g)
    cf = f[lm_f]
    cg = g[lm_g]
    s = gcd(cf, cg)
    cf //= s
    cg //= s
    sf = _mon_div(l, lm_f)
    sg = _mon_div(l, lm_g)
    out: IntPoly = {}
    for m, c in f.items():
        out[_mon_mul(m, sf)] = c * cg
    for m, c in g.items():
        mm = _mon_mul(m, sg)
        v = out.get(mm, 0) - c * cf
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return _content_normalize(out)


# -- Buchberger with Gebauer-Moeller pruning ---------------------------------


def _buchberger(gens: list, order) -> list:
    import heapq

    key = order.key

    basis: list = []  # entries (lm, poly, deg, mask)

    def enrich(p):
        lm = _lead(p, key)
        return (lm, p, sum(lm), _mon_mask(lm))

    # insert cheap reducers first: most of a redundant generating set then
    # drops out during the insertion normal forms
    gens = sorted(gens, key=lambda p: (sum(_lead(p, key)), len(p), key(_lead(p, key))))
    for p in gens:
        p = _normal_form_full(p, basis, order)
        if p:
            basis.append(enrich(p))

    heap: list = []  # (deg lcm, key(lcm), i, j); lcm cached in `live`
    live: dict = {}  # (i, j) -> lcm, for pairs still pending

    def push(i, j, l):
        live[(i, j)] = l
        heapq.heappush(heap, (sum(l), key(l), i, j))

    def update(new_index: int):
        """Gebauer-Moeller update on arrival of basis[new_index]."""
        lm_new = basis[new_index][0]
        lcms = [_mon_lcm(basis[i][0], lm_new) for i in range(new_index)]
        masks = [_mon_mask(l) for l in lcms]
        degs = [sum(l) for l in lcms]
        # criterion B: drop old pairs strictly refined by the new element
        mask_new = basis[new_index][3]
        for (i, j) in list(live):
            l = live[(i, j)]
            if mask_new & ~_mon_mask(l):
                continue
            if _mon_divides(lm_new, l) and lcms[i] != l and lcms[j] != l:
                del live[(i, j)]
        # criterion F first: one representative per lcm value (first index)
        by_lcm: dict = {}
        for i in range(new_index):
            by_lcm.setdefault(lcms[i], i)
        # criterion M among distinct lcm values, smallest degrees first
        distinct = sorted(by_lcm, key=lambda l: (sum(l), key(l)))
        kept: list = []
        for l in distinct:
            ml = _mon_mask(l)
            dl = sum(l)
            dominated = False
            for l2, m2, d2 in kept:
                if d2 >= dl or (m2 & ~ml):
                    continue
                if _mon_divides(l2, l):
                    dominated = True
                    break
            if not dominated:
                kept.append((l, ml, dl))
        for l, _, _ in kept:
            i = by_lcm[l]
            # product criterion: coprime leading terms reduce to zero
            if l == _mon_mul(basis[i][0], lm_new):
                continue
            push(i, new_index, l)

    for idx in range(len(basis)):
        update(idx)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        if (i, j) not in live:
            continue
        del live[(i, j)]
        s = _spoly(basis[i][1], basis[i][0], basis[j][1], basis[j][0])
        s = _normal_form_full(s, basis, order)
        if s:
            basis.append(enrich(s))
            update(len(basis) - 1)
    return basis


def _interreduce(basis: list, order) -> list:
    """Minimal then fully reduced basis, sorted by leading monomial."""
    key = order.key
    entries = [(e[0], e[1]) for e in basis]
    # minimality: drop members whose lead is divisible by another lead
    keep = []
    for i, (lm, p) in enumerate(entries):
        dominated = False
        for j, (lm2, _) in enumerate(entries):
            if i == j:
                continue
            if _mon_divides(lm2, lm) and (lm2 != lm or j < i):
                dominated = True
                break
        if not dominated:
            keep.append((lm, p))
    keep.sort(key=lambda t: key(t[0]))
    reduced = []
    for idx, (lm, p) in enumerate(keep):
        others = [keep[k] for k in range(len(keep)) if k != idx]
        r = _normal_form_full(p, others, order)
        if r:
            reduced.append((_lead(r, key), r))
    reduced.sort(key=lambda t: key(t[0]), reverse=True)
    return reduced


# -- public API ---------------------------------------------------------------


class GroebnerBasis:
    """Reduced Groebner basis; members are monic MultiPoly."""

    __slots__ = ("order", "gens", "variables", "reduced")

    def __init__(self, variables, gens: Sequence[MultiPoly], order: TermOrder):
        self.variables = tuple(variables)
        self.gens = tuple(gens)
        self.order = order
        self.reduced = True

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.gens]

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.variables == other.variables
            and self.order == other.order
            and set(self.gens) == set(other.gens)
        )

    def __repr__(self):
        return f"GroebnerBasis({len(self.gens)} gens, {self.order!r})"


def _check_same_ring(gens: Sequence[MultiPoly]):
    vars0 = None
    for g in gens:
        if vars0 is None:
            vars0 = g.variables
        elif g.variables != vars0:
            raise ValueError("generators live in different rings")
    return vars0


def groebner(gens: Sequence[MultiPoly], order: TermOrder = GREVLEX) -> GroebnerBasis:
    gens = [g for g in gens if not g.is_zero()]
    variables = _check_same_ring(gens)
    if variables is None:
        return GroebnerBasis((), (), order)
    raw = [_to_int_poly(g) for g in gens]
    basis = _buchberger(raw, order)
    basis = _interreduce(basis, order)
    out = [_from_int_poly(p, variables).monic(order) for _, p in basis]
    return GroebnerBasis(variables, out, order)


def normal_form(f: MultiPoly, G: GroebnerBasis) -> MultiPoly:
    """Remainder of f modulo the reduced basis; zero iff f lies in the ideal."""
    if not G.gens:
        return f
    if f.variables != G.variables:
        raise ValueError("polynomial and basis live in different rings")
    if f.is_zero():
        return f
    key = G.order.key
    basis = [(g.leading_monomial(G.order), g) for g in G.gens]
    work = dict(f.terms)
    remainder: dict = {}
    while work:
        lm = max(work, key=key)
        hit = None
        for lm_g, g in basis:
            if _mon_divides(lm_g, lm):
                hit = (lm_g, g)
                break
        if hit is None:
            remainder[lm] = work.pop(lm)
            continue
        lm_g, g = hit
        shift = _mon_div(lm, lm_g)
        coef = work[lm] / g.terms[lm_g]
        for m, c in g.terms.items():
            mm = _mon_mul(m, shift)
            v = work.get(mm, Fraction(0)) - coef * c
            if v:
                work[mm] = v
            else:
                work.pop(mm, None)
    return MultiPoly(f.variables, remainder)


def in_ideal(f: MultiPoly, G: GroebnerBasis) -> bool:
    return normal_form(f, G).is_zero()


def ideal_contains(G_big: GroebnerBasis, gens: Iterable[MultiPoly]) -> bool:
    return all(in_ideal(g, G_big) for g in gens)


def ideals_equal(gens_a: Sequence[MultiPoly], gens_b: Sequence[MultiPoly],
                 order: TermOrder = GREVLEX) -> bool:
    """Mutual containment of two ideals given by generators in one ring."""
    Ga = groebner(gens_a, order)
    Gb = groebner(gens_b, order)
    return ideal_contains(Ga, gens_b) and ideal_contains(Gb, gens_a)


# -- variable bookkeeping -----------------------------------------------------


def _fresh_name(variables, stem: str) -> str:
    name = stem
    k = 0
    while name in variables:
        k += 1
        name = f"{stem}{k}"
    return name


def _extend_ring(gens: Sequence[MultiPoly], extra: str, front: bool):
    """Re-embed generators into a ring with one extra variable."""
    variables = gens[0].variables
    new_vars = (extra,) + variables if front else variables + (extra,)
    return new_vars, [g.rename(new_vars) for g in gens]


def eliminate(gens: Sequence[MultiPoly], drop: Iterable[str]) -> list:
    """Generators of the ideal intersected with the subring without `drop`."""
    gens = [g for g in gens if not g.is_zero()]
    variables = _check_same_ring(gens)
    drop = tuple(drop)
    if variables is None:
        return []
    for v in drop:
        if v not in variables:
            raise ValueError(f"cannot drop unknown variable {v!r}")
    keep = tuple(v for v in variables if v not in drop)
    ordered = tuple(drop) + keep
    reordered = [g.rename(ordered) for g in gens]
    G = groebner(reordered, TermOrder("block", len(drop)))
    out = []
    for g in G.gens:
        if g.support_variables() & set(drop):
            continue
        out.append(g.restrict(keep))
    return out


def saturate(gens: Sequence[MultiPoly], f: MultiPoly, cross_check: bool = False) -> list:
    """(I : f^infinity) by the extra-variable method.

    With cross_check=True the iterated ideal quotient route is run as well
    and the two results are asserted equal.
    """
    if f.is_zero():
        raise ValueError("cannot saturate by zero")
    gens = [g for g in gens if not g.is_zero()]
    variables = _check_same_ring(gens) or f.variables
    if f.variables != variables:
        raise ValueError("saturating element lives in a different ring")
    if not gens:
        return []
    aux = _fresh_name(variables, "zsat")
    new_vars, lifted = _extend_ring(gens, aux, front=True)
    f_l = f.rename(new_vars)
    y = MultiPoly.var(new_vars, aux)
    lifted.append(y * f_l - MultiPoly.constant(new_vars, 1))
    result = eliminate(lifted, (aux,))
    result = [g.restrict(variables) if g.variables != variables else g for g in result]
    if cross_check:
        alt = _saturate_by_quotients(gens, f)
        if not ideals_equal(result, alt):
            raise AssertionError("saturation cross-check failed")
    return result


def ideal_quotient(gens: Sequence[MultiPoly], f: MultiPoly) -> list:
    """(I : f) via I cap (f) computed with one auxiliary variable."""
    gens = [g for g in gens if not g.is_zero()]
    variables = _check_same_ring(gens) or f.variables
    if not gens:
        return []
    aux = _fresh_name(variables, "zquo")
    new_vars, lifted = _extend_ring(gens, aux, front=True)
    t = MultiPoly.var(new_vars, aux)
    f_l = f.rename(new_vars)
    mixed = [t * g for g in lifted]
    mixed.append((MultiPoly.constant(new_vars, 1) - t) * f_l)
    inter = eliminate(mixed, (aux,))
    out = []
    for g in inter:
        g = g.restrict(variables) if g.variables != variables else g
        q = _exact_poly_division(g, f)
        out.append(q)
    return out


def _exact_poly_division(g: MultiPoly, f: MultiPoly) -> MultiPoly:
    """g / f when the division is exact; raises otherwise."""
    if g.is_zero():
        return g
    order = GREVLEX
    key = order.key
    work = dict(g.terms)
    quo: dict = {}
    lm_f = f.leading_monomial(order)
    lc_f = f.terms[lm_f]
    while work:
        lm = max(work, key=key)
        if not _mon_divides(lm_f, lm):
            raise ArithmeticError("inexact polynomial division")
        shift = _mon_div(lm, lm_f)
        c = work[lm] / lc_f
        quo[shift] = c
        for m, cf in f.terms.items():
            mm = _mon_mul(m, shift)
            v = work.get(mm, Fraction(0)) - c * cf
            if v:
                work[mm] = v
            else:
                work.pop(mm, None)
    return MultiPoly(g.variables, quo)


def _saturate_by_quotients(gens: Sequence[MultiPoly], f: MultiPoly) -> list:
    current = list(gens)
    while True:
        nxt = ideal_quotient(current, f)
        if ideals_equal(current, nxt):
            return list(groebner(current).gens)
        current = nxt


def homogenize(gens: Sequence[MultiPoly], hvar: str) -> list:
    """Generators of the homogenization (w.r.t. total degree) of the ideal.

    Homogenizes a grevlex Groebner basis, which is enough to generate the
    homogenized ideal; the result is saturated with respect to hvar.
    """
    gens = [g for g in gens if not g.is_zero()]
    variables = _check_same_ring(gens)
    if variables is None:
        return []
    G = groebner(gens, GREVLEX)
    new_vars = variables + (hvar,)
    out = []
    for g in G.gens:
        d = g.total_degree()
        terms = {}
        for m, c in g.terms.items():
            terms[m + (d - sum(m),)] = c
        out.append(MultiPoly(new_vars, terms))
    return out
