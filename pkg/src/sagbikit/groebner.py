"""Buchberger machinery and binomial kernels of monomial maps.

The toric kernel (relations among a list of monomials) is computed by
elimination: a Groebner basis of the ideal (Y_u - X^{m_u}) under a
block order with the X variables first, intersected with the Y
subring.  When the exponent vectors are linearly independent the
kernel is zero and the elimination is skipped.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

from .hilbert import krull_dim_monomial
from .orders import MonomialOrder, degrevlex_order, leading_term, make_monic, weight_order
from .rings import Polynomial, RingContext


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(f: Polynomial, basis: list[Polynomial], order: MonomialOrder) -> Polynomial:
    """Full remainder of f on division by the basis (head and tail reduced)."""
    if not basis:
        return f
    ring = f.ring
    key = order.key
    leads = [(max(g.terms, key=key), g) for g in basis]
    work = dict(f.terms)
    remainder: dict[tuple[int, ...], object] = {}
    while work:
        lead = max(work, key=key)
        c = work.pop(lead)
        for lt_g, g in leads:
            if _divides(lt_g, lead):
                shift = tuple(x - y for x, y in zip(lead, lt_g))
                factor = ring.cmul(c, ring.cinv(g.terms[lt_g]))
                for e, gc in g.terms.items():
                    if e == lt_g:
                        continue
                    te = tuple(x + y for x, y in zip(e, shift))
                    v = ring.cadd(work.get(te, 0), ring.cneg(ring.cmul(factor, gc)))
                    if v:
                        work[te] = v
                    else:
                        work.pop(te, None)
                break
        else:
            remainder[lead] = c
    res = Polynomial.__new__(Polynomial)
    res.ring, res.terms, res._key = ring, remainder, None
    return res


def _spoly(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf, cf = leading_term(order, f)
    lg, cg = leading_term(order, g)
    L = _lcm(lf, lg)
    ring = f.ring
    a = f.mul_monomial(tuple(x - y for x, y in zip(L, lf)), ring.cinv(cf))
    b = g.mul_monomial(tuple(x - y for x, y in zip(L, lg)), ring.cinv(cg))
    return a - b


def buchberger(gens: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    """Reduced monic Groebner basis (normal selection strategy).

    Pair management follows Gebauer-Moeller: new pairs are pruned by the
    lcm-divisibility and coprimality criteria, and old pairs subsumed by
    the new leading term are dropped.
    """
    key = order.key
    basis: list[Polynomial] = []
    leads: list[tuple[int, ...]] = []
    pairs: list = []  # heap of (deg lcm, key(lcm), i, j, lcm)

    def add_element(f: Polynomial):
        basis.append(f)
        leads.append(max(f.terms, key=key))
        t = len(basis) - 1
        lt = leads[t]
        cand = [(i, _lcm(leads[i], lt)) for i in range(t)]
        survivors = []
        for i, L in cand:
            dominated = False
            for j, L2 in cand:
                if j != i and _divides(L2, L) and (L2 != L or j < i):
                    dominated = True
                    break
            if not dominated:
                survivors.append((i, L))
        # coprime criterion
        survivors = [(i, L) for i, L in survivors
                     if any(a and b for a, b in zip(leads[i], lt))]
        # drop old pairs strictly refined by the new element
        kept = []
        for entry in pairs:
            _, _, i, j, L = entry
            if (_divides(lt, L) and _lcm(leads[i], lt) != L
                    and _lcm(leads[j], lt) != L):
                continue
            kept.append(entry)
        pairs[:] = kept
        heapq.heapify(pairs)
        for i, L in survivors:
            heapq.heappush(pairs, (sum(L), key(L), i, t, L))

    for f in gens:
        if f.is_zero():
            continue
        add_element(make_monic(order, f)[0])

    while pairs:
        _, _, i, j, L = heapq.heappop(pairs)
        s = _spoly(basis[i], basis[j], order)
        r = normal_form(s, basis, order)
        if not r.is_zero():
            add_element(make_monic(order, r)[0])

    # interreduce: minimal leads, then tail-reduce each element
    keep = []
    for i, f in enumerate(basis):
        li = leads[i]
        minimal = True
        for j, lj in enumerate(leads):
            if j != i and _divides(lj, li) and (lj != li or j < i):
                minimal = False
                break
        if minimal:
            keep.append(f)
    reduced = []
    for i, f in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = normal_form(f, others, order) if others else f
        if not r.is_zero():
            reduced.append(make_monic(order, r)[0])
    reduced.sort(key=lambda g: key(max(g.terms, key=key)))
    return reduced


@dataclass(frozen=True)
class Binomial:
    """Pure difference Y^plus - Y^minus in the presentation variables."""
    plus: tuple[int, ...]
    minus: tuple[int, ...]

    def degree(self, weights) -> int:
        return sum(a * w for a, w in zip(self.plus, weights))


class PresentationRing:
    """Ring of tag variables Y_u, one per generator; extendable in place."""

    def __init__(self, tags: list[str], degrees: list[int]):
        self.tags = list(tags)
        self.degrees = list(degrees)

    def append(self, tag: str, degree: int) -> int:
        self.tags.append(tag)
        self.degrees.append(degree)
        return len(self.tags) - 1

    def context(self) -> RingContext:
        return RingContext(self.tags, 0, self.degrees)

    def __len__(self):
        return len(self.tags)


def toric_kernel(monomials: list[tuple[int, ...]], ring: RingContext) -> list[Binomial]:
    """Binomial generators of the kernel of Y_u -> X^{m_u}."""
    monomials = [tuple(m) for m in monomials]
    if not monomials:
        return []
    if any(not any(m) for m in monomials):
        raise ValueError("monomials must be nonzero")
    p = len(monomials)
    if krull_dim_monomial(monomials) == p:
        return []

    nx = ring.nvars
    combined = RingContext(
        tuple(f"x{i}" for i in range(nx)) + tuple(f"y{u}" for u in range(p)),
        0,
        ring.grading + tuple(ring.degree(m) for m in monomials))
    order = weight_order((1,) * nx + (0,) * p, degrevlex_order(nx + p))
    gens = []
    for u, m in enumerate(monomials):
        e_y = [0] * (nx + p)
        e_y[nx + u] = 1
        e_x = list(m) + [0] * p
        gens.append(Polynomial(combined, {tuple(e_y): 1, tuple(e_x): -1}))
    basis = buchberger(gens, order)

    out = []
    for g in basis:
        if any(any(e[:nx]) for e in g.terms):
            continue
        if len(g.terms) != 2:
            raise AssertionError("toric eliminant is not binomial")
        (e1, c1), (e2, c2) = sorted(g.terms.items(), key=lambda t: order.key(t[0]),
                                    reverse=True)
        if c1 != 1 or c2 != -1:
            raise AssertionError("toric binomial has non-unit coefficients")
        plus = tuple(e1[nx:])
        minus = tuple(e2[nx:])
        psi_plus = [0] * nx
        psi_minus = [0] * nx
        for u in range(p):
            for i in range(nx):
                psi_plus[i] += plus[u] * monomials[u][i]
                psi_minus[i] += minus[u] * monomials[u][i]
        if psi_plus != psi_minus:
            raise AssertionError("binomial does not evaluate to zero under psi")
        out.append(Binomial(plus, minus))
    weights = [ring.degree(m) for m in monomials]
    out.sort(key=lambda b: (b.degree(weights), b.plus, b.minus))
    return _minimalize_binomials(out, weights)


def _minimalize_binomials(binoms: list[Binomial], weights: list[int]) -> list[Binomial]:
    """Greedy degree-ascending pass keeping only needed generators.

    The input generates a weighted-homogeneous ideal, so a generator is
    redundant exactly when it reduces to zero against the earlier kept
    ones (graded Nakayama).
    """
    if len(binoms) <= 1:
        return binoms
    p = len(weights)
    yring = RingContext(tuple(f"y{u}" for u in range(p)), 0, tuple(weights))
    order = degrevlex_order(p)
    kept: list[Binomial] = []
    kept_polys: list[Polynomial] = []
    gb: list[Polynomial] = []
    for b in binoms:
        poly = Polynomial(yring, {b.plus: 1, b.minus: -1})
        if not gb or not normal_form(poly, gb, order).is_zero():
            kept.append(b)
            kept_polys.append(poly)
            gb = buchberger(kept_polys, order)
    return kept
