"""Defining ideals via retract bookkeeping alongside the SAGBI loop.

Every subduction outcome either extends the retract (nonzero remainder:
the new tag variable is rewritten in the original presentation
variables) or contributes a generator of the kernel of the original
presentation (zero remainder).  Relations are stated for the monic
versions of the input generators; input leading coefficients are
recorded on the family as ``input_divisors``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .engine import GeneratorFamily, SagbiResult, sagbi_by_degree, sagbi_general
from .groebner import Binomial, buchberger, normal_form
from .orders import MonomialOrder, degrevlex_order, weight_order
from .rings import Polynomial, RingContext


class Retract:
    """Rewrites every tag variable as a polynomial in the original tags."""

    def __init__(self, p0: RingContext):
        self.p0 = p0
        self.images: list[Polynomial] = [Polynomial.variable(p0, i)
                                         for i in range(p0.nvars)]

    def image(self, idx: int) -> Polynomial:
        return self.images[idx]

    def append(self, poly: Polynomial):
        self.images.append(poly)

    def of_monomial(self, factor) -> Polynomial:
        """Image of a presentation monomial (dict index->mult or tuple)."""
        if not isinstance(factor, dict):
            factor = {i: e for i, e in enumerate(factor) if e}
        out = Polynomial.constant(self.p0, 1)
        for idx in sorted(factor):
            out = out * self.images[idx] ** factor[idx]
        return out

    def of_combination(self, binomial: Binomial, steps) -> Polynomial:
        """Image of  binomial - sum coeff * Y^step."""
        out = self.of_monomial(binomial.plus) - self.of_monomial(binomial.minus)
        for coeff, factor in steps:
            out = out - self.of_monomial(factor).scale(coeff)
        return out

    def verify(self, family: GeneratorFamily) -> bool:
        """pi(rho(Y_u)) must reproduce the stored basis element f_u."""
        originals = family.members[:family.n_original]
        for idx, img in enumerate(self.images):
            if img.substitute(originals) != family.members[idx]:
                return False
        return True


@dataclass
class RelationSet:
    ring: RingContext
    generators: list[Polynomial] = field(default_factory=list)
    minimized: bool = False


class RelationBookkeeper:
    def __init__(self, family: GeneratorFamily):
        degrees = [family.normalized_degree(i) for i in range(len(family))]
        p0 = RingContext(tuple(family.presentation.tags), 0, tuple(degrees))
        self.retract = Retract(p0)
        self.relations: list[Polynomial] = []
        self._seen: set = set()

    def on_new_element(self, binomial, trace, index, divisor):
        img = self.retract.of_combination(binomial, trace.steps)
        img = img.scale(img.ring.cinv(img.ring.coeff(divisor)))
        self.retract.append(img)

    def on_relation(self, binomial, trace):
        rel = self.retract.of_combination(binomial, trace.steps)
        if rel.is_zero():
            return
        key = rel.key()
        if key not in self._seen:
            self._seen.add(key)
            self.relations.append(rel)


def _p0_order(ring: RingContext) -> MonomialOrder:
    return weight_order(ring.grading, degrevlex_order(ring.nvars))


def interreduce(polys: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    """One pass of reducing each generator against all the others."""
    out = list(polys)
    for i in range(len(out)):
        others = [g for j, g in enumerate(out) if j != i and not g.is_zero()]
        if others:
            out[i] = normal_form(out[i], others, order)
    return [g for g in out if not g.is_zero()]


def sagbi_with_relations(polys: list[Polynomial], order: MonomialOrder, *,
                         variant: str = "general",
                         round_bound: int | None = None,
                         degree_bound: int | None = None
                         ) -> tuple[SagbiResult, Retract, RelationSet]:
    """Run the SAGBI loop while accumulating the defining ideal."""
    family = GeneratorFamily(polys, order)
    bk = RelationBookkeeper(family)
    if variant == "general":
        result = sagbi_general(family, round_bound=round_bound,
                               degree_bound=degree_bound, bookkeeper=bk)
    elif variant == "degree":
        if degree_bound is None:
            raise ValueError("degree variant needs a degree bound")
        result = sagbi_by_degree(family, degree_bound, bookkeeper=bk)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    p0 = bk.retract.p0
    gens = interreduce(bk.relations, _p0_order(p0))
    gens.sort(key=lambda g: (g.degree(), g.key()))
    return result, bk.retract, RelationSet(ring=p0, generators=gens)


def minimize_relations(rels: RelationSet) -> RelationSet:
    """Drop generators lying in the ideal of the kept ones (degree-ascending).

    Kept generators come out monic under the presentation order.
    """
    from .orders import make_monic
    order = _p0_order(rels.ring)
    ordered = sorted(rels.generators, key=lambda g: (g.degree(), g.key()))
    kept: list[Polynomial] = []
    gb: list[Polynomial] = []
    for g in ordered:
        if gb and normal_form(g, gb, order).is_zero():
            continue
        kept.append(make_monic(order, g)[0])
        gb = buchberger(kept, order)
    return RelationSet(ring=rels.ring, generators=kept, minimized=True)


def verify_relations(family: GeneratorFamily, rels: RelationSet):
    """Substitute the generators into every relation; exact zero required.

    Returns (True, None) or (False, offending polynomial).
    """
    originals = family.members[:family.n_original]
    for g in rels.generators:
        if not g.substitute(originals).is_zero():
            return False, g
    return True, None


def elimination_kernel(polys: list[Polynomial], tag_prefix: str = "Y"
                       ) -> tuple[RingContext, list[Polynomial]]:
    """Ker(Y_u -> f_u) by elimination; the independent cross-check route."""
    if not polys:
        raise ValueError("empty generator list")
    ring = polys[0].ring
    nx = ring.nvars
    p = len(polys)
    degrees = [f.degree() for f in polys]
    combined = RingContext(
        tuple(f"x{i}" for i in range(nx))
        + tuple(f"{tag_prefix}{u + 1}" for u in range(p)),
        ring.characteristic,
        ring.grading + tuple(degrees))
    order = weight_order((1,) * nx + (0,) * p, degrevlex_order(nx + p))
    gens = []
    for u, f in enumerate(polys):
        terms = {tuple(e) + (0,) * p: ring.cneg(c) for e, c in f.terms.items()}
        e_y = [0] * (nx + p)
        e_y[nx + u] = 1
        e_y = tuple(e_y)
        terms[e_y] = ring.cadd(terms.get(e_y, 0), 1)
        gens.append(Polynomial(combined, terms))
    basis = buchberger(gens, order)
    from math import gcd
    g = 0
    for d in degrees:
        g = gcd(g, d)
    p0 = RingContext(tuple(f"{tag_prefix}{u + 1}" for u in range(p)), ring.characteristic,
                     tuple(d // g for d in degrees))
    out = []
    for f in basis:
        if any(any(e[:nx]) for e in f.terms):
            continue
        out.append(Polynomial(p0, {tuple(e[nx:]): c for e, c in f.terms.items()}))
    return p0, out
