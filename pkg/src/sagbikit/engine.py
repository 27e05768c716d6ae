"""Subduction and the SAGBI completion loop.

The general variant recomputes the binomial kernel of the initial
monomials each round, subduces every binomial against the frozen
round-start family, and appends the nonzero remainders.  The
degree-by-degree variant does the same work filtered by normalized
degree, advancing one degree at a time.

A bookkeeper with callbacks `on_new_element(binomial, trace, index,
divisor)` and `on_relation(binomial, trace)` can observe every
subduction outcome; the defining-ideal module plugs in there.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .groebner import Binomial, PresentationRing, toric_kernel
from .orders import MonomialOrder, leading_exponent, leading_term, make_monic
from .rings import Polynomial, RingContext


@dataclass
class SubductionTrace:
    """g = sum of coeff * (product of family members)^mult + remainder.

    Each step is (coefficient, factorization) with the factorization a
    dict member-index -> multiplicity.
    """
    steps: list[tuple[object, dict[int, int]]]
    remainder: Polynomial
    monic_divisor: object


class GeneratorFamily:
    """Ordered monic generators with their tags and initial monomials."""

    def __init__(self, polys: list[Polynomial], order: MonomialOrder,
                 tag_prefix: str = "Y"):
        if not polys:
            raise ValueError("empty generator family")
        self.ring = polys[0].ring
        self.order = order
        self.tag_prefix = tag_prefix
        self.members: list[Polynomial] = []
        self.input_divisors: list[object] = []
        self.initials: list[tuple[int, ...]] = []
        self.norm_gcd = 0
        self.presentation = PresentationRing([], [])
        for f in polys:
            self.append(f)
        self.n_original = len(self.members)

    def append(self, f: Polynomial) -> int:
        if f.is_zero():
            raise ValueError("zero generator")
        if f.ring != self.ring:
            raise ValueError("generator in wrong ring")
        monic, divisor = make_monic(self.order, f)
        self.members.append(monic)
        self.input_divisors.append(divisor)
        self.initials.append(leading_exponent(self.order, monic))
        d = self.ring.degree(self.initials[-1])
        self.norm_gcd = gcd(self.norm_gcd, d)
        idx = len(self.members) - 1
        self.presentation.append(f"{self.tag_prefix}{idx + 1}", d)
        return idx

    def __len__(self):
        return len(self.members)

    def tags(self) -> list[str]:
        return list(self.presentation.tags)

    def normalized_degree(self, idx: int) -> int:
        return self.presentation.degrees[idx] // self.norm_gcd

    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f in self.members)

    def phi_monomial(self, exponent: dict[int, int] | tuple[int, ...]) -> Polynomial:
        """Image of a presentation monomial: product of members."""
        if not isinstance(exponent, dict):
            exponent = {i: e for i, e in enumerate(exponent) if e}
        out = Polynomial.constant(self.ring, 1)
        for idx in sorted(exponent):
            out = out * self.members[idx] ** exponent[idx]
        return out

    def phi_binomial(self, b: Binomial) -> Polynomial:
        return self.phi_monomial(b.plus) - self.phi_monomial(b.minus)

    def binomial_degree(self, b: Binomial) -> int:
        return sum(e * self.normalized_degree(i) for i, e in enumerate(b.plus))

    def factor_initial(self, target: tuple[int, ...]) -> dict[int, int] | None:
        """Write target as a sum of initial exponents, or None.

        Among all factorizations the lexicographically smallest
        non-decreasing index sequence is returned, which keeps traces
        and the defining ideal deterministic.
        """
        inits = self.initials
        failed: set[tuple[int, tuple[int, ...]]] = set()
        out: list[int] = []

        def rec(start: int, residual: tuple[int, ...], total: int) -> bool:
            if total == 0:
                return True
            key = (start, residual)
            if key in failed:
                return False
            for u in range(start, len(inits)):
                e = inits[u]
                fits = True
                for a, b in zip(e, residual):
                    if a > b:
                        fits = False
                        break
                if fits:
                    out.append(u)
                    if rec(u, tuple(b - a for a, b in zip(e, residual)),
                           total - sum(e)):
                        return True
                    out.pop()
            failed.add(key)
            return False

        if not rec(0, target, sum(target)):
            return None
        factor: dict[int, int] = {}
        for u in out:
            factor[u] = factor.get(u, 0) + 1
        return factor


def subduct(g: Polynomial, family: GeneratorFamily, tail: bool = True) -> SubductionTrace:
    """Subduction of g modulo the family.

    With tail=False the loop stops at the first leading monomial that is
    not a product of initials; with tail=True such monomials migrate to
    the remainder and subduction continues on the lower terms.
    """
    order = family.order
    ring = g.ring
    key = order.key
    steps: list[tuple[object, dict[int, int]]] = []
    remainder_terms: dict[tuple[int, ...], object] = {}
    current = g
    prev_key = None
    while not current.is_zero():
        lead, lc = leading_term(order, current)
        lk = key(lead)
        if prev_key is not None and not lk < prev_key:
            raise AssertionError("subduction failed to descend")
        prev_key = lk
        factor = family.factor_initial(lead)
        if factor is None:
            if not tail:
                for e, c in current.terms.items():
                    remainder_terms[e] = c
                break
            remainder_terms[lead] = lc
            current = current - Polynomial.monomial(ring, lead, lc)
            continue
        steps.append((lc, factor))
        current = current - family.phi_monomial(factor).scale(lc)
    remainder = Polynomial(ring, remainder_terms)
    divisor = ring.one()
    if not remainder.is_zero():
        divisor = leading_term(order, remainder)[1]
    return SubductionTrace(steps=steps, remainder=remainder, monic_divisor=divisor)


def tete_a_tetes(family: GeneratorFamily) -> list[Binomial]:
    """Binomial generators of the kernel of Y_u -> in(f_u)."""
    return toric_kernel(family.initials, family.ring)


@dataclass
class SagbiResult:
    basis: GeneratorFamily
    status: str  # "complete" or "truncated"
    rounds: int
    comp_degree: int | None = None
    new_element_log: list[tuple[int, Binomial, int]] = field(default_factory=list)

    def max_degree(self) -> int:
        return max(self.basis.normalized_degree(i) for i in range(len(self.basis)))


class _NullBookkeeper:
    def on_new_element(self, binomial, trace, index, divisor):
        pass

    def on_relation(self, binomial, trace):
        pass


def sagbi_general(family: GeneratorFamily, *, round_bound: int | None = None,
                  degree_bound: int | None = None,
                  bookkeeper=None) -> SagbiResult:
    """Round-based SAGBI completion (no grading assumptions)."""
    bk = bookkeeper or _NullBookkeeper()
    log: list[tuple[int, Binomial, int]] = []
    rounds = 0
    while True:
        if round_bound is not None and rounds >= round_bound:
            return SagbiResult(family, "truncated", rounds, new_element_log=log)
        binomials = tete_a_tetes(family)
        if degree_bound is not None:
            skipped = [b for b in binomials
                       if family.binomial_degree(b) > degree_bound]
            binomials = [b for b in binomials
                         if family.binomial_degree(b) <= degree_bound]
        else:
            skipped = []
        fresh: list[tuple[Binomial, SubductionTrace, Polynomial, object]] = []
        for b in binomials:
            trace = subduct(family.phi_binomial(b), family, tail=True)
            if trace.remainder.is_zero():
                bk.on_relation(b, trace)
            else:
                monic = trace.remainder.scale(family.ring.cinv(trace.monic_divisor))
                fresh.append((b, trace, monic, trace.monic_divisor))
        rounds += 1
        if not fresh:
            status = "truncated" if skipped else "complete"
            return SagbiResult(family, status, rounds, new_element_log=log)
        for b, trace, monic, divisor in fresh:
            idx = family.append(monic)
            log.append((rounds, b, idx))
            bk.on_new_element(b, trace, idx, divisor)


def sagbi_by_degree(family: GeneratorFamily, degree_bound: int,
                    bookkeeper=None) -> SagbiResult:
    """Degree-by-degree SAGBI completion for graded homogeneous input.

    Processes tete-a-tetes in increasing normalized degree; completeness
    is recognized at the first degree with nothing left to subduce.
    """
    if not family.is_homogeneous():
        raise ValueError("degree-by-degree variant needs homogeneous generators")
    bk = bookkeeper or _NullBookkeeper()
    log: list[tuple[int, Binomial, int]] = []
    d = 1
    rounds = 0
    binomials = tete_a_tetes(family)
    processed: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    while d <= degree_bound:
        pending = [b for b in binomials
                   if family.binomial_degree(b) <= d
                   and (b.plus, b.minus) not in processed]
        if not pending:
            if all(family.binomial_degree(b) <= d for b in binomials):
                return SagbiResult(family, "complete", rounds, comp_degree=d,
                                   new_element_log=log)
            d += 1
            continue
        rounds += 1
        fresh = []
        for b in pending:
            trace = subduct(family.phi_binomial(b), family, tail=True)
            processed.add((b.plus, b.minus))
            if trace.remainder.is_zero():
                bk.on_relation(b, trace)
            else:
                monic = trace.remainder.scale(family.ring.cinv(trace.monic_divisor))
                fresh.append((b, trace, monic, trace.monic_divisor))
        if fresh:
            for b, trace, monic, divisor in fresh:
                idx = family.append(monic)
                log.append((d, b, idx))
                bk.on_new_element(b, trace, idx, divisor)
            # the family changed: all kernel binomials must be rechecked
            binomials = tete_a_tetes(family)
            processed = set()
        else:
            d += 1
    return SagbiResult(family, "truncated", rounds, comp_degree=None,
                       new_element_log=log)


def is_sagbi_up_to(family: GeneratorFamily, k_max: int,
                   grading: str = "normalized") -> int | None:
    """Smallest degree where the initial-monomial algebra falls short, or None."""
    from .hilbert import semigroup_hilbert, subalgebra_hilbert
    if not family.is_homogeneous():
        raise ValueError("Hilbert comparison needs homogeneous generators")
    sub = subalgebra_hilbert(family.members, k_max, family.order, grading)
    semi = semigroup_hilbert(family.initials, k_max, family.ring, grading)
    for k in range(k_max + 1):
        if semi.values[k] != sub.values[k]:
            return k
    return None
