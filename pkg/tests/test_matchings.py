import random
from itertools import product

import pytest

from oracles import coherent_by_hull
from sagbikit.formats import parse_polynomial
from sagbikit.hilbert import expand_series, h_vector, krull_dim_monomial, semigroup_hilbert
from sagbikit.matchings import (Matching, enumerate_vertices_exhaustive,
                                enumerate_vertices_random, extend_matching,
                                full_support, is_coherent, make_matching,
                                matching_from_weight, restrict_matching,
                                sagbi_defect)
from sagbikit.minors import (MatrixRing, Q_matrix, determinant, full_group, minors,
                             submax_lex_order)
from sagbikit.orders import TieError, leading_exponent
from sagbikit.rings import Polynomial, RingContext
from sagbikit.universal import diagonal_matching, g36_reference


def test_matching_from_weight_diagonal_matching():
    # geometric row-major weights realize the lex diagonal order, so every
    # minor selects its main diagonal
    M = MatrixRing(3, 3)
    fam = [mi.polynomial for mi in minors(2, M)]
    w = [3 ** (8 - k) for k in range(9)]
    m = matching_from_weight(fam, w)
    assert m.exponent_sum == (4, 2, 0, 2, 2, 2, 0, 2, 4)
    assert m.coherent and m.witness == w


def test_matching_from_weight_dominant_diagonal_gives_q3():
    # a weight concentrated on the main diagonal maximizes diagonal usage,
    # which is the unique full-support vertex
    M = MatrixRing(3, 3)
    fam = [mi.polynomial for mi in minors(2, M)]
    w = [0] * 9
    for i in range(3):
        w[M.cell(i, i)] = 100 + i
    m = matching_from_weight(fam, w)
    assert m.exponent_sum == M.to_flat(Q_matrix(3))


def test_matching_from_weight_table_3x4_vertex_one():
    M = MatrixRing(3, 4)
    fam = [mi.polynomial for mi in minors(2, M)]
    w1 = [1, 0, 2, 3, 3, 0, 3, 2, 0, 2, 2, 0]
    m = matching_from_weight(fam, w1)
    assert m.exponent_sum == (2, 2, 2, 6, 6, 1, 3, 2, 1, 6, 4, 1)


def test_all_ones_weight_ties_on_minors():
    M = MatrixRing(2, 2)
    with pytest.raises(TieError):
        matching_from_weight([determinant(M)], [1, 1, 1, 1])


def test_is_coherent_2x3_brute_force():
    M = MatrixRing(2, 3)
    fam = [mi.polynomial for mi in minors(2, M)]
    verdicts = []
    for sel in product(*[sorted(f.terms) for f in fam]):
        w = is_coherent(fam, sel)
        verdicts.append(w is not None)
        assert (w is not None) == coherent_by_hull(fam, sel)
    assert sum(verdicts) == 6
    bad = []
    for pairs in ([(0, 0), (1, 1)], [(0, 2), (1, 0)], [(0, 1), (1, 2)]):
        e = [0] * 6
        for i, j in pairs:
            e[M.cell(i, j)] += 1
        bad.append(tuple(e))
    assert is_coherent(fam, bad) is None


def test_is_coherent_returns_positive_integral_witness():
    M = MatrixRing(3, 4)
    fam = [mi.polynomial for mi in minors(2, M)]
    sel = matching_from_weight(fam, [1, 0, 2, 3, 3, 0, 3, 2, 0, 2, 2, 0]).selection
    w = is_coherent(fam, sel)
    assert w is not None
    assert all(isinstance(v, int) and v >= 1 for v in w)


def test_is_coherent_agrees_with_hull_oracle_random():
    rng = random.Random(22)
    done = 0
    while done < 60:
        nv = rng.randint(2, 4)
        ring = RingContext([f"x{i}" for i in range(nv)])
        fam = []
        for _ in range(rng.randint(1, 5)):
            terms = {}
            deg = rng.randint(1, 3)
            for _ in range(rng.randint(1, 3)):
                e = [0] * nv
                left = deg
                for i in range(nv - 1):
                    t = rng.randint(0, left)
                    e[i] = t
                    left -= t
                e[-1] = left
                terms[tuple(e)] = 1
            fam.append(Polynomial(ring, terms))
        sel = [sorted(f.terms)[rng.randrange(len(f.terms))] for f in fam]
        assert (is_coherent(fam, sel) is not None) == coherent_by_hull(fam, sel)
        done += 1


def test_enumerate_3x3_catalog():
    M = MatrixRing(3, 3)
    fam = [mi.polynomial for mi in minors(2, M)]
    G = full_group(3, 3)
    cat = enumerate_vertices_exhaustive(fam, G)
    assert cat.total == 102 and cat.orbit_count == 5
    assert sum(o.size for o in cat.orbits) == cat.total
    fs = [o for o in cat.orbits if full_support(o.canonical)]
    assert len(fs) == 1
    assert fs[0].canonical == G.canonical(tuple(v for r in Q_matrix(3) for v in r))


def test_enumerate_workers_deterministic():
    M = MatrixRing(3, 3)
    fam = [mi.polynomial for mi in minors(2, M)]
    G = full_group(3, 3)
    a = enumerate_vertices_exhaustive(fam, G, workers=1)
    b = enumerate_vertices_exhaustive(fam, G, workers=2)
    assert [(o.canonical, o.size, o.representative.selection)
            for o in a.orbits] == [(o.canonical, o.size, o.representative.selection)
                                   for o in b.orbits]


def test_enumerate_cap():
    M = MatrixRing(3, 3)
    fam = [mi.polynomial for mi in minors(2, M)]
    with pytest.raises(ValueError):
        enumerate_vertices_exhaustive(fam, full_group(3, 3), cap=100)


def test_random_enumeration_agrees_on_3x3():
    M = MatrixRing(3, 3)
    fam = [mi.polynomial for mi in minors(2, M)]
    G = full_group(3, 3)
    exact = enumerate_vertices_exhaustive(fam, G)
    sampled = enumerate_vertices_random(fam, G, trials=4000, stall_limit=1500,
                                        seed=99)
    assert [o.canonical for o in sampled.orbits] == [o.canonical
                                                     for o in exact.orbits]
    assert sampled.total == exact.total
    assert sampled.meta["total_is_lower_bound"]


def test_full_support():
    assert full_support(Q_matrix(3))
    assert not full_support(((4, 2, 0), (2, 2, 2), (0, 2, 4)))
    assert full_support((1,) * 9)


def test_sagbi_defect_cases():
    M = MatrixRing(3, 6)
    ref = g36_reference(5)
    diag = diagonal_matching(M, minors(3, M))
    assert sagbi_defect(diag, ref, 5) is None

    fam34 = [mi.polynomial for mi in minors(2, MatrixRing(3, 4))]
    w4 = [0, 1, 0, 3, 0, 3, 1, 0, 0, 0, 3, 1]
    m4 = matching_from_weight(fam34, w4)
    assert m4.exponent_sum == (3, 2, 1, 6, 3, 6, 2, 1, 3, 1, 6, 2)
    ref34 = expand_series((1, 6, 15, 10), 12, 6)
    assert sagbi_defect(m4, ref34, 6) == 2
    vals = semigroup_hilbert(m4.selection, 6, m4.family[0].ring).values
    assert h_vector(vals, 12) == (1, 6, 12, 7)


def test_extend_matching_cases():
    M = MatrixRing(3, 3)
    fam = [mi.polynomial for mi in minors(2, M)]
    # vertex (5): the anti-diagonal-free matching has two determinant
    # extensions, conjugate to each other
    w5 = [0, 5, 3, 3, 0, 5, 5, 3, 0]
    m5 = matching_from_weight(fam, w5)
    assert m5.exponent_sum == (0, 3, 3, 3, 0, 3, 3, 3, 0)
    exts = extend_matching(m5, determinant(M))
    assert len(exts) == 2
    G = full_group(3, 3)
    assert len({G.canonical(e.exponent_sum) for e in exts}) == 1

    # extending by a polynomial whose terms live in fresh variables (and
    # are vertices of its own Newton polytope) accepts every term
    R = RingContext(["x", "y", "u", "v"])
    base = make_matching([parse_polynomial(R, "x + y")], [(1, 0, 0, 0)])
    g = parse_polynomial(R, "u + v + u*v")
    assert len(extend_matching(base, g)) == 3


def test_restrict_matching_identity_and_columns():
    M = MatrixRing(3, 6)
    minor_list = minors(3, M)
    diag = diagonal_matching(M, minor_list)
    diag = make_matching(diag.family, diag.selection,
                         witness=is_coherent(diag.family, diag.selection),
                         coherent=True)
    subs, same = restrict_matching(diag, minor_list, M, range(6))
    assert same.selection == diag.selection
    subs, small = restrict_matching(diag, minor_list, M, [1, 2, 3, 4])
    assert len(subs) == 4
    M4 = MatrixRing(3, 4)
    expect = diagonal_matching(M4, minors(3, M4))
    assert small.selection == expect.selection
    from sagbikit.orders import weight_selects
    for mi, s in zip(subs, small.selection):
        assert weight_selects(mi.polynomial, small.witness) == s


def test_matching_dimension_for_maximal_minors_2xn():
    # every coherent matching of the maximal minors spans m(n-m)+1 directions
    rng = random.Random(23)
    for n in (4, 5):
        M = MatrixRing(2, n)
        fam = [mi.polynomial for mi in minors(2, M)]
        for _ in range(20):
            w = [rng.randint(1, 10 ** 6) for _ in range(2 * n)]
            try:
                m = matching_from_weight(fam, w)
            except TieError:
                continue
            assert krull_dim_monomial(m.selection) == 2 * (n - 2) + 1


def test_q4_matching_is_coherent():
    M = MatrixRing(4, 4)
    mins = minors(3, M)
    order = submax_lex_order(M)
    sel = [leading_exponent(order, mi.polynomial) for mi in mins]
    fam = [mi.polynomial for mi in mins]
    m = make_matching(fam, sel)
    assert m.exponent_sum == M.to_flat(Q_matrix(4))
    assert full_support(m.exponent_sum)
    assert is_coherent(fam, sel) is not None
