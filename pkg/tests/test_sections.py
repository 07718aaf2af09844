import itertools
from collections import Counter

import pytest

from fhyper import corpus
from fhyper.formations import rank_of_factor
from fhyper.oracle import all_normal_subgroups
from fhyper.perm import comm, parse_permutation
from fhyper.permgroup import PermGroup, SizeBoundExceeded
from fhyper.sections import (
    ChiefFactor,
    Section,
    SectionError,
    center_of_section,
    centralizer_of_section,
    chief_series,
    commutator_subgroup,
    is_simple_factor,
    minimal_normal_subgroups,
    normal_closure,
    omega1_center_pcore,
    p_core_of_section,
    pi_residual_of_section,
    prime_factors,
    soluble_residual,
)

from conftest import same, shuffled

S4 = corpus.symmetric(4)
V4 = corpus.klein_four_in_s4()
A4 = corpus.alternating(4)
ONE4 = PermGroup.trivial(4)
SMALL = ["C6", "S3", "D4", "Q8", "A4", "S4", "S5", "A5", "C2xC2", "SL(2,3)", "S4xC2"]


def elementwise(G, A, B):
    """Preimage of C_{G/A}(B/A) by checking every element pair."""
    Bs = B.elements()
    return [g for g in G.elements() if all(A.contains(comm(g, b)) for b in Bs)]


def test_normal_closure_examples():
    x = parse_permutation("(1 2)(3 4)", 4)
    N = normal_closure(S4, [x])
    assert N.order == 4 and same(N, V4)
    assert normal_closure(S4, [parse_permutation("()", 4)]).order == 1
    A5 = corpus.alternating(5)
    assert same(normal_closure(A5, [parse_permutation("(1 2 3)", 5)]), A5)


def test_commutator_examples():
    D = commutator_subgroup(S4, S4)
    brute = {comm(a, b) for a in S4.elements() for b in S4.elements()}
    assert same(D, A4) and all(D.contains(c) for c in brute)
    C6 = corpus.cyclic(6)
    assert commutator_subgroup(C6, C6).order == 1
    A5 = corpus.alternating(5)
    assert same(commutator_subgroup(A5, A5), A5)


def test_soluble_residual_examples():
    assert soluble_residual(S4).order == 1
    assert same(soluble_residual(corpus.symmetric(5)), corpus.alternating(5))
    G = corpus.direct_product(corpus.alternating(5), corpus.cyclic(3))
    R = soluble_residual(G)
    assert R.order == 60 and same(commutator_subgroup(R, R), R)


def test_centralizer_examples():
    assert same(centralizer_of_section(S4, ONE4, V4), V4)
    S5 = corpus.symmetric(5)
    assert centralizer_of_section(S5, PermGroup.trivial(5), corpus.alternating(5)).order == 1
    C6 = corpus.cyclic(6)
    Z = normal_closure(C6, [parse_permutation("(1 4)(2 5)(3 6)", 6)])
    assert same(centralizer_of_section(C6, PermGroup.trivial(6), Z), C6)


def test_center_examples():
    assert center_of_section(Section.of(corpus.symmetric(3))).order == 1
    Z = center_of_section(Section.of(corpus.from_cycles(4, "(1 2 3 4)", "(1 3)")))
    assert Z.order == 2 and Z.contains(parse_permutation("(1 3)(2 4)", 4))
    C6 = corpus.cyclic(6)
    assert same(center_of_section(Section.of(C6)), C6)


@pytest.mark.parametrize("name", SMALL)
def test_centralizers_match_brute_force(groups, name):
    G = groups[name]
    lat = all_normal_subgroups(G)
    for A, B in itertools.product(lat.normals, repeat=2):
        if not A.is_subgroup_of(B):
            continue
        C = centralizer_of_section(G, A, B)
        brute = elementwise(G, A, B)
        assert C.order == len(brute) and all(C.contains(g) for g in brute)
        assert A.is_subgroup_of(C) and C.is_normal_in(G)


def test_p_core_examples():
    assert same(p_core_of_section(Section.of(S4), 2), V4)
    assert p_core_of_section(Section.of(S4), 3).order == 1
    D4 = corpus.from_cycles(4, "(1 2 3 4)", "(1 3)")
    assert same(p_core_of_section(Section.of(D4), 2), D4)


def recursive_p_core(s, p):
    """Join of minimal normal p-subgroups, repeated on the quotient."""
    K = s.kernel
    while True:
        mins = [M for M in minimal_normal_subgroups(Section(s.ambient, K))
                if prime_factors(M.order // K.order) == [p]]
        if not mins:
            return K
        K = K.join(*mins)


def is_p_power(m, p):
    return m == 1 or prime_factors(m) == [p]


@pytest.mark.parametrize("name", SMALL)
def test_p_core_against_lattice(groups, name):
    G = groups[name]
    lat = all_normal_subgroups(G)
    for A in lat.normals:
        for p in prime_factors(G.order):
            P = p_core_of_section(Section(G, A), p)
            assert is_p_power(P.order // A.order, p)
            assert same(P, recursive_p_core(Section(G, A), p))
            for N in lat.normals:
                if A.is_subgroup_of(N) and is_p_power(N.order // A.order, p):
                    assert N.is_subgroup_of(P)


def test_pi_residual_examples():
    assert same(pi_residual_of_section(Section.of(S4), {2}), A4)
    assert pi_residual_of_section(Section.of(S4), {2, 3}).order == 1
    S3 = corpus.symmetric(3)
    assert same(pi_residual_of_section(Section.of(S3), {3}), S3)
    with pytest.raises(SectionError):
        pi_residual_of_section(Section.of(S3), set())


@pytest.mark.parametrize("name", SMALL)
def test_pi_residual_against_lattice(groups, name):
    G = groups[name]
    lat = all_normal_subgroups(G)
    primes = prime_factors(G.order)
    for A in lat.normals:
        for r in range(1, len(primes) + 1):
            for pi in itertools.combinations(primes, r):
                N = pi_residual_of_section(Section(G, A), set(pi))
                idx = G.order // N.order
                assert all(q in pi for q in prime_factors(idx))
                assert N.is_normal_in(G) and A.is_subgroup_of(N)
                for M in lat.normals:
                    if A.is_subgroup_of(M) and all(q in pi for q in prime_factors(G.order // M.order)):
                        assert N.is_subgroup_of(M)


def test_minimal_normal_examples():
    mins = minimal_normal_subgroups(Section.of(S4))
    assert len(mins) == 1 and same(mins[0], V4)
    K4 = corpus.from_cycles(4, "(1 2)", "(3 4)")
    assert sorted(M.order for M in minimal_normal_subgroups(Section.of(K4))) == [2, 2, 2]
    A5 = corpus.alternating(5)
    mins = minimal_normal_subgroups(Section.of(A5))
    assert len(mins) == 1 and same(mins[0], A5)


def test_minimal_normal_bound():
    with pytest.raises(SizeBoundExceeded):
        minimal_normal_subgroups(Section.of(corpus.symmetric(5)), bound=100)


def test_chief_series_examples():
    assert [t.order for t in chief_series(S4).terms] == [1, 4, 12, 24]
    assert same(chief_series(S4).terms[1], V4)
    C6 = corpus.cyclic(6)
    assert [t.order for t in chief_series(C6).terms] == [1, 2, 6]
    A5 = corpus.alternating(5)
    assert [t.order for t in chief_series(A5, [PermGroup.trivial(5), A5]).terms] == [1, 60]


def test_chief_series_through():
    G = corpus.direct_product(corpus.symmetric(4), corpus.cyclic(2))
    C2 = PermGroup([parse_permutation("(5 6)", 6)], 6)
    cs = chief_series(G, [C2])
    assert any(same(t, C2) for t in cs.terms)
    with pytest.raises(SectionError):
        chief_series(G, [G, C2])


def characteristically_simple_order(f: ChiefFactor) -> bool:
    k = rank_of_factor(f)
    if f.is_abelian:
        return f.primes[0] ** k == f.order
    return k >= 1 and round(f.order ** (1 / k)) ** k == f.order


@pytest.mark.parametrize("name", SMALL + ["A5xC3"])
def test_chief_series_is_chief(groups, name):
    G = groups[name]
    lat = all_normal_subgroups(G)
    cs = chief_series(G)
    terms = cs.terms
    for lo, hi in zip(terms, terms[1:]):
        assert lo.order < hi.order and lo.is_subgroup_of(hi) and hi.is_normal_in(G)
        between = [N for N in lat.normals if lo.order < N.order < hi.order
                   and lo.is_subgroup_of(N) and N.is_subgroup_of(hi)]
        assert not between
    assert all(characteristically_simple_order(f) for f in cs.factors())
    assert len(terms) - 1 <= 2 * G.degree - 3


@pytest.mark.parametrize("name", ["S4", "SL(2,3)", "S4xC2", "A5xC3", "D4"])
def test_jordan_hoelder_orders(groups, name):
    G = groups[name]
    base = Counter(chief_series(G).factor_orders())
    for seed in range(1, 6):
        assert Counter(chief_series(shuffled(G, seed)).factor_orders()) == base


def test_is_simple_factor_examples():
    cs = chief_series(S4)
    f1, f2, _ = cs.factors()
    assert not is_simple_factor(f1)
    assert is_simple_factor(f2)
    W = corpus.a5_wreath_c2()
    bottom = chief_series(W).factors()[0]
    assert bottom.order == 3600 and not is_simple_factor(bottom)
    assert is_simple_factor(chief_series(corpus.symmetric(5)).factors()[0])


def test_omega1_examples():
    assert same(omega1_center_pcore(Section.of(V4), 2), V4)
    C4 = corpus.cyclic(4)
    O = omega1_center_pcore(Section.of(C4), 2)
    assert O.order == 2 and O.contains(parse_permutation("(1 3)(2 4)", 4))
    assert same(omega1_center_pcore(Section.of(S4), 2), V4)


def test_section_validation():
    with pytest.raises(SectionError):
        Section(S4, corpus.from_cycles(4, "(1 2)")).validate()
