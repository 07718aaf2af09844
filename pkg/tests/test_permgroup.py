import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fhyper import corpus
from fhyper.perm import (
    PermutationError,
    format_permutation,
    identity,
    images1,
    inv,
    mul,
    parse_permutation,
)
from fhyper.permgroup import (
    ChainLengthViolation,
    PermGroup,
    SizeBoundExceeded,
    build_group,
    check_chain_length,
    contains,
    enumerate_elements,
)


def brute_closure(gens, n):
    seen = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@pytest.mark.parametrize("text,n,expected", [
    ("(1 2 3)", 3, [2, 3, 1]),
    ("()", 4, [1, 2, 3, 4]),
    ("(1 2)(3 4)", 4, [2, 1, 4, 3]),
])
def test_parse_examples(text, n, expected):
    assert images1(parse_permutation(text, n)) == expected


@pytest.mark.parametrize("text", ["(1 2", "1 2", "(1 5)", "(1 2)(2 3)", "(1 a)", "", "(0 1)"])
def test_parse_errors(text):
    with pytest.raises(PermutationError):
        parse_permutation(text, 4)


def test_build_examples():
    n = 4
    assert build_group([parse_permutation("(1 2 3 4)", n), parse_permutation("(1 2)", n)]).order == 24
    assert PermGroup([], 5).order == 1
    gens = [parse_permutation("(1 2 3 4 5)", 5), parse_permutation("(1 2 3)", 5)]
    assert build_group(gens).order == 60 == len(brute_closure(gens, 5))


def test_degree_mismatch():
    with pytest.raises(PermutationError):
        PermGroup([identity(3), identity(4)])
    with pytest.raises(PermutationError):
        corpus.symmetric(4).contains(identity(5))


def test_contains_examples():
    A4 = corpus.alternating(4)
    assert not contains(A4, parse_permutation("(1 2)", 4))
    assert contains(A4, identity(4))
    D4 = corpus.from_cycles(4, "(1 2 3 4)", "(1 3)")
    elems = brute_closure(D4.generators, 4)
    assert len(elems) == 8
    x = parse_permutation("(1 3)(2 4)", 4)
    assert x in elems and D4.contains(x)


def test_enumerate_examples():
    assert len(enumerate_elements(corpus.symmetric(3), 10)) == 6
    assert enumerate_elements(PermGroup([], 3), 1) == [identity(3)]
    with pytest.raises(SizeBoundExceeded) as exc:
        enumerate_elements(corpus.symmetric(4), 10)
    assert (exc.value.size, exc.value.bound) == (24, 10)


def test_chain_length_guard():
    check_chain_length(5, 4)
    with pytest.raises(ChainLengthViolation):
        check_chain_length(6, 4)


def test_random_schreier_sims_matches_deterministic():
    G = corpus.s4_power(3)
    H = PermGroup(G.generators, G.degree, order=G.order, seed=7)
    assert H.order == G.order
    assert all(H.contains(g) for g in G.generators)


def test_canonical_cosets():
    S4 = corpus.symmetric(4)
    V4 = corpus.klein_four_in_s4()
    reps = {V4.canon(x) for x in S4.elements()}
    assert len(reps) == 6
    for x in S4.elements():
        for v in V4.elements():
            assert V4.canon(mul(v, x)) == V4.canon(x)


perms = st.integers(min_value=1, max_value=7).flatmap(lambda n: st.permutations(list(range(n))))


@given(perms)
def test_print_parse_roundtrip(p):
    p = tuple(p)
    text = format_permutation(p)
    q = parse_permutation(text, len(p))
    assert q == p
    assert format_permutation(q) == text


@given(perms)
def test_inverse(p):
    p = tuple(p)
    assert mul(p, inv(p)) == identity(len(p))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=0, max_size=3).map(lambda gs: (n, gs))))
def test_handle_invariants(data):
    n, gens = data
    gens = [tuple(g) for g in gens]
    G = PermGroup(gens, n)
    assert math.factorial(n) % G.order == 0
    assert G.order == math.prod(G.orbit_sizes())
    assert all(G.contains(g) for g in gens)
    assert G.contains(identity(n))
    elems = G.elements()
    assert len(elems) == len(set(elems)) == G.order
    assert set(elems) == brute_closure(gens, n)
    check_chain_length(len(G.base), n)


def test_non_member_moves_outside_orbits():
    G = corpus.from_cycles(6, "(1 2 3)")
    assert not G.contains(parse_permutation("(4 5)", 6))
    rng = random.Random(1)
    S6 = corpus.symmetric(6)
    outside = [g for g in (S6.random_element(rng) for _ in range(50)) if g not in brute_closure(G.generators, 6)]
    assert not any(G.contains(g) for g in outside)


def test_build_is_deterministic():
    G1 = corpus.asl2_4()
    G2 = corpus.asl2_4()
    assert G1.base == G2.base and G1.generators == G2.generators
