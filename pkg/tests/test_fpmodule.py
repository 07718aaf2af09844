import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fhyper import corpus
from fhyper.fpmodule import (
    NotElementaryAbelian,
    NotInvariant,
    VectorModel,
    action_matrices,
    apply,
    coordinatize,
    equivariant_complement,
    minimal_submodules,
    nullspace,
    rref,
    solve,
    span_vectors,
)
from fhyper.perm import identity, mul, parse_permutation
from fhyper.permgroup import PermGroup

S4 = corpus.symmetric(4)
V4 = corpus.klein_four_in_s4()


def matmul(A, B, p):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) % p for j in range(n)) for i in range(n))


def bare_model(p, d):
    """A model carrying only p and d, enough for the linear-algebra entry points."""
    return VectorModel(p, None, None, [None] * d, {}, {})


def test_coordinatize_examples():
    assert coordinatize(V4, PermGroup.trivial(4), 2).dim == 2
    assert coordinatize(V4, V4, 2).dim == 0
    C2cubed = corpus.from_cycles(6, "(1 2)", "(3 4)", "(5 6)")
    m = coordinatize(C2cubed, PermGroup.trivial(6), 2)
    assert m.dim == 3 and len(m.table) == 8


def test_coordinates_are_a_homomorphism():
    G = corpus.asl2_4()
    from fhyper.sections import chief_series
    T = chief_series(G).terms[1]
    m = coordinatize(T, PermGroup.trivial(16), 2)
    assert m.dim == 4
    elems = T.elements()
    for x, y in itertools.product(elems, repeat=2):
        assert m.coords(mul(x, y)) == tuple((a + b) % 2 for a, b in zip(m.coords(x), m.coords(y)))
    for i, b in enumerate(m.basis):
        assert m.coords(b) == tuple(int(j == i) for j in range(4))


def test_not_elementary_abelian():
    with pytest.raises(NotElementaryAbelian):
        coordinatize(corpus.cyclic(4), PermGroup.trivial(4), 2)
    with pytest.raises(NotElementaryAbelian):
        coordinatize(corpus.symmetric(3), PermGroup.trivial(3), 3)


def test_action_matrix_examples():
    C6 = corpus.cyclic(6)
    # central subgroup: identity matrices
    Z = PermGroup([parse_permutation("(1 4)(2 5)(3 6)", 6)], 6)
    m = coordinatize(Z, PermGroup.trivial(6), 2)
    assert action_matrices(m, C6) == [((1,),)]
    # S4 on V4 acts as GL(2,2) = S3
    m = coordinatize(V4, PermGroup.trivial(4), 2)
    mats = action_matrices(m, S4)
    grp = {tuple(map(tuple, [[1, 0], [0, 1]]))}
    frontier = list(grp)
    while frontier:
        X = frontier.pop()
        for A in mats:
            Y = matmul(X, A, 2)
            if Y not in grp:
                grp.add(Y)
                frontier.append(Y)
    assert len(grp) == 6
    # swap of two C3 factors
    P = corpus.from_cycles(6, "(1 2 3)", "(4 5 6)")
    swap = parse_permutation("(1 4)(2 5)(3 6)", 6)
    m = coordinatize(P, PermGroup.trivial(6), 3)
    assert action_matrices(m, [swap]) == [((0, 1), (1, 0))]


def test_action_is_a_homomorphism_on_random_words():
    G = corpus.asl2_4()
    from fhyper.sections import chief_series
    T = chief_series(G).terms[1]
    m = coordinatize(T, PermGroup.trivial(16), 2)
    rng = random.Random(0)
    for _ in range(10):
        g, h = G.random_element(rng), G.random_element(rng)
        Ag, Ah, Agh = (action_matrices(m, [x])[0] for x in (g, h, mul(g, h)))
        assert Agh == matmul(Ah, Ag, 2)


def test_complement_examples():
    model = bare_model(3, 2)
    swap = ((0, 1), (1, 0))
    assert equivariant_complement(model, [swap], []) == [(1, 0), (0, 1)]
    assert equivariant_complement(model, [swap], [(1, 0), (0, 1)]) == []
    W = equivariant_complement(model, [swap], [(1, 1)])
    assert rref(W, 3)[0] == rref([(1, 2)], 3)[0]


def test_complement_rejects_non_invariant():
    with pytest.raises(NotInvariant):
        equivariant_complement(bare_model(3, 2), [((0, 1), (1, 0))], [(1, 0)])


def test_complement_absent():
    # unipotent 2x2 block over F_2: the fixed line has no invariant complement
    J = ((1, 1), (0, 1))
    assert equivariant_complement(bare_model(2, 2), [J], [(1, 0)]) is None


def brute_complement_exists(mats, U, d, p):
    space = list(itertools.product(range(p), repeat=d))
    k = len(rref(U, p)[0])
    Uspan = set(span_vectors(rref(U, p)[0], p)) if U else {tuple([0] * d)}
    for basis in itertools.combinations([v for v in space if any(v)], d - k):
        red = rref(list(basis), p)[0]
        if len(red) != d - k:
            continue
        W = set(span_vectors(red, p))
        if len(W & Uspan) != 1:
            continue
        if all(apply(A, w, p) in W for A in mats for w in red):
            return True
    return d == k


perm_mats = st.integers(2, 3).flatmap(lambda d: st.lists(st.permutations(list(range(d))), min_size=1, max_size=2)
                                      .map(lambda ps: (d, ps)))


@settings(max_examples=60, deadline=None)
@given(perm_mats, st.sampled_from([2, 3]), st.data())
def test_complement_properties(dm, p, data):
    d, perms = dm
    mats = [tuple(tuple(int(perm[c] == r) for c in range(d)) for r in range(d)) for perm in perms]
    subs = [W for W in _invariant_subspaces(mats, d, p)]
    U = list(data.draw(st.sampled_from(subs)))
    W = equivariant_complement(bare_model(p, d), mats, U)
    assert (W is not None) == brute_complement_exists(mats, U, d, p)
    if W is not None:
        k = len(rref(U, p)[0])
        assert len(W) == d - k
        assert len(rref(list(U) + list(W), p)[0]) == d
        Wspan = set(span_vectors(rref(W, p)[0], p)) if W else {tuple([0] * d)}
        assert all(apply(A, w, p) in Wspan for A in mats for w in W)


def _invariant_subspaces(mats, d, p):
    out = {()}
    vecs = [v for v in itertools.product(range(p), repeat=d) if any(v)]
    for r in range(1, d + 1):
        for basis in itertools.combinations(vecs, r):
            red = tuple(rref(list(basis), p)[0])
            if len(red) != r or red in out:
                continue
            span = set(span_vectors(red, p))
            if all(apply(A, w, p) in span for A in mats for w in red):
                out.add(red)
    return sorted(out)


def test_complement_is_basis_independent():
    # S4 x C2 acting on P = V4 x C2; U runs over the invariant subspaces V4 and C2
    G = corpus.direct_product(corpus.symmetric(4), corpus.cyclic(2))
    gens = [parse_permutation(t, 6) for t in ("(1 2)(3 4)", "(1 3)(2 4)", "(5 6)")]
    V4x = PermGroup(gens[:2], 6)
    C2 = PermGroup(gens[2:], 6)
    for sub, expected in ((V4x, True), (C2, True)):
        answers = set()
        for order in itertools.permutations(gens):
            m = coordinatize(PermGroup(order, 6), PermGroup.trivial(6), 2)
            U = [v for r, v in m.table.items() if sub.contains(r)]
            W = equivariant_complement(m, action_matrices(m, G), U)
            answers.add(W is not None)
            if W is not None:
                Wg = PermGroup(list(m.element(w) for w in W), 6)
                assert Wg.is_normal_in(G) and Wg.order * sub.order == 8
        assert answers == {expected}


def test_linear_algebra():
    rows = [(1, 2, 0), (2, 4, 0)]
    assert rref(rows, 5)[0] == [(1, 2, 0)]
    assert len(nullspace(rows, 3, 5)) == 2
    assert solve([(1, 1), (1, 4)], [2, 0], 2, 5) is not None
    assert solve([(1, 1), (1, 1)], [1, 2], 2, 5) is None


def test_minimal_submodules_of_permutation_module():
    cyc = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    subs = minimal_submodules([cyc], 3, 2)
    assert subs == [((1, 1, 1),)]
    subs = minimal_submodules([cyc], 3, 3)
    assert subs == [((1, 1, 1),)]
