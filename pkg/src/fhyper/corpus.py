"""Small named groups used by the tests, the acceptance runner and the CLI."""

from __future__ import annotations

import itertools

from .perm import Perm, parse_permutation
from .permgroup import PermGroup


def from_cycles(degree: int, *texts: str) -> PermGroup:
    return PermGroup([parse_permutation(t, degree) for t in texts], degree)


def cyclic(n: int) -> PermGroup:
    return PermGroup([tuple((i + 1) % n for i in range(n))], n)


def symmetric(n: int) -> PermGroup:
    if n < 2:
        return PermGroup.trivial(max(n, 1))
    return from_cycles(n, "(" + " ".join(map(str, range(1, n + 1))) + ")", "(1 2)")


def alternating(n: int) -> PermGroup:
    gens = ["(" + f"1 2 {k}" + ")" for k in range(3, n + 1)]
    return from_cycles(n, *gens) if gens else PermGroup.trivial(n)


def direct_product(*groups: PermGroup) -> PermGroup:
    """Direct product acting on the disjoint union of the point sets."""
    n = sum(G.degree for G in groups)
    gens: list[Perm] = []
    offset = 0
    for G in groups:
        for g in G.generators:
            img = list(range(n))
            for i, x in enumerate(g):
                img[offset + i] = offset + x
            gens.append(tuple(img))
        offset += G.degree
    return PermGroup(gens, n)


def direct_power(G: PermGroup, k: int) -> PermGroup:
    return direct_product(*([G] * k))


def wreath_c2(G: PermGroup) -> PermGroup:
    """``G wr C2`` in its imprimitive action on two copies of G's points."""
    m = G.degree
    base = direct_product(G, G)
    swap = tuple(list(range(m, 2 * m)) + list(range(m)))
    return PermGroup(list(base.generators) + [swap], 2 * m)


def _regular(elements, mul_table) -> PermGroup:
    """Right regular representation of an abstract group given by a multiplication table."""
    n = len(elements)
    gens = [tuple(mul_table[i][j] for i in range(n)) for j in range(n)]
    return PermGroup(gens, n)


def quaternion() -> PermGroup:
    # elements: +-1, +-i, +-j, +-k encoded as (sign, unit) with units 1,i,j,k -> 0..3
    unit_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(s, u) for s in (1, -1) for u in range(4)]
    index = {e: i for i, e in enumerate(elems)}
    table = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s, u = unit_mul[(u1, u2)]
            row.append(index[(s1 * s2 * s, u)])
        table.append(row)
    return _regular(elems, table)


def sl2_3() -> PermGroup:
    """SL(2,3) acting on the 8 nonzero vectors of F_3^2."""
    vecs = [v for v in itertools.product(range(3), repeat=2) if any(v)]
    index = {v: i for i, v in enumerate(vecs)}
    mats = [((1, 1), (0, 1)), ((1, 0), (1, 1))]
    gens = []
    for (a, b), (c, d) in mats:
        gens.append(tuple(index[((a * x + b * y) % 3, (c * x + d * y) % 3)] for x, y in vecs))
    return PermGroup(gens, 8)


def asl2_4() -> PermGroup:
    """ASL(2,4) = F_4^2 : SL(2,4) acting on the 16 points of F_4^2.

    F_4 = {0, 1, w, w+1} encoded as 0..3 with addition by xor and w^2 = w + 1.
    """
    def fmul(a: int, b: int) -> int:
        r = 0
        for i in range(2):
            if (b >> i) & 1:
                r ^= a << i
        if r & 4:
            r ^= 0b111
        return r

    pts = list(itertools.product(range(4), repeat=2))
    index = {v: i for i, v in enumerate(pts)}

    def affine(m, t):
        (a, b), (c, d) = m
        return tuple(
            index[(fmul(a, x) ^ fmul(b, y) ^ t[0], fmul(c, x) ^ fmul(d, y) ^ t[1])] for x, y in pts
        )

    ident = ((1, 0), (0, 1))
    gens = [
        affine(ident, (1, 0)),
        affine(((1, 1), (0, 1)), (0, 0)),
        affine(((1, 2), (0, 1)), (0, 0)),
        affine(((1, 0), (1, 1)), (0, 0)),
    ]
    return PermGroup(gens, 16)


def build_corpus() -> dict[str, PermGroup]:
    """The acceptance corpus, keyed by a short name."""
    return {
        "C6": cyclic(6),
        "S3": symmetric(3),
        "D4": from_cycles(4, "(1 2 3 4)", "(1 3)"),
        "Q8": quaternion(),
        "A4": alternating(4),
        "S4": symmetric(4),
        "S5": symmetric(5),
        "A5": alternating(5),
        "C2xC2": from_cycles(4, "(1 2)", "(3 4)"),
        "SL(2,3)": sl2_3(),
        "A5xC3": direct_product(alternating(5), cyclic(3)),
        "S4xC2": direct_product(symmetric(4), cyclic(2)),
        "ASL(2,4)": asl2_4(),
    }


def s4_power(k: int) -> PermGroup:
    return direct_power(symmetric(4), k)


def a5_wreath_c2() -> PermGroup:
    return wreath_c2(alternating(5))


def klein_four_in_s4() -> PermGroup:
    return from_cycles(4, "(1 2)(3 4)", "(1 3)(2 4)")
