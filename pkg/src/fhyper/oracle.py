"""Brute-force reference implementations for differential testing.

Everything here works on explicit element sets and uses only the permutation
layer (element enumeration, canonical coset representatives), never the
section, module or formation code. Centrality of a chief factor H/T is decided
from the definition: the semidirect product (H/T) x| G/C_G(H/T) is realised as
a permutation group on the cosets of T in H and tested for membership directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .perm import Perm, comm, conj, identity, inv, mul, order as perm_order
from .permgroup import DEFAULT_BOUND, PermGroup, SizeBoundExceeded
from .sections import ChiefFactor

TINY_CAP = 512


def _primes(m: int) -> list[int]:
    out, q = [], 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


def _part(m: int, primes) -> int:
    out = 1
    for q in _primes(m):
        if q in primes:
            while m % q == 0:
                m //= q
                out *= q
    return out


def _closure(gens, n: int) -> frozenset:
    e = identity(n)
    seen = {e}
    queue = [e]
    for x in queue:
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _generate(seq, n: int, start=()) -> tuple[frozenset, list]:
    """Subgroup generated by ``start`` and ``seq``, with a short generating list."""
    gens = list(start)
    cur = _closure(gens, n)
    for x in seq:
        if x not in cur:
            gens.append(x)
            cur = _closure(gens, n)
    return cur, gens


@dataclass
class _Grp:
    n: int
    elems: frozenset
    gens: list

    @property
    def order(self) -> int:
        return len(self.elems)

    @classmethod
    def of(cls, G: PermGroup, bound: int = DEFAULT_BOUND) -> _Grp:
        return cls(G.degree, frozenset(G.elements(bound)), list(G.generators))


def _conj_class(x: Perm, gens) -> set:
    cls = {x}
    queue = [x]
    for y in queue:
        for g in gens:
            z = conj(y, g)
            if z not in cls:
                cls.add(z)
                queue.append(z)
    return cls


def _normals(X: _Grp) -> list[tuple[frozenset, list]]:
    """All normal subgroups of X as (element set, generators)."""
    found: dict[frozenset, list] = {}
    seen: set = set()
    for x in sorted(X.elems):
        if x in seen:
            continue
        cls = _conj_class(x, X.gens)
        seen |= cls
        N, g = _generate(sorted(cls), X.n)
        found.setdefault(N, g)
    items = list(found.items())
    i = 0
    while i < len(items):
        Ni, gi = items[i]
        for j in range(i):
            Nj, gj = items[j]
            if Ni <= Nj or Nj <= Ni:
                continue
            J, g = _generate(gj, X.n, gi)
            if J not in found:
                found[J] = g
                items.append((J, g))
        i += 1
    return sorted(items, key=lambda t: (len(t[0]), sorted(t[0])))


def _chain(sets, lo: frozenset, hi: frozenset) -> list[frozenset]:
    """Maximal chain of lattice members from lo to hi: always step to the smallest cover."""
    out = [lo]
    cur = lo
    while cur != hi:
        cur = min((S for S in sets if cur < S <= hi), key=len)
        out.append(cur)
    return out


# -- lattices --------------------------------------------------------------

@dataclass
class NormalLattice:
    group: PermGroup
    normals: list
    sets: list
    inclusion: list

    def __len__(self) -> int:
        return len(self.normals)


def all_normal_subgroups(G: PermGroup, bound: int = DEFAULT_BOUND) -> NormalLattice:
    X = _Grp.of(G, bound)
    items = _normals(X)
    sets = [s for s, _ in items]
    groups = [PermGroup(g, G.degree) for _, g in items]
    incl = [[a <= b for b in sets] for a in sets]
    return NormalLattice(G, groups, sets, incl)


def all_subgroups_tiny(G: PermGroup, bound: int = TINY_CAP) -> list[PermGroup]:
    bound = min(bound, TINY_CAP)
    if G.order > bound:
        raise SizeBoundExceeded(G.order, bound, "all_subgroups_tiny")
    n = G.degree
    cyclic: dict[frozenset, Perm] = {}
    for x in G.elements(bound):
        cyclic.setdefault(_closure([x], n), x)
    subs: dict[frozenset, list] = {S: [x] for S, x in cyclic.items()}
    queue = list(subs.items())
    for S, gens in queue:
        for C, x in cyclic.items():
            if C <= S:
                continue
            J, g = _generate([x], n, gens)
            if J not in subs:
                subs[J] = g
                queue.append((J, g))
    ordered = sorted(subs.items(), key=lambda t: (len(t[0]), sorted(t[0])))
    return [PermGroup(g, n) for _, g in ordered]


# -- definitional membership -----------------------------------------------

def _p_elements(X: _Grp, primes) -> list:
    return [x for x in X.elems if _part(perm_order(x), primes) == perm_order(x)]


def _centralizer(X: _Grp, A: frozenset, Bgens) -> frozenset:
    return frozenset(x for x in X.elems if all(comm(x, b) in A for b in Bgens))


def _is_simple_quotient(B: frozenset, Bgens, A: frozenset, n: int) -> bool:
    seen: set = set(A)
    Agens = _generate(sorted(A), n)[1]
    for x in sorted(B):
        if x in seen:
            continue
        cls = _conj_class(x, Bgens)
        seen |= cls
        N, _ = _generate(sorted(cls), n, Agens)
        if len(N) != len(B):
            return False
    return True


def definitional_member(spec, X: _Grp) -> bool:
    """Membership of X in the formation described by ``spec``, straight from the definitions."""
    kind = spec.kind
    m = X.order
    if kind == "nilpotent":
        return all(len(_p_elements(X, {p})) == _part(m, {p}) for p in _primes(m))
    if kind == "pnilpotent":
        comp = {q for q in _primes(m) if q != spec.prime}
        N, _ = _generate(sorted(_p_elements(X, comp)), X.n)
        return len(N) == _part(m, comp)
    if kind == "sylowtower":
        present = [p for p in spec.tower if m % p == 0]
        if set(present) != set(_primes(m)):
            raise ValueError("group order has a prime outside the Sylow tower ordering")
        for t in range(1, len(present) + 1):
            pi = set(present[:t])
            N, _ = _generate(sorted(_p_elements(X, pi)), X.n)
            if len(N) != _part(m, pi):
                return False
        return True
    items = _normals(X)
    sets = [s for s, _ in items]
    gens_of = dict(items)
    chain = _chain(sets, frozenset([identity(X.n)]), X.elems)
    factors = list(zip(chain, chain[1:]))

    def is_pp(a, b):
        return len(_primes(len(b) // len(a))) == 1

    if kind == "soluble":
        return all(is_pp(a, b) for a, b in factors)
    if kind == "supersoluble":
        return all(len(b) // len(a) in _primes(len(b) // len(a)) for a, b in factors)
    if kind == "rank":
        for a, b in factors:
            k = len(b) // len(a)
            ps = _primes(k)
            if len(ps) != 1 or not spec.rank_allowed(ps[0], round(math.log(k, ps[0]))):
                return False
        return True
    if kind == "sc":
        return all(_is_simple_quotient(b, gens_of[b], a, X.n) for a, b in factors)
    if kind == "quasinilpotent":
        for a, b in factors:
            C = _centralizer(X, a, gens_of[b])
            if len(b) * len(C) // len(b & C) != m:
                return False
        return True
    if kind == "shemetkov":
        for a, b in factors:
            C = _centralizer(X, a, gens_of[b])
            for p in _primes(len(b) // len(a)):
                g = spec.prime_set(p)
                if g is not None and _part(m // len(C), g) != m // len(C):
                    return False
        return True
    raise ValueError(f"no definitional membership test for {kind}")


def factor_action_group(G: PermGroup, H: PermGroup, T: PermGroup, bound: int = DEFAULT_BOUND) -> PermGroup:
    """``(H/T) x| G/C_G(H/T)`` acting on the cosets of T in H.

    H/T acts by right multiplication (regularly) and G by conjugation.
    """
    reps = sorted({T.canon(x) for x in H.elements(bound)})
    index = {r: i for i, r in enumerate(reps)}
    gens = [tuple(index[T.canon(mul(r, h))] for r in reps) for h in H.generators]
    gens += [tuple(index[T.canon(conj(r, g))] for r in reps) for g in G.generators]
    return PermGroup(gens, len(reps))


def conjugation_action_group(G: PermGroup, H: PermGroup, T: PermGroup, bound: int = DEFAULT_BOUND) -> PermGroup:
    """``G/C_G(H/T)`` acting on the cosets of T in H by conjugation."""
    reps = sorted({T.canon(x) for x in H.elements(bound)})
    index = {r: i for i, r in enumerate(reps)}
    return PermGroup([tuple(index[T.canon(conj(r, g))] for r in reps) for g in G.generators], len(reps))


def definitional_centrality(spec, bound: int = DEFAULT_BOUND):
    """Chief-factor function of ``spec`` evaluated from the definition of F-centrality."""
    cache: dict = {}

    def cff(f) -> int:
        key = (frozenset(f.top.elements(bound)), frozenset(f.bottom.elements(bound)))
        if key in cache:
            return cache[key]
        order = f.top.order // f.bottom.order
        if spec.kind == "cff_abelian":
            val = len(_primes(order)) == 1
        elif spec.kind == "cff_soluble_action":
            A = conjugation_action_group(f.ambient, f.top, f.bottom, bound)
            val = definitional_member(_SOLUBLE, _Grp.of(A, bound))
        else:
            X = factor_action_group(f.ambient, f.top, f.bottom, bound)
            val = definitional_member(spec, _Grp.of(X, bound))
        cache[key] = int(val)
        return cache[key]

    return cff


@dataclass(frozen=True)
class _Kind:
    kind: str


_SOLUBLE = _Kind("soluble")


# -- hypercenter and intersection ------------------------------------------

def brute_Z(G: PermGroup, K: PermGroup | None, cff, bound: int = DEFAULT_BOUND) -> PermGroup:
    """Greatest normal N >= K such that every G-chief factor between K and N has value 1.

    ``cff`` receives a ChiefFactor.
    """
    lat = all_normal_subgroups(G, bound)
    if K is None:
        K = PermGroup.trivial(G.degree)
    kset = frozenset(K.elements(bound))
    if kset not in lat.sets:
        raise ValueError("kernel is not a normal subgroup")
    handle = dict(zip(lat.sets, lat.normals))
    handle[kset] = K
    value: dict = {}
    good = []
    for N in lat.sets:
        if not kset <= N:
            continue
        chain = _chain(lat.sets, kset, N)
        ok = True
        for a, b in zip(chain, chain[1:]):
            if (a, b) not in value:
                value[(a, b)] = cff(ChiefFactor(handle[b], handle[a], G, K))
            if value[(a, b)] != 1:
                ok = False
                break
        if ok:
            good.append(N)
    best = max(good, key=len)
    if not all(N <= best for N in good):
        raise AssertionError("admissible normal subgroups have no greatest element")
    return handle[best]


def brute_int(spec, G: PermGroup, bound: int = TINY_CAP, member=None) -> PermGroup:
    """Intersection of the maximal subgroups of G lying in the formation.

    ``member`` decides membership of a subgroup; defaults to the definitional test.
    """
    subs = all_subgroups_tiny(G, bound)
    sets = [frozenset(S.elements(bound)) for S in subs]
    if member is None:
        ok = [definitional_member(spec, _Grp(G.degree, s, list(S.generators))) for S, s in zip(subs, sets)]
    else:
        ok = [member(S) for S in subs]
    members = [s for s, m in zip(sets, ok) if m]
    maximal = [s for s in members if not any(s < t for t in members)]
    inter = frozenset.intersection(*maximal)
    gens = _generate(sorted(inter), G.degree)[1]
    return PermGroup(gens, G.degree)


def subgroup_equal(A: PermGroup, B: PermGroup) -> bool:
    return A.order == B.order and all(B.contains(g) for g in A.generators)


def elementwise_commutes(X: PermGroup, H: PermGroup, T: PermGroup, bound: int = DEFAULT_BOUND) -> bool:
    """``[X, H] <= T`` by checking every pair of elements."""
    Tset = frozenset(T.elements(bound))
    Hs = H.elements(bound)
    return all(mul(mul(inv(x), inv(h)), mul(x, h)) in Tset for x in X.elements(bound) for h in Hs)
