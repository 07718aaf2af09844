"""Permutation groups backed by a stabilizer chain (base and strong generating set).

The chain is built with the deterministic incremental Schreier-Sims algorithm.
When the order of the target group is known in advance (stabilizers from the
orbit-stabilizer theorem, for instance) a seeded random Schreier-Sims pass is
tried first; it is accepted only when the product of the basic orbit lengths
reaches the known order, which certifies the chain.
"""

from __future__ import annotations

import itertools
import math
import random

from .perm import Perm, PermutationError, identity, inv, is_identity, mul

DEFAULT_BOUND = 2 ** 20


class SizeBoundExceeded(Exception):
    """An exhaustive subroutine would have to visit more than ``bound`` objects."""

    def __init__(self, size: int, bound: int, where: str = ""):
        self.size = size
        self.bound = bound
        self.where = where
        msg = f"SizeBoundExceeded({size}, {bound})"
        if where:
            msg += f" in {where}"
        super().__init__(msg)


class ChainLengthViolation(AssertionError):
    pass


def check_chain_length(length: int, degree: int, what: str = "chain") -> None:
    """Subgroup chains in S_n have at most 2n - 3 strict inclusions (n >= 2)."""
    if degree >= 2 and length > 2 * degree - 3:
        raise ChainLengthViolation(
            f"{what} has {length} strict steps, above the bound {2 * degree - 3} for degree {degree}"
        )


class _Chain:
    """Mutable stabilizer chain used while a group is being built."""

    __slots__ = ("n", "base", "gens", "trans", "itrans")

    def __init__(self, n: int, base_hint=()):
        self.n = n
        self.base: list[int] = []
        self.gens: list[list[Perm]] = []
        self.trans: list[dict[int, Perm]] = []
        self.itrans: list[dict[int, Perm]] = []
        for b in base_hint:
            self._append_level(b)

    def _append_level(self, point: int) -> None:
        self.base.append(point)
        self.gens.append([])
        e = identity(self.n)
        self.trans.append({point: e})
        self.itrans.append({point: e})

    def _orbit(self, level: int) -> None:
        b = self.base[level]
        e = identity(self.n)
        tr = {b: e}
        queue = [b]
        gens = self.gens[level]
        for pt in queue:
            u = tr[pt]
            for g in gens:
                q = g[pt]
                if q not in tr:
                    tr[q] = mul(u, g)
                    queue.append(q)
        self.trans[level] = tr
        self.itrans[level] = {q: inv(u) for q, u in tr.items()}

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        """Return (residue, level reached); level == len(base) if all levels passed."""
        for i in range(start, len(self.base)):
            q = g[self.base[i]]
            ui = self.itrans[i].get(q)
            if ui is None:
                return g, i
            g = mul(g, ui)
        return g, len(self.base)

    def order(self) -> int:
        return math.prod(len(t) for t in self.trans)

    def _insert(self, h: Perm, j: int) -> None:
        """Add residue ``h`` (fixing base[:j]) as a strong generator on levels <= j."""
        if j == len(self.base):
            moved = next(i for i in range(self.n) if h[i] != i)
            self._append_level(moved)
        for lvl in range(j + 1):
            self.gens[lvl].append(h)
            self._orbit(lvl)

    def _complete(self, top: int) -> None:
        i = top
        while i >= 0:
            restart = False
            tr = self.trans[i]
            for beta, u in list(tr.items()):
                for s in self.gens[i]:
                    g1 = mul(u, s)
                    u1 = tr[s[beta]]
                    if g1 == u1:
                        continue
                    sg = mul(g1, self.itrans[i][s[beta]])
                    h, j = self.sift(sg, i + 1)
                    if j < len(self.base) or not is_identity(h):
                        self._insert(h, j)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def add(self, g: Perm) -> bool:
        """Extend the chain to include ``g``; return False if already a member."""
        h, j = self.sift(g)
        if j == len(self.base) and is_identity(h):
            return False
        # h fixes base[:j]; it joins levels 0..j and the chain is re-completed from j.
        self._insert(h, j)
        self._complete(j)
        return True

    def add_random(self, gens: list[Perm], target: int, rng: random.Random, tries: int) -> bool:
        """Random Schreier-Sims; True iff the orbit product reaches ``target``."""
        if not gens:
            return target == 1
        for g in gens:
            if self.order() == target:
                return True
            h, j = self.sift(g)
            if j < len(self.base) or not is_identity(h):
                self._insert(h, j)
        state = (list(gens) * (1 + 10 // len(gens)))[:max(10, len(gens))]
        acc = identity(self.n)
        for _ in range(tries):
            if self.order() == target:
                return True
            a, b = rng.randrange(len(state)), rng.randrange(len(state))
            state[a] = mul(state[a], state[b]) if a != b else mul(state[a], gens[0])
            acc = mul(acc, state[a])
            h, j = self.sift(acc)
            if j < len(self.base) or not is_identity(h):
                self._insert(h, j)
        return self.order() == target


class PermGroup:
    """Immutable handle for ``<generators> <= S_n``.

    Equality is subgroup equality (same degree, same order, mutual containment
    of generators); hashing uses (degree, order) only, so handles can key dicts.
    """

    __slots__ = ("degree", "generators", "_chain", "_order", "__weakref__")

    def __init__(self, generators=(), degree: int | None = None, *,
                 order: int | None = None, base_hint=(), seed: int = 0):
        gens = [tuple(g) for g in generators]
        if degree is None:
            if not gens:
                raise PermutationError("degree required for an empty generator list")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise PermutationError(f"degree mismatch: expected {degree}, got {len(g)}")
        self.degree = degree
        chain = _Chain(degree, base_hint)
        kept: list[Perm] = []
        seen: set[Perm] = set()
        cand = [g for g in gens if not is_identity(g) and not (g in seen or seen.add(g))]
        if order is not None and cand:
            ok = chain.add_random(cand, order, random.Random(seed), tries=60 + 20 * degree)
            if ok:
                # certified: the orbit product equals the known order
                self._finish(chain, _residues(chain))
                return
            chain = _Chain(degree, base_hint)
        for g in cand:
            if chain.add(g):
                kept.append(g)
        self._finish(chain, kept)

    def _finish(self, chain: _Chain, kept: list[Perm]) -> None:
        # drop trailing levels with trivial orbits
        while chain.base and len(chain.trans[-1]) == 1:
            chain.base.pop(); chain.gens.pop(); chain.trans.pop(); chain.itrans.pop()
        self.generators = tuple(kept)
        self._chain = chain
        self._order = chain.order()

    # -- basic queries ---------------------------------------------------
    @property
    def order(self) -> int:
        return self._order

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(self._chain.base)

    @property
    def strong_generators(self) -> list[Perm]:
        out, seen = [], set()
        for lvl in self._chain.gens:
            for g in lvl:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def orbit_sizes(self) -> list[int]:
        return [len(t) for t in self._chain.trans]

    def identity(self) -> Perm:
        return identity(self.degree)

    def is_trivial(self) -> bool:
        return self._order == 1

    def contains(self, g: Perm) -> bool:
        if len(g) != self.degree:
            raise PermutationError(f"degree mismatch: expected {self.degree}, got {len(g)}")
        h, j = self._chain.sift(tuple(g))
        return j == len(self._chain.base) and is_identity(h)

    __contains__ = contains

    def sift(self, g: Perm) -> Perm:
        """Sifting residue; the identity iff ``g`` is a member."""
        return self._chain.sift(tuple(g))[0]

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def is_normal_in(self, other: PermGroup) -> bool:
        from .perm import conj
        return self.is_subgroup_of(other) and all(
            self.contains(conj(x, g)) for x in self.generators for g in other.generators
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self._order == other._order
                and self.is_subgroup_of(other))

    def __hash__(self) -> int:
        return hash((self.degree, self._order))

    def __le__(self, other: PermGroup) -> bool:
        return self.is_subgroup_of(other)

    def __lt__(self, other: PermGroup) -> bool:
        return self._order < other._order and self.is_subgroup_of(other)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self._order}, ngens={len(self.generators)})"

    # -- cosets and enumeration -----------------------------------------
    def canon(self, g: Perm) -> Perm:
        """Canonical representative of the right coset ``self * g``.

        At each level the transversal element minimising the image of the base
        point is absorbed, so two elements give the same result iff they lie in
        the same coset.
        """
        ch = self._chain
        for i in range(len(ch.base)):
            tr = ch.trans[i]
            best = min(tr, key=g.__getitem__)
            if best != ch.base[i]:
                g = mul(tr[best], g)
        return g

    def elements(self, bound: int = DEFAULT_BOUND) -> list[Perm]:
        if self._order > bound:
            raise SizeBoundExceeded(self._order, bound, "enumerate_elements")
        ch = self._chain
        levels = [[ch.trans[i][p] for p in sorted(ch.trans[i])] for i in range(len(ch.base))]
        out = []
        e = identity(self.degree)
        for combo in itertools.product(*reversed(levels)):
            g = e
            for u in combo:
                g = mul(g, u)
            out.append(g)
        return out

    def random_element(self, rng: random.Random) -> Perm:
        g = identity(self.degree)
        for tr in reversed(self._chain.trans):
            g = mul(g, tr[rng.choice(sorted(tr))])
        return g

    # -- constructors ----------------------------------------------------
    def subgroup(self, gens, *, order: int | None = None) -> PermGroup:
        return PermGroup(gens, self.degree, order=order, base_hint=self.base)

    def join(self, *others) -> PermGroup:
        gens = list(self.generators)
        for o in others:
            gens.extend(o.generators if isinstance(o, PermGroup) else o)
        return PermGroup(gens, self.degree, base_hint=self.base)

    @classmethod
    def trivial(cls, degree: int) -> PermGroup:
        return cls((), degree)


def _residues(chain: _Chain) -> list[Perm]:
    out, seen = [], set()
    for lvl in chain.gens:
        for g in lvl:
            if g not in seen:
                seen.add(g)
                out.append(g)
    return out


def build_group(generators, degree: int | None = None) -> PermGroup:
    return PermGroup(generators, degree)


def contains(group: PermGroup, g: Perm) -> bool:
    return group.contains(g)


def enumerate_elements(group: PermGroup, bound: int = DEFAULT_BOUND) -> list[Perm]:
    return group.elements(bound)
