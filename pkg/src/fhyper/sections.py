"""Normal-structure toolbox for sections G/A of permutation groups.

Quotients are never given their own permutation representation: a subgroup of
G/A is always returned as its full preimage in G, and cosets are compared via
canonical representatives modulo the kernel's stabilizer chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .perm import Perm, comm, conj, identity, inv, is_identity, mul, order as perm_order, power
from .permgroup import (
    DEFAULT_BOUND,
    PermGroup,
    SizeBoundExceeded,
    _Chain,
    check_chain_length,
)


class SectionError(ValueError):
    pass


def prime_factors(m: int) -> list[int]:
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


def is_prime(m: int) -> bool:
    return m > 1 and prime_factors(m) == [m]


def pi_part(m: int, pi) -> int:
    out = 1
    for q in prime_factors(m):
        if q in pi:
            while m % q == 0:
                m //= q
                out *= q
    return out


@dataclass(frozen=True, eq=False)
class Section:
    """The quotient ``ambient / kernel``; the kernel must be normal in the ambient group."""

    ambient: PermGroup
    kernel: PermGroup

    @property
    def order(self) -> int:
        return self.ambient.order // self.kernel.order

    def validate(self) -> Section:
        if not self.kernel.is_subgroup_of(self.ambient):
            raise SectionError("kernel is not a subgroup of the ambient group")
        if not self.kernel.is_normal_in(self.ambient):
            raise SectionError("kernel is not normal in the ambient group")
        return self

    @classmethod
    def of(cls, G: PermGroup) -> Section:
        return cls(G, PermGroup.trivial(G.degree))


@dataclass(frozen=True, eq=False)
class ChiefFactor:
    """G-chief factor top/bottom, evaluated in the context of the section G/kernel."""

    top: PermGroup
    bottom: PermGroup
    ambient: PermGroup
    kernel: PermGroup

    @property
    def order(self) -> int:
        return self.top.order // self.bottom.order

    @cached_property
    def primes(self) -> list[int]:
        return prime_factors(self.order)

    @property
    def is_abelian(self) -> bool:
        return len(self.primes) == 1


@dataclass(frozen=True, eq=False)
class ChiefSeries:
    ambient: PermGroup
    terms: tuple

    def factors(self, kernel: PermGroup | None = None) -> list[ChiefFactor]:
        k = kernel if kernel is not None else self.terms[0]
        return [ChiefFactor(hi, lo, self.ambient, k) for lo, hi in zip(self.terms, self.terms[1:])]

    def factor_orders(self) -> list[int]:
        return [hi.order // lo.order for lo, hi in zip(self.terms, self.terms[1:])]

    def __len__(self) -> int:
        return len(self.terms)


# -- closures ------------------------------------------------------------

def _group_from_chain(chain: _Chain, gens: list[Perm], degree: int) -> PermGroup:
    grp = PermGroup.__new__(PermGroup)
    grp.degree = degree
    grp._finish(chain, gens)
    return grp


def normal_closure(G: PermGroup, S, *, base: PermGroup | None = None) -> PermGroup:
    """Smallest normal subgroup of G containing S (and ``base``, assumed normal in G)."""
    n = G.degree
    chain = _Chain(n, G.base)
    gens: list[Perm] = []
    if base is not None:
        for b in base.generators:
            if chain.add(b):
                gens.append(b)
    queue = []
    for s in S:
        s = tuple(s)
        if chain.add(s):
            gens.append(s)
            queue.append(s)
    while queue:
        x = queue.pop()
        for g in G.generators:
            y = conj(x, g)
            if chain.add(y):
                gens.append(y)
                queue.append(y)
    return _group_from_chain(chain, gens, n)


def commutator_subgroup(A: PermGroup, B: PermGroup, ambient: PermGroup | None = None) -> PermGroup:
    """``[A, B]``: generator commutators closed under conjugation by ``<A, B>``."""
    gens = [comm(a, b) for a in A.generators for b in B.generators]
    closer = ambient if ambient is not None else A.join(B)
    return normal_closure(closer, [g for g in gens if not is_identity(g)])


def derived_series(G: PermGroup, kernel: PermGroup | None = None) -> list[PermGroup]:
    """``G = D0 > D1 > ...`` with ``D_{i+1} = [D_i, D_i] kernel``, ending at the perfect term."""
    series = [G]
    while True:
        D = series[-1]
        gens = [comm(a, b) for i, a in enumerate(D.generators) for b in D.generators[i + 1:]]
        nxt = normal_closure(D, gens, base=kernel)
        if nxt.order == D.order:
            return series
        series.append(nxt)
        check_chain_length(len(series) - 1, G.degree, "derived series")


def soluble_residual(G: PermGroup) -> PermGroup:
    return derived_series(G)[-1]


def soluble_residual_of_section(s: Section) -> PermGroup:
    return derived_series(s.ambient, s.kernel)[-1]


def section_elements(upper: PermGroup, kernel: PermGroup, bound: int = DEFAULT_BOUND,
                     where: str = "section enumeration") -> list[Perm]:
    """Canonical representatives of the cosets of ``kernel`` in ``upper``, BFS order."""
    size = upper.order // kernel.order
    if size > bound:
        raise SizeBoundExceeded(size, bound, where)
    start = kernel.canon(identity(upper.degree))
    seen = {start}
    out = [start]
    for x in out:
        for g in upper.generators:
            y = kernel.canon(mul(x, g))
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def order_mod(x: Perm, kernel: PermGroup) -> int:
    m = perm_order(x)
    for q in prime_factors(m):
        while m % q == 0 and kernel.contains(power(x, m // q)):
            m //= q
    return m


def p_part(x: Perm, p: int) -> Perm:
    m = perm_order(x)
    return power(x, m // pi_part(m, {p}))


# -- centralizers ----------------------------------------------------------

def stabilize_cosets(acting: PermGroup, kernel: PermGroup, elems, bound: int = DEFAULT_BOUND,
                     where: str = "centralizer") -> PermGroup:
    """``{g in acting : [e, g] in kernel for every e}``.

    ``acting`` must normalise ``kernel`` and permute the cosets ``e*kernel``.
    The subgroup is the stabilizer of the tuple of cosets under conjugation;
    its order is known from the orbit length, which certifies the construction.
    """
    elems = [e for e in elems if not kernel.contains(e)]
    if not elems or all(kernel.contains(comm(e, g)) for e in elems for g in acting.generators):
        return acting
    n = acting.degree
    start = tuple(kernel.canon(e) for e in elems)
    trans = {start: identity(n)}
    queue = [start]
    schreier: list[Perm] = []
    seen_sg: set[Perm] = set()
    for st in queue:
        u = trans[st]
        for s in acting.generators:
            img = tuple(kernel.canon(conj(x, s)) for x in st)
            v = trans.get(img)
            us = mul(u, s)
            if v is None:
                if len(trans) >= bound:
                    raise SizeBoundExceeded(len(trans) + 1, bound, where)
                trans[img] = us
                queue.append(img)
            else:
                sg = mul(us, inv(v))
                if not is_identity(sg) and sg not in seen_sg:
                    seen_sg.add(sg)
                    schreier.append(sg)
    target = acting.order // len(trans)
    return PermGroup(schreier, n, order=target, base_hint=acting.base)


def centralizer_of_section(G: PermGroup, A: PermGroup, B: PermGroup,
                           bound: int = DEFAULT_BOUND) -> PermGroup:
    """Preimage of ``C_{G/A}(B/A)``."""
    return stabilize_cosets(G, A, B.generators, bound, "centralizer_of_section")


def center_of_section(s: Section, bound: int = DEFAULT_BOUND) -> PermGroup:
    return stabilize_cosets(s.ambient, s.kernel, s.ambient.generators, bound, "center_of_section")


def centralizes(X: PermGroup, top: PermGroup, bottom: PermGroup) -> bool:
    """True iff ``[X, top] <= bottom`` (bottom normal in a group containing both)."""
    return all(bottom.contains(comm(x, h)) for x in X.generators for h in top.generators)


# -- cores and residuals ---------------------------------------------------

def fitting_of_section(s: Section, series=None, bound: int = DEFAULT_BOUND) -> PermGroup:
    """Preimage of the Fitting subgroup of ``s``.

    It is the set of elements acting trivially on every factor of a chief
    series through the kernel. ``series`` may supply (bottom, top) pairs of
    chief factors under a larger group; their centralizers in ``s.ambient``
    must cut out the same subgroup.
    """
    if series is None:
        cs = chief_series_between(s.ambient, s.kernel, s.ambient, bound)
        series = list(zip(cs, cs[1:]))
    D = s.ambient
    for lo, hi in series:
        if not centralizes(D, hi, lo):
            D = stabilize_cosets(D, lo, hi.generators, bound, "fitting_of_section")
    return D


def p_core_of_section(s: Section, p: int, bound: int = DEFAULT_BOUND, series=None) -> PermGroup:
    """Preimage of ``O_p(G/A)``: the p-parts of generators of the Fitting preimage."""
    F = fitting_of_section(s, series, bound)
    gens = [p_part(g, p) for g in F.generators]
    return PermGroup(list(s.kernel.generators) + gens, s.ambient.degree, base_hint=s.ambient.base)


def pi_residual_of_section(s: Section, pi, bound: int = DEFAULT_BOUND) -> PermGroup:
    """Preimage of ``O^pi(G/A)``, the smallest normal subgroup of pi-number index."""
    pi = frozenset(pi)
    if not pi:
        raise SectionError("pi must be non-empty")
    G, A = s.ambient, s.kernel

    def copart(x: Perm) -> Perm:
        m = perm_order(x)
        return power(x, pi_part(m, pi))

    N = normal_closure(G, [copart(g) for g in G.generators], base=A)
    while True:
        idx = G.order // N.order
        if pi_part(idx, pi) == idx:
            return N
        for x in section_elements(G, N, bound, "pi_residual_of_section"):
            y = copart(x)
            if not N.contains(y):
                N = normal_closure(G, [y], base=N)
                break


# -- minimal normal subgroups and chief series -----------------------------

def _coset_class(x: Perm, acting: PermGroup, kernel: PermGroup) -> set[Perm]:
    cls = {x}
    queue = [x]
    for y in queue:
        for g in acting.generators:
            z = kernel.canon(conj(y, g))
            if z not in cls:
                cls.add(z)
                queue.append(z)
    return cls


def minimal_normals_within(acting: PermGroup, kernel: PermGroup, within: PermGroup,
                           bound: int = DEFAULT_BOUND, where: str = "minimal_normal_subgroups",
                           first_only: bool = False) -> list[PermGroup]:
    """Minimal normal subgroups of ``acting/kernel`` contained in ``within/kernel``.

    Every minimal normal subgroup is the normal closure of any of its elements of
    prime order, so closing one element of prime order per conjugacy class and
    keeping the inclusion-minimal results finds all of them.
    """
    reps = section_elements(within, kernel, bound, where)
    seen: set[Perm] = set()
    found: list[PermGroup] = []
    for x in reps:
        if x in seen or kernel.contains(x):
            continue
        m = order_mod(x, kernel)
        if not is_prime(m):
            continue
        seen |= _coset_class(x, acting, kernel)
        N = normal_closure(acting, [x], base=kernel)
        if any(M == N for M in found):
            continue
        found.append(N)
    minimal = [N for N in found if not any(M < N for M in found)]
    minimal.sort(key=lambda N: (N.order, _min_rep(N, kernel, reps)))
    return minimal[:1] if first_only else minimal


def _min_rep(N: PermGroup, kernel: PermGroup, reps) -> Perm:
    return min(x for x in reps if N.contains(x) and not kernel.contains(x))


def minimal_normal_subgroups(s: Section, bound: int = DEFAULT_BOUND) -> list[PermGroup]:
    return minimal_normals_within(s.ambient, s.kernel, s.ambient, bound)


def _abelian_layers(G: PermGroup, M: PermGroup, L: PermGroup) -> list[tuple[PermGroup, int]]:
    """Split abelian ``L/M`` into G-normal elementary abelian layers, smallest prime first.

    Returns the ascending list of (term, prime) above M.
    """
    m = L.order // M.order
    out: list[tuple[PermGroup, int]] = []
    X = M
    for p in prime_factors(m):
        a = pi_part(m, {p})
        sylow = [power(g, m // a) for g in L.generators]
        k = round(math.log(a, p))
        agemo = []
        for i in range(k, -1, -1):
            gens = [power(z, p ** i) for z in sylow]
            agemo.append(PermGroup(list(X.generators) + gens, G.degree, base_hint=G.base))
        prev = X
        for term in agemo:
            if term.order > prev.order:
                out.append((term, p))
                prev = term
        X = prev
    return out


def chief_series_between(G: PermGroup, lo: PermGroup, hi: PermGroup,
                         bound: int = DEFAULT_BOUND) -> list[PermGroup]:
    """A G-chief series from ``lo`` to ``hi`` (both normal in G), as an ascending list.

    A coarse G-normal series is built first (derived series of ``hi`` modulo
    ``lo``, abelian layers split by prime and by p-th powers); elementary
    abelian layers are refined as F_p[G]-modules and the perfect bottom layer
    by minimal normal subgroups. At every step the refinement picks, among the
    minimal normal subgroups of the current quotient inside the current layer,
    the one of smallest order, then the one with the least coset representative.
    """
    from .fpmodule import refine_elementary_layer

    coarse = derived_series(hi, lo)
    perfect = coarse[-1]
    terms = [lo]
    X = lo
    while X.order < perfect.order:
        M = minimal_normals_within(G, X, perfect, bound, "chief_series", first_only=True)[0]
        terms.append(M)
        X = M
    for M, L in zip(reversed(coarse[1:]), reversed(coarse[:-1])):
        for E, p in _abelian_layers(G, M, L):
            terms.extend(refine_elementary_layer(G, terms[-1], E, p, bound))
    check_chain_length(len(terms) - 1, G.degree, "chief series")
    return terms


def chief_series(G: PermGroup, through=(), bound: int = DEFAULT_BOUND) -> ChiefSeries:
    """Chief series of G from the trivial group to G through the listed normal subgroups."""
    marks = [PermGroup.trivial(G.degree)] + list(through) + [G]
    for a, b in zip(marks, marks[1:]):
        if not a.is_subgroup_of(b):
            raise SectionError("listed subgroups are not ascending")
    terms = [marks[0]]
    for a, b in zip(marks, marks[1:]):
        if a.order == b.order:
            continue
        terms.extend(chief_series_between(G, a, b, bound)[1:])
    check_chain_length(len(terms) - 1, G.degree, "chief series")
    return ChiefSeries(G, tuple(terms))


def is_simple_factor(f: ChiefFactor, bound: int = DEFAULT_BOUND) -> bool:
    """Whether top/bottom is simple as an abstract group."""
    if f.is_abelian:
        return is_prime(f.order)
    H, T = f.top, f.bottom
    reps = section_elements(H, T, bound, "is_simple_factor")
    seen: set[Perm] = set()
    for x in reps:
        if x in seen or T.contains(x):
            continue
        seen |= _coset_class(x, H, T)
        if normal_closure(H, [x], base=T).order != H.order:
            return False
    return True


def omega1_center_pcore(s: Section, p: int, bound: int = DEFAULT_BOUND, series=None) -> PermGroup:
    """Preimage of ``Omega_1(Z(O_p(G/A)))``."""
    G, A = s.ambient, s.kernel
    O = p_core_of_section(s, p, bound, series)
    Z = stabilize_cosets(O, A, O.generators, bound, "omega1_center_pcore")
    if all(A.contains(power(z, p)) for z in Z.generators):
        return Z
    gens = [x for x in section_elements(Z, A, bound, "omega1_center_pcore")
            if A.contains(power(x, p))]
    return PermGroup(list(A.generators) + gens, G.degree, base_hint=G.base)
