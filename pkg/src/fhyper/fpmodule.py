"""Elementary abelian sections as F_p[G]-modules.

Vectors are tuples of ints in ``range(p)``. A matrix is a tuple of rows and
acts on column vectors; column ``i`` of the action matrix of ``g`` holds the
coordinates of ``b_i^g`` for the basis element ``b_i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .perm import Perm, comm, conj, identity, mul, power
from .permgroup import DEFAULT_BOUND, PermGroup, SizeBoundExceeded


class NotElementaryAbelian(ValueError):
    pass


class NotInvariant(ValueError):
    pass


# -- linear algebra over F_p -----------------------------------------------

def rref(rows, p: int) -> tuple[list[tuple], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = pow(m[r][c], -1, p)
        m[r] = [x * s % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return [tuple(x) for x in m[:r]], pivots


def nullspace(rows, ncols: int, p: int) -> list[tuple]:
    red, pivots = rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[f] % p
        out.append(tuple(v))
    return out


def solve(rows, rhs, ncols: int, p: int) -> list[int] | None:
    """One solution of ``rows * x = rhs`` or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, p)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def apply(mat, v, p: int) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in mat)


def span_vectors(basis, p: int):
    d = len(basis[0]) if basis else 0
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        v = [0] * d
        for c, b in zip(coeffs, basis):
            if c:
                v = [(x + c * y) % p for x, y in zip(v, b)]
        yield tuple(v)


def _reduce(v, basis, pivots, p: int) -> list[int]:
    w = list(v)
    for row, pc in zip(basis, pivots):
        c = w[pc]
        if c:
            w = [(a - c * b) % p for a, b in zip(w, row)]
    return w


def spin(v, mats, p: int, limit: int | None = None) -> tuple[tuple, ...] | None:
    """RREF basis of the smallest invariant subspace containing ``v``.

    Returns None as soon as the dimension would exceed ``limit``.
    """
    basis: list[list[int]] = []
    pivots: list[int] = []
    queue = [tuple(v)]
    while queue:
        w = _reduce(queue.pop(), basis, pivots, p)
        pc = next((i for i, x in enumerate(w) if x), None)
        if pc is None:
            continue
        if limit is not None and len(basis) == limit:
            return None
        s = pow(w[pc], -1, p)
        w = [x * s % p for x in w]
        basis = [[(a - r[pc] * b) % p for a, b in zip(r, w)] if r[pc] else r for r in basis]
        basis.append(w)
        pivots.append(pc)
        for A in mats:
            queue.append(apply(A, w, p))
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return tuple(tuple(basis[i]) for i in order)


def minimal_submodules(mats, d: int, p: int) -> list[tuple[tuple, ...]]:
    """All invariant subspaces of least positive dimension (each is irreducible)."""
    best: dict[tuple, None] = {}
    best_dim = d
    for v in itertools.product(range(p), repeat=d):
        if next((x for x in v if x), 0) != 1:
            continue
        W = spin(v, mats, p, best_dim)
        if W is None:
            continue
        if len(W) < best_dim:
            best, best_dim = {}, len(W)
        best[W] = None
    return list(best)


# -- coordinates -----------------------------------------------------------

@dataclass
class VectorModel:
    """Coordinates for the elementary abelian section ``top/bottom``."""

    p: int
    top: PermGroup
    bottom: PermGroup
    basis: list[Perm]
    table: dict[Perm, tuple] = field(repr=False)
    vectors: dict[tuple, Perm] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, g: Perm) -> tuple:
        key = self.bottom.canon(g)
        try:
            return self.table[key]
        except KeyError:
            raise NotInvariant("element does not lie in the coordinatized section") from None

    def element(self, v) -> Perm:
        return self.vectors[tuple(x % self.p for x in v)]


def coordinatize(top: PermGroup, bottom: PermGroup, p: int,
                 bound: int = DEFAULT_BOUND) -> VectorModel:
    size = top.order // bottom.order
    if size > bound:
        raise SizeBoundExceeded(size, bound, "coordinatize")
    for a in top.generators:
        if not bottom.contains(power(a, p)):
            raise NotElementaryAbelian("a generator has order other than p modulo the bottom")
        for b in top.generators:
            if not bottom.contains(comm(a, b)):
                raise NotElementaryAbelian("section is not abelian")
    zero_key = bottom.canon(identity(top.degree))
    table: dict[Perm, list[int]] = {zero_key: []}
    basis: list[Perm] = []
    for g in top.generators:
        if bottom.canon(g) in table:
            continue
        k = len(basis)
        basis.append(g)
        entries = list(table.items())
        gc = identity(top.degree)
        for c in range(1, p):
            gc = mul(gc, g)
            for rep, vec in entries:
                table[bottom.canon(mul(rep, gc))] = vec + [0] * (k - len(vec)) + [c]
    d = len(basis)
    full = {rep: tuple(vec + [0] * (d - len(vec))) for rep, vec in table.items()}
    if len(full) != size:
        raise NotElementaryAbelian("coordinate table does not cover the section")
    return VectorModel(p, top, bottom, basis, full, {v: r for r, v in full.items()})


def action_matrices(model: VectorModel, G) -> list[tuple[tuple, ...]]:
    """One matrix per generator of G (or per element of an iterable of perms)."""
    gens = G.generators if isinstance(G, PermGroup) else list(G)
    out = []
    for g in gens:
        cols = [model.coords(conj(b, g)) for b in model.basis]
        out.append(tuple(tuple(col[r] for col in cols) for r in range(model.dim)))
    return out


def equivariant_complement(model: VectorModel, actions, U) -> list[tuple] | None:
    """Basis of an invariant complement of the invariant subspace U, or None.

    The complement is the kernel of a projection onto U that commutes with every
    action matrix; the projection is found by solving one linear system.
    """
    p, d = model.p, model.dim
    ubasis, upiv = rref(list(U), p) if U else ([], [])
    k = len(ubasis)
    if k == 0:
        return [tuple(int(i == j) for j in range(d)) for i in range(d)]
    if k == d:
        return []
    # M_g: action on U in U-coordinates; columns are coordinates of A u_j.
    Ms = []
    for A in actions:
        cols = []
        for u in ubasis:
            w = apply(A, u, p)
            m = [w[pc] for pc in upiv]
            back = [0] * d
            for c, b in zip(m, ubasis):
                back = [(x + c * y) % p for x, y in zip(back, b)]
            if tuple(back) != w:
                raise NotInvariant("U is not invariant under the action")
            cols.append(m)
        Ms.append([[cols[j][r] for j in range(k)] for r in range(k)])

    def var(r, c):
        return r * d + c

    nvars = k * d
    rows, rhs = [], []
    for r in range(k):
        for j in range(k):
            row = [0] * nvars
            for c in range(d):
                row[var(r, c)] = ubasis[j][c]
            rows.append(row)
            rhs.append(int(r == j))
    for A, M in zip(actions, Ms):
        for r in range(k):
            for c in range(d):
                row = [0] * nvars
                for t in range(d):
                    row[var(r, t)] = (row[var(r, t)] + A[t][c]) % p
                for t in range(k):
                    row[var(t, c)] = (row[var(t, c)] - M[r][t]) % p
                rows.append(row)
                rhs.append(0)
    x = solve(rows, rhs, nvars, p)
    if x is None:
        return None
    X = [[x[var(r, c)] for c in range(d)] for r in range(k)]
    return nullspace(X, d, p)


def subgroup_of(model: VectorModel, vectors) -> PermGroup:
    """Preimage in ``top`` of the subspace spanned by ``vectors``."""
    gens = list(model.bottom.generators) + [model.element(v) for v in vectors]
    return PermGroup(gens, model.top.degree, base_hint=model.top.base)


def refine_elementary_layer(G: PermGroup, bottom: PermGroup, top: PermGroup, p: int,
                            bound: int = DEFAULT_BOUND) -> list[PermGroup]:
    """Ascending G-chief series from ``bottom`` (excluded) to ``top`` (included)."""
    out: list[PermGroup] = []
    X = bottom
    while X.order < top.order:
        if top.order // X.order == p:
            out.append(top)
            break
        model = coordinatize(top, X, p, bound)
        mats = action_matrices(model, G)
        subs = minimal_submodules(mats, model.dim, p)

        def key(W):
            reps = [model.element(v) for v in span_vectors(W, p) if any(v)]
            return (len(W), min(reps))

        W = min(subs, key=key)
        X = subgroup_of(model, W)
        out.append(X)
    return out
