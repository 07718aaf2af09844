"""Formations: chief-factor functions, membership and residuals.

Every test here reduces to an ambient-level statement of the form
``[X, H] <= T`` or to an order comparison, so a chief factor H/T is judged
inside G directly and quotients are never materialised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .perm import comm, power
from .permgroup import DEFAULT_BOUND, PermGroup
from .sections import (
    ChiefFactor,
    Section,
    centralizer_of_section,
    centralizes,
    chief_series_between,
    is_prime,
    is_simple_factor,
    minimal_normal_subgroups,
    minimal_normals_within,
    normal_closure,
    pi_residual_of_section,
    soluble_residual_of_section,
)


class FormationError(ValueError):
    pass


class UnsupportedFormation(FormationError):
    pass


@dataclass(frozen=True)
class LocalTarget:
    """A class of groups whose residual can be computed directly.

    ``kind`` is one of all, trivial, empty, pi, abelian_exponent, soluble.
    """

    kind: str
    primes: frozenset = frozenset()
    exponent: int = 0

    def __str__(self) -> str:
        if self.kind == "pi":
            return "pi(" + ",".join(map(str, sorted(self.primes))) + ")"
        if self.kind == "abelian_exponent":
            return f"abelian_exponent({self.exponent})"
        return self.kind


ALL = LocalTarget("all")
TRIVIAL_GROUPS = LocalTarget("trivial")
EMPTY = LocalTarget("empty")
SOLUBLE = LocalTarget("soluble")


def pi_groups(primes) -> LocalTarget:
    return LocalTarget("pi", frozenset(primes))


def abelian_exponent(e: int) -> LocalTarget:
    if e < 1:
        raise FormationError("exponent must be positive")
    return TRIVIAL_GROUPS if e == 1 else LocalTarget("abelian_exponent", exponent=e)


LOCAL_KINDS = {"nilpotent", "supersoluble", "soluble", "pnilpotent", "sylowtower", "shemetkov", "baerlocal"}
PRIME_SET_KINDS = {"nilpotent", "pnilpotent", "sylowtower", "shemetkov"}


@dataclass(frozen=True)
class FormationSpec:
    kind: str
    text: str = ""
    prime: int = 0
    tower: tuple = ()
    prime_sets: tuple = ()            # ((p, frozenset), ...)
    prime_sets_default: str = "self"  # "self" -> {p}, "all" -> every prime
    ranks: tuple = ()                 # ((p, frozenset | None), ...); None = every rank
    ranks_default: frozenset | None = None
    table: tuple = ()                 # ((p, LocalTarget), ...)
    table_default: LocalTarget = EMPTY
    nonabelian: LocalTarget = EMPTY

    def __str__(self) -> str:
        return self.text or self.kind

    @property
    def has_hypercenter_method(self) -> bool:
        return True

    @property
    def has_int_method(self) -> bool:
        return self.kind in PRIME_SET_KINDS or self.kind in ("sc", "quasinilpotent")

    def prime_set(self, p: int) -> frozenset | None:
        """``g(p)`` for prime-set defined formations; None means every prime."""
        if self.kind == "nilpotent":
            return frozenset({p})
        if self.kind == "pnilpotent":
            return frozenset({p}) if p == self.prime else None
        if self.kind == "sylowtower":
            if p not in self.tower:
                raise FormationError(f"prime {p} is not in the Sylow tower ordering {list(self.tower)}")
            return frozenset(self.tower[self.tower.index(p):])
        if self.kind == "shemetkov":
            for q, s in self.prime_sets:
                if q == p:
                    return s
            return None if self.prime_sets_default == "all" else frozenset({p})
        raise FormationError(f"{self.kind} is not defined by prime sets")

    def local_target(self, p: int) -> LocalTarget:
        if self.kind == "supersoluble":
            return abelian_exponent(p - 1)
        if self.kind == "soluble":
            return SOLUBLE
        if self.kind == "baerlocal":
            return dict(self.table).get(p, self.table_default)
        g = self.prime_set(p)
        return ALL if g is None else pi_groups(g)

    def target_inside(self, target: LocalTarget) -> bool:
        """Whether groups of class ``target`` are known to lie in the formation."""
        if self.kind in ("nilpotent", "supersoluble", "soluble"):
            return True
        if self.kind == "pnilpotent":
            return target == TRIVIAL_GROUPS or (target.kind == "pi" and target.primes == {self.prime})
        return target in (TRIVIAL_GROUPS, EMPTY)

    def rank_allowed(self, p: int, k: int) -> bool:
        for q, s in self.ranks:
            if q == p:
                return s is None or k in s
        return self.ranks_default is None or k in self.ranks_default


def _parse_prime(tok: str) -> int:
    try:
        p = int(tok)
    except ValueError:
        raise FormationError(f"expected a prime, got {tok!r}") from None
    if not is_prime(p):
        raise FormationError(f"{p} is not prime")
    return p


def _parse_int_set(tok: str) -> frozenset | None:
    tok = tok.strip()
    if tok == "all":
        return None
    try:
        vals = frozenset(int(x) for x in tok.split(",") if x.strip())
    except ValueError:
        raise FormationError(f"bad integer list {tok!r}") from None
    if not vals or min(vals) < 1:
        raise FormationError(f"bad rank list {tok!r}")
    return vals


def _clauses(body: str) -> list[tuple[str, str]]:
    out = []
    for part in body.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise FormationError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out.append((k.strip(), v.strip()))
    return out


def parse_formation(text: str) -> FormationSpec:
    """Parse a formation description such as ``supersoluble`` or ``rank:2=1;default=1``."""
    raw = text.strip()
    head, _, body = raw.partition(":")
    head = head.strip().lower()
    if head in ("nilpotent", "soluble", "supersoluble", "sc", "quasinilpotent") and not body:
        return FormationSpec(head, raw)
    if head == "cff":
        kinds = {"abelian": "cff_abelian", "soluble-action": "cff_soluble_action"}
        if body.strip() not in kinds:
            raise FormationError(f"unknown chief-factor function {body!r}")
        return FormationSpec(kinds[body.strip()], raw)
    if head == "pnilpotent":
        return FormationSpec("pnilpotent", raw, prime=_parse_prime(body.strip()))
    if head == "sylowtower":
        primes = tuple(_parse_prime(t.strip()) for t in body.split(",") if t.strip())
        if not primes or len(set(primes)) != len(primes):
            raise FormationError("Sylow tower ordering needs distinct primes")
        return FormationSpec("sylowtower", raw, tower=primes)
    if head == "shemetkov":
        sets, default = [], "self"
        for k, v in _clauses(body):
            if k == "default":
                if v not in ("all", "self"):
                    raise FormationError("shemetkov default must be 'all' or 'self'")
                default = v
                continue
            p = _parse_prime(k)
            qs = frozenset(_parse_prime(q.strip()) for q in v.split(",") if q.strip())
            if p not in qs:
                raise FormationError(f"prime set for {p} must contain {p}")
            sets.append((p, qs))
        return FormationSpec("shemetkov", raw, prime_sets=tuple(sorted(sets, key=lambda t: t[0])),
                             prime_sets_default=default)
    if head == "rank":
        ranks, default = [], None
        for k, v in _clauses(body):
            if k == "default":
                default = _parse_int_set(v)
                continue
            ranks.append((_parse_prime(k), _parse_int_set(v)))
        return FormationSpec("rank", raw, ranks=tuple(sorted(ranks, key=lambda t: t[0])),
                             ranks_default=default)
    raise FormationError(f"unknown formation {text!r}")


def baer_local(table: dict[int, LocalTarget], default: LocalTarget = EMPTY,
               nonabelian: LocalTarget = EMPTY, name: str = "baerlocal") -> FormationSpec:
    """A Baer-local formation given prime by prime; ``nonabelian`` serves every non-abelian simple group."""
    return FormationSpec("baerlocal", name, table=tuple(sorted(table.items())),
                         table_default=default, nonabelian=nonabelian)


# -- evaluation ------------------------------------------------------------

@dataclass(eq=False)
class FormationContext:
    """Per-computation caches for one ambient group. Not shared between computations."""

    ambient: PermGroup
    bound: int = DEFAULT_BOUND
    _targets: dict = field(default_factory=dict)
    _generic: dict = field(default_factory=dict)
    _member: dict = field(default_factory=dict)
    _series: dict = field(default_factory=dict)

    def factors(self, K: PermGroup) -> list[ChiefFactor]:
        if K not in self._series:
            terms = chief_series_between(self.ambient, K, self.ambient, self.bound)
            self._series[K] = [ChiefFactor(hi, lo, self.ambient, K) for lo, hi in zip(terms, terms[1:])]
        return self._series[K]

    def target_residual(self, target: LocalTarget, K: PermGroup) -> PermGroup | None:
        key = (target, K)
        if key not in self._targets:
            self._targets[key] = local_residual(target, Section(self.ambient, K), self.bound)
        return self._targets[key]

    def joined_residual(self, targets, K: PermGroup) -> PermGroup | None:
        """Residual for the intersection of the classes: the join of their residuals."""
        parts = []
        for t in dict.fromkeys(targets):
            r = self.target_residual(t, K)
            if r is None:
                return None
            parts.append(r)
        out = parts[0]
        for r in parts[1:]:
            if not r.is_subgroup_of(out):
                out = out.join(r)
        return out

    def member(self, spec: FormationSpec, K: PermGroup) -> bool:
        key = (spec, K)
        if key not in self._member:
            self._member[key] = all(_in_class(spec, f, self) for f in self.factors(K))
        return self._member[key]

    def generic_residual(self, spec: FormationSpec, K: PermGroup) -> PermGroup:
        key = (spec, K)
        if key in self._generic:
            return self._generic[key]
        if self.member(spec, K):
            out = K
        else:
            s = Section(self.ambient, K)
            cands = [self.generic_residual(spec, M) for M in minimal_normal_subgroups(s, self.bound)]
            out = min(cands, key=lambda N: N.order)
            assert all(out.is_subgroup_of(N) for N in cands), "residual candidates are not nested"
        self._generic[key] = out
        return out


def _context(s: Section, ctx: FormationContext | None, bound: int) -> FormationContext:
    if ctx is not None and ctx.ambient is s.ambient:
        return ctx
    return FormationContext(s.ambient, bound)


def local_residual(target: LocalTarget, s: Section, bound: int = DEFAULT_BOUND) -> PermGroup | None:
    """Preimage of the ``target``-residual of the section; None when the class is empty."""
    G, K = s.ambient, s.kernel
    kind = target.kind
    if kind == "all":
        return K
    if kind == "trivial":
        return G
    if kind == "empty":
        return None
    if kind == "pi":
        return pi_residual_of_section(s, target.primes, bound)
    if kind == "abelian_exponent":
        gens = [comm(a, b) for i, a in enumerate(G.generators) for b in G.generators[i + 1:]]
        gens += [power(a, target.exponent) for a in G.generators]
        return normal_closure(G, gens, base=K)
    if kind == "soluble":
        return soluble_residual_of_section(s)
    raise FormationError(f"unknown target {target}")


def generic_residual(spec: FormationSpec, s: Section, bound: int = DEFAULT_BOUND,
                     ctx: FormationContext | None = None) -> PermGroup:
    """The smallest normal N containing the kernel with G/N in the formation."""
    return _context(s, ctx, bound).generic_residual(spec, s.kernel)


def member(spec: FormationSpec, s: Section, bound: int = DEFAULT_BOUND,
           ctx: FormationContext | None = None) -> bool:
    return _context(s, ctx, bound).member(spec, s.kernel)


def rank_of_factor(f: ChiefFactor, bound: int = DEFAULT_BOUND) -> int:
    if f.is_abelian:
        return round(math.log(f.order, f.primes[0]))
    S = minimal_normals_within(f.top, f.bottom, f.top, bound, "rank_of_factor", first_only=True)[0]
    s_order = S.order // f.bottom.order
    k = round(math.log(f.order, s_order))
    assert s_order ** k == f.order
    return k


def _factor_targets(spec: FormationSpec, f: ChiefFactor) -> list[LocalTarget]:
    if not f.is_abelian and spec.kind == "baerlocal":
        return [spec.nonabelian]
    return [spec.local_target(p) for p in f.primes]


def _quasinilpotent_central(f: ChiefFactor, ctx: FormationContext) -> bool:
    G, H, T = f.ambient, f.top, f.bottom
    if centralizes(G, H, T):
        return True
    C = centralizer_of_section(G, T, H, ctx.bound)
    return H.join(C).order == G.order


def _in_class(spec: FormationSpec, f: ChiefFactor, ctx: FormationContext) -> bool:
    """Chief-factor test whose conjunction over a chief series decides membership."""
    kind = spec.kind
    if kind in LOCAL_KINDS:
        X = ctx.joined_residual(_factor_targets(spec, f), f.kernel)
        return X is not None and centralizes(X, f.top, f.bottom)
    if kind == "sc":
        return is_simple_factor(f, ctx.bound)
    if kind == "quasinilpotent":
        return _quasinilpotent_central(f, ctx)
    if kind == "rank":
        return f.is_abelian and spec.rank_allowed(f.primes[0], rank_of_factor(f, ctx.bound))
    if kind == "cff_abelian":
        return f.is_abelian
    if kind == "cff_soluble_action":
        return centralizes(ctx.target_residual(SOLUBLE, f.kernel), f.top, f.bottom)
    raise FormationError(f"unknown formation kind {kind}")


def centrality(spec: FormationSpec, f: ChiefFactor, bound: int = DEFAULT_BOUND,
               ctx: FormationContext | None = None, mode: str = "hypercenter") -> int:
    """1 if the chief factor is central for the formation, else 0.

    ``mode="int"`` selects the chief-factor function whose hypercenter is the
    intersection of the maximal subgroups of the formation.
    """
    ctx = ctx if ctx is not None and ctx.ambient is f.ambient else FormationContext(f.ambient, bound)
    kind, K = spec.kind, f.kernel
    H, T = f.top, f.bottom
    if mode == "int":
        if kind == "sc":
            return int(is_simple_factor(f, ctx.bound))
        if kind == "quasinilpotent":
            return int(_quasinilpotent_central(f, ctx))
        if kind in PRIME_SET_KINDS:
            for p in f.primes:
                g = spec.prime_set(p)
                if g is None:
                    continue
                if not centralizes(ctx.target_residual(pi_groups(g), K), H, T):
                    return 0
            return 1
        raise UnsupportedFormation(f"no intersection method for {spec}")
    if mode != "hypercenter":
        raise ValueError(f"unknown mode {mode!r}")
    if kind in LOCAL_KINDS:
        targets = _factor_targets(spec, f)
        X = ctx.joined_residual(targets, K)
        if X is None:
            return 0
        if not all(spec.target_inside(t) for t in targets):
            R = ctx.generic_residual(spec, K)
            if not centralizes(R, H, T):
                return 0
        return int(centralizes(X, H, T))
    if kind == "sc":
        if f.is_abelian:
            return int(is_prime(f.order))
        return int(centralizes(ctx.generic_residual(spec, K), H, T))
    if kind == "quasinilpotent":
        return int(_quasinilpotent_central(f, ctx))
    if kind == "rank":
        if not f.is_abelian or not spec.rank_allowed(f.primes[0], rank_of_factor(f, ctx.bound)):
            return 0
        C = centralizer_of_section(f.ambient, T, H, ctx.bound)
        return int(ctx.member(spec, C))
    if kind == "cff_abelian":
        return int(f.is_abelian)
    if kind == "cff_soluble_action":
        return int(centralizes(ctx.target_residual(SOLUBLE, K), H, T))
    raise FormationError(f"unknown formation kind {kind}")

