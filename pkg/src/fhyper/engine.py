"""Hypercenter computation along a chief series.

The hypercenter Z(G/K, f) is built one chief factor at a time. Writing Z1 for
the part found below the current factor H/T, the next part Z2 is either Z1 or
a G-normal subgroup with H/Z1 = T/Z1 x Z2/Z1; which one is decided by a
centralizer computation for non-abelian factors and by a linear system over
F_p for abelian ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

from .formations import FormationContext, FormationSpec, UnsupportedFormation, centrality
from .fpmodule import action_matrices, coordinatize, equivariant_complement, subgroup_of
from .permgroup import DEFAULT_BOUND, PermGroup
from .sections import (
    ChiefFactor,
    Section,
    SectionError,
    chief_series_between,
    omega1_center_pcore,
    soluble_residual,
    stabilize_cosets,
)

ChiefFactorFunction = Callable[[ChiefFactor], int]


@dataclass
class StepRecord:
    index: int
    factor_order: int
    bottom_order: int
    top_order: int
    primes: list[int]
    centrality: int
    branch: str          # "skip", "nonabelian" or "abelian"
    grew: bool
    z_before: int
    z_after: int

    def as_dict(self) -> dict:
        return {
            "index": self.index,
            "factor_order": self.factor_order,
            "bottom_order": self.bottom_order,
            "top_order": self.top_order,
            "primes": self.primes,
            "centrality": self.centrality,
            "branch": self.branch,
            "grew": self.grew,
            "z_order_before": self.z_before,
            "z_order_after": self.z_after,
        }


@dataclass
class HypercenterResult:
    subgroup: PermGroup
    series: list[PermGroup]
    trace: list[StepRecord] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.subgroup.order


def step_nonabelian(f: ChiefFactor, Z1: PermGroup, bound: int = DEFAULT_BOUND) -> PermGroup:
    H, T = f.top, f.bottom
    C = stabilize_cosets(H, Z1, T.generators, bound, "step_nonabelian")
    S = soluble_residual(C)
    if not S.is_subgroup_of(Z1):
        S = S.join(Z1)
    else:
        S = Z1
    if S.order // Z1.order == f.order:
        return S
    return Z1


def step_abelian(f: ChiefFactor, Z1: PermGroup, p: int, bound: int = DEFAULT_BOUND,
                 series=None) -> PermGroup:
    """``series``: (bottom, top) pairs whose common centralizer in H cuts out the Fitting preimage."""
    G, H, T = f.ambient, f.top, f.bottom
    P = omega1_center_pcore(Section(H, Z1), p, bound, series)
    if P.is_subgroup_of(T):
        return Z1
    model = coordinatize(P, Z1, p, bound)
    actions = action_matrices(model, G)
    U = [vec for rep, vec in model.table.items() if T.contains(rep)]
    W = equivariant_complement(model, actions, U)
    if W is None:
        return Z1
    return subgroup_of(model, W)


def hypercenter(G: PermGroup, K: PermGroup | None,
                spec: Union[FormationSpec, ChiefFactorFunction],
                bound: int = DEFAULT_BOUND, mode: str = "hypercenter") -> HypercenterResult:
    """Greatest normal subgroup Z >= K all of whose G-chief factors above K are central.

    ``spec`` is a formation (its chief-factor function is selected by ``mode``)
    or any callable mapping a ChiefFactor to 0 or 1.
    """
    if K is None:
        K = PermGroup.trivial(G.degree)
    Section(G, K).validate()
    ctx = FormationContext(G, bound)
    if isinstance(spec, FormationSpec):
        def cff(f: ChiefFactor) -> int:
            return centrality(spec, f, bound, ctx, mode)
    else:
        cff = spec
    terms = chief_series_between(G, K, G, bound)
    Z = K
    trace: list[StepRecord] = []
    unchanged: list[tuple[PermGroup, PermGroup]] = []
    for i, (T, H) in enumerate(zip(terms, terms[1:]), start=1):
        f = ChiefFactor(H, T, G, K)
        value = cff(f)
        if value not in (0, 1):
            raise ValueError(f"chief-factor function returned {value!r}")
        if value == 0:
            branch, Z2 = "skip", Z
        elif not f.is_abelian:
            branch, Z2 = "nonabelian", step_nonabelian(f, Z, bound)
        else:
            branch = "abelian"
            Z2 = step_abelian(f, Z, f.primes[0], bound, series=unchanged + [(T, H)])
        grew = Z2.order != Z.order
        if grew and Z2.order // Z.order != f.order:
            raise SectionError("hypercenter step grew by a wrong index")
        if not grew:
            unchanged.append((T, H))
        trace.append(StepRecord(i, f.order, T.order, H.order, list(f.primes), value, branch,
                                grew, Z.order, Z2.order))
        Z = Z2
    return HypercenterResult(Z, terms, trace)


def int_subgroup(spec: FormationSpec, s: Section, bound: int = DEFAULT_BOUND) -> HypercenterResult:
    """Intersection of the maximal subgroups of the formation, for formations that support it."""
    if not spec.has_int_method:
        raise UnsupportedFormation(f"no intersection method for {spec}")
    return hypercenter(s.ambient, s.kernel, spec, bound, mode="int")
