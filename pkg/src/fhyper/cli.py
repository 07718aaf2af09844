"""Command-line front end.

Exit codes: 0 on success, 1 on bad input, 2 when a size bound is exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import corpus
from .engine import hypercenter, int_subgroup
from .formations import FormationError, generic_residual, member, parse_formation
from .perm import PermutationError, format_permutation, parse_permutation
from .permgroup import DEFAULT_BOUND, PermGroup, SizeBoundExceeded
from .sections import Section, SectionError, chief_series

OPS = ("hypercenter", "int", "residual", "chiefseries", "membership", "radical-demo")
NEEDS_FORMATION = {"hypercenter", "int", "residual", "membership"}
BUILTIN_PREFIX = "builtin:"


class InputError(ValueError):
    pass


def _builtin_groups() -> dict[str, PermGroup]:
    groups = dict(corpus.build_corpus())
    groups["A5wrC2"] = corpus.a5_wreath_c2()
    for k in range(1, 6):
        groups[f"S4^{k}"] = corpus.s4_power(k)
    return groups


def _parse_gens(texts, degree: int) -> list:
    if not isinstance(texts, list) or not all(isinstance(t, str) for t in texts):
        raise InputError("generators must be a list of cycle-notation strings")
    return [parse_permutation(t, degree) for t in texts]


def load_group_file(path: str) -> tuple[PermGroup, dict[str, PermGroup]]:
    """Read a group file: {"degree": n, "generators": [...], "subgroups": {name: [...]}}."""
    if path.startswith(BUILTIN_PREFIX):
        name = path[len(BUILTIN_PREFIX):]
        groups = _builtin_groups()
        if name not in groups:
            raise InputError(f"unknown builtin group {name!r}; choose from {', '.join(groups)}")
        return groups[name], {}
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read group file {path}: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("degree"), int) or doc["degree"] < 1:
        raise InputError("group file needs a positive integer 'degree'")
    n = doc["degree"]
    G = PermGroup(_parse_gens(doc.get("generators", []), n), n)
    subs = {}
    for name, texts in (doc.get("subgroups") or {}).items():
        S = PermGroup(_parse_gens(texts, n), n)
        if not S.is_subgroup_of(G):
            raise InputError(f"subgroup {name!r} is not contained in the group")
        subs[name] = S
    return G, subs


def _resolve_kernel(arg: str | None, G: PermGroup, named: dict[str, PermGroup]) -> PermGroup:
    if arg is None:
        return PermGroup.trivial(G.degree)
    if arg in named:
        K = named[arg]
    else:
        try:
            doc = json.loads(Path(arg).read_text())
        except (OSError, json.JSONDecodeError):
            raise InputError(f"kernel {arg!r} is neither a named subgroup nor a readable JSON file") from None
        texts = doc.get("generators") if isinstance(doc, dict) else doc
        K = PermGroup(_parse_gens(texts, G.degree), G.degree)
    if not K.is_normal_in(G):
        raise InputError("kernel must be a normal subgroup of the group")
    return K


def _shuffled(G: PermGroup, seed: int) -> PermGroup:
    if seed == 0:
        return G
    gens = list(G.generators)
    random.Random(seed).shuffle(gens)
    return PermGroup(gens, G.degree)


def _subgroup_doc(S: PermGroup, G: PermGroup) -> dict:
    return {
        "generators": [format_permutation(g) for g in S.generators],
        "order": S.order,
        "index": G.order // S.order,
    }


def run_operation(op: str, G: PermGroup, K: PermGroup, formation: str | None,
                  bound: int, explain: bool) -> dict:
    doc: dict = {"operation": op, "formation": formation,
                 "group": {"degree": G.degree, "order": G.order}, "kernel_order": K.order,
                 "bound": bound}
    spec = parse_formation(formation) if formation else None
    if op in NEEDS_FORMATION and spec is None:
        raise InputError(f"--op {op} requires --formation")
    s = Section(G, K)
    if op in ("hypercenter", "int"):
        res = hypercenter(G, K, spec, bound) if op == "hypercenter" else int_subgroup(spec, s, bound)
        doc["subgroup"] = _subgroup_doc(res.subgroup, G)
        if explain:
            doc["trace"] = [r.as_dict() for r in res.trace]
    elif op == "residual":
        doc["subgroup"] = _subgroup_doc(generic_residual(spec, s, bound), G)
    elif op == "membership":
        doc["member"] = member(spec, s, bound)
    elif op == "chiefseries":
        through = [K] if not K.is_trivial() else []
        cs = chief_series(G, through, bound)
        doc["series"] = [_subgroup_doc(t, G) for t in cs.terms]
        doc["factor_orders"] = cs.factor_orders()
    elif op == "radical-demo":
        doc["formation"] = None
        doc["results"] = {}
        for text in ("cff:abelian", "cff:soluble-action"):
            res = hypercenter(G, K, parse_formation(text), bound)
            entry = _subgroup_doc(res.subgroup, G)
            if explain:
                entry["trace"] = [r.as_dict() for r in res.trace]
            doc["results"][text] = entry
    else:
        raise InputError(f"unknown operation {op!r}")
    return doc


def render_text(doc: dict) -> str:
    lines = [f"operation: {doc['operation']}"]
    if doc.get("formation"):
        lines.append(f"formation: {doc['formation']}")
    g = doc["group"]
    lines.append(f"group: degree {g['degree']}, order {g['order']}; kernel order {doc['kernel_order']}")

    def sub(label, d):
        lines.append(f"{label}: order {d['order']}, index {d['index']}")
        lines.append("  generators: " + (", ".join(d["generators"]) or "(none)"))
        for r in d.get("trace", []):
            lines.append(
                f"  factor {r['index']}: order {r['factor_order']} primes {r['primes']} "
                f"centrality {r['centrality']} branch {r['branch']} "
                f"Z {r['z_order_before']} -> {r['z_order_after']}"
            )

    if "subgroup" in doc:
        sub("subgroup", {**doc["subgroup"], "trace": doc.get("trace", [])})
    if "member" in doc:
        lines.append(f"member: {str(doc['member']).lower()}")
    if "series" in doc:
        lines.append("chief series orders: " + " < ".join(str(t["order"]) for t in doc["series"]))
        lines.append("factor orders: " + ", ".join(map(str, doc["factor_orders"])))
    for name, d in doc.get("results", {}).items():
        sub(name, d)
    if "timing_seconds" in doc:
        lines.append(f"time: {doc['timing_seconds']:.3f} s")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fhyper", description="Hypercenters, residuals and chief series of permutation groups.")
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", help="group file (JSON) or builtin:NAME")
    src.add_argument("--corpus", help="directory of group files; runs the operation on each")
    ap.add_argument("--op", required=True, choices=OPS)
    ap.add_argument("--formation", help="formation description, e.g. supersoluble or pnilpotent:2")
    ap.add_argument("--kernel", help="named subgroup of the group file, or a JSON file of generators")
    ap.add_argument("--json", action="store_true", help="emit the result document as JSON")
    ap.add_argument("--explain", action="store_true", help="include the per-factor trace")
    ap.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="enumeration bound (default 2^20)")
    ap.add_argument("--seed", type=int, default=0, help="shuffle input generators with this seed (0 keeps order)")
    ap.add_argument("--timing", action="store_true", help="report wall-clock time (breaks byte-identical output)")
    return ap


def _run_one(args, path: str) -> dict:
    G, named = load_group_file(path)
    K = _resolve_kernel(args.kernel, G, named)
    G = _shuffled(G, args.seed)
    t = time.perf_counter()
    doc = run_operation(args.op, G, K, args.formation, args.bound, args.explain)
    if args.timing:
        doc["timing_seconds"] = time.perf_counter() - t
    return doc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.bound < 1:
        print("error: --bound must be positive", file=sys.stderr)
        return 1
    try:
        if args.corpus:
            paths = sorted(str(p) for p in Path(args.corpus).glob("*.json"))
            if not paths:
                raise InputError(f"no group files in {args.corpus}")
            docs = []
            for p in paths:
                d = _run_one(args, p)
                d["file"] = Path(p).name
                docs.append(d)
            out = json.dumps(docs, indent=2) if args.json else "\n\n".join(
                f"[{d['file']}]\n" + render_text(d) for d in docs)
        else:
            doc = _run_one(args, args.group)
            out = json.dumps(doc, indent=2) if args.json else render_text(doc)
    except SizeBoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, PermutationError, FormationError, SectionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
