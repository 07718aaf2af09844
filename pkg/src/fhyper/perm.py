"""Permutation arithmetic on plain tuples.

A permutation of degree n is a tuple ``p`` of length n with ``p[i]`` the image
of point ``i`` (points are 0-based internally, 1-based in cycle notation).
Products act left to right: ``mul(a, b)`` applies ``a`` first, then ``b``,
so ``i^(ab) = (i^a)^b``.
"""

from __future__ import annotations

import math
import re

Perm = tuple  # tuple[int, ...]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class PermutationError(ValueError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def mul(a: Perm, b: Perm) -> Perm:
    return tuple([b[x] for x in a])


def mul_all(perms, n: int) -> Perm:
    out = identity(n)
    for p in perms:
        out = mul(out, p)
    return out


def inv(a: Perm) -> Perm:
    r = [0] * len(a)
    for i, x in enumerate(a):
        r[x] = i
    return tuple(r)


def conj(a: Perm, g: Perm) -> Perm:
    """Return ``a^g = g^-1 a g``."""
    r = [0] * len(a)
    for i, x in enumerate(a):
        r[g[i]] = g[x]
    return tuple(r)


def comm(a: Perm, b: Perm) -> Perm:
    """Return ``[a, b] = a^-1 b^-1 a b``."""
    return mul(inv(a), conj(a, b))


def power(a: Perm, k: int) -> Perm:
    n = len(a)
    if k < 0:
        a, k = inv(a), -k
    result = identity(n)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def cycles(p: Perm) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(cyc)
    return out


def order(p: Perm) -> int:
    return math.lcm(*[len(c) for c in cycles(p)]) if not is_identity(p) else 1


def parse_permutation(text: str, degree: int) -> Perm:
    """Parse cycle notation with 1-based points, e.g. ``"(1 2 3)(4 5)"``.

    ``"()"`` is the identity. Commas between points are tolerated.
    """
    if degree < 1:
        raise PermutationError(f"degree must be positive, got {degree}")
    stripped = text.strip()
    if not stripped:
        raise PermutationError("empty permutation text")
    pos = 0
    images = list(range(degree))
    used: set[int] = set()
    for m in _CYCLE_RE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise PermutationError(f"malformed cycle text {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        if not body:
            continue
        try:
            points = [int(tok) for tok in body]
        except ValueError:
            raise PermutationError(f"non-integer point in {text!r}") from None
        for pt in points:
            if not 1 <= pt <= degree:
                raise PermutationError(f"point {pt} out of range 1..{degree}")
            if pt in used:
                raise PermutationError(f"point {pt} repeated in {text!r}")
            used.add(pt)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b - 1
    if stripped[pos:].strip() or pos == 0:
        raise PermutationError(f"malformed cycle text {text!r}")
    return tuple(images)


def format_permutation(p: Perm) -> str:
    """Canonical cycle text: each cycle starts at its least point, cycles sorted."""
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cs)


def images1(p: Perm) -> list[int]:
    """1-based image list, as used in cycle-notation examples."""
    return [x + 1 for x in p]


def check_perm(p, degree: int | None = None) -> Perm:
    p = tuple(p)
    if degree is not None and len(p) != degree:
        raise PermutationError(f"degree mismatch: expected {degree}, got {len(p)}")
    if sorted(p) != list(range(len(p))):
        raise PermutationError("not a bijection")
    return p
