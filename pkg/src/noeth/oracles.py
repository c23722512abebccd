"""Slow brute-force reference implementations.

Each oracle works straight from a definition (enumerate subsets, chains,
iterates) and shares no code path with the fast routines it checks.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

__all__ = [
    "down_sets",
    "closure_by_intersection",
    "irreducible_closed_sets",
    "minimal_decomposition",
    "generic_points",
    "tail_closure_omega",
    "chain_tau_minus_n",
    "cycle_mean_tau_minus",
    "periodic_points",
    "all_monotone_maps",
]


class _Masks:
    """Subsets of the space as integer bitmasks, built from ``space.le`` alone."""

    def __init__(self, space):
        self.points = list(space.points)
        n = len(self.points)
        self.down = [
            sum(1 << j for j in range(n) if space.le(self.points[j], self.points[i]))
            for i in range(n)
        ]

    def mask(self, subset):
        idx = {p: i for i, p in enumerate(self.points)}
        return sum(1 << idx[p] for p in subset)

    def members(self, m):
        return frozenset(p for i, p in enumerate(self.points) if m >> i & 1)

    def is_down(self, m):
        return all(self.down[i] & ~m == 0 for i in range(len(self.points)) if m >> i & 1)

    def closed_masks(self):
        return [m for m in range(1 << len(self.points)) if self.is_down(m)]


def down_sets(space) -> list:
    """Every down-closed subset, found by testing all ``2^n`` subsets."""
    mk = _Masks(space)
    return [mk.members(m) for m in mk.closed_masks()]


def closure_by_intersection(space, subset, closed=None) -> frozenset:
    closed = closed if closed is not None else down_sets(space)
    out = frozenset(space.points)
    for c in closed:
        if set(subset) <= c:
            out &= c
    return out


def irreducible_closed_sets(space, closed=None) -> list:
    """Nonempty closed sets that are not a finite union of proper closed subsets.

    For finitely many closed sets that is the same as not being a union of
    two, so it suffices to test whether all proper closed subsets together
    still miss a point.
    """
    mk = _Masks(space)
    masks = [mk.mask(c) for c in closed] if closed is not None else mk.closed_masks()
    out = []
    for e in masks:
        if not e:
            continue
        acc = 0
        for c in masks:
            if c != e and c & ~e == 0:
                acc |= c
        if acc != e:
            out.append(mk.members(e))
    return out


def minimal_decomposition(space, e, irreducibles=None) -> set:
    """Maximal irreducible closed subsets of ``e``."""
    if irreducibles is None:
        irreducibles = irreducible_closed_sets(space)
    irr = [c for c in irreducibles if c <= e]
    return {c for c in irr if not any(c < d for d in irr)}


def generic_points(space, e, closed=None) -> set:
    closed = closed if closed is not None else down_sets(space)
    return {x for x in e if closure_by_intersection(space, {x}, closed) == e}


def tail_closure_omega(f, x, horizon=None) -> frozenset:
    """``Intersection over k of cl{f^n(x) : k <= n < K}`` with ``K`` past every tail."""
    n = len(f.space.points)
    horizon = horizon or 4 * n + 4
    orbit = [x]
    for _ in range(horizon):
        orbit.append(f(orbit[-1]))
    out = frozenset(f.space.points)
    for k in range(2 * n + 2):
        out &= closure_by_intersection(f.space, orbit[k:])
    return out


def chain_tau_minus_n(f, tau, n, x):
    """``max tau_n(y)`` over all ``y`` with ``f^n(y) = x``, straight from the definition."""
    best = None
    for y in f.space.points:
        z, total = y, Fraction(0)
        for _ in range(n):
            total += tau(z)
            z = f(z)
        if z == x and (best is None or total > best):
            best = total
    return best


def periodic_points(f) -> list:
    n = len(f.space.points)
    out = []
    for x in f.space.points:
        z = x
        for _ in range(n):
            z = f(z)
            if z == x:
                out.append(x)
                break
    return out


def cycle_mean_tau_minus(f, tau, x):
    """Best mean of ``tau`` over cycles some iterate of which lands on ``x``."""
    n = len(f.space.points)
    best = None
    for y in periodic_points(f):
        cyc, z = [y], f(y)
        while z != y:
            cyc.append(z)
            z = f(z)
        z, hits = y, False
        for _ in range(2 * n + 1):
            if z == x:
                hits = True
                break
            z = f(z)
        if hits:
            mean = sum((tau(c) for c in cyc), Fraction(0)) / len(cyc)
            if best is None or mean > best:
                best = mean
    return best


def all_monotone_maps(space):
    """Every continuous self-map of a small space, by exhaustive search."""
    pts = space.points
    for imgs in product(pts, repeat=len(pts)):
        m = dict(zip(pts, imgs))
        if all(space.le(m[y], m[x]) for x in pts for y in pts if space.le(y, x)):
            yield m
