"""Seeded random instances: spaces, maps, automorphisms, measures, functions.

Every generator takes a ``random.Random`` so callers control reproducibility.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .dynamics import ContinuousMap, ReverseOrbitSpec, validate_map
from .errors import ContinuityError
from .functions import RealFunction
from .measures import Measure
from .topology import FiniteSpace

__all__ = [
    "random_space",
    "symmetric_space",
    "random_map",
    "random_automorphism",
    "random_reverse_orbit",
    "random_measure",
    "random_function",
    "random_usc_function",
    "random_sc_function",
]


def random_space(rng: random.Random, n: int, density: float | None = None, non_t0: float = 0.0) -> FiniteSpace:
    """Random preorder: a random DAG on ``x0..x{n-1}`` (edges only from lower to
    higher index, so it is acyclic), saturated by the constructor. With
    ``non_t0 > 0`` each point is glued to an earlier one with that probability."""
    if n < 1:
        raise ValueError("need at least one point")
    if density is None:
        density = rng.choice([0.0, 0.15, 0.3, 0.5])
    points = [f"x{i}" for i in range(n)]
    pairs = []
    for j in range(n):
        for i in range(j):
            if rng.random() < density:
                pairs.append((points[i], points[j]))
    for j in range(1, n):
        if non_t0 and rng.random() < non_t0:
            i = rng.randrange(j)
            pairs += [(points[i], points[j]), (points[j], points[i])]
    return FiniteSpace(points, pairs)


def symmetric_space(rng: random.Random, block: int, copies: int, density: float | None = None) -> FiniteSpace:
    """Disjoint copies of one random block plus an optional common top point.

    Such spaces have automorphisms permuting the copies, which random
    preorders almost never do.
    """
    base = random_space(rng, block, density)
    points = [f"{p}_{c}" for c in range(copies) for p in base.points]
    pairs = [(f"{y}_{c}", f"{x}_{c}") for c in range(copies) for y, x in base.specialization_pairs()]
    if rng.random() < 0.5:
        points.append("top")
        pairs += [(p, "top") for p in points[:-1]]
    return FiniteSpace(points, pairs)


def _backtrack_map(rng: random.Random, space: FiniteSpace, bijective: bool):
    """Randomized depth-first search for a monotone (optionally bijective) map."""
    pts = list(space.points)
    # assign lower points first so more constraints bind early
    order = sorted(pts, key=lambda p: len(space.point_closure(p)))
    assign = {}
    used = set()

    # a monotone bijection of a finite preorder is an automorphism, so it keeps
    # the sizes of closures and of up-sets; only such images are tried
    def signature(p):
        return (len(space.point_closure(p)), sum(space.le(p, q) for q in pts))

    sig = {p: signature(p) for p in pts} if bijective else None

    def ok(p, img):
        for q, qi in assign.items():
            if space.le(p, q) and not space.le(img, qi):
                return False
            if space.le(q, p) and not space.le(qi, img):
                return False
        return True

    def go(k):
        if k == len(order):
            return True
        p = order[k]
        cands = pts[:]
        rng.shuffle(cands)
        for img in cands:
            if bijective and (img in used or sig[img] != sig[p]):
                continue
            if ok(p, img):
                assign[p] = img
                used.add(img)
                if go(k + 1):
                    return True
                del assign[p]
                used.discard(img)
        return False

    if not go(0):  # pragma: no cover - constant maps and the identity always exist
        raise RuntimeError("no monotone map found")
    return assign


def random_map(rng: random.Random, space: FiniteSpace, tries: int = 50) -> ContinuousMap:
    """Rejection sampling of uniform point maps, then randomized backtracking."""
    pts = space.points
    for _ in range(tries):
        mapping = {p: rng.choice(pts) for p in pts}
        try:
            return validate_map(space, mapping)
        except ContinuityError:
            continue
    return validate_map(space, _backtrack_map(rng, space, bijective=False))


def random_automorphism(rng: random.Random, space: FiniteSpace) -> ContinuousMap:
    """A random monotone bijection; on a finite space such a map is an automorphism."""
    return validate_map(space, _backtrack_map(rng, space, bijective=True))


def random_reverse_orbit(rng: random.Random, f: ContinuousMap, x=None, max_prefix: int = 6) -> ReverseOrbitSpec:
    """An eventually periodic reverse orbit of ``x`` under a surjective ``f``.

    Walks backward through random preimages until a point repeats; the
    repeated stretch becomes the cycle. Under a bijection the walk is forced,
    so a random number of extra turns is spelled out in the prefix instead.
    """
    if not f.is_surjective:
        raise ValueError("reverse orbits need a surjective map")
    if x is None:
        x = rng.choice(f.space.points)
    path, pos = [x], {x: 0}
    while True:
        y = rng.choice(f.preimages[path[-1]])
        if y in pos:
            start = pos[y]
            break
        pos[y] = len(path)
        path.append(y)
    prefix, cycle = path[:start], path[start:]
    extra = rng.randint(0, max_prefix)
    for k in range(extra):
        prefix.append(cycle[k % len(cycle)])
    shift = extra % len(cycle)
    cycle = cycle[shift:] + cycle[:shift]
    return ReverseOrbitSpec(x, tuple(prefix), tuple(cycle))


def _rational(rng: random.Random, bound: int = 5, denominators=(1, 2, 3, 4, 6)) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.choice(denominators))


def random_measure(
    rng: random.Random,
    space: FiniteSpace,
    tv_bound=None,
    positive: bool = False,
    support: int | None = None,
    denominators=(1, 2, 3, 4, 5, 6, 8),
) -> Measure:
    """Random coefficients on a random set of irreducibles, scaled to ``tv_bound``."""
    atoms = list(space.irreducibles)
    k = support if support is not None else rng.randint(0, len(atoms))
    chosen = rng.sample(atoms, min(k, len(atoms)))
    coeffs = {}
    for e in chosen:
        v = _rational(rng, 5, denominators)
        coeffs[e] = abs(v) if positive else v
    mu = Measure(space, coeffs)
    if tv_bound is not None:
        tv_bound = Fraction(tv_bound)
        tv = mu.total_variation()
        if tv > tv_bound:
            mu = mu.scale(tv_bound / tv)
    return mu


def random_function(rng: random.Random, space: FiniteSpace, bound: int = 5) -> RealFunction:
    """Arbitrary values; on a non-T0 space this is generally not SC."""
    return RealFunction(space, {p: _rational(rng, bound) for p in space.points})


def random_usc_function(rng: random.Random, space: FiniteSpace, bound: int = 5) -> RealFunction:
    """``f(x) = max r(z)`` over ``z`` with ``x`` in ``cl{z}``, for random ``r``."""
    r = {p: _rational(rng, bound) for p in space.points}
    return RealFunction(
        space, {x: max(r[z] for z in space.points if space.le(x, z)) for x in space.points}
    )


def random_sc_function(rng: random.Random, space: FiniteSpace, bound: int = 5) -> RealFunction:
    """Random values constant on classes of indistinguishable points."""
    vals = {}
    for p in space.points:
        rep = space.equivalence_class(p)[0]
        if rep not in vals:
            vals[rep] = _rational(rng, bound)
        vals[p] = vals[rep]
    return RealFunction(space, vals)
