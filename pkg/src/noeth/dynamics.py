"""Continuous self-maps of finite spaces and their measure dynamics.

Covers pushforward of atomic measures, the induced map on the completion,
periodic cycles, invariant and ergodic measures, forward and backward limit
sets, and exact Cesaro averages with their closed-form error bounds.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    ContinuityError,
    NotSurjectiveError,
    NotZariskiError,
    ReverseOrbitError,
    SpaceError,
    SpaceMismatchError,
)
from .measures import Measure, weak_distance
from .topology import Completion, FiniteSpace, is_zariski

__all__ = [
    "ContinuousMap",
    "OrbitSummary",
    "ReverseOrbitSpec",
    "LimitMeasureReport",
    "validate_map",
    "pushforward",
    "induce_on_completion",
    "periodic_cycles",
    "ergodic_measures",
    "is_invariant",
    "forward_orbit",
    "omega_limit",
    "forward_limit_measure",
    "alpha_limit",
    "reverse_limit_measure",
    "birkhoff_average",
    "reverse_average",
]


class ContinuousMap:
    """A validated continuous map; build it with :func:`validate_map`."""

    def __init__(self, space: FiniteSpace, mapping: Mapping):
        self.space = space
        self.mapping = {p: mapping[p] for p in space.points}
        pre = {p: [] for p in space.points}
        for p in space.points:
            pre[self.mapping[p]].append(p)
        self.preimages = {p: tuple(v) for p, v in pre.items()}
        self.is_surjective = all(self.preimages.values())

    def __call__(self, x):
        return self.mapping[x]

    def __eq__(self, other):
        if not isinstance(other, ContinuousMap):
            return NotImplemented
        return self.space == other.space and self.mapping == other.mapping

    def __repr__(self):
        return f"ContinuousMap({self.mapping!r})"

    def iterate(self, x, n: int):
        for _ in range(n):
            x = self.mapping[x]
        return x

    def image_closure(self, subset: Iterable) -> frozenset:
        return self.space.closure(self.mapping[p] for p in subset)

    def preimage(self, subset: Iterable) -> frozenset:
        s = self.space.check_subset(subset)
        return frozenset(p for p in self.space.points if self.mapping[p] in s)

    def compose(self, other: "ContinuousMap") -> "ContinuousMap":
        """``self o other``."""
        if other.space != self.space:
            raise SpaceMismatchError("maps live on different spaces")
        return ContinuousMap(self.space, {p: self.mapping[other.mapping[p]] for p in self.space.points})


def validate_map(space: FiniteSpace, mapping: Mapping) -> ContinuousMap:
    """Accept ``mapping`` iff it is total and monotone for specialization."""
    missing = [p for p in space.points if p not in mapping]
    if missing:
        raise SpaceError(f"map undefined at {missing!r}")
    for p, q in mapping.items():
        if p not in space:
            raise SpaceError(f"map given at unknown point {p!r}")
        if q not in space:
            raise SpaceError(f"map sends {p!r} to unknown point {q!r}")
    for y, x in space.specialization_pairs():
        if not space.le(mapping[y], mapping[x]):
            raise ContinuityError(
                f"not continuous: {y!r} is in cl{{{x!r}}} but f({y!r})={mapping[y]!r} "
                f"is not in cl{{{mapping[x]!r}}}",
                witness=(y, x),
            )
    return ContinuousMap(space, mapping)


def _same_space(f: ContinuousMap, mu: Measure):
    if f.space != mu.space:
        raise SpaceMismatchError("map and measure live on different spaces")


def pushforward(f: ContinuousMap, mu: Measure) -> Measure:
    """Move each coefficient of ``E`` to the closure of ``f(E)``."""
    _same_space(f, mu)
    out = {}
    for e, v in mu._c.items():
        img = f.image_closure(e)
        out[img] = out.get(img, Fraction(0)) + v
    return Measure._raw(f.space, out)


def induce_on_completion(f: ContinuousMap, c: Completion) -> ContinuousMap:
    """``E -> cl f(E)`` on the points of the completion."""
    c.check_base(f.space)
    mapping = {
        c.point_embedding[e.members]: c.point_of(f.image_closure(e.members))
        for e in c.base.irreducibles
    }
    return validate_map(c.space, mapping)


def _require_zariski(space: FiniteSpace):
    if not is_zariski(space):
        raise NotZariskiError(
            "space is not Zariski (some irreducible closed set has several generic points); "
            "pass through the completion first"
        )


def periodic_cycles(f: ContinuousMap) -> list:
    """All periodic cycles, each rotated to start at its first point in canonical
    order; cycles sorted by their sorted point indices."""
    space = f.space
    seen, cycles = set(), []
    for start in space.points:
        if start in seen:
            continue
        path, pos, x = [], {}, start
        while x not in pos and x not in seen:
            pos[x] = len(path)
            path.append(x)
            x = f(x)
        if x in pos:
            cyc = path[pos[x]:]
            first = min(range(len(cyc)), key=lambda i: space.index(cyc[i]))
            cycles.append(tuple(cyc[first:] + cyc[:first]))
        seen.update(path)
    return sorted(cycles, key=lambda c: sorted(space.index(p) for p in c))


def cycle_measure(space: FiniteSpace, cycle: Iterable) -> Measure:
    """Uniform probability on the closure-atoms of the cycle points."""
    cycle = tuple(cycle)
    r = Fraction(1, len(cycle))
    out = {}
    for p in cycle:
        e = space.point_closure(p)
        out[e] = out.get(e, Fraction(0)) + r
    return Measure._raw(space, out)


def _stable_image(f: ContinuousMap) -> frozenset:
    """The nested sequence ``X_0 = X, X_{n+1} = cl f(X_n)`` until it stabilizes."""
    x = f.space.whole
    while True:
        nxt = f.image_closure(x)
        if nxt == x:
            return x
        x = nxt


def ergodic_measures(f: ContinuousMap) -> list:
    """One uniform cycle measure per periodic cycle of ``f`` (Zariski spaces only)."""
    _require_zariski(f.space)
    cycles = periodic_cycles(f)
    # cross-check: f permutes the generic points of the components of the stable image
    stable = _stable_image(f)
    gens = {e.generic_points[0] for e in f.space.components(stable)}
    if not gens or {f(g) for g in gens} != gens or not any(set(c) <= gens for c in cycles):
        raise AssertionError("stable-image construction found no periodic cycle")  # pragma: no cover
    return [cycle_measure(f.space, c) for c in cycles]


def is_invariant(f: ContinuousMap, mu: Measure) -> bool:
    return pushforward(f, mu) == mu


@dataclass(frozen=True)
class OrbitSummary:
    start: object
    preperiod: int
    cycle: tuple


def forward_orbit(f: ContinuousMap, x) -> OrbitSummary:
    f.space.index(x)
    pos, path = {}, []
    while x not in pos:
        pos[x] = len(path)
        path.append(x)
        x = f(x)
    n = pos[x]
    return OrbitSummary(path[0], n, tuple(path[n:]))


def omega_limit(f: ContinuousMap, x) -> frozenset:
    """Closure of the eventual cycle of ``x``."""
    return f.space.closure(forward_orbit(f, x).cycle)


@dataclass(frozen=True)
class ReverseOrbitSpec:
    """Eventually periodic reverse orbit ``x_0, x_-1, ...``.

    ``prefix`` lists ``x_0 .. x_{-m+1}``; afterwards ``cycle`` repeats
    backward forever, so ``x_{-m-k} = cycle[k mod r]``.
    """

    start: object
    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ReverseOrbitError("reverse-orbit cycle must be nonempty")
        first = self.prefix[0] if self.prefix else self.cycle[0]
        if first != self.start:
            raise ReverseOrbitError(f"reverse orbit must begin at {self.start!r}, begins at {first!r}")

    def point(self, k: int):
        """``x_{-k}``."""
        m = len(self.prefix)
        if k < m:
            return self.prefix[k]
        return self.cycle[(k - m) % len(self.cycle)]

    def points(self) -> set:
        return set(self.prefix) | set(self.cycle)


def check_reverse_orbit(f: ContinuousMap, ro: ReverseOrbitSpec) -> None:
    """Raise unless ``f(x_{-n}) = x_{-n+1}`` for every ``n`` (prefix, seam, and cycle)."""
    for p in ro.points():
        f.space.index(p)
    # the trailing cycle[0] checks that the cycle closes: f(cycle[0]) = cycle[-1]
    seq = list(ro.prefix) + list(ro.cycle) + [ro.cycle[0]]
    for k in range(1, len(seq)):
        if f(seq[k]) != seq[k - 1]:
            raise ReverseOrbitError(
                f"f({seq[k]!r}) = {f(seq[k])!r}, but the reverse orbit needs {seq[k - 1]!r}"
            )


def alpha_limit(f: ContinuousMap, ro: ReverseOrbitSpec) -> frozenset:
    """Closure of every point of the reverse orbit."""
    if not f.is_surjective:
        raise NotSurjectiveError("map not surjective: reverse orbits need not exist")
    check_reverse_orbit(f, ro)
    return f.space.closure(ro.points())


@dataclass(frozen=True)
class LimitMeasureReport:
    predicted: Measure
    limit_set: frozenset
    cycle_points: tuple
    n: int | None = None
    empirical: Measure | None = None
    distance: Fraction | None = None
    bound: Fraction | None = None


def _limit_measure(space: FiniteSpace, limit_set: frozenset) -> tuple:
    comps = space.components(limit_set)
    gens = tuple(e.generic_points[0] for e in comps)
    r = Fraction(1, len(comps))
    return Measure._raw(space, {e.members: r for e in comps}), gens


def _counts_to_measure(space: FiniteSpace, counts: Counter, n: int) -> Measure:
    out = {}
    for p, k in counts.items():
        e = space.point_closure(p)
        out[e] = out.get(e, Fraction(0)) + Fraction(k, n)
    return Measure._raw(space, out)


def birkhoff_average(f: ContinuousMap, x, n: int) -> Measure:
    """``n^-1 sum_{k<n} f^k_* delta_x``, iterating the map ``n`` times."""
    if n < 1:
        raise ValueError("n must be positive")
    counts = Counter()
    for _ in range(n):
        counts[x] += 1
        x = f(x)
    return _counts_to_measure(f.space, counts, n)


def reverse_average(f: ContinuousMap, ro: ReverseOrbitSpec, n: int) -> Measure:
    """``n^-1 sum_{k<n} delta_{x_-k}`` along the reverse orbit."""
    if n < 1:
        raise ValueError("n must be positive")
    counts = Counter(ro.point(k) for k in range(n))
    return _counts_to_measure(f.space, counts, n)


def forward_limit_measure(f: ContinuousMap, x, empirical_n: int | None = None) -> LimitMeasureReport:
    """Predicted weak limit of the Birkhoff averages of ``delta_x``.

    The prediction is uniform on the generic points of the components of the
    omega-limit set. With ``empirical_n`` the exact average at ``n`` is
    compared against it; the distance never exceeds ``(N + r) / n``.
    """
    _require_zariski(f.space)
    orbit = forward_orbit(f, x)
    lset = f.space.closure(orbit.cycle)
    predicted, gens = _limit_measure(f.space, lset)
    if empirical_n is None:
        return LimitMeasureReport(predicted, lset, gens)
    emp = birkhoff_average(f, x, empirical_n)
    bound = Fraction(orbit.preperiod + len(orbit.cycle), empirical_n)
    return LimitMeasureReport(predicted, lset, gens, empirical_n, emp, weak_distance(emp, predicted), bound)


def reverse_limit_measure(f: ContinuousMap, ro: ReverseOrbitSpec, empirical_n: int | None = None) -> LimitMeasureReport:
    """Predicted weak limit of the reverse Cesaro averages along ``ro``.

    With ``empirical_n`` the distance is bounded by ``(m + r) / n`` for a
    prefix of length ``m`` and a cycle of length ``r``.
    """
    _require_zariski(f.space)
    aset = alpha_limit(f, ro)
    predicted, gens = _limit_measure(f.space, aset)
    if empirical_n is None:
        return LimitMeasureReport(predicted, aset, gens)
    emp = reverse_average(f, ro, empirical_n)
    bound = Fraction(len(ro.prefix) + len(ro.cycle), empirical_n)
    return LimitMeasureReport(predicted, aset, gens, empirical_n, emp, weak_distance(emp, predicted), bound)
