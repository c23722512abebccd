"""Cofinite topologies on finite, countable and uncountable sets, symbolically.

Closed sets are the finite sets and the whole space. Sets are described by
their cardinality class only; that algebra is closed under complement,
union and intersection and decides every question asked here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NoethError, NotBorelError, SpaceError
from .measures import IntersectionType
from .rational import as_fraction

__all__ = [
    "CofiniteSpace",
    "SymbolicSet",
    "SymbolicMeasure",
    "CofiniteSCFunction",
    "sigma_irreducible_closeds",
    "is_complete",
    "classify_whole",
    "classify_point",
    "delta_Y",
    "symbolic_from_closed_values",
    "lambda_gap_witness",
    "shift_dynamics_report",
]

FINITE, COUNTABLE, UNCOUNTABLE = "finite", "countable", "uncountable"


@dataclass(frozen=True)
class CofiniteSpace:
    cardinality: str  # "finite" | "countable" | "uncountable"
    size: int | None = None  # only for finite spaces
    carrier: str | None = None  # e.g. "integers"; gives points names for maps

    def __post_init__(self):
        if self.cardinality not in (FINITE, COUNTABLE, UNCOUNTABLE):
            raise SpaceError(f"unknown cardinality class {self.cardinality!r}")
        if (self.cardinality == FINITE) != (self.size is not None):
            raise SpaceError("size is given exactly for finite cofinite spaces")
        if self.size is not None and self.size < 1:
            raise SpaceError("a finite space needs at least one point")
        if self.carrier == "integers" and self.cardinality != COUNTABLE:
            raise SpaceError("the integers are countably infinite")

    @classmethod
    def integers(cls) -> "CofiniteSpace":
        return cls(COUNTABLE, carrier="integers")

    @classmethod
    def from_descriptor(cls, d) -> "CofiniteSpace":
        """``"countable" | "uncountable" | "integers" | {"finite": n}``."""
        if d == "integers":
            return cls.integers()
        if d in (COUNTABLE, UNCOUNTABLE):
            return cls(d)
        if isinstance(d, Mapping) and set(d) == {"finite"}:
            return cls(FINITE, size=int(d["finite"]))
        raise SpaceError(f"bad cofinite space descriptor {d!r}")


@dataclass(frozen=True)
class SymbolicSet:
    """``kind`` is one of ``finite``, ``cofinite`` (``elements`` lists the
    members, resp. the complement), ``countable``, ``cocountable``, or
    ``neither`` (uncountable with uncountable complement)."""

    kind: str
    elements: frozenset = field(default_factory=frozenset)

    KINDS = ("finite", "cofinite", "countable", "cocountable", "neither")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise SpaceError(f"unknown symbolic set kind {self.kind!r}")
        object.__setattr__(self, "elements", frozenset(self.elements))
        if self.kind not in ("finite", "cofinite") and self.elements:
            raise SpaceError(f"abstract {self.kind} sets carry no element list")

    @classmethod
    def finite(cls, elements: Iterable = ()) -> "SymbolicSet":
        return cls("finite", frozenset(elements))

    @classmethod
    def cofinite(cls, complement: Iterable = ()) -> "SymbolicSet":
        return cls("cofinite", frozenset(complement))

    @classmethod
    def from_descriptor(cls, d) -> "SymbolicSet":
        if isinstance(d, Mapping) and len(d) == 1:
            (key, value), = d.items()
            if key == "finite":
                return cls.finite(value)
            if key == "cofinite":
                return cls.cofinite(value)
            if key == "class" and value in ("countable", "cocountable", "neither"):
                return cls(value)
        raise SpaceError(f"bad symbolic set descriptor {d!r}")

    def complement(self) -> "SymbolicSet":
        flip = {"finite": "cofinite", "cofinite": "finite", "countable": "cocountable",
                "cocountable": "countable", "neither": "neither"}
        return SymbolicSet(flip[self.kind], self.elements)

    def _coarse(self) -> str:
        return {"finite": "countable", "cofinite": "cocountable"}.get(self.kind, self.kind)

    def union(self, other: "SymbolicSet") -> "SymbolicSet":
        a, b = self.kind, other.kind
        if a == "finite" and b == "finite":
            return SymbolicSet.finite(self.elements | other.elements)
        if a == "cofinite" and b == "cofinite":
            return SymbolicSet.cofinite(self.elements & other.elements)
        if {a, b} == {"finite", "cofinite"}:
            fin, cof = (self, other) if a == "finite" else (other, self)
            return SymbolicSet.cofinite(cof.elements - fin.elements)
        ca, cb = self._coarse(), other._coarse()
        if "cocountable" in (ca, cb):
            return SymbolicSet("cocountable")
        if ca == cb == "countable":
            return SymbolicSet("countable")
        # neither with countable stays neither; neither with neither is undetermined
        if "countable" in (ca, cb):
            return SymbolicSet("neither")
        raise NoethError("union of two 'neither' sets is not determined by their classes")

    def intersection(self, other: "SymbolicSet") -> "SymbolicSet":
        return self.complement().union(other.complement()).complement()

    def is_countable_in(self, space: CofiniteSpace) -> bool:
        if space.cardinality != UNCOUNTABLE:
            return True
        return self._coarse() == "countable"

    def is_cocountable_in(self, space: CofiniteSpace) -> bool:
        return self.complement().is_countable_in(space)

    def contains(self, point) -> bool:
        if self.kind == "finite":
            return point in self.elements
        if self.kind == "cofinite":
            return point not in self.elements
        raise NoethError(f"membership in an abstract {self.kind} set is not determined")


@dataclass(frozen=True)
class SigmaIrreducibles:
    singletons: bool
    whole_space: bool

    def describe(self) -> str:
        parts = ["all singletons"] if self.singletons else []
        if self.whole_space:
            parts.append("whole space")
        return " + ".join(parts)


def sigma_irreducible_closeds(space: CofiniteSpace) -> SigmaIrreducibles:
    """Every point is sigma-irreducible; the whole space is too iff it cannot be
    covered by countably many finite sets (uncountable) or is a single point."""
    if space.cardinality == FINITE:
        return SigmaIrreducibles(True, space.size == 1)
    return SigmaIrreducibles(True, space.cardinality == UNCOUNTABLE)


def irreducible_whole(space: CofiniteSpace) -> bool:
    """The whole space is irreducible iff it is not a union of two finite proper subsets."""
    return space.cardinality != FINITE or space.size == 1


def is_complete(space: CofiniteSpace) -> bool:
    """Every irreducible closed set is sigma-irreducible."""
    return not irreducible_whole(space) or sigma_irreducible_closeds(space).whole_space


def classify_whole(space: CofiniteSpace, a: SymbolicSet) -> IntersectionType:
    """Intersection type of ``a`` with the whole space (which must be sigma-irreducible).

    Proper closed subsets are finite, so type 1 means ``a`` contains the
    complement of a countable set and type 2 means ``a`` is countable.
    """
    if not sigma_irreducible_closeds(space).whole_space:
        raise NoethError("the whole space is not sigma-irreducible; both types hold vacuously")
    if space.cardinality == FINITE:  # one point
        return IntersectionType.TYPE1 if a.kind in ("cofinite", "cocountable") or a.elements else IntersectionType.TYPE2
    if a.is_cocountable_in(space):
        return IntersectionType.TYPE1
    if a.is_countable_in(space):
        return IntersectionType.TYPE2
    return IntersectionType.NEITHER


def classify_point(space: CofiniteSpace, a: SymbolicSet, point) -> IntersectionType:
    """Intersection type with the singleton ``{point}``: type 1 iff the point is in ``a``."""
    return IntersectionType.TYPE1 if a.contains(point) else IntersectionType.TYPE2


def delta_Y(space: CofiniteSpace, a: SymbolicSet) -> int:
    """The Dirac mass at the whole of an uncountable cofinite space."""
    if space.cardinality != UNCOUNTABLE:
        raise NoethError("delta_Y exists only on an uncountable cofinite space")
    t = classify_whole(space, a)
    if t is IntersectionType.NEITHER:
        raise NotBorelError("set is neither countable nor cocountable, hence not Borel")
    return 1 if t is IntersectionType.TYPE1 else 0


@dataclass(frozen=True)
class SymbolicMeasure:
    """``sum c_a delta_a + c_Y delta_Y``; ``c_Y`` only on uncountable spaces."""

    space: CofiniteSpace
    point_masses: Mapping = field(default_factory=dict)
    whole: Fraction = Fraction(0)

    def __post_init__(self):
        masses = {p: as_fraction(v) for p, v in self.point_masses.items()}
        object.__setattr__(self, "point_masses", {p: v for p, v in masses.items() if v})
        object.__setattr__(self, "whole", as_fraction(self.whole))
        if self.whole and self.space.cardinality != UNCOUNTABLE:
            # on a one-point space the whole space is the point itself
            raise NoethError("a whole-space coefficient needs an uncountable space")

    def closed_value(self, closed) -> Fraction:
        """Value on a closed set: a ``finite`` set or the whole space (``cofinite`` with
        empty complement)."""
        if closed.kind == "cofinite" and not closed.elements:
            return sum(self.point_masses.values(), Fraction(0)) + self.whole
        if closed.kind != "finite":
            raise SpaceError("closed sets are finite sets or the whole space")
        return sum((v for p, v in self.point_masses.items() if p in closed.elements), Fraction(0))

    def value(self, a: SymbolicSet) -> Fraction:
        """Value on any Borel set."""
        total = Fraction(0)
        if self.whole:
            if classify_whole(self.space, a) is IntersectionType.NEITHER:
                raise NotBorelError("set is neither countable nor cocountable")
            total += self.whole * delta_Y(self.space, a)
        for p, v in self.point_masses.items():
            if a.contains(p):
                total += v
        return total


def symbolic_from_closed_values(space: CofiniteSpace, value, points: Iterable) -> SymbolicMeasure:
    """Recover coefficients from closed-set values: ``c_a = v({a})`` and the
    whole-space coefficient is ``v(X) - sum c_a`` (the infimum of
    ``v(X \\ F)`` over finite ``F``, attained once ``F`` covers the support)."""
    points = list(points)
    masses = {p: value(SymbolicSet.finite([p])) for p in points}
    rest = value(SymbolicSet.cofinite()) - sum(masses.values(), Fraction(0))
    return SymbolicMeasure(space, masses, rest)


@dataclass(frozen=True)
class CofiniteSCFunction:
    """``x -> constant + exceptions.get(x, 0)`` on a countable cofinite space."""

    constant: Fraction
    exceptions: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "constant", as_fraction(self.constant))
        object.__setattr__(
            self, "exceptions", {p: as_fraction(v) for p, v in self.exceptions.items() if as_fraction(v)}
        )

    @classmethod
    def indicator_point(cls, x) -> "CofiniteSCFunction":
        return cls(0, {x: 1})

    def __call__(self, x) -> Fraction:
        return self.constant + self.exceptions.get(x, Fraction(0))


def integrate_points(masses: Mapping, f: CofiniteSCFunction) -> Fraction:
    return sum((as_fraction(v) * f(p) for p, v in masses.items()), Fraction(0))


@dataclass(frozen=True)
class LambdaGapReport:
    singleton_values: dict  # phi(chi_x) for the test points
    phi_of_one: Fraction
    candidate: dict  # recovered point masses
    candidate_of_one: Fraction  # the candidate measure integrated against 1
    mismatch: bool


def lambda_gap_witness(space: CofiniteSpace, test_points: Iterable = range(8)) -> LambdaGapReport:
    """The functional ``phi(c + finite exceptions) = c`` matches no measure.

    A measure on the countable cofinite space is a sum of point masses; on
    ``chi_x`` the functional is 0, which forces every coefficient to 0, yet
    ``phi(1) = 1``.
    """
    if space.cardinality != COUNTABLE:
        raise NoethError("the gap example lives on a countably infinite cofinite space")
    if sigma_irreducible_closeds(space).whole_space:  # pragma: no cover - guarded by class
        raise NoethError("unexpected whole-space atom")

    def phi(f: CofiniteSCFunction) -> Fraction:
        return f.constant

    points = list(test_points)
    singles = {x: phi(CofiniteSCFunction.indicator_point(x)) for x in points}
    candidate = {x: v for x, v in singles.items() if v}
    one = CofiniteSCFunction(1)
    got = integrate_points(candidate, one)
    return LambdaGapReport(singles, phi(one), candidate, got, got != phi(one))


@dataclass(frozen=True)
class ShiftReport:
    continuous: bool
    surjective: bool
    periodic_points: tuple
    base_atoms: str
    base_ergodic: tuple
    completion_fixed_points: tuple
    completion_ergodic: tuple
    window: tuple


GENERIC = "Z"  # completion point for the whole (irreducible, not sigma-irreducible) space


def shift_dynamics_report(window: int = 50) -> ShiftReport:
    """The translation ``n -> n + 1`` on the integers with the cofinite topology.

    Symbolic facts: preimages of finite sets are finite and of the whole space
    is the whole space (continuous); ``n - 1`` is a preimage of ``n``
    (surjective); ``n + k != n`` for ``k >= 1`` (no periodic points). The
    completion adds one point, the whole space, which the induced map fixes.
    Each fact is also spot-checked on ``[-window, window]``.
    """
    space = CofiniteSpace.integers()

    def shift(n):
        return n + 1

    def preimage_finite(s):
        return {n - 1 for n in s}

    pts = range(-window, window + 1)
    sample = SymbolicSet.finite([0, 3, -7])
    continuous = preimage_finite(sample.elements) == {n for n in range(-20, 21) if shift(n) in sample.elements}
    surjective = all(shift(n - 1) == n for n in pts)
    periodic = tuple(n for n in pts if any(_iter(shift, n, k) == n for k in range(1, 2 * window + 2)))
    atoms = sigma_irreducible_closeds(space)
    # an ergodic probability on the base would sit on a periodic cycle of point atoms
    base_ergodic = tuple((n,) for n in periodic) if atoms.whole_space is False else ()

    # completion: points are the singletons plus the whole space GENERIC
    def shift_hat(e):
        return GENERIC if e == GENERIC else shift(e)

    comp_pts = list(pts) + [GENERIC]
    fixed = tuple(e for e in comp_pts if shift_hat(e) == e)
    comp_periodic = [e for e in comp_pts if any(_iter(shift_hat, e, k) == e for k in range(1, 2 * window + 2))]
    return ShiftReport(
        continuous=continuous,
        surjective=surjective,
        periodic_points=periodic,
        base_atoms=atoms.describe(),
        base_ergodic=base_ergodic,
        completion_fixed_points=fixed,
        completion_ergodic=tuple({e: Fraction(1)} for e in comp_periodic),
        window=(-window, window),
    )


def _iter(fn, x, k):
    for _ in range(k):
        x = fn(x)
    return x
