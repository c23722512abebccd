"""Semicontinuous functions on finite spaces.

On a finite space a function is upper semicontinuous (USC) iff it is
antitone along specialization: ``y <= x`` implies ``f(y) >= f(x)``. A
function is a difference of USC functions iff it is constant on classes of
indistinguishable points, which is automatic on T0 spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import NotSCError, NotUSCError, SpaceError, SpaceMismatchError
from .rational import as_fraction
from .topology import Completion, FiniteSpace, IrreducibleClosed

__all__ = [
    "RealFunction",
    "SCFunction",
    "CharCombination",
    "real_function",
    "constant",
    "indicator",
    "is_usc",
    "sc_decompose",
    "generic_value",
    "char_combination",
    "eta_transport",
    "sup_norm",
]


@dataclass(frozen=True, eq=False)
class RealFunction:
    space: FiniteSpace
    values: Mapping

    def __post_init__(self):
        missing = [p for p in self.space.points if p not in self.values]
        if missing:
            raise SpaceError(f"function undefined at {missing!r}")
        extra = [p for p in self.values if p not in self.space]
        if extra:
            raise SpaceError(f"function given at unknown points {extra!r}")
        object.__setattr__(
            self, "values", {p: as_fraction(self.values[p]) for p in self.space.points}
        )

    def __call__(self, x) -> Fraction:
        return self.values[x]

    def __eq__(self, other):
        if not isinstance(other, RealFunction):
            return NotImplemented
        return self.space == other.space and self.values == other.values

    def _zip(self, other, op):
        if isinstance(other, RealFunction):
            if other.space != self.space:
                raise SpaceMismatchError("functions live on different spaces")
            return RealFunction(self.space, {p: op(v, other.values[p]) for p, v in self.values.items()})
        c = as_fraction(other)
        return RealFunction(self.space, {p: op(v, c) for p, v in self.values.items()})

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return RealFunction(self.space, {p: -v for p, v in self.values.items()})

    def scale(self, c) -> "RealFunction":
        c = as_fraction(c)
        return RealFunction(self.space, {p: c * v for p, v in self.values.items()})

    def compose(self, mapping) -> "RealFunction":
        """``x -> self(mapping(x))``; ``mapping`` is any callable point map."""
        return RealFunction(self.space, {p: self.values[mapping(p)] for p in self.space.points})


@dataclass(frozen=True, eq=False)
class SCFunction:
    """``f = g - h`` with ``g`` and ``h`` both USC on the same space."""

    g: RealFunction
    h: RealFunction

    def __post_init__(self):
        if self.g.space != self.h.space:
            raise SpaceMismatchError("USC parts live on different spaces")
        for name, part in (("g", self.g), ("h", self.h)):
            if not is_usc(part.space, part):
                raise NotUSCError(f"part {name} is not upper semicontinuous")

    @property
    def space(self) -> FiniteSpace:
        return self.g.space

    def values(self) -> dict:
        return {p: self.g.values[p] - self.h.values[p] for p in self.space.points}

    def __call__(self, x) -> Fraction:
        return self.g.values[x] - self.h.values[x]

    def as_real(self) -> RealFunction:
        return RealFunction(self.space, self.values())


@dataclass(frozen=True)
class CharCombination:
    """``sum(coefficient * chi_set)`` over ``terms``; sets are closed."""

    space: FiniteSpace
    terms: tuple  # ((coefficient, frozenset), ...)

    def evaluate(self, x) -> Fraction:
        return sum((c for c, s in self.terms if x in s), Fraction(0))

    def as_real(self) -> RealFunction:
        return RealFunction(self.space, {p: self.evaluate(p) for p in self.space.points})


def real_function(space: FiniteSpace, values: Mapping) -> RealFunction:
    return RealFunction(space, dict(values))


def constant(space: FiniteSpace, c) -> RealFunction:
    return RealFunction(space, {p: c for p in space.points})


def indicator(space: FiniteSpace, subset) -> RealFunction:
    subset = space.check_subset(subset)
    return RealFunction(space, {p: int(p in subset) for p in space.points})


def _as_sc(f) -> SCFunction:
    if isinstance(f, SCFunction):
        return f
    if isinstance(f, RealFunction):
        return sc_decompose(f.space, f)
    raise TypeError(f"expected RealFunction or SCFunction, got {type(f).__name__}")


def is_usc(space: FiniteSpace, f: RealFunction) -> bool:
    """Every level set ``{f >= r}`` is closed."""
    if f.space != space:
        raise SpaceMismatchError("function does not live on this space")
    v = f.values
    return all(v[y] >= v[x] for y, x in space.specialization_pairs())


@lru_cache(maxsize=256)
def _depths(space: FiniteSpace) -> dict:
    """Length of the longest strict specialization chain below each point."""
    depth = {}

    def visit(x):
        if x not in depth:
            below = [y for y in space.point_closure(x) if not space.le(x, y)]
            depth[x] = 1 + max((visit(y) for y in below), default=-1)
        return depth[x]

    for p in space.points:
        visit(p)
    return depth


def sc_decompose(space: FiniteSpace, f: RealFunction) -> SCFunction:
    """Canonical split ``f = g - h`` into USC parts.

    USC input returns ``(f, 0)``. Otherwise ``h = -K * depth`` with
    ``K = 2 max|f| + 1``, where ``depth(x)`` is the longest strict chain
    below ``x``; each strict step down then raises ``h`` by at least ``K``,
    which dominates any drop of ``f``.
    """
    if f.space != space:
        raise SpaceMismatchError("function does not live on this space")
    zero = constant(space, 0)
    if is_usc(space, f):
        return SCFunction(f, zero)
    for x in space.points:
        for y in space.equivalence_class(x):
            if f(y) != f(x):
                raise NotSCError(
                    f"f takes different values at indistinguishable points {x!r} and {y!r}"
                )
    k = 2 * max(abs(v) for v in f.values.values()) + 1
    depth = _depths(space)
    h = RealFunction(space, {p: -k * depth[p] for p in space.points})
    return SCFunction(f + h, h)


def generic_value(f, e: IrreducibleClosed) -> Fraction:
    """``inf_E g - inf_E h`` for ``f = g - h``.

    Accepts a ``RealFunction`` (decomposed canonically) or an ``SCFunction``.
    """
    f = _as_sc(f)
    members = e.members if isinstance(e, IrreducibleClosed) else frozenset(e)
    if not members:
        raise SpaceError("generic value of the empty set is undefined")
    f.space.irreducible(members)
    g, h = f.g.values, f.h.values
    return min(g[p] for p in members) - min(h[p] for p in members)


def char_combination(space: FiniteSpace, f: RealFunction) -> CharCombination:
    """``r0 * chi_X + sum (r_i - r_{i-1}) chi_{f >= r_i}`` over all attained values."""
    if not is_usc(space, f):
        raise NotUSCError("char_combination needs an upper semicontinuous function")
    levels = sorted(set(f.values.values()))
    terms = [(levels[0], space.whole)]
    for lo, hi in zip(levels, levels[1:]):
        terms.append((hi - lo, frozenset(p for p in space.points if f(p) >= hi)))
    return CharCombination(space, tuple(terms))


def eta_transport(f, c: Completion) -> SCFunction:
    """Transport to the completion: the value at point ``E`` is the generic value on ``E``."""
    f = _as_sc(f)
    c.check_base(f.space)

    def lift(part: RealFunction) -> RealFunction:
        return RealFunction(
            c.space,
            {c.point_embedding[e.members]: min(part.values[p] for p in e.members)
             for e in c.base.irreducibles},
        )

    return SCFunction(lift(f.g), lift(f.h))


def sup_norm(f) -> Fraction:
    if isinstance(f, RealFunction):
        vals = f.values.values()
    else:
        vals = f.values().values()
    return max((abs(v) for v in vals), default=Fraction(0))
