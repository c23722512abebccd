"""Finite topological spaces presented by a specialization preorder.

A finite space is Noetherian, its closed sets are the down-sets of the
specialization preorder ``y <= x  <=>  y in cl{x}``, and its irreducible
closed sets are exactly the point closures. Everything here is computed
from those two facts, with canonical (declaration) ordering so that output
is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .errors import SpaceError, SpaceMismatchError

__all__ = [
    "FiniteSpace",
    "IrreducibleClosed",
    "Completion",
    "build_space",
    "closure",
    "irreducible_components",
    "is_zariski",
    "complete_space",
    "to_dot",
]


@dataclass(frozen=True)
class IrreducibleClosed:
    """A nonempty irreducible closed set together with its generic points.

    ``id`` is the member list in canonical point order joined by ``"+"``;
    it doubles as the name of the corresponding point of the completion.
    """

    members: frozenset
    generic_points: tuple
    id: str = field(compare=False)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)


class FiniteSpace:
    """Point set plus specialization preorder (saturated on construction).

    ``specialization`` is an iterable of pairs ``(y, x)`` meaning
    ``y in cl{x}``. Any preorder is accepted, including non-T0 ones.
    """

    def __init__(self, points: Iterable, specialization: Iterable = ()):
        points = tuple(points)
        index = {}
        for i, p in enumerate(points):
            if p in index:
                raise SpaceError(f"duplicate point id {p!r}")
            index[p] = i
        self.points = points
        self._index = index
        n = len(points)
        # below[i]: indices j with points[j] in cl{points[i]}
        below = [{i} for i in range(n)]
        for pair in specialization:
            try:
                y, x = pair
            except (TypeError, ValueError):
                raise SpaceError(f"specialization entry {pair!r} is not a pair") from None
            for p in (y, x):
                if p not in index:
                    raise SpaceError(f"unknown point {p!r} in specialization pair {[y, x]!r}")
            below[index[x]].add(index[y])
        # reflexive-transitive closure (Warshall on sets)
        for k in range(n):
            bk = below[k]
            for i in range(n):
                if k in below[i]:
                    below[i] |= bk
        self._down = {points[i]: frozenset(points[j] for j in below[i]) for i in range(n)}

    def __repr__(self) -> str:
        return f"FiniteSpace({list(self.points)!r})"

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x) -> bool:
        return x in self._index

    # identity by value: two spaces with the same points and preorder are equal
    def _signature(self):
        return (self.points, tuple(self._down[p] for p in self.points))

    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self is other or self._signature() == other._signature()

    def __hash__(self):
        return hash(self.points)

    # -- basic relation --------------------------------------------------

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise SpaceError(f"unknown point {x!r}") from None

    def le(self, y, x) -> bool:
        """True iff ``y`` lies in the closure of ``x``."""
        self.index(x)
        self.index(y)
        return y in self._down[x]

    def lt(self, y, x) -> bool:
        """Strict specialization: ``y <= x`` but not ``x <= y``."""
        return self.le(y, x) and not self.le(x, y)

    def point_closure(self, x) -> frozenset:
        self.index(x)
        return self._down[x]

    def specialization_pairs(self) -> list:
        """All pairs ``(y, x)`` with ``y <= x``, in canonical order."""
        return [(y, x) for x in self.points for y in self.points if y in self._down[x]]

    def sort_points(self, subset: Iterable) -> list:
        return sorted(subset, key=self.index)

    def set_key(self, subset: Iterable) -> tuple:
        """Sort key for sets: the sorted tuple of point indices."""
        return tuple(sorted(self.index(p) for p in subset))

    def sort_sets(self, sets: Iterable) -> list:
        return sorted(sets, key=self.set_key)

    def set_id(self, subset: Iterable) -> str:
        return "+".join(str(p) for p in self.sort_points(subset))

    def check_subset(self, subset: Iterable) -> frozenset:
        subset = frozenset(subset)
        for p in subset:
            if p not in self._index:
                raise SpaceError(f"unknown point {p!r}")
        return subset

    # -- closed sets -----------------------------------------------------

    def closure(self, subset: Iterable) -> frozenset:
        out = set()
        for p in self.check_subset(subset):
            out |= self._down[p]
        return frozenset(out)

    def is_closed(self, subset: Iterable) -> bool:
        subset = self.check_subset(subset)
        return all(self._down[p] <= subset for p in subset)

    @cached_property
    def whole(self) -> frozenset:
        return frozenset(self.points)

    @cached_property
    def closed_sets(self) -> tuple:
        """Every closed set, sorted by canonical set key."""
        found = {frozenset()}
        frontier = [frozenset()]
        closures = [self._down[p] for p in self.points]
        while frontier:
            nxt = []
            for c in frontier:
                for d in closures:
                    if not d <= c:
                        u = c | d
                        if u not in found:
                            found.add(u)
                            nxt.append(u)
            frontier = nxt
        return tuple(self.sort_sets(found))

    def equivalence_class(self, x) -> tuple:
        """Points indistinguishable from ``x`` (same closure), canonical order."""
        d = self.point_closure(x)
        return tuple(p for p in self.points if self._down[p] == d)

    @cached_property
    def irreducibles(self) -> tuple:
        """All nonempty irreducible closed sets, sorted by canonical set key."""
        seen = {}
        for p in self.points:
            d = self._down[p]
            if d not in seen:
                seen[d] = IrreducibleClosed(d, self.equivalence_class(p), self.set_id(d))
        return tuple(seen[d] for d in self.sort_sets(seen))

    @cached_property
    def _irreducible_by_members(self) -> dict:
        return {e.members: e for e in self.irreducibles}

    @cached_property
    def _irreducible_by_id(self) -> dict:
        return {e.id: e for e in self.irreducibles}

    def irreducible(self, members) -> IrreducibleClosed:
        """Look up an irreducible closed set by its members or its id."""
        if isinstance(members, IrreducibleClosed):
            members = members.members
        if isinstance(members, str):
            try:
                return self._irreducible_by_id[members]
            except KeyError:
                raise SpaceError(f"{members!r} is not the id of an irreducible closed set") from None
        try:
            return self._irreducible_by_members[frozenset(members)]
        except KeyError:
            raise SpaceError(
                f"{self.set_id(members)!r} is not an irreducible closed set"
            ) from None

    def is_irreducible(self, subset: Iterable) -> bool:
        """Definitional test: nonempty closed, not a union of two proper closed subsets."""
        e = self.check_subset(subset)
        if not e or not self.is_closed(e):
            return False
        proper = [c for c in self.closed_sets if c < e]
        return not any(a | b == e for a, b in combinations(proper, 2))

    def is_sigma_irreducible(self, subset: Iterable) -> bool:
        """Not a (countable, here finite) union of proper closed subsets."""
        e = self.check_subset(subset)
        if not e or not self.is_closed(e):
            return False
        union = frozenset().union(*(c for c in self.closed_sets if c < e))
        return union != e

    def maximal_points(self, subset: Iterable) -> list:
        subset = self.check_subset(subset)
        return [x for x in self.sort_points(subset)
                if not any(x in self._down[y] and y not in self._down[x] for y in subset)]

    def components(self, closed: Iterable) -> list:
        """Irreducible components of a closed set (see :func:`irreducible_components`)."""
        e = self.check_subset(closed)
        if not self.is_closed(e):
            raise SpaceError(f"{self.set_id(e)!r} is not closed")
        tops = {self._down[x] for x in self.maximal_points(e)}
        return [self.irreducible(d) for d in self.sort_sets(tops)]

    def is_t0(self) -> bool:
        return len(set(self._down.values())) == len(self.points)


@dataclass(frozen=True)
class Completion:
    """The sobrification of ``base``.

    Points of ``space`` are the ids of the base's irreducible closed sets,
    with ``F <= E`` in the completion iff ``F`` is a subset of ``E``.
    """

    base: FiniteSpace
    space: FiniteSpace
    point_embedding: dict  # irreducible members (frozenset) -> completion point id

    def point_of(self, e) -> str:
        """Completion point for an irreducible closed set of the base."""
        return self.point_embedding[self.base.irreducible(e).members]

    def closed_set_map(self, closed: Iterable) -> frozenset:
        """``E  ->  V_E``: completion points whose set is contained in ``E``."""
        e = self.base.check_subset(closed)
        if not self.base.is_closed(e):
            raise SpaceError(f"{self.base.set_id(e)!r} is not closed")
        return frozenset(pid for members, pid in self.point_embedding.items() if members <= e)

    def base_set(self, point_id: str) -> IrreducibleClosed:
        """Inverse of :meth:`point_of`."""
        return self.base.irreducible(point_id)

    def check_base(self, space: FiniteSpace) -> None:
        if space != self.base:
            raise SpaceMismatchError("object does not live on the base of this completion")


def build_space(points: Iterable, specialization: Iterable = ()) -> FiniteSpace:
    return FiniteSpace(points, specialization)


def closure(space: FiniteSpace, subset: Iterable) -> frozenset:
    """Smallest closed (down-closed) superset of ``subset``."""
    return space.closure(subset)


def irreducible_components(space: FiniteSpace, closed: Iterable) -> list:
    """Unique irredundant decomposition of a closed set into irreducible closed sets.

    Components are the closures of the maximal points of ``closed``. Each
    carries all of its generic points. The list is empty iff ``closed`` is.
    """
    return space.components(closed)


def is_zariski(space: FiniteSpace) -> bool:
    """Every nonempty irreducible closed set has exactly one generic point."""
    return all(len(e.generic_points) == 1 for e in space.irreducibles)


def complete_space(space: FiniteSpace) -> Completion:
    irr = space.irreducibles
    points = [e.id for e in irr]
    pairs = [(f.id, e.id) for e in irr for f in irr if f.members <= e.members]
    return Completion(space, FiniteSpace(points, pairs), {e.members: e.id for e in irr})


def covering_pairs(space: FiniteSpace) -> list:
    """Pairs ``(y, x)`` where ``y < x`` with nothing strictly between, plus
    every ordered pair of distinct indistinguishable points."""
    out = []
    for x in space.points:
        for y in space.points:
            if y == x or not space.le(y, x):
                continue
            if space.le(x, y):
                out.append((y, x))
                continue
            between = any(space.lt(y, z) and space.lt(z, x) for z in space.points)
            if not between:
                out.append((y, x))
    return out


def to_dot(space: FiniteSpace, name: str = "space") -> str:
    """Graphviz DOT text: one node per point, an edge ``y -> x`` per covering pair."""
    lines = [f"digraph {name} {{"]
    lines += [f'  "{p}";' for p in space.points]
    lines += [f'  "{y}" -> "{x}";' for y, x in covering_pairs(space)]
    lines.append("}")
    return "\n".join(lines) + "\n"
