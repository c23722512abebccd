"""Finite signed Borel measures on finite spaces.

A measure is stored in atomic normal form: one exact coefficient per
irreducible closed set ``E`` (the Dirac mass at ``E`` gives a closed set
``F`` mass 1 iff ``E`` is contained in ``F``). Set-function views, the
integration pairing with SC functions, and the metrics are derived from it.
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    BoundViolation,
    NonAdditiveError,
    NotBorelError,
    NotPositiveError,
    SpaceError,
    SpaceMismatchError,
)
from .functions import RealFunction, SCFunction, _as_sc, sup_norm
from .rational import as_fraction, fmt
from .topology import Completion, FiniteSpace, IrreducibleClosed

__all__ = [
    "Measure",
    "IntersectionType",
    "Subsequence",
    "dirac",
    "zero_measure",
    "measure_of_closed",
    "measure_of_set",
    "closed_set_values",
    "classify_intersection",
    "from_closed_set_values",
    "integrate",
    "jordan_decompose",
    "weak_distance",
    "extract_convergent_subsequence",
    "j_embed",
    "j_restrict",
    "sign_witness",
]


class Measure:
    """Finitely supported coefficient vector over irreducible closed sets.

    ``coefficients`` may be keyed by :class:`IrreducibleClosed`, by member
    sets, or by irreducible ids. Zero coefficients are dropped.
    """

    __slots__ = ("space", "_c")

    def __init__(self, space: FiniteSpace, coefficients: Mapping = ()):
        self.space = space
        c = {}
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        for key, value in items:
            e = space.irreducible(key).members
            c[e] = c.get(e, Fraction(0)) + as_fraction(value)
        self._c = {e: v for e, v in c.items() if v}

    @classmethod
    def _raw(cls, space, coefficients):
        # trusted constructor: keys already irreducible member sets, values Fractions
        m = cls.__new__(cls)
        m.space = space
        m._c = {e: v for e, v in coefficients.items() if v}
        return m

    def items(self):
        """``(IrreducibleClosed, coefficient)`` pairs in canonical order."""
        return [(self.space.irreducible(e), self._c[e]) for e in self.space.sort_sets(self._c)]

    @property
    def coefficients(self) -> dict:
        """Coefficients keyed by irreducible id."""
        return {e.id: c for e, c in self.items()}

    def coefficient(self, e) -> Fraction:
        return self._c.get(self.space.irreducible(e).members, Fraction(0))

    def support(self) -> list:
        return [e for e, _ in self.items()]

    def _check(self, other: "Measure"):
        if not isinstance(other, Measure):
            raise TypeError(f"expected Measure, got {type(other).__name__}")
        if other.space != self.space:
            raise SpaceMismatchError("measures live on different spaces")

    def __add__(self, other):
        self._check(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, Fraction(0)) + v
        return Measure._raw(self.space, c)

    def __neg__(self):
        return Measure._raw(self.space, {e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> "Measure":
        k = as_fraction(k)
        return Measure._raw(self.space, {e: k * v for e, v in self._c.items()})

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return self.space == other.space and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def total_variation(self) -> Fraction:
        return sum((abs(v) for v in self._c.values()), Fraction(0))

    def is_positive(self) -> bool:
        return all(v > 0 for v in self._c.values())

    def mass(self) -> Fraction:
        return sum(self._c.values(), Fraction(0))

    def __repr__(self) -> str:
        return f"Measure({format_measure(self)})"


def format_measure(mu: Measure) -> str:
    if not mu._c:
        return "0"
    return " + ".join(f"{fmt(c)}*delta[{e.id}]" for e, c in mu.items())


class IntersectionType(enum.Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    NEITHER = "Neither"


def zero_measure(space: FiniteSpace) -> Measure:
    return Measure._raw(space, {})


def dirac(space: FiniteSpace, e) -> Measure:
    """Dirac mass at a nonempty irreducible closed set (given by object, members or id)."""
    if not isinstance(e, (IrreducibleClosed, str)) and not frozenset(e):
        raise SpaceError("Dirac mass at the empty set is undefined")
    return Measure._raw(space, {space.irreducible(e).members: Fraction(1)})


def measure_of_closed(mu: Measure, closed: Iterable) -> Fraction:
    """``mu(F) = sum of c_E over E contained in F`` for a closed set ``F``."""
    f = frozenset(closed)
    if not mu.space.is_closed(f):
        raise SpaceError(f"{mu.space.set_id(f)!r} is not closed")
    return sum((v for e, v in mu._c.items() if e <= f), Fraction(0))


def closed_set_values(mu: Measure) -> dict:
    """``{F: mu(F)}`` for every closed set ``F``."""
    atoms = list(mu._c.items())
    zero = Fraction(0)
    return {f: sum((v for e, v in atoms if e <= f), zero) for f in mu.space.closed_sets}


def classify_intersection(space: FiniteSpace, subset: Iterable, e) -> IntersectionType:
    """Type of intersection of an arbitrary set ``A`` with an irreducible ``E``.

    In a finite space the union of the proper closed subsets of ``E`` is
    ``E`` minus its generic points, so ``A`` has type 1 intersection iff it
    contains every generic point of ``E`` and type 2 iff it contains none.
    Only a non-T0 space can produce ``NEITHER`` (a non-Borel set).
    """
    a = space.check_subset(subset)
    gens = space.irreducible(e).generic_points
    hit = sum(1 for g in gens if g in a)
    if hit == len(gens):
        return IntersectionType.TYPE1
    if hit == 0:
        return IntersectionType.TYPE2
    return IntersectionType.NEITHER


def is_borel(space: FiniteSpace, subset: Iterable) -> bool:
    return all(classify_intersection(space, subset, e) is not IntersectionType.NEITHER
               for e in space.irreducibles)


def measure_of_set(mu: Measure, subset: Iterable) -> Fraction:
    """Value on an arbitrary Borel set: sum of ``c_E`` over atoms met in type 1."""
    a = mu.space.check_subset(subset)
    if not is_borel(mu.space, a):
        raise NotBorelError(f"{mu.space.set_id(a)!r} is not a Borel set")
    total = Fraction(0)
    for e, v in mu._c.items():
        if classify_intersection(mu.space, a, e) is IntersectionType.TYPE1:
            total += v
    return total


def _inclusion_exclusion_witness(space, v):
    if v[frozenset()] != 0:
        return (frozenset(), frozenset())
    closed = space.closed_sets
    for i, a in enumerate(closed):
        for b in closed[i + 1:]:
            if v[a | b] + v[a & b] != v[a] + v[b]:
                return (a, b)
    return None


def from_closed_set_values(space: FiniteSpace, values: Mapping, require_positive: bool = False) -> Measure:
    """Recover the unique measure whose closed-set values are ``values``.

    ``c_E = v(E) - v(E minus its generic points)``. The result is checked to
    reproduce ``values`` on every closed set; a mismatch means ``values``
    fails inclusion-exclusion and is induced by no measure.
    """
    v = {}
    for key, val in values.items():
        f = space.check_subset(key)
        if not space.is_closed(f):
            raise SpaceError(f"{space.set_id(f)!r} is not closed")
        v[f] = as_fraction(val)
    missing = [f for f in space.closed_sets if f not in v]
    if missing:
        raise SpaceError(f"no value given for closed set {space.set_id(missing[0])!r}")
    coeffs = {}
    for e in space.irreducibles:
        rest = e.members.difference(e.generic_points)
        coeffs[e.members] = v[e.members] - v[rest]
    mu = Measure._raw(space, coeffs)
    rebuilt = closed_set_values(mu)
    if any(rebuilt[f] != v[f] for f in space.closed_sets):
        w = _inclusion_exclusion_witness(space, v)
        if w is None:  # pragma: no cover - modular valuations always rebuild
            raise NonAdditiveError("closed-set values are not induced by a measure")
        a, b = w
        raise NonAdditiveError(
            f"inclusion-exclusion fails on {{{space.set_id(a)}}} and {{{space.set_id(b)}}}: "
            f"{fmt(v[a])} + {fmt(v[b])} - {fmt(v[a & b])} != {fmt(v[a | b])}",
            witness=w,
        )
    if require_positive and not all(c >= 0 for c in mu._c.values()):
        raise NotPositiveError("closed-set values are not monotone and nonnegative")
    return mu


def integrate(mu: Measure, f) -> Fraction:
    """``sum c_E * f(E)`` with ``f(E)`` the generic value of ``f`` on ``E``."""
    f = _as_sc(f)
    if f.space != mu.space:
        raise SpaceMismatchError("measure and function live on different spaces")
    g, h = f.g.values, f.h.values
    total = Fraction(0)
    for e, c in mu._c.items():
        total += c * (min(g[p] for p in e) - min(h[p] for p in e))
    return total


def jordan_decompose(mu: Measure) -> tuple:
    """``(mu_plus, mu_minus)``, both positive, with ``mu = mu_plus - mu_minus``."""
    plus = {e: v for e, v in mu._c.items() if v > 0}
    minus = {e: -v for e, v in mu._c.items() if v < 0}
    return Measure._raw(mu.space, plus), Measure._raw(mu.space, minus)


def weak_distance(mu: Measure, nu: Measure) -> Fraction:
    """``max_E |mu(E) - nu(E)|`` over nonempty irreducible closed sets ``E``."""
    mu._check(nu)
    diff = (mu - nu)._c
    if not diff:
        return Fraction(0)
    best = Fraction(0)
    for e in mu.space.irreducibles:
        s = abs(sum((v for a, v in diff.items() if a <= e.members), Fraction(0)))
        if s > best:
            best = s
    return best


def sign_witness(mu: Measure) -> RealFunction:
    """``x -> sign(c_{cl x})``; pairs with ``mu`` to its total variation on Zariski spaces."""
    space = mu.space
    return RealFunction(
        space, {p: (mu._c.get(space.point_closure(p), 0) > 0) - (mu._c.get(space.point_closure(p), 0) < 0)
                for p in space.points},
    )


# -- completion --------------------------------------------------------------

def j_embed(mu: Measure, c: Completion) -> Measure:
    """Move each coefficient ``c_E`` to the completion point ``E``."""
    c.check_base(mu.space)
    sp = c.space
    return Measure._raw(
        sp, {sp.point_closure(c.point_embedding[e]): v for e, v in mu._c.items()}
    )


def j_restrict(nu: Measure, c: Completion) -> Measure:
    """Inverse of :func:`j_embed` (every finite space is complete, so ``j`` is onto)."""
    if nu.space != c.space:
        raise SpaceMismatchError("measure does not live on this completion")
    out = {}
    for e, v in nu._c.items():
        point = nu.space.irreducible(e).generic_points[0]
        out[c.base_set(point).members] = v
    return Measure._raw(c.base, out)


# -- sequential compactness ----------------------------------------------------

@dataclass(frozen=True)
class Subsequence:
    indices: tuple
    limit: Measure
    distances: tuple  # weak distance of each extracted term to ``limit``
    box_width: Fraction  # final per-coordinate bisection width


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in the closed interval ``[lo, hi]``."""
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    n = math.floor(lo)
    if n == lo:
        return Fraction(n)
    if n + 1 <= hi:
        return Fraction(n + 1)
    return n + 1 / simplest_between(1 / (hi - n), 1 / (lo - n))


def _longest_nonincreasing(values: Sequence) -> list:
    """Positions of a longest non-increasing subsequence (patience sorting)."""
    tails, tail_pos, prev = [], [], [None] * len(values)
    for i, v in enumerate(values):
        key = -v
        j = bisect.bisect_right(tails, key)
        if j == len(tails):
            tails.append(key)
            tail_pos.append(i)
        else:
            tails[j] = key
            tail_pos[j] = i
        prev[i] = tail_pos[j - 1] if j else None
    out, i = [], tail_pos[-1] if tail_pos else None
    while i is not None:
        out.append(i)
        i = prev[i]
    return out[::-1]


def extract_convergent_subsequence(
    seq,
    tv_bound,
    count: int,
    *,
    horizon: int | None = None,
    eps=Fraction(1, 1000),
) -> Subsequence:
    """Bolzano-Weierstrass extraction over the finite coefficient vector.

    ``seq`` is a callable ``index -> Measure`` (read up to ``horizon``
    terms, default ``64 * count``) or a finite sequence of measures.
    Coordinate intervals start at ``[-tv_bound, tv_bound]`` and are bisected
    round-robin; each split keeps the half holding more of the later half
    of the surviving terms (by index), the lower half on ties. The candidate limit takes, per
    coordinate, the common value if all survivors agree and otherwise the
    simplest rational in the interval. Bisection stops as soon as every
    survivor is within weak distance ``eps`` of the candidate, once every
    interval is at most ``eps / k`` wide (``k`` = number of coordinates), or
    when a further split would leave fewer than ``count`` survivors.

    Checking the candidate before the box is fully narrowed matters for
    sequences such as ``(1 - 1/n) a + (1/n) b``, whose limit lies just
    outside the hull of any finite stretch of terms. If the box has drifted
    off such a limit, the simplest point near the latest survivor, and
    failing that the survivor itself, is used instead.

    The returned indices are ``count`` consecutive members of a longest run
    of survivors along which the distance to the limit never increases: the
    earliest such window whose last term is within ``eps``, else the last.
    """
    if count < 1:
        raise ValueError("count must be positive")
    tv_bound = as_fraction(tv_bound)
    eps = as_fraction(eps)
    if callable(seq):
        n = horizon if horizon is not None else 64 * count
        terms = [seq(i) for i in range(n)]
    else:
        terms = list(seq)[:horizon] if horizon is not None else list(seq)
    if len(terms) < count:
        raise ValueError(f"need at least {count} terms, got {len(terms)}")
    space = terms[0].space
    for m in terms:
        m._check(terms[0])
    atoms = [e.members for e in space.irreducibles]
    k = len(atoms)
    fvecs = [[m._c.get(a, Fraction(0)) for a in atoms] for m in terms]
    target = eps / k
    # Work in integers over one common denominator; the box endpoints are
    # dyadic subdivisions of [-tv_bound, tv_bound], so room is made for the
    # deepest split a coordinate can need.
    depth, width = 0, 2 * tv_bound
    while width > target:
        depth, width = depth + 1, width / 2
    den = math.lcm(tv_bound.denominator, target.denominator, eps.denominator,
                   *(v.denominator for vec in fvecs for v in vec))
    scale = den << depth
    vecs = [[v.numerator * (scale // v.denominator) for v in vec] for vec in fvecs]
    bound_i = int(tv_bound * scale)
    for i, vec in enumerate(vecs):
        if sum(map(abs, vec)) > bound_i:
            tv = terms[i].total_variation()
            raise BoundViolation(f"term {i} has total variation {fmt(tv)} > bound {fmt(tv_bound)}")
    target_i, eps_i = int(target * scale), int(eps * scale)
    lo = [-bound_i] * k
    hi = [bound_i] * k
    cand = list(range(len(terms)))
    # survivors sorted along each coordinate, so a split is a binary search
    order = [sorted(cand, key=lambda i, j=j: vecs[i][j]) for j in range(k)]

    def collapse(j):
        first, last = vecs[order[j][0]][j], vecs[order[j][-1]][j]
        if first == last:
            lo[j] = hi[j] = first

    for j in range(k):
        collapse(j)

    def candidate():
        return [Fraction(lo[j], scale) if lo[j] == hi[j]
                else simplest_between(Fraction(lo[j], scale), Fraction(hi[j], scale)) for j in range(k)]

    # closed-set values on every atom, so weak distances are a max over k entries
    below = [[jj for jj, b in enumerate(atoms) if b <= a] for a in atoms]
    vals = {}

    def distances(lim):
        """Weak distances of the survivors to ``lim``, as integers over ``scale * q``."""
        q = math.lcm(*(v.denominator for v in lim))
        lv = [sum(lim[jj].numerator * (q // lim[jj].denominator) for jj in idx) * scale for idx in below]
        out = []
        for i in cand:
            if i not in vals:
                vals[i] = [sum(vecs[i][jj] for jj in idx) for idx in below]
            out.append(max(abs(q * x - y) for x, y in zip(vals[i], lv)))
        return out, q

    stuck = False
    while not stuck and any(hi[j] - lo[j] > target_i for j in range(k)):
        if max(hi[j] - lo[j] for j in range(k)) <= 2 * eps_i:
            ds, q = distances(candidate())
            if max(ds) <= eps_i * q:
                break
        for j in range(k):
            if hi[j] - lo[j] <= target_i:
                continue
            mid = (lo[j] + hi[j]) // 2
            cut = bisect.bisect_right(order[j], mid, key=lambda i, j=j: vecs[i][j])
            # judge the halves by the later half of the survivors, a finite
            # stand-in for "infinitely many terms"
            tail = set(cand[len(cand) // 2:])
            in_lower = sum(i in tail for i in order[j][:cut])
            keep_lower = in_lower >= len(tail) - in_lower
            kept = order[j][:cut] if keep_lower else order[j][cut:]
            if len(kept) < count:
                stuck = True
                break
            keep = set(kept)
            cand = [i for i in cand if i in keep]
            order = [[i for i in o if i in keep] for o in order]
            if keep_lower:
                hi[j] = mid
            else:
                lo[j] = mid
            collapse(j)

    # The box candidate is exact for sequences that settle or oscillate. When
    # the survivors approach a limit from outside the box, fall back to the
    # simplest point near the latest survivor, then to that survivor itself.
    last = fvecs[cand[-1]]
    near = [simplest_between(v - target / 2, v + target / 2) for v in last]
    best = None
    for vec in (candidate(), near, last):
        ds, q = distances(vec)
        ch = _longest_nonincreasing(ds)
        found = (vec, ds, q, ch)
        if len(ch) >= count and min(ds[pos] for pos in ch) <= eps_i * q:
            best = found
            break
        if best is None and len(ch) >= count:
            best = found
    if best is None:
        raise ValueError(f"fewer than {count} monotone survivors; increase the horizon (have {len(terms)} terms)")
    vec, dists, q, chain = best
    # earliest window whose last term is within eps (the last window if none is)
    end = next((t for t, pos in enumerate(chain) if dists[pos] <= eps_i * q), len(chain) - 1)
    end = max(end, count - 1)
    chain = chain[end - count + 1:end + 1]
    return Subsequence(
        tuple(cand[p] for p in chain),
        Measure._raw(space, dict(zip(atoms, vec))),
        tuple(Fraction(dists[p], scale * q) for p in chain),
        Fraction(max(hi[j] - lo[j] for j in range(k)), scale),
    )
