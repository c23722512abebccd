"""Forward and backward time averages of a USC observable.

``tau_n`` is the forward Birkhoff sum and ``tau_{-n}(x)`` the best sum over
``n``-step preimage chains ending at ``x``. The backward sums obey a
max-plus Bellman recursion, and their growth rate is a maximum cycle mean,
evaluated here with Karp's algorithm in exact arithmetic.

Points with no infinite reverse orbit get ``None`` (bottom). The classical
statements assume a surjective map; on a finite space that makes the map a
bijection, so the non-surjective extension is what keeps this interesting.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .dynamics import (
    ContinuousMap,
    ReverseOrbitSpec,
    _require_zariski,
    forward_orbit,
    periodic_cycles,
)
from .errors import NotUSCError, SpaceMismatchError, UndefinedResult
from .functions import RealFunction, is_usc, sup_norm

__all__ = [
    "TauProfile",
    "tau_n",
    "tau_plus",
    "tau_minus_n",
    "tau_minus",
    "tau_minus_closure_formula",
    "best_reverse_orbit",
    "reverse_orbit_average",
    "tau_profile",
]


def _check(f: ContinuousMap, tau: RealFunction):
    if tau.space != f.space:
        raise SpaceMismatchError("observable and map live on different spaces")
    if not is_usc(f.space, tau):
        raise NotUSCError("tau must be upper semicontinuous")


def tau_n(f: ContinuousMap, tau: RealFunction, n: int, x) -> Fraction:
    """``sum_{k<n} tau(f^k x)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    _check(f, tau)
    total = Fraction(0)
    for _ in range(n):
        total += tau(x)
        x = f(x)
    return total


def tau_plus(f: ContinuousMap, tau: RealFunction, x) -> Fraction:
    """Average of ``tau`` over the cycle that the forward orbit of ``x`` falls into."""
    _check(f, tau)
    _require_zariski(f.space)
    cycle = forward_orbit(f, x).cycle
    return sum((tau(y) for y in cycle), Fraction(0)) / len(cycle)


def tau_minus_n(f: ContinuousMap, tau: RealFunction, n: int) -> dict:
    """``{x: max over f^n(y) = x of tau_n(y)}``, ``None`` where no such ``y`` exists.

    ``T_0 = 0`` and ``T_k(x) = max_{w in f^-1(x)} tau(w) + T_{k-1}(w)``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    _check(f, tau)
    t = {p: Fraction(0) for p in f.space.points}
    for _ in range(n):
        nxt = {}
        for x in f.space.points:
            best = None
            for w in f.preimages[x]:
                if t[w] is not None:
                    v = tau(w) + t[w]
                    if best is None or v > best:
                        best = v
            nxt[x] = best
        t = nxt
    return t


def _backward_reachable(f: ContinuousMap, x) -> set:
    seen, queue = {x}, deque([x])
    while queue:
        y = queue.popleft()
        for w in f.preimages[y]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def _karp_max_cycle_mean(nodes: list, edges: list):
    """Maximum mean weight of a cycle, or ``None`` for an acyclic graph.

    ``edges`` are ``(u, v, weight)``. Uses walks from a virtual source joined
    to every node with weight 0.
    """
    n = len(nodes)
    d = [{v: Fraction(0) for v in nodes}]
    for k in range(1, n + 1):
        cur = {}
        prev = d[-1]
        for u, v, w in edges:
            if prev.get(u) is not None:
                cand = prev[u] + w
                if cur.get(v) is None or cand > cur[v]:
                    cur[v] = cand
        d.append(cur)
    best = None
    for v in nodes:
        dn = d[n].get(v)
        if dn is None:
            continue
        worst = None
        for k in range(n):
            dk = d[k].get(v)
            if dk is None:
                continue
            q = (dn - dk) / (n - k)
            if worst is None or q < worst:
                worst = q
        if worst is not None and (best is None or worst > best):
            best = worst
    return best


def tau_minus(f: ContinuousMap, tau: RealFunction, x):
    """``lim tau_{-n}(x) / n``: the maximum mean of ``tau`` over cycles from
    which ``x`` can be reached, or ``None`` when there are none."""
    _check(f, tau)
    _require_zariski(f.space)
    nodes = f.space.sort_points(_backward_reachable(f, x))
    inside = set(nodes)
    edges = [(w, f(w), tau(w)) for w in nodes if f(w) in inside]
    return _karp_max_cycle_mean(nodes, edges)


def tau_minus_closure_formula(f: ContinuousMap, tau: RealFunction, x):
    """``max tau_plus(y)`` over periodic ``y`` with ``x`` in ``cl{y}`` (``None`` if none)."""
    _check(f, tau)
    _require_zariski(f.space)
    vals = [tau_plus(f, tau, y) for c in periodic_cycles(f) for y in c if f.space.le(x, y)]
    return max(vals, default=None)


def _best_cycle(f: ContinuousMap, tau: RealFunction, x):
    reach = _backward_reachable(f, x)
    best = None
    for c in periodic_cycles(f):
        if not set(c) <= reach:
            continue
        mean = sum((tau(y) for y in c), Fraction(0)) / len(c)
        # periodic_cycles is already in canonical cycle order, so the first maximum wins ties
        if best is None or mean > best[0]:
            best = (mean, c)
    return best


def best_reverse_orbit(f: ContinuousMap, tau: RealFunction, x) -> ReverseOrbitSpec:
    """An eventually periodic reverse orbit of ``x`` whose running averages
    ``tau_n(x_{-n}) / n`` converge to ``tau_minus(x)``.

    The orbit follows a shortest preimage path from ``x`` into a maximizing
    cycle, then winds backward around it.
    """
    _check(f, tau)
    _require_zariski(f.space)
    best = _best_cycle(f, tau, x)
    if best is None:
        raise UndefinedResult(f"{x!r} has no infinite reverse orbit")
    cycle = set(best[1])
    parent, queue, hit = {x: None}, deque([x]), None
    while queue:
        y = queue.popleft()
        if y in cycle:
            hit = y
            break
        for w in f.space.sort_points(f.preimages[y]):
            if w not in parent:
                parent[w] = y
                queue.append(w)
    prefix = []
    y = hit
    while y is not None:
        prefix.append(y)
        y = parent[y]
    prefix.reverse()
    pred = {f(c): c for c in best[1]}
    back, y = [], hit
    for _ in range(len(best[1])):
        y = pred[y]
        back.append(y)
    return ReverseOrbitSpec(x, tuple(prefix), tuple(back))


def reverse_orbit_average(tau: RealFunction, ro: ReverseOrbitSpec, n: int) -> Fraction:
    """``tau_n(x_{-n}) / n = n^-1 sum_{k=1..n} tau(x_{-k})``."""
    return sum((tau(ro.point(k)) for k in range(1, n + 1)), Fraction(0)) / n


@dataclass(frozen=True)
class TauProfile:
    f: ContinuousMap
    tau: RealFunction
    plus: dict
    minus: dict  # None marks points without an infinite reverse orbit
    witness: dict  # maximizing backward cycle per point, or None

    def rows(self):
        return [(p, self.plus[p], self.minus[p], self.witness[p]) for p in self.f.space.points]


def tau_profile(f: ContinuousMap, tau: RealFunction) -> TauProfile:
    _check(f, tau)
    _require_zariski(f.space)
    plus, minus, witness = {}, {}, {}
    for p in f.space.points:
        plus[p] = tau_plus(f, tau, p)
        minus[p] = tau_minus(f, tau, p)
        best = _best_cycle(f, tau, p)
        witness[p] = best[1] if best else None
    return TauProfile(f, tau, plus, minus, witness)


def certify_reverse_orbit(f: ContinuousMap, tau: RealFunction, x, n: int) -> tuple:
    """``(orbit, average at n, tau_minus, bound)`` with the bound ``2 |tau| (m + r) / n``."""
    ro = best_reverse_orbit(f, tau, x)
    avg = reverse_orbit_average(tau, ro, n)
    bound = 2 * sup_norm(tau) * (len(ro.prefix) + len(ro.cycle)) / n
    return ro, avg, tau_minus(f, tau, x), bound
