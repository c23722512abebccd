"""Property batteries over seeded random instances.

Each property checks one law on one random case and returns ``None`` on
success or a witness dict describing the failing case. The runner seeds a
fresh ``random.Random`` per (property, case), so any failure can be
replayed from its case id alone.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import cofinite as cf
from . import oracles
from .dinh import (
    best_reverse_orbit,
    reverse_orbit_average,
    tau_minus,
    tau_minus_closure_formula,
    tau_minus_n,
    tau_plus,
)
from .dynamics import (
    alpha_limit,
    check_reverse_orbit,
    ergodic_measures,
    forward_orbit,
    induce_on_completion,
    omega_limit,
    periodic_cycles,
    pushforward,
    forward_limit_measure,
    reverse_limit_measure,
)
from .functions import (
    RealFunction,
    SCFunction,
    char_combination,
    eta_transport,
    generic_value,
    is_usc,
    sc_decompose,
    sup_norm,
)
from .generate import (
    random_automorphism,
    random_map,
    random_measure,
    random_reverse_orbit,
    random_sc_function,
    random_space,
    random_usc_function,
    symmetric_space,
)
from .io import function_to_json, measure_to_json, reverse_orbit_to_json, space_to_json
from .measures import (
    IntersectionType,
    Measure,
    classify_intersection,
    closed_set_values,
    dirac,
    from_closed_set_values,
    integrate,
    j_embed,
    jordan_decompose,
    measure_of_set,
    sign_witness,
    weak_distance,
)
from .rational import fmt
from .topology import complete_space, is_zariski

__all__ = ["RunConfig", "PropertyResult", "VerificationReport", "PROPERTIES", "MUTANTS", "run"]


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    cases: int = 100
    max_points: int = 8
    empirical_n: int = 10_000

    def __post_init__(self):
        for name in ("cases", "max_points", "empirical_n"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


@dataclass
class PropertyResult:
    module: str
    name: str
    cases: int
    failed_case: int | None = None
    witness: dict | None = None
    witness_file: str | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failed_case is None

    @property
    def key(self) -> str:
        return f"{self.module}/{self.name}"


@dataclass
class VerificationReport:
    config: RunConfig
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def text(self, timing: bool = False) -> str:
        lines = []
        for r in self.results:
            tail = f" ({r.seconds:.2f}s)" if timing else ""
            if r.passed:
                lines.append(f"PASS {r.key}: {r.cases} cases{tail}")
            else:
                msg = r.witness.get("message", "") if r.witness else ""
                lines.append(f"FAIL {r.key}: case {r.failed_case}: {msg}{tail}")
                if r.witness_file:
                    lines.append(f"  witness: {r.witness_file}")
        bad = sum(not r.passed for r in self.results)
        if bad:
            lines.append(f"{bad} of {len(self.results)} properties failed")
        else:
            lines.append(f"all {len(self.results)} properties passed")
        return "\n".join(lines) + "\n"

    def structured(self) -> dict:
        return {
            "seed": self.config.seed,
            "cases": self.config.cases,
            "passed": self.passed,
            "properties": [
                {"property": r.key, "cases": r.cases, "passed": r.passed,
                 "failed_case": r.failed_case, "witness_file": r.witness_file}
                for r in self.results
            ],
        }


# -- helpers ------------------------------------------------------------------

def _fail(message, **parts) -> dict:
    out = {"message": message}
    for k, v in parts.items():
        if k == "space":
            out[k] = space_to_json(v)
        elif k == "map":
            out[k] = dict(v.mapping)
        elif isinstance(v, Measure):
            out[k] = measure_to_json(v)
        elif isinstance(v, RealFunction):
            out[k] = function_to_json(v)
        elif isinstance(v, Fraction):
            out[k] = fmt(v)
        else:
            out[k] = v
    return out


def _space(rng, cfg, non_t0=0.0, cap=None):
    top = min(cfg.max_points, cap) if cap else cfg.max_points
    return random_space(rng, rng.randint(1, top), non_t0=non_t0)


def _zariski_space(rng, cfg, cap=None):
    return _space(rng, cfg, 0.0, cap)


def _automorphism_instance(rng, cfg):
    """A space with some symmetry and a random automorphism of it."""
    if rng.random() < 0.6:
        block = rng.randint(1, max(1, min(4, cfg.max_points // 2)))
        copies = rng.randint(1, max(1, (cfg.max_points - 1) // block))
        space = symmetric_space(rng, block, copies)
    else:
        space = _zariski_space(rng, cfg)
    return random_automorphism(rng, space)


def _rank(rows) -> int:
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                k = Fraction(rows[i][col]) / p
                rows[i] = [a - k * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


# -- topology -----------------------------------------------------------------

def p_components(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.25, cap=10)
    closed = oracles.down_sets(s)
    if set(closed) != set(s.closed_sets):
        return _fail("closed sets differ from the down-set oracle", space=s)
    irr = oracles.irreducible_closed_sets(s, closed)
    if set(irr) != {e.members for e in s.irreducibles}:
        return _fail("irreducible closed sets differ from the oracle", space=s)
    for e in s.irreducibles:
        if set(e.generic_points) != oracles.generic_points(s, e.members, closed):
            return _fail(f"generic points of {e.id} differ from the oracle", space=s)
    for c in s.closed_sets:
        comps = s.components(c)
        union = frozenset().union(*[e.members for e in comps])
        if union != c:
            return _fail(f"components do not cover {s.set_id(c)}", space=s)
        for a in comps:
            for b in comps:
                if a is not b and a.members <= b.members:
                    return _fail(f"components of {s.set_id(c)} are comparable", space=s)
        if {e.members for e in comps} != oracles.minimal_decomposition(s, c, irr):
            return _fail(f"decomposition of {s.set_id(c)} differs from the oracle", space=s)
    return None


def p_completion(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.3)
    c = complete_space(s)
    if not is_zariski(c.space):
        return _fail("completion is not Zariski", space=s)
    c2 = complete_space(c.space)
    iso = {p: c2.point_embedding[c.space.point_closure(p)] for p in c.space.points}
    if len(set(iso.values())) != len(c2.space.points):
        return _fail("completing twice is not a bijection on points", space=s)
    for y in c.space.points:
        for x in c.space.points:
            if c.space.le(y, x) != c2.space.le(iso[y], iso[x]):
                return _fail("completing twice changes the order", space=s)
    closed = s.closed_sets
    for e in closed:
        if not c.space.is_closed(c.closed_set_map(e)):
            return _fail(f"V_E not closed for {s.set_id(e)}", space=s)
        for f in closed:
            if (c.closed_set_map(e) <= c.closed_set_map(f)) != (e <= f):
                return _fail("V_E inclusion does not mirror E inclusion", space=s)
    if is_zariski(s):
        emb = {p: c.point_embedding[s.point_closure(p)] for p in s.points}
        for y in s.points:
            for x in s.points:
                if s.le(y, x) != c.space.le(emb[y], emb[x]):
                    return _fail("Zariski base is not homeomorphic to its completion", space=s)
    return None


def p_sigma(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.25)
    for c in s.closed_sets:
        if s.is_irreducible(c) != s.is_sigma_irreducible(c):
            return _fail(f"irreducible and sigma-irreducible disagree on {s.set_id(c)}", space=s)
    return None


def p_kuratowski(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.25, cap=6)
    pts = s.points
    subsets = [frozenset(p for i, p in enumerate(pts) if m >> i & 1) for m in range(1 << len(pts))]
    if s.closure(()) != frozenset():
        return _fail("closure of the empty set is not empty", space=s)
    cl = {a: s.closure(a) for a in subsets}
    for a in subsets:
        if not a <= cl[a] or s.closure(cl[a]) != cl[a]:
            return _fail(f"closure not extensive/idempotent on {sorted(a)}", space=s)
    for _ in range(200):
        a, b = rng.choice(subsets), rng.choice(subsets)
        if cl[a | b] != cl[a] | cl[b]:
            return _fail(f"closure does not preserve the union of {sorted(a)} and {sorted(b)}", space=s)
        if a <= b and not cl[a] <= cl[b]:
            return _fail("closure not monotone", space=s)
    return None


# -- functions ----------------------------------------------------------------

def p_decompose(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.3)
    f = random_sc_function(rng, s)
    d = sc_decompose(s, f)
    if not (is_usc(s, d.g) and is_usc(s, d.h)):
        return _fail("a decomposition part is not USC", space=s, function=f)
    if d.as_real() != f:
        return _fail("parts do not subtract to the input", space=s, function=f)
    return None


def p_generic_value(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.3)
    f = random_sc_function(rng, s)
    d = sc_decompose(s, f)
    u = random_usc_function(rng, s)
    alt = SCFunction(d.g + u, d.h + u)
    for e in s.irreducibles:
        a, b = generic_value(d, e), generic_value(alt, e)
        if a != b or a != f(e.generic_points[0]):
            return _fail(f"generic value on {e.id} depends on the decomposition", space=s, function=f)
    return None


def p_char_rank(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.3)
    rows = [[int(p in e.members) for p in s.points] for e in s.irreducibles]
    if _rank(rows) != len(rows):
        return _fail("characteristic functions of irreducibles are dependent", space=s)
    return None


def p_char_roundtrip(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.3, cap=8)
    f = random_usc_function(rng, s)
    comb = char_combination(s, f)
    if comb.as_real() != f or not all(s.is_closed(t) for _, t in comb.terms):
        return _fail("characteristic combination does not reproduce f", space=s, function=f)
    return None


# -- measures -----------------------------------------------------------------

def p_classification(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.25, cap=10)
    mu = random_measure(rng, s)
    back = from_closed_set_values(s, closed_set_values(mu))
    if back != mu:
        return _fail("closed-set values do not recover the measure", space=s, measure=mu)
    return None


def p_agreement(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.25)
    mu = random_measure(rng, s)
    nu = mu if rng.random() < 0.3 else random_measure(rng, s)
    if (weak_distance(mu, nu) == 0) != (mu == nu):
        return _fail("weak distance zero does not match equality", space=s, measure=mu, other=nu)
    return None


def p_duality(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.3)
    c = complete_space(s)
    mu = random_measure(rng, s)
    f = random_sc_function(rng, s)
    lhs = integrate(j_embed(mu, c), eta_transport(f, c))
    rhs = integrate(mu, f)
    if lhs != rhs:
        return _fail("integral changes under the completion", space=s, measure=mu, function=f)
    if sup_norm(eta_transport(f, c)) != sup_norm(f):
        return _fail("transport to the completion is not isometric", space=s, function=f)
    return None


def p_operator_norm(rng, cfg, ops):
    s = _zariski_space(rng, cfg)
    mu = random_measure(rng, s)
    w = sign_witness(mu)
    tv = mu.total_variation()
    if sup_norm(w) > 1 or integrate(mu, w) != tv:
        return _fail("sign witness does not attain the total variation", space=s, measure=mu)
    for _ in range(5):
        f = random_sc_function(rng, s)
        n = sup_norm(f)
        if n and abs(integrate(mu, f)) > tv * n:
            return _fail("integral exceeds total variation times the norm", space=s, measure=mu, function=f)
    return None


def p_dirac_law(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.3, cap=6)
    pts = s.points
    for e in s.irreducibles:
        d = dirac(s, e)
        for m in range(1 << len(pts)):
            a = frozenset(p for i, p in enumerate(pts) if m >> i & 1)
            t = classify_intersection(s, a, e)
            if t is IntersectionType.NEITHER:
                continue
            try:
                v = measure_of_set(d, a)
            except ValueError:
                continue  # not Borel because of another atom
            if v != (1 if t is IntersectionType.TYPE1 else 0):
                return _fail(f"dirac at {e.id} disagrees with the intersection type of {sorted(a)}", space=s)
    return None


def p_jordan(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.25)
    mu = random_measure(rng, s)
    plus, minus = jordan_decompose(mu)
    ok = (plus - minus == mu and plus.is_positive() and minus.is_positive()
          and plus.total_variation() + minus.total_variation() == mu.total_variation())
    return None if ok else _fail("Jordan decomposition invalid", space=s, measure=mu)


def p_weak_le_tv(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.25)
    mu, nu = random_measure(rng, s), random_measure(rng, s)
    if weak_distance(mu, nu) > (mu - nu).total_variation():
        return _fail("weak distance exceeds total variation", space=s, measure=mu, other=nu)
    return None


# -- dynamics -----------------------------------------------------------------

def p_push_continuity(rng, cfg, ops):
    push = ops["pushforward"]
    s = _space(rng, cfg, non_t0=0.25)
    f = random_map(rng, s)
    mu, nu = random_measure(rng, s), random_measure(rng, s)
    pm, pn = push(f, mu), push(f, nu)
    for e in list(pm._c) + list(pn._c):
        if not (s.is_closed(e) and s.is_irreducible(e)):
            return _fail(f"pushforward produced a non-atom {s.set_id(e)}", space=s, map=f, measure=mu)
    if (pm - pn).total_variation() > (mu - nu).total_variation():
        return _fail("pushforward increased total variation", space=s, map=f, measure=mu, other=nu)
    if weak_distance(pm, pn) > len(s.closed_sets) * weak_distance(mu, nu):
        return _fail("pushforward weak bound violated", space=s, map=f, measure=mu, other=nu)
    return None


def p_adjoint(rng, cfg, ops):
    push = ops["pushforward"]
    s = _space(rng, cfg, non_t0=0.25)
    f = random_map(rng, s)
    mu = random_measure(rng, s)
    tau = random_usc_function(rng, s)
    try:
        lhs = integrate(push(f, mu), tau)
    except ValueError as err:
        return _fail(f"pushforward not integrable: {err}", space=s, map=f, measure=mu)
    if lhs != integrate(mu, tau.compose(f)):
        return _fail("integral of pushforward differs from integral of composition",
                     space=s, map=f, measure=mu, function=tau)
    return None


def p_birkhoff_bound(rng, cfg, ops):
    s = _zariski_space(rng, cfg)
    f = random_map(rng, s)
    x = rng.choice(s.points)
    rep = forward_limit_measure(f, x, cfg.empirical_n)
    orbit = forward_orbit(f, x)
    if omega_limit(f, x) != oracles.tail_closure_omega(f, x):
        return _fail("omega-limit differs from the tail-closure oracle", space=s, map=f, start=x)
    if rep.distance > Fraction(orbit.preperiod + len(orbit.cycle), cfg.empirical_n):
        return _fail(f"Birkhoff average too far: {fmt(rep.distance)}", space=s, map=f, start=x)
    if sorted(rep.cycle_points, key=s.index) != sorted(orbit.cycle, key=s.index):
        return _fail("limit generic points are not the orbit cycle", space=s, map=f, start=x)
    return None


def p_reverse_bound(rng, cfg, ops):
    f = _automorphism_instance(rng, cfg)
    s = f.space
    ro = random_reverse_orbit(rng, f)
    rep = reverse_limit_measure(f, ro, cfg.empirical_n)
    tail = s.closure(ro.cycle)
    if alpha_limit(f, ro) != tail:
        return _fail("alpha-limit differs from the closure of the tail", space=s, map=f,
                     orbit=reverse_orbit_to_json(ro))
    if rep.distance > Fraction(len(ro.prefix) + len(ro.cycle), cfg.empirical_n):
        return _fail(f"reverse average too far: {fmt(rep.distance)}", space=s, map=f,
                     orbit=reverse_orbit_to_json(ro))
    return None


def _coordinates(vectors, target):
    """Solve ``sum a_i vectors[i] = target`` exactly; ``None`` if no solution."""
    n = len(vectors)
    rows = [[v[j] for v in vectors] + [target[j]] for j in range(len(target))]
    piv_cols, r = [], 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [a / p for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                k = rows[i][col]
                rows[i] = [a - k * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    if any(all(a == 0 for a in row[:-1]) and row[-1] != 0 for row in rows):
        return None
    sol = [Fraction(0)] * n
    for i, col in enumerate(piv_cols):
        sol[col] = rows[i][-1]
    return sol


def p_ergodic(rng, cfg, ops):
    push = ops["pushforward"]
    f = _automorphism_instance(rng, cfg) if rng.random() < 0.5 else random_map(rng, _zariski_space(rng, cfg))
    s = f.space
    erg = ergodic_measures(f)
    # oracle: uniform measures on cycles found by brute-force iteration
    per = oracles.periodic_points(f)
    cycles, seen = [], set()
    for y in per:
        if y in seen:
            continue
        cyc, z = [y], f(y)
        while z != y:
            cyc.append(z)
            z = f(z)
        seen.update(cyc)
        cycles.append(cyc)
    expected = {Measure(s, {s.point_closure(p): Fraction(1, len(c)) for p in c}) for c in cycles}
    if set(erg) != expected or len(erg) != len(expected):
        return _fail("ergodic list differs from the uniform cycle measures", space=s, map=f)
    atoms = [e.members for e in s.irreducibles]
    basis = [[m._c.get(a, Fraction(0)) for a in atoms] for m in erg]
    for i, m in enumerate(erg):
        if push(f, m) != m:
            return _fail("ergodic measure is not invariant", space=s, map=f, measure=m)
        coords = _coordinates(basis, basis[i])
        if coords != [Fraction(int(j == i)) for j in range(len(erg))]:
            return _fail("ergodic measure is not a vertex of the invariant simplex", space=s, map=f, measure=m)
    # invariant measures are exactly the span of the cycle measures
    mu = random_measure(rng, s)
    inv = push(f, mu) == mu
    in_span = _coordinates(basis, [mu._c.get(a, Fraction(0)) for a in atoms]) is not None
    if inv != in_span:
        return _fail("invariance does not match membership in the cycle-measure span", space=s, map=f, measure=mu)
    combo = sum((m.scale(Fraction(rng.randint(0, 5), 3)) for m in erg), Measure(s))
    if push(f, combo) != combo:
        return _fail("combination of cycle measures is not invariant", space=s, map=f, measure=combo)
    return None


def p_completion_average(rng, cfg, ops):
    s = _space(rng, cfg, non_t0=0.5)
    f = random_map(rng, s)
    tau = random_usc_function(rng, s)
    c = complete_space(s)
    fh = induce_on_completion(f, c)
    th = eta_transport(tau, c).as_real()
    for x in s.points:
        cyc = forward_orbit(f, x).cycle
        want = sum((tau(y) for y in cyc), Fraction(0)) / len(cyc)
        pt = c.point_embedding[s.point_closure(x)]
        rep = forward_limit_measure(fh, pt)
        if integrate(rep.predicted, th) != want or tau_plus(fh, th, pt) != want:
            return _fail(f"time average at {x} differs on the completion", space=s, map=f, function=tau)
    return None


# -- dinh ---------------------------------------------------------------------

def p_tau_limit(rng, cfg, ops):
    f = _automorphism_instance(rng, cfg)
    s = f.space
    tau = random_usc_function(rng, s)
    tm = {x: tau_minus(f, tau, x) for x in s.points}
    for n in (100, 1000):
        t = tau_minus_n(f, tau, n)
        for x in s.points:
            if abs(t[x] / n - tm[x]) > 4 * sup_norm(tau) * len(s) / n:
                return _fail(f"tau_-n/n far from tau_minus at {x}, n={n}", space=s, map=f, function=tau)
    return None


def p_closure_formula(rng, cfg, ops):
    f = _automorphism_instance(rng, cfg)
    s = f.space
    tau = random_usc_function(rng, s)
    tm = {x: tau_minus(f, tau, x) for x in s.points}
    for x in s.points:
        if tm[x] != tau_minus_closure_formula(f, tau, x):
            return _fail(f"closure formula differs at {x}", space=s, map=f, function=tau)
        if tm[x] != tau_plus(f, tau, x):
            return _fail(f"tau_minus differs from tau_plus at {x}", space=s, map=f, function=tau)
    if not is_usc(s, RealFunction(s, tm)):
        return _fail("tau_minus is not USC", space=s, map=f, function=tau)
    return None


def p_minus_le_plus(rng, cfg, ops):
    s = _zariski_space(rng, cfg)
    f = random_map(rng, s)
    tau = random_usc_function(rng, s)
    periodic = {p for c in periodic_cycles(f) for p in c}
    for x in s.points:
        tm, tp = tau_minus(f, tau, x), tau_plus(f, tau, x)
        if tm is None:
            if x in periodic:
                return _fail(f"periodic point {x} has no reverse orbit", space=s, map=f, function=tau)
            continue
        if tm > tp or (x in periodic and tm != tp):
            return _fail(f"tau_minus vs tau_plus wrong at {x}", space=s, map=f, function=tau)
    return None


def p_recursion(rng, cfg, ops):
    s = _zariski_space(rng, cfg, cap=8)
    f = random_map(rng, s)
    tau = random_usc_function(rng, s)
    for n in range(1, 13):
        t = tau_minus_n(f, tau, n)
        for x in s.points:
            if t[x] != oracles.chain_tau_minus_n(f, tau, n, x):
                return _fail(f"max-plus recursion differs from enumeration at {x}, n={n}",
                             space=s, map=f, function=tau)
    for x in s.points:
        if tau_minus(f, tau, x) != oracles.cycle_mean_tau_minus(f, tau, x):
            return _fail(f"cycle-mean evaluation differs from the oracle at {x}", space=s, map=f, function=tau)
    return None


def p_best_orbit(rng, cfg, ops):
    s = _zariski_space(rng, cfg)
    f = random_map(rng, s)
    tau = random_usc_function(rng, s)
    for x in s.points:
        tm = tau_minus(f, tau, x)
        if tm is None:
            continue
        ro = best_reverse_orbit(f, tau, x)
        check_reverse_orbit(f, ro)
        n = 1000
        bound = 2 * sup_norm(tau) * (len(ro.prefix) + len(ro.cycle)) / n
        if abs(reverse_orbit_average(tau, ro, n) - tm) > bound:
            return _fail(f"best reverse orbit average misses tau_minus at {x}", space=s, map=f, function=tau)
    return None


# -- cofinite -----------------------------------------------------------------

def _random_cofinite_space(rng):
    kind = rng.choice(["countable", "uncountable", "finite"])
    if kind == "finite":
        return cf.CofiniteSpace("finite", size=rng.randint(1, 6))
    return cf.CofiniteSpace(kind)


def p_symbolic_roundtrip(rng, cfg, ops):
    sp = _random_cofinite_space(rng)
    npts = sp.size if sp.size else 6
    pts = list(range(npts))
    masses = {p: Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for p in rng.sample(pts, rng.randint(0, npts))}
    whole = Fraction(rng.randint(-3, 3), 2) if sp.cardinality == "uncountable" else 0
    mu = cf.SymbolicMeasure(sp, masses, whole)
    back = cf.symbolic_from_closed_values(sp, mu.closed_value, pts)
    if back != mu:
        return _fail("symbolic measure does not round-trip", cofinite=sp.cardinality)
    return None


def _random_symbolic_set(rng):
    kind = rng.choice(cf.SymbolicSet.KINDS)
    if kind in ("finite", "cofinite"):
        return cf.SymbolicSet(kind, rng.sample(range(10), rng.randint(0, 4)))
    return cf.SymbolicSet(kind)


def p_borel_trichotomy(rng, cfg, ops):
    sp = cf.CofiniteSpace("uncountable")
    a = _random_symbolic_set(rng)
    want = {"finite": IntersectionType.TYPE2, "countable": IntersectionType.TYPE2,
            "cofinite": IntersectionType.TYPE1, "cocountable": IntersectionType.TYPE1,
            "neither": IntersectionType.NEITHER}[a.kind]
    if cf.classify_whole(sp, a) is not want:
        return _fail(f"wrong intersection type for a {a.kind} set")
    return None


def p_delta_additive(rng, cfg, ops):
    sp = cf.CofiniteSpace("uncountable")
    a = _random_symbolic_set(rng)
    if a.kind == "neither":
        return None
    pairs = [(a, a.complement())]
    if a.kind == "finite":
        b = cf.SymbolicSet.finite(set(rng.sample(range(10, 20), 2)))
        pairs += [(a, b), (a, cf.SymbolicSet.cofinite(a.elements | {99}))]
    for x, y in pairs:
        if cf.delta_Y(sp, x.union(y)) != cf.delta_Y(sp, x) + cf.delta_Y(sp, y):
            return _fail(f"delta_Y not additive on {x.kind} and {y.kind}")
    return None


# -- registry -----------------------------------------------------------------

PROPERTIES = [
    ("topology", "components-match-oracle", p_components),
    ("topology", "completion-zariski-idempotent", p_completion),
    ("topology", "irreducible-iff-sigma-irreducible", p_sigma),
    ("topology", "closure-kuratowski", p_kuratowski),
    ("functions", "sc-decompose-sound", p_decompose),
    ("functions", "generic-value-independent", p_generic_value),
    ("functions", "char-family-full-rank", p_char_rank),
    ("functions", "char-combination-roundtrip", p_char_roundtrip),
    ("measures", "classification-roundtrip", p_classification),
    ("measures", "agreement", p_agreement),
    ("measures", "duality", p_duality),
    ("measures", "operator-norm", p_operator_norm),
    ("measures", "dirac-law", p_dirac_law),
    ("measures", "jordan", p_jordan),
    ("measures", "weak-le-tv", p_weak_le_tv),
    ("dynamics", "pushforward-continuity", p_push_continuity),
    ("dynamics", "adjointness", p_adjoint),
    ("dynamics", "birkhoff-bound", p_birkhoff_bound),
    ("dynamics", "reverse-bound", p_reverse_bound),
    ("dynamics", "ergodic-extremal", p_ergodic),
    ("dynamics", "completion-time-average", p_completion_average),
    ("dinh", "limit-exists", p_tau_limit),
    ("dinh", "closure-formula", p_closure_formula),
    ("dinh", "minus-le-plus", p_minus_le_plus),
    ("dinh", "recursion-soundness", p_recursion),
    ("dinh", "best-reverse-orbit", p_best_orbit),
    ("cofinite", "symbolic-roundtrip", p_symbolic_roundtrip),
    ("cofinite", "borel-trichotomy", p_borel_trichotomy),
    ("cofinite", "delta-additive", p_delta_additive),
]


def _push_without_closure(f, mu):
    out = {}
    for e, v in mu._c.items():
        img = frozenset(f(p) for p in e)
        out[img] = out.get(img, Fraction(0)) + v
    return Measure._raw(f.space, out)


MUTANTS = {"pushforward-no-closure": {"pushforward": _push_without_closure}}


def run(cfg: RunConfig, only=None, mutant=None, witness_dir=None) -> VerificationReport:
    """Run every property (or the modules named in ``only``) for ``cfg.cases`` cases.

    The first failing case of each property stops that property and, with
    ``witness_dir``, is written there as JSON.
    """
    ops = {"pushforward": pushforward}
    if mutant is not None:
        if mutant not in MUTANTS:
            raise ValueError(f"unknown mutant {mutant!r}")
        ops.update(MUTANTS[mutant])
    selected = [p for p in PROPERTIES if not only or p[0] in only]
    if only:
        unknown = set(only) - {p[0] for p in PROPERTIES}
        if unknown:
            raise ValueError(f"unknown module(s): {', '.join(sorted(unknown))}")
    report = VerificationReport(cfg)
    for module, name, check in selected:
        res = PropertyResult(module, name, cfg.cases)
        t0 = time.perf_counter()
        for case in range(cfg.cases):
            rng = random.Random(f"{cfg.seed}:{module}:{name}:{case}")
            try:
                w = check(rng, cfg, ops)
            except Exception as err:  # a crash is a failure with the case as witness
                w = {"message": f"{type(err).__name__}: {err}"}
            if w is not None:
                w.update({"property": res.key, "seed": cfg.seed, "case": case})
                res.failed_case, res.witness = case, w
                if witness_dir is not None:
                    d = Path(witness_dir)
                    d.mkdir(parents=True, exist_ok=True)
                    path = d / f"{module}-{name}-case{case}.json"
                    path.write_text(json.dumps(w, indent=2) + "\n")
                    res.witness_file = str(path)
                break
        res.seconds = time.perf_counter() - t0
        report.results.append(res)
    report.results.sort(key=lambda r: (r.module, r.name))
    return report
