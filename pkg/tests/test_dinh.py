import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from noeth import (
    RealFunction,
    best_reverse_orbit,
    is_usc,
    tau_minus,
    tau_minus_closure_formula,
    tau_minus_n,
    tau_n,
    tau_plus,
    tau_profile,
    validate_map,
)
from noeth.dinh import certify_reverse_orbit, reverse_orbit_average
from noeth.dynamics import check_reverse_orbit
from noeth.errors import NotUSCError, UndefinedResult
from noeth.functions import sup_norm
from noeth.generate import random_automorphism, random_map, random_usc_function
from noeth.oracles import chain_tau_minus_n, cycle_mean_tau_minus

from conftest import spaces


def test_tau_n_examples(fan, swap, tau1):
    assert tau_n(swap, tau1, 2, "p") == 4
    assert tau_n(swap, tau1, 1, "q") == 3
    ident = validate_map(fan, {p: p for p in fan.points})
    assert tau_n(ident, tau1, 5, "q") == 15
    with pytest.raises(ValueError):
        tau_n(swap, tau1, 0, "p")


def test_tau_n_is_usc(fan, swap, fold, tau1):
    for f in (swap, fold):
        for n in range(1, 6):
            assert is_usc(fan, RealFunction(fan, {x: tau_n(f, tau1, n, x) for x in fan.points}))


def test_tau_plus_examples(swap, tau1):
    assert tau_plus(swap, tau1, "p") == 2
    assert tau_plus(swap, tau1, "eta") == 0


def test_tau_plus_limit_bound(fan, swap, fold, tau1):
    from noeth import forward_orbit

    for f in (swap, fold):
        for x in fan.points:
            o = forward_orbit(f, x)
            n = 1000
            gap = abs(tau_n(f, tau1, n, x) / n - tau_plus(f, tau1, x))
            assert gap <= 2 * sup_norm(tau1) * (o.preperiod + len(o.cycle)) / n


def test_tau_minus_n_examples(swap, fold, tau1):
    assert tau_minus_n(swap, tau1, 2)["p"] == 4
    t = tau_minus_n(fold, tau1, 1)
    assert t["p"] == 3 and t["q"] is None


def test_tau_minus_examples(swap, fold, tau1):
    assert tau_minus(swap, tau1, "p") == 2 == tau_minus_closure_formula(swap, tau1, "p")
    assert tau_minus(fold, tau1, "p") == 1 == tau_minus_closure_formula(fold, tau1, "p")
    assert tau_minus(fold, tau1, "q") is None
    # the closure formula disagrees where there is no reverse orbit
    assert tau_minus_closure_formula(fold, tau1, "q") == 0


def test_best_reverse_orbit_examples(swap, fold, tau1):
    ro = best_reverse_orbit(swap, tau1, "p")
    assert ro.cycle == ("q", "p")
    check_reverse_orbit(swap, ro)
    ro = best_reverse_orbit(fold, tau1, "p")
    assert set(ro.points()) == {"p"}
    assert reverse_orbit_average(tau1, ro, 10) == 1
    with pytest.raises(UndefinedResult):
        best_reverse_orbit(fold, tau1, "q")


def test_certified_reverse_average(swap, tau1):
    ro, avg, tm, bound = certify_reverse_orbit(swap, tau1, "p", 999)
    assert abs(avg - tm) <= bound


def test_rejects_non_usc(fan, swap):
    with pytest.raises(NotUSCError):
        tau_n(swap, RealFunction(fan, {"eta": 1, "p": 0, "q": 0}), 1, "p")


def test_profile_rows(fold, tau1):
    prof = tau_profile(fold, tau1)
    assert prof.rows() == [
        ("eta", 0, 0, ("eta",)),
        ("p", 1, 1, ("p",)),
        ("q", 1, None, None),
    ]


@settings(max_examples=60, deadline=None)
@given(spaces(max_points=8, non_t0=False), st.integers(0, 10**6))
def test_recursion_matches_enumeration(s, seed):
    rng = random.Random(seed)
    f = random_map(rng, s)
    tau = random_usc_function(rng, s)
    for n in range(1, 13):
        t = tau_minus_n(f, tau, n)
        for x in s.points:
            assert t[x] == chain_tau_minus_n(f, tau, n, x)
    for x in s.points:
        assert tau_minus(f, tau, x) == cycle_mean_tau_minus(f, tau, x)


@settings(max_examples=60, deadline=None)
@given(spaces(non_t0=False), st.integers(0, 10**6))
def test_surjective_laws(s, seed):
    rng = random.Random(seed)
    f = random_automorphism(rng, s)
    tau = random_usc_function(rng, s)
    tm = {x: tau_minus(f, tau, x) for x in s.points}
    assert is_usc(s, RealFunction(s, tm))
    for x in s.points:
        assert tm[x] == tau_minus_closure_formula(f, tau, x) == tau_plus(f, tau, x)
    for n in (100, 1000):
        t = tau_minus_n(f, tau, n)
        for x in s.points:
            assert abs(t[x] / n - tm[x]) <= 4 * sup_norm(tau) * len(s) / Fraction(n)


@settings(max_examples=60, deadline=None)
@given(spaces(non_t0=False), st.integers(0, 10**6))
def test_minus_at_most_plus(s, seed):
    rng = random.Random(seed)
    f = random_map(rng, s)
    tau = random_usc_function(rng, s)
    for x in s.points:
        tm = tau_minus(f, tau, x)
        if tm is not None:
            assert tm <= tau_plus(f, tau, x)
            ro, avg, _, bound = certify_reverse_orbit(f, tau, x, 500)
            check_reverse_orbit(f, ro)
            assert abs(avg - tm) <= bound
