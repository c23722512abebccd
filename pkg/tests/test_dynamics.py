import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from noeth import (
    Measure,
    ReverseOrbitSpec,
    alpha_limit,
    build_space,
    complete_space,
    dirac,
    ergodic_measures,
    forward_orbit,
    induce_on_completion,
    integrate,
    is_invariant,
    j_embed,
    omega_limit,
    pushforward,
    forward_limit_measure,
    reverse_limit_measure,
    validate_map,
    weak_distance,
)
from noeth.dynamics import birkhoff_average, periodic_cycles
from noeth.errors import ContinuityError, NotSurjectiveError, NotZariskiError, ReverseOrbitError
from noeth.generate import random_automorphism, random_map, random_measure, random_reverse_orbit, random_usc_function
from noeth.oracles import all_monotone_maps, tail_closure_omega

from conftest import spaces

h = Fraction(1, 2)


def test_validate_examples(fan, swap, fold):
    assert swap.is_surjective
    assert not fold.is_surjective and fold.preimages["q"] == ()
    with pytest.raises(ContinuityError) as err:
        validate_map(fan, {"eta": "p", "p": "p", "q": "q"})
    assert err.value.witness == ("q", "eta")


def test_validate_agrees_with_exhaustive_search(fan, chain3):
    from itertools import product

    for s in (fan, chain3):
        good = list(all_monotone_maps(s))
        for imgs in product(s.points, repeat=len(s)):
            m = dict(zip(s.points, imgs))
            try:
                validate_map(s, m)
                ok = True
            except ContinuityError:
                ok = False
            assert ok == (m in good)


def test_pushforward_examples(fan, swap, fold):
    assert pushforward(swap, dirac(fan, {"p"})) == dirac(fan, {"q"})
    for f in (swap, fold):
        assert pushforward(f, dirac(fan, fan.whole)) == dirac(fan, f.image_closure(fan.whole))
    assert pushforward(fold, Measure(fan, {"p": h, "q": h})) == dirac(fan, {"p"})


def test_induced_map_examples(fan, swap):
    c = complete_space(fan)
    fh = induce_on_completion(swap, c)
    assert fh.mapping == {"eta+p+q": "eta+p+q", "p": "q", "q": "p"}
    ident = validate_map(fan, {p: p for p in fan.points})
    assert induce_on_completion(ident, c).mapping == {p: p for p in c.space.points}


def test_ergodic_examples(fan, chain3, swap, fold):
    assert ergodic_measures(swap) == [dirac(fan, fan.whole), Measure(fan, {"p": h, "q": h})]
    ident = validate_map(chain3, {p: p for p in chain3.points})
    assert set(ergodic_measures(ident)) == {dirac(chain3, chain3.point_closure(p)) for p in "abc"}
    assert ergodic_measures(fold) == [dirac(fan, fan.whole), dirac(fan, {"p"})]


def test_ergodic_needs_zariski(fuzzy):
    f = validate_map(fuzzy, {"u": "v", "v": "u"})
    with pytest.raises(NotZariskiError):
        ergodic_measures(f)


def test_invariance_examples(fan, swap):
    assert is_invariant(swap, Measure(fan, {"p": h, "q": h}))
    assert not is_invariant(swap, dirac(fan, {"p"}))
    assert is_invariant(swap, Measure(fan))


def test_orbit_examples(chain3, swap, fold):
    o = forward_orbit(swap, "p")
    assert (o.preperiod, o.cycle) == (0, ("p", "q"))
    o = forward_orbit(fold, "q")
    assert (o.preperiod, o.cycle) == (1, ("p",))
    ident = validate_map(chain3, {p: p for p in chain3.points})
    o = forward_orbit(ident, "a")
    assert (o.preperiod, o.cycle) == (0, ("a",))


def test_omega_examples(fan, swap, fold):
    assert omega_limit(swap, "p") == {"p", "q"} == tail_closure_omega(swap, "p")
    assert omega_limit(fold, "q") == {"p"} == tail_closure_omega(fold, "q")
    assert omega_limit(swap, "eta") == fan.whole


def test_forward_limit_examples(fan, swap, fold):
    r = forward_limit_measure(swap, "p", 1000)
    assert r.predicted == Measure(fan, {"p": h, "q": h})
    assert r.distance <= Fraction(2, 1000) and r.bound == Fraction(2, 1000)
    r = forward_limit_measure(fold, "q", 1000)
    assert r.predicted == dirac(fan, {"p"})
    assert r.distance == Fraction(1, 1000)
    r = forward_limit_measure(swap, "eta", 17)
    assert r.predicted == dirac(fan, fan.whole) and r.distance == 0


def test_alpha_examples(fan, swap, fold):
    ro = ReverseOrbitSpec("p", ("p",), ("q", "p"))
    assert alpha_limit(swap, ro) == {"p", "q"}
    assert alpha_limit(swap, ReverseOrbitSpec("eta", (), ("eta",))) == fan.whole
    with pytest.raises(NotSurjectiveError):
        alpha_limit(fold, ReverseOrbitSpec("p", (), ("p",)))
    with pytest.raises(ReverseOrbitError):
        alpha_limit(swap, ReverseOrbitSpec("p", (), ("p",)))


def test_reverse_limit_examples(fan, swap):
    r = reverse_limit_measure(swap, ReverseOrbitSpec("p", ("p",), ("q", "p")), 1000)
    assert r.predicted == Measure(fan, {"p": h, "q": h})
    assert r.distance <= r.bound
    r = reverse_limit_measure(swap, ReverseOrbitSpec("eta", (), ("eta",)), 1000)
    assert r.predicted == dirac(fan, fan.whole) and r.distance == 0


@settings(max_examples=80, deadline=None)
@given(spaces(), st.integers(0, 10**6))
def test_pushforward_contracts(s, seed):
    rng = random.Random(seed)
    f = random_map(rng, s)
    mu, nu = random_measure(rng, s), random_measure(rng, s)
    pm, pn = pushforward(f, mu), pushforward(f, nu)
    assert (pm - pn).total_variation() <= (mu - nu).total_variation()
    assert weak_distance(pm, pn) <= len(s.closed_sets) * weak_distance(mu, nu)
    g = random_map(rng, s)
    assert pushforward(f.compose(g), mu) == pushforward(f, pushforward(g, mu))


@settings(max_examples=80, deadline=None)
@given(spaces(), st.integers(0, 10**6))
def test_adjointness(s, seed):
    rng = random.Random(seed)
    f = random_map(rng, s)
    mu, tau = random_measure(rng, s), random_usc_function(rng, s)
    assert integrate(pushforward(f, mu), tau) == integrate(mu, tau.compose(f))


@settings(max_examples=60, deadline=None)
@given(spaces(), st.integers(0, 10**6))
def test_completion_square_commutes(s, seed):
    rng = random.Random(seed)
    f = random_map(rng, s)
    mu = random_measure(rng, s)
    c = complete_space(s)
    fh = induce_on_completion(f, c)
    assert j_embed(pushforward(f, mu), c) == pushforward(fh, j_embed(mu, c))


@settings(max_examples=60, deadline=None)
@given(spaces(non_t0=False), st.integers(0, 10**6))
def test_birkhoff_bound_and_omega_oracle(s, seed):
    rng = random.Random(seed)
    f = random_map(rng, s)
    x = rng.choice(s.points)
    o = forward_orbit(f, x)
    assert f.iterate(x, o.preperiod) == o.cycle[0]
    assert omega_limit(f, x) == tail_closure_omega(f, x)
    for n in (1, 7, 500):
        r = forward_limit_measure(f, x, n)
        assert r.distance <= Fraction(o.preperiod + len(o.cycle), n)
    assert r.empirical == birkhoff_average(f, x, 500)


@settings(max_examples=60, deadline=None)
@given(spaces(non_t0=False), st.integers(0, 10**6))
def test_reverse_bound(s, seed):
    rng = random.Random(seed)
    f = random_automorphism(rng, s)
    ro = random_reverse_orbit(rng, f)
    r = reverse_limit_measure(f, ro, 300)
    assert r.distance <= Fraction(len(ro.prefix) + len(ro.cycle), 300)
    assert alpha_limit(f, ro) == s.closure(ro.cycle)


def test_periodic_cycles_canonical(chain3):
    f = validate_map(chain3, {"a": "a", "b": "b", "c": "c"})
    assert periodic_cycles(f) == [("a",), ("b",), ("c",)]


def test_limit_time_average_through_completion(fuzzy):
    s = build_space(["u", "v", "w"], [("u", "v"), ("v", "u"), ("w", "u")])
    f = validate_map(s, {"u": "w", "v": "w", "w": "w"})
    c = complete_space(s)
    fh = induce_on_completion(f, c)
    pt = c.point_embedding[s.point_closure("u")]
    r = forward_limit_measure(fh, pt)
    assert r.predicted == dirac(c.space, c.space.point_closure("w"))
