import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from noeth import (
    IntersectionType,
    Measure,
    classify_intersection,
    complete_space,
    dirac,
    eta_transport,
    extract_convergent_subsequence,
    from_closed_set_values,
    indicator,
    integrate,
    j_embed,
    jordan_decompose,
    measure_of_closed,
    weak_distance,
)
from noeth.errors import BoundViolation, NonAdditiveError, NotBorelError, NotPositiveError, SpaceError
from noeth.generate import random_measure, random_sc_function, random_space
from noeth.measures import closed_set_values, j_restrict, measure_of_set, sign_witness, simplest_between
from noeth.oracles import down_sets

from conftest import spaces

h = Fraction(1, 2)


def test_dirac_examples(fan):
    d = dirac(fan, {"p"})
    assert d.coefficients == {"p": 1}
    assert dirac(fan, fan.whole).coefficients == {"eta+p+q": 1}
    with pytest.raises(SpaceError):
        dirac(fan, set())
    for e in fan.irreducibles:
        for f in down_sets(fan):
            assert measure_of_closed(dirac(fan, e), f) == (1 if e.members <= f else 0)


def test_measure_of_closed_examples(fan):
    mu = Measure(fan, {"p": h, "q": h})
    assert measure_of_closed(mu, {"p", "q"}) == 1
    assert measure_of_closed(mu, set()) == 0
    assert measure_of_closed(dirac(fan, fan.whole), {"p", "q"}) == 0
    with pytest.raises(SpaceError):
        measure_of_closed(mu, {"eta"})


def test_classify_intersection_examples(fan):
    x = fan.irreducible(fan.whole)
    assert classify_intersection(fan, {"eta"}, x) is IntersectionType.TYPE1
    assert classify_intersection(fan, {"p", "q"}, x) is IntersectionType.TYPE2
    for a in [set(), {"p"}, {"q", "eta"}]:
        t = classify_intersection(fan, a, fan.irreducible({"p"}))
        assert (t is IntersectionType.TYPE1) == ("p" in a)


def test_non_t0_has_non_borel_sets(fuzzy):
    e = fuzzy.irreducible({"u", "v"})
    assert classify_intersection(fuzzy, {"u"}, e) is IntersectionType.NEITHER
    with pytest.raises(NotBorelError):
        measure_of_set(dirac(fuzzy, e), {"u"})


def test_from_closed_set_values_examples(fan):
    mu = Measure(fan, {"p": Fraction(1, 3), "eta+p+q": Fraction(2, 3)})
    assert from_closed_set_values(fan, closed_set_values(mu)) == mu
    zero = {c: 0 for c in fan.closed_sets}
    assert from_closed_set_values(fan, zero) == Measure(fan)
    ones = {c: (1 if c else 0) for c in fan.closed_sets}
    with pytest.raises(NonAdditiveError) as err:
        from_closed_set_values(fan, ones)
    assert set(err.value.witness) == {frozenset({"p"}), frozenset({"q"})}


def test_from_closed_set_values_positivity(fan):
    mu = Measure(fan, {"p": 1, "q": -1})
    with pytest.raises(NotPositiveError):
        from_closed_set_values(fan, closed_set_values(mu), require_positive=True)


def test_integrate_examples(fan, tau1):
    assert integrate(Measure(fan, {"p": h, "q": h}), tau1) == 2
    assert integrate(dirac(fan, fan.whole), tau1) == tau1("eta")
    mu = Measure(fan, {"p": Fraction(1, 3), "q": -2, "eta+p+q": Fraction(5, 7)})
    for f in fan.closed_sets:
        assert integrate(mu, indicator(fan, f)) == measure_of_closed(mu, f)


def test_jordan_examples(fan):
    plus, minus = jordan_decompose(Measure(fan, {"p": 1, "q": -2}))
    assert plus == dirac(fan, {"p"}) and minus == Measure(fan, {"q": 2})
    pos = Measure(fan, {"p": 1})
    assert jordan_decompose(pos) == (pos, Measure(fan))


def test_weak_distance_examples(fan):
    assert weak_distance(dirac(fan, {"p"}), dirac(fan, {"q"})) == 1
    mu = Measure(fan, {"p": 3, "eta+p+q": -1})
    assert weak_distance(mu, mu) == 0


def test_j_embed_examples(fan, fuzzy, tau1):
    c = complete_space(fuzzy)
    assert j_embed(dirac(fuzzy, {"u", "v"}), c).coefficients == {"u+v": 1}
    assert j_embed(Measure(fuzzy), c) == Measure(c.space)
    cf = complete_space(fan)
    mu = Measure(fan, {"p": h, "eta+p+q": Fraction(-1, 3)})
    assert integrate(j_embed(mu, cf), eta_transport(tau1, cf)) == integrate(mu, tau1)
    assert j_restrict(j_embed(mu, cf), cf) == mu


def test_simplest_between():
    assert simplest_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(1, 2)
    assert simplest_between(Fraction(3, 10), Fraction(7, 20)) == Fraction(1, 3)
    assert simplest_between(Fraction(-1, 2), Fraction(1, 2)) == 0
    assert simplest_between(Fraction(-7, 20), Fraction(-3, 10)) == Fraction(-1, 3)


def test_extract_alternating(fan):
    p, q = dirac(fan, {"p"}), dirac(fan, {"q"})
    sub = extract_convergent_subsequence(lambda n: p if n % 2 == 0 else q, 1, 10)
    assert sub.limit in (p, q)
    parity = {i % 2 for i in sub.indices}
    assert len(parity) == 1
    assert all(d == 0 for d in sub.distances)
    assert list(sub.indices) == sorted(sub.indices)


def test_extract_constant(fan):
    mu = Measure(fan, {"p": h})
    sub = extract_convergent_subsequence([mu] * 20, 1, 5)
    assert sub.indices == (0, 1, 2, 3, 4) and sub.limit == mu


def test_extract_drifting(fan):
    p, x = dirac(fan, {"p"}), dirac(fan, fan.whole)
    seq = lambda n: p.scale(1 - Fraction(1, n + 1)) + x.scale(Fraction(1, n + 1))  # noqa: E731
    sub = extract_convergent_subsequence(seq, 1, 50)
    assert sub.limit == p
    assert all(a >= b for a, b in zip(sub.distances, sub.distances[1:]))
    assert sub.distances[-1] <= Fraction(1, 1000)


def test_extract_rejects_tv_breach(fan):
    with pytest.raises(BoundViolation):
        extract_convergent_subsequence([Measure(fan, {"p": 2})], 1, 1)


@settings(max_examples=80, deadline=None)
@given(spaces(max_points=8), st.integers(0, 10**6))
def test_classification_round_trip(s, seed):
    mu = random_measure(random.Random(seed), s)
    assert from_closed_set_values(s, closed_set_values(mu)) == mu


@settings(max_examples=80, deadline=None)
@given(spaces(), st.integers(0, 10**6))
def test_weak_distance_laws(s, seed):
    rng = random.Random(seed)
    mu, nu = random_measure(rng, s), random_measure(rng, s)
    d = weak_distance(mu, nu)
    assert d <= (mu - nu).total_variation()
    assert (d == 0) == (mu == nu)
    assert weak_distance(mu, mu) == 0


@settings(max_examples=80, deadline=None)
@given(spaces(), st.integers(0, 10**6))
def test_duality_through_completion(s, seed):
    rng = random.Random(seed)
    c = complete_space(s)
    mu, f = random_measure(rng, s), random_sc_function(rng, s)
    assert integrate(j_embed(mu, c), eta_transport(f, c)) == integrate(mu, f)


@settings(max_examples=80, deadline=None)
@given(spaces(non_t0=False), st.integers(0, 10**6))
def test_sign_witness_attains_total_variation(s, seed):
    mu = random_measure(random.Random(seed), s)
    w = sign_witness(mu)
    assert max(abs(v) for v in w.values.values()) <= 1
    assert integrate(mu, w) == mu.total_variation()


@settings(max_examples=80, deadline=None)
@given(spaces(), st.integers(0, 10**6))
def test_jordan_split(s, seed):
    mu = random_measure(random.Random(seed), s)
    plus, minus = jordan_decompose(mu)
    assert plus - minus == mu
    assert plus.total_variation() + minus.total_variation() == mu.total_variation()
    assert plus.total_variation() <= mu.total_variation() >= minus.total_variation()


def test_dirac_law_on_all_subsets():
    rng = random.Random(11)
    for _ in range(40):
        s = random_space(rng, rng.randint(1, 6), non_t0=0.3)
        pts = s.points
        subsets = [frozenset(p for i, p in enumerate(pts) if m >> i & 1) for m in range(1 << len(pts))]
        for e in s.irreducibles:
            d = dirac(s, e)
            for a in subsets:
                t = classify_intersection(s, a, e)
                if t is IntersectionType.NEITHER:
                    continue
                gens_in = [g in a for g in e.generic_points]
                assert (t is IntersectionType.TYPE1) == all(gens_in)
                try:
                    v = measure_of_set(d, a)
                except NotBorelError:
                    continue
                assert v == (1 if t is IntersectionType.TYPE1 else 0)
