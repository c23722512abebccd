import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from noeth import (
    RealFunction,
    SCFunction,
    char_combination,
    complete_space,
    constant,
    eta_transport,
    generic_value,
    indicator,
    is_usc,
    sc_decompose,
    sup_norm,
)
from noeth.errors import NotSCError, NotUSCError
from noeth.generate import random_sc_function, random_space, random_usc_function
from noeth.oracles import down_sets

from conftest import spaces


def usc_by_level_sets(space, f):
    closed = set(down_sets(space))
    return all(frozenset(p for p in space.points if f(p) >= r) in closed for r in set(f.values.values()))


def test_is_usc_examples(fan, tau1):
    assert is_usc(fan, tau1) and usc_by_level_sets(fan, tau1)
    bump = RealFunction(fan, {"eta": 1, "p": 0, "q": 0})
    assert not is_usc(fan, bump) and not usc_by_level_sets(fan, bump)
    assert is_usc(fan, constant(fan, 7))


def test_decompose_non_usc(fan):
    f = RealFunction(fan, {"eta": 1, "p": 0, "q": 0})
    d = sc_decompose(fan, f)
    assert is_usc(fan, d.g) and is_usc(fan, d.h)
    assert d.as_real() == f
    # depth 1 at eta, K = 2*1 + 1
    assert d.h.values == {"eta": -3, "p": 0, "q": 0}


def test_decompose_usc_and_constant(fan, tau1):
    d = sc_decompose(fan, tau1)
    assert d.g == tau1 and d.h == constant(fan, 0)
    c = sc_decompose(fan, constant(fan, 4))
    assert c.g == constant(fan, 4) and c.h == constant(fan, 0)


def test_decompose_rejects_split_class(fuzzy):
    with pytest.raises(NotSCError):
        sc_decompose(fuzzy, RealFunction(fuzzy, {"u": 0, "v": 1}))


def test_generic_value_examples(fan, tau1):
    assert generic_value(tau1, fan.irreducible(fan.whole)) == 0
    assert generic_value(tau1, fan.irreducible({"p"})) == 1
    for x in fan.points:
        assert generic_value(tau1, fan.irreducible(fan.point_closure(x))) == tau1(x)


def test_char_combination_examples(fan, tau1):
    comb = char_combination(fan, tau1)
    assert comb.terms == (
        (0, fan.whole),
        (1, frozenset({"p", "q"})),
        (2, frozenset({"q"})),
    )
    assert comb.as_real() == tau1
    assert char_combination(fan, constant(fan, 5)).terms == ((5, fan.whole),)
    chi = indicator(fan, {"p"})
    assert char_combination(fan, chi).terms == ((0, fan.whole), (1, frozenset({"p"})))
    with pytest.raises(NotUSCError):
        char_combination(fan, RealFunction(fan, {"eta": 1, "p": 0, "q": 0}))


def test_eta_transport_examples(fan, fuzzy):
    c = complete_space(fan)
    chi = eta_transport(indicator(fan, {"p"}), c).as_real()
    vp = c.closed_set_map({"p"})
    assert chi.values == {pt: int(pt in vp) for pt in c.space.points}
    assert eta_transport(constant(fan, 3), c).as_real() == constant(c.space, 3)
    cf = complete_space(fuzzy)
    f = RealFunction(fuzzy, {"u": 2, "v": 2})
    assert eta_transport(f, cf).as_real().values == {"u+v": 2}


def test_sup_norm(fan, tau1):
    assert sup_norm(tau1) == 3
    assert sup_norm(constant(fan, 0)) == 0


@settings(max_examples=80, deadline=None)
@given(spaces(), st.integers(0, 10**6))
def test_decomposition_sound(s, seed):
    f = random_sc_function(random.Random(seed), s)
    d = sc_decompose(s, f)
    assert is_usc(s, d.g) and is_usc(s, d.h)
    assert d.as_real() == f


@settings(max_examples=80, deadline=None)
@given(spaces(), st.integers(0, 10**6))
def test_generic_value_does_not_depend_on_decomposition(s, seed):
    rng = random.Random(seed)
    f = random_sc_function(rng, s)
    d = sc_decompose(s, f)
    u = random_usc_function(rng, s)
    alt = SCFunction(d.g + u, d.h + u)
    for e in s.irreducibles:
        assert generic_value(d, e) == generic_value(alt, e) == f(e.generic_points[0])


@settings(max_examples=60, deadline=None)
@given(spaces(max_points=8), st.integers(0, 10**6))
def test_char_combination_round_trip(s, seed):
    f = random_usc_function(random.Random(seed), s)
    assert usc_by_level_sets(s, f)
    comb = char_combination(s, f)
    assert comb.as_real() == f
    assert all(s.is_closed(t) for _, t in comb.terms)


def rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    r = 0
    for col in range(len(rows[0]) if rows else 0):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                k = rows[i][col] / rows[r][col]
                rows[i] = [a - k * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def test_characteristic_functions_of_irreducibles_independent(fan, chain3, fuzzy):
    rng = random.Random(5)
    fixtures = [fan, chain3, fuzzy] + [random_space(rng, 7, non_t0=0.3) for _ in range(30)]
    for s in fixtures:
        rows = [[int(p in e.members) for p in s.points] for e in s.irreducibles]
        assert rank(rows) == len(rows)


@settings(max_examples=60, deadline=None)
@given(spaces(), st.integers(0, 10**6))
def test_transport_is_isometric(s, seed):
    f = random_sc_function(random.Random(seed), s)
    assert sup_norm(eta_transport(f, complete_space(s))) == sup_norm(f)
