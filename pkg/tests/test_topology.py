import random

import pytest
from hypothesis import given, settings

from noeth import build_space, closure, complete_space, irreducible_components, is_zariski, to_dot
from noeth.errors import SpaceError
from noeth.generate import random_space
from noeth.oracles import down_sets, generic_points, irreducible_closed_sets, minimal_decomposition
from noeth.topology import covering_pairs

from conftest import spaces


def ids(sets):
    return sorted("".join(sorted(s)) for s in sets)


def test_fan_closed_sets_match_down_set_oracle(fan):
    assert set(fan.closed_sets) == set(down_sets(fan))
    assert ids(fan.closed_sets) == ids([set(), {"p"}, {"q"}, {"p", "q"}, {"p", "q", "eta"}])


def test_one_point_and_fuzzy_pair():
    one = build_space(["a"])
    assert set(one.closed_sets) == {frozenset(), frozenset({"a"})}
    fuzzy = build_space(["u", "v"], [("u", "v"), ("v", "u")])
    assert [c for c in fuzzy.closed_sets if c] == [frozenset({"u", "v"})]


def test_build_rejects_duplicates_and_unknown_points():
    with pytest.raises(SpaceError):
        build_space(["a", "a"])
    with pytest.raises(SpaceError):
        build_space(["a"], [("a", "b")])


def test_saturation_makes_a_preorder(chain3):
    assert chain3.le("c", "a")
    assert all(chain3.le(p, p) for p in chain3.points)


def test_closure_examples(fan):
    assert closure(fan, {"eta"}) == {"eta", "p", "q"}
    assert closure(fan, {"p"}) == {"p"}
    assert closure(fan, set()) == frozenset()
    with pytest.raises(SpaceError):
        closure(fan, {"zz"})


def test_components_examples(fan, fuzzy):
    assert [c.members for c in irreducible_components(fan, {"p", "q"})] == [{"p"}, {"q"}]
    (whole,) = irreducible_components(fan, fan.whole)
    assert whole.generic_points == ("eta",)
    (pair,) = irreducible_components(fuzzy, {"u", "v"})
    assert pair.generic_points == ("u", "v")
    assert pair.id == "u+v"
    assert irreducible_components(fan, set()) == []


def test_zariski_examples(fan, fuzzy):
    assert is_zariski(fan)
    assert not is_zariski(fuzzy)
    assert is_zariski(build_space(["a"]))


def test_completion_examples(fan, fuzzy):
    assert len(complete_space(fuzzy).space) == 1
    c = complete_space(fan)
    assert len(c.space) == 3 and is_zariski(c.space)
    top = c.point_embedding[fan.whole]
    assert all(c.space.le(c.point_embedding[frozenset({x})], top) for x in "pq")
    discrete = complete_space(build_space(["a", "b"]))
    assert discrete.space.specialization_pairs() == [("a", "a"), ("b", "b")]


def test_dot_export_uses_covering_edges(chain3):
    dot = to_dot(chain3)
    assert '"c" -> "b"' in dot and '"b" -> "a"' in dot
    assert '"c" -> "a"' not in dot
    assert set(covering_pairs(chain3)) == {("b", "a"), ("c", "b")}


def test_components_match_oracle_on_random_spaces():
    rng = random.Random(2024)
    for _ in range(300):
        s = random_space(rng, rng.randint(1, 10), non_t0=0.25)
        closed = down_sets(s)
        assert set(closed) == set(s.closed_sets)
        irr = irreducible_closed_sets(s, closed)
        assert set(irr) == {e.members for e in s.irreducibles}
        for e in s.irreducibles:
            assert set(e.generic_points) == generic_points(s, e.members, closed)
        for c in closed:
            comps = irreducible_components(s, c)
            assert frozenset().union(*[e.members for e in comps]) == c
            assert {e.members for e in comps} == minimal_decomposition(s, c, irr)
            assert [e.id for e in comps] == sorted((e.id for e in comps), key=lambda i: s.set_key(s.irreducible(i).members))


@settings(max_examples=60, deadline=None)
@given(spaces())
def test_completion_is_zariski_and_idempotent(s):
    c = complete_space(s)
    assert is_zariski(c.space)
    c2 = complete_space(c.space)
    assert len(c2.space) == len(c.space)
    # zariski iff T0 on finite spaces
    assert is_zariski(s) == s.is_t0()


@settings(max_examples=60, deadline=None)
@given(spaces())
def test_irreducible_iff_sigma_irreducible(s):
    for c in s.closed_sets:
        assert s.is_irreducible(c) == s.is_sigma_irreducible(c)


@settings(max_examples=40, deadline=None)
@given(spaces(max_points=6))
def test_closure_is_kuratowski(s):
    pts = s.points
    subsets = [frozenset(p for i, p in enumerate(pts) if m >> i & 1) for m in range(1 << len(pts))]
    assert s.closure(()) == frozenset()
    for a in subsets:
        ca = s.closure(a)
        assert a <= ca and s.closure(ca) == ca
        for b in subsets[:16]:
            assert s.closure(a | b) == ca | s.closure(b)
            if a <= b:
                assert ca <= s.closure(b)
