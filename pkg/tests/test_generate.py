import random

from hypothesis import given, settings, strategies as st

from noeth import is_usc
from noeth.generate import (
    random_automorphism,
    random_map,
    random_measure,
    random_reverse_orbit,
    random_sc_function,
    random_space,
    random_usc_function,
    symmetric_space,
)
from noeth.dynamics import check_reverse_orbit


def test_same_seed_same_space():
    a = random_space(random.Random(3), 9)
    b = random_space(random.Random(3), 9)
    assert a == b


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8))
def test_generated_objects_are_valid(seed, n):
    rng = random.Random(seed)
    s = random_space(rng, n, non_t0=0.3)
    random_map(rng, s)  # validates on construction
    f = random_automorphism(rng, s)
    assert f.is_surjective and len(set(f.mapping.values())) == len(s)
    check_reverse_orbit(f, random_reverse_orbit(rng, f))
    assert is_usc(s, random_usc_function(rng, s))
    g = random_sc_function(rng, s)
    assert all(g(x) == g(y) for x in s.points for y in s.equivalence_class(x))
    mu = random_measure(rng, s, tv_bound=1)
    assert mu.total_variation() <= 1
    assert random_measure(rng, s, positive=True).is_positive()


def test_symmetric_space_has_nontrivial_automorphisms():
    rng = random.Random(0)
    moved = 0
    for _ in range(20):
        s = symmetric_space(rng, 3, 2)
        f = random_automorphism(rng, s)
        moved += any(f(x) != x for x in s.points)
    assert moved > 0
