"""Measures in atomic form, their closed-set values, and the pairing with functions.

A measure is a rational combination of Dirac masses at irreducible closed
sets. Its values on closed sets determine it, and integrating functions
against it gives the dual pairing that survives passing to the completion.
"""

import random
from fractions import Fraction

from noeth import (
    Measure,
    RealFunction,
    build_space,
    complete_space,
    dirac,
    eta_transport,
    extract_convergent_subsequence,
    from_closed_set_values,
    integrate,
    j_embed,
    jordan_decompose,
    weak_distance,
)
from noeth.measures import closed_set_values, format_measure

fan = build_space(["eta", "p", "q"], [("p", "eta"), ("q", "eta")])
mu = Measure(fan, {"p": Fraction(1, 3), "eta+p+q": Fraction(-2, 3)})
print("mu =", format_measure(mu))

values = closed_set_values(mu)
for closed, v in sorted(values.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
    print(f"  mu({{{','.join(sorted(closed))}}}) = {v}")
print("recovered from closed-set values:", from_closed_set_values(fan, values) == mu)

plus, minus = jordan_decompose(mu)
print("Jordan split:", format_measure(plus), "|", format_measure(minus))

tau = RealFunction(fan, {"eta": 0, "p": 1, "q": 3})
print("integral of tau:", integrate(mu, tau))

# a non-T0 space: the pairing is unchanged after moving to the completion
fuzzy = build_space(["u", "v", "w"], [("u", "v"), ("v", "u"), ("w", "u")])
c = complete_space(fuzzy)
nu = Measure(fuzzy, {"u+v+w": 2, "w": -1})
f = RealFunction(fuzzy, {"u": 5, "v": 5, "w": 1})
print("pairing on the base:", integrate(nu, f), "on the completion:", integrate(j_embed(nu, c), eta_transport(f, c)))

# sequential compactness: pull convergent subsequences out of bounded sequences
p, q, whole = dirac(fan, {"p"}), dirac(fan, {"q"}), dirac(fan, fan.whole)


def drifting(n):
    # (1 - 1/(n+1)) delta_p + 1/(n+1) delta_X never equals its limit delta_p
    return p.scale(1 - Fraction(1, n + 1)) + whole.scale(Fraction(1, n + 1))


rng = random.Random(0)
wobbly = [rng.choice([p, q, whole]).scale(Fraction(1, 2)) + p.scale(Fraction(1, n + 2)) for n in range(1500)]

for name, seq in [("drifting", drifting), ("random", wobbly)]:
    sub = extract_convergent_subsequence(seq, 2, 50, horizon=1500)
    print(f"{name}: limit {format_measure(sub.limit)}; indices {sub.indices[0]}..{sub.indices[-1]}; "
          f"50th term at distance {sub.distances[-1]}")
    print("  distances never increase:", all(a >= b for a, b in zip(sub.distances, sub.distances[1:])))
print("weak distance from delta_p to delta_q:", weak_distance(p, q))
