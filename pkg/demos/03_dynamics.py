"""Orbits, time averages and ergodic measures of continuous self-maps.

On a finite space every forward orbit is eventually periodic, so Birkhoff
averages converge to the uniform measure on the generic points of the limit
set, with an explicit error bound. The same holds for reverse orbits of
surjective maps.
"""

from noeth import (
    Measure,
    ReverseOrbitSpec,
    build_space,
    complete_space,
    ergodic_measures,
    forward_orbit,
    forward_limit_measure,
    induce_on_completion,
    omega_limit,
    pushforward,
    reverse_limit_measure,
    validate_map,
)
from noeth.errors import ContinuityError
from noeth.measures import format_measure

fan = build_space(["eta", "p", "q"], [("p", "eta"), ("q", "eta")])
swap = validate_map(fan, {"eta": "eta", "p": "q", "q": "p"})
fold = validate_map(fan, {"eta": "eta", "p": "p", "q": "p"})

try:
    validate_map(fan, {"eta": "p", "p": "p", "q": "q"})
except ContinuityError as err:
    print("rejected:", err)

for name, f in [("swap", swap), ("fold", fold)]:
    print(f"{name}: surjective={f.is_surjective}")
    for x in fan.points:
        o = forward_orbit(f, x)
        rep = forward_limit_measure(f, x, 1000)
        print(f"  {x}: preperiod {o.preperiod}, cycle {o.cycle}, omega {sorted(omega_limit(f, x))}")
        print(f"     limit {format_measure(rep.predicted)}; at n=1000 distance {rep.distance} <= {rep.bound}")
    print("  ergodic:", "; ".join(format_measure(m) for m in ergodic_measures(f)))

# pushforward moves each atom E to the closure of f(E)
mu = Measure(fan, {"p": 1, "q": 1})
print("fold pushes", format_measure(mu), "to", format_measure(pushforward(fold, mu)))

# a reverse orbit of p under the swap: p <- q <- p <- ...
ro = ReverseOrbitSpec("p", ("p",), ("q", "p"))
rep = reverse_limit_measure(swap, ro, 999)
print("reverse limit:", format_measure(rep.predicted), "distance", rep.distance, "bound", rep.bound)

# a non-T0 space is handled through its completion
fuzzy = build_space(["u", "v", "w"], [("u", "v"), ("v", "u"), ("w", "u")])
g = validate_map(fuzzy, {"u": "w", "v": "w", "w": "w"})
c = complete_space(fuzzy)
gh = induce_on_completion(g, c)
print("induced map on the completion:", gh.mapping)
print("ergodic on the completion:", [format_measure(m) for m in ergodic_measures(gh)])
