"""Forward and backward time averages of an upper semicontinuous observable.

tau_plus(x) is the average of tau over the cycle that the orbit of x falls
into. tau_minus(x) asks for the best average along reverse orbits of x; it
is a maximum cycle mean over cycles that reach x, and is undefined when x
has no reverse orbit at all.
"""

from noeth import RealFunction, best_reverse_orbit, build_space, tau_minus_n, tau_profile, validate_map
from noeth.dinh import certify_reverse_orbit

fan = build_space(["eta", "p", "q"], [("p", "eta"), ("q", "eta")])
tau = RealFunction(fan, {"eta": 0, "p": 1, "q": 3})
swap = validate_map(fan, {"eta": "eta", "p": "q", "q": "p"})
fold = validate_map(fan, {"eta": "eta", "p": "p", "q": "p"})

for name, f in [("swap", swap), ("fold", fold)]:
    print(name)
    for point, plus, minus, witness in tau_profile(f, tau).rows():
        shown = "undefined" if minus is None else minus
        print(f"  {point:4} tau_plus={plus}  tau_minus={shown}  best cycle={witness}")
    table = tau_minus_n(f, tau, 10)
    print("  tau_-10 / 10:", ", ".join(f"{x}: {'undefined' if v is None else v / 10}" for x, v in table.items()))

ro = best_reverse_orbit(swap, tau, "p")
print("best reverse orbit of p under swap: prefix", ro.prefix, "cycle", ro.cycle)
ro, average, limit, bound = certify_reverse_orbit(swap, tau, "p", 1001)
print(f"average over 1001 steps {average}, limit {limit}, |gap| <= {bound}")
