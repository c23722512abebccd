"""Finite spaces as specialization preorders.

Builds the three small spaces used throughout the demos, lists their
irreducible components and generic points, and shows how the completion
separates points that a non-T0 space cannot tell apart.
"""

from noeth import build_space, complete_space, is_zariski, to_dot

fan = build_space(["eta", "p", "q"], [("p", "eta"), ("q", "eta")])
chain = build_space(["a", "b", "c"], [("c", "b"), ("b", "a")])
fuzzy = build_space(["u", "v"], [("u", "v"), ("v", "u")])

for name, space in [("fan", fan), ("chain", chain), ("fuzzy", fuzzy)]:
    print(f"{name}: {len(space)} points, {len(space.closed_sets)} closed sets, zariski={is_zariski(space)}")
    for e in space.irreducibles:
        print(f"  irreducible {e.id}: generic points {', '.join(e.generic_points)}")

# {p, q} is closed in the fan but splits into two components
for e in fan.components(frozenset({"p", "q"})):
    print("component of {p,q}:", e.id)

# the completion has one point per irreducible closed set, so it is Zariski
c = complete_space(fuzzy)
print("completion of fuzzy:", list(c.space.points), "zariski =", is_zariski(c.space))

print()
print(to_dot(fan))
