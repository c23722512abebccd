"""Three infinite examples, handled symbolically.

With the cofinite topology, closed sets are the finite sets and the whole
space. On an uncountable set the whole space carries its own Dirac mass; on
a countable set it does not, which leaves a bounded functional with no
measure behind it; and the shift on the integers has no invariant
probability measure until the completion adds a fixed generic point.
"""

from noeth import cofinite as cf
from noeth.errors import NotBorelError

uncountable = cf.CofiniteSpace("uncountable")
countable = cf.CofiniteSpace("countable")

for space in (cf.CofiniteSpace("finite", 3), countable, uncountable):
    atoms = cf.sigma_irreducible_closeds(space).describe()
    print(f"{space.cardinality}: atoms = {atoms}; complete = {cf.is_complete(space)}")

print("\nDirac mass at the whole uncountable space:")
for label, a in [
    ("cofinite({a,b})", cf.SymbolicSet.cofinite({"a", "b"})),
    ("finite({a})", cf.SymbolicSet.finite({"a"})),
    ("countable", cf.SymbolicSet("countable")),
    ("cocountable", cf.SymbolicSet("cocountable")),
    ("neither", cf.SymbolicSet("neither")),
]:
    try:
        print(f"  {label}: {cf.delta_Y(uncountable, a)}")
    except NotBorelError as err:
        print(f"  {label}: {err}")

gap = cf.lambda_gap_witness(countable, range(5))
print("\nfunctional phi(c + finitely many exceptions) = c:")
print("  on point indicators:", ", ".join(f"phi(chi_{x}) = {v}" for x, v in gap.singleton_values.items()))
print("  phi(1) =", gap.phi_of_one, "but the only candidate measure gives", gap.candidate_of_one)

shift = cf.shift_dynamics_report(window=20)
print("\nshift n -> n + 1 on the integers:")
print("  continuous", shift.continuous, "surjective", shift.surjective)
print("  periodic points in window:", len(shift.periodic_points))
print("  ergodic measures on the base:", len(shift.base_ergodic))
for m in shift.completion_ergodic:
    print("  ergodic on the completion:", " + ".join(f"{v}*delta[{e}]" for e, v in m.items()))
