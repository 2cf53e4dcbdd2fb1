"""The pairs map, the Kemeny rule, and the family joining it to Borda.

The Kemeny rule scores a ranking by its total pairwise agreement with the
ballots; equivalently it composes the pairs map with its adjoint.  That
operator is orthogonally diagonalizable with three nonzero eigenspaces, and
rescaling the eigencomponents sweeps out a family of rules that contains
both Borda and Kemeny.
"""

from tabloids import (
    ModuleVector,
    borda_gram_eigenvalues,
    family_apply,
    kemeny_apply,
    kemeny_eigenvalues,
)
from tabloids.specht import kemeny_eigenprojections
from tabloids.voting import kemeny_operator, pairs_map

# two voters say 1>2>3, two say 3>1>2, one says 2>3>1
profile = ModuleVector((1, 1, 1), [2, 0, 0, 1, 2, 0])

print("=== The pairs map catalogues head-to-head counts ===")
image = pairs_map(profile)
print("entries are indexed by ordered pairs (winner on top):")
print([str(v) for v in image.to_list()])

print()
print("=== Kemeny scores and the famous tie ===")
result = kemeny_apply(profile)
for tier_index, tier in enumerate(result.tiers):
    print(f"  tier {tier_index}: {[str(x) for x in tier]}")
print(f"winning rankings: {sorted(str(x) for x in result.winners)}")

print()
print("=== The matrix form at n=3 ===")
for row in kemeny_operator(3).matrix():
    print("  " + " ".join(f"{int(v)}" for v in row))
print("(columns are permutations of the first; diagonal = number of pairs)")

print()
print("=== The eigenstructure ===")
print(f"eigenvalues at n=3: {tuple(str(k) for k in kemeny_eigenvalues(3))}")
print(f"Borda-composition eigenvalues: {tuple(str(b) for b in borda_gram_eigenvalues(3))}")
t0, t1, t2 = kemeny_eigenprojections(3)
parts = [t0(profile), t1(profile), t2(profile)]
residual = profile - parts[0] - parts[1] - parts[2]
for name, comp in zip(("constant", "deviation", "pairwise"), parts):
    print(f"  {name:9s} component: {[str(v) for v in comp.to_list()]}")
print(f"  residual  component: {[str(v) for v in residual.to_list()]}")

print()
print("=== One family from Borda to Kemeny ===")
for gamma, label in (
    (kemeny_eigenvalues(3), "the Kemeny point"),
    (borda_gram_eigenvalues(3) + (0,), "the Borda point"),
    ((0, 1, 0), "pure deviation"),
):
    fam = family_apply(gamma, profile)
    print(f"  gamma={tuple(str(g) for g in gamma)} ({label}): "
          f"winners {sorted(str(x) for x in fam.winners)}")
