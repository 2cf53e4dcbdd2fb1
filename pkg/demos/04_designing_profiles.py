"""Designing elections: profiles that make different rules disagree on demand.

Non-equivalent schedules read disjoint slices of the ballot space, so their
outcomes can be prescribed independently.  Here we solve for a profile on
which plurality says candidate 1 wins while Borda says candidate 3 wins,
then rescale it into honest nonnegative ballot counts.
"""

from tabloids import ModuleVector, construct_profile, positional_tally
from tabloids.specht import effective_space, subspaces_equal, subspaces_intersect_trivially
from tabloids.voting import Profile, borda_weights, plurality_weights, tally_map

n = 3
plur = plurality_weights(n)
borda = borda_weights(n)

print("=== The two rules pull from disjoint deviation spaces ===")
e_plur = effective_space(tally_map(plur.hat().to_list(), (1,) * n))
e_borda = effective_space(tally_map(borda.hat().to_list(), (1,) * n))
print(f"dim effective(plurality-hat) = {len(e_plur)}")
print(f"dim effective(borda-hat)     = {len(e_borda)}")
print(f"equal: {subspaces_equal(e_plur, e_borda)}; "
      f"trivial intersection: {subspaces_intersect_trivially(e_plur, e_borda)}")

print()
print("=== Prescribe opposite outcomes ===")
favors_1 = ModuleVector((1, 2), [1, 0, -1])
favors_3 = ModuleVector((1, 2), [-1, 0, 1])
built = construct_profile([plur, borda], [favors_1, favors_3], integer_profile=True)
profile = Profile(built.solution)
print(f"ballot counts (lex order): {[str(v) for v in built.solution.to_list()]}")
print(f"(solution space has affine dimension {built.affine_dimension}; "
      f"scaled by {built.scale}, shifted by {built.shift})")

p_result = positional_tally(plur, profile)
b_result = positional_tally(borda, profile)
print(f"plurality scores {[str(v) for v in p_result.scores.to_list()]} "
      f"-> winners {p_result.winner_candidates()}")
print(f"borda     scores {[str(v) for v in b_result.scores.to_list()]} "
      f"-> winners {b_result.winner_candidates()}")
