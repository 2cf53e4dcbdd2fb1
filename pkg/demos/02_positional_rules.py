"""Positional voting: weight schedules, tallies, and equivalence.

A positional rule is a non-increasing schedule of points per rank; a
candidate earns the points of whatever row she occupies on each ballot.
Only the sum-zero part of the schedule affects who beats whom, which is why
all the schedules equivalent to Borda behave like Borda.
"""

from fractions import Fraction

from tabloids import ModuleVector, WeightingVector, positional_tally, weighting_equivalent
from tabloids.voting import antiplurality_weights, borda_weights, plurality_weights, tally_scores

# ballot counts per ranking, indexed lexicographically:
# 1>2>3, 1>3>2, 2>1>3, 2>3>1, 3>1>2, 3>2>1
profile = ModuleVector((1, 1, 1), [3, 2, 4, 2, 0, 3])

print("=== A one-parameter family of schedules (1, s, 0) ===")
for s in (Fraction(0), Fraction(1, 2), Fraction(1)):
    w = WeightingVector([1, s, 0])
    scores = tally_scores(w, profile).to_list()
    print(f"  s = {s}: scores = {[str(v) for v in scores]}")
print("each score is linear in s: (5+4s, 6+6s, 3+4s)")

print()
print("=== The classic schedules ===")
for name, w in (
    ("borda", borda_weights(3)),
    ("plurality", plurality_weights(3)),
    ("antiplurality", antiplurality_weights(3)),
):
    result = positional_tally(w, profile)
    print(f"  {name:13s} scores={[str(v) for v in result.scores.to_list()]} "
          f"winners={result.winner_candidates()}")

print()
print("=== Equivalent schedules give the same ordinal outcome ===")
b = borda_weights(3)
half = WeightingVector([1, Fraction(1, 2), 0])
shifted = WeightingVector([7, 5, 3], allow_unsorted=True)  # 2*borda + 3
print(f"(2,1,0) ~ (1,1/2,0): {weighting_equivalent(b, half)}")
print(f"(2,1,0) ~ (7,5,3):   {weighting_equivalent(b, shifted)}")
print(f"(2,1,0) ~ plurality: {weighting_equivalent(b, plurality_weights(3))}")

print()
print("=== Partial rankings: name your top two, then the rest ===")
# shape (2, 1): unordered top pair, then the last candidate
partial = ModuleVector((2, 1), [5, 2, 1])  # {1,2}|3, {1,3}|2, {2,3}|1
scores = tally_scores([1, 0], partial)
print(f"top-two approval scores: {[str(v) for v in scores.to_list()]}")
