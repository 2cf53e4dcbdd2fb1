"""Tabloids, lexicographic ranking, and the relabeling action.

A tabloid of shape (2, 3, 1, 3) groups the numbers 1..9 into ordered rows of
those sizes; a tabloid of shape (1, 1, 1) is just a full ranking of three
candidates.  Everything in this library is a rational-valued function on
some set of tabloids, so this walkthrough starts with the index objects
themselves.
"""

from fractions import Fraction

from tabloids import (
    Composition,
    ModuleVector,
    Permutation,
    Tabloid,
    act_tabloid,
    act_vector,
    enumerate_tabloids,
    inner_product,
    lex_rank,
    project_mean,
    unrank,
)

print("=== All full rankings of three candidates, in lexicographic order ===")
for x in enumerate_tabloids((1, 1, 1)):
    print(f"  rank {lex_rank(x)}: {x}")

print()
print("=== Shapes count by multinomials ===")
shape = Composition((2, 3, 1, 3))
print(f"shape {shape.parts} indexes {shape.tabloid_count()} tabloids (9!/(2!3!1!3!))")
x = Tabloid([(2, 6), (1, 3, 5), (8,), (4, 7, 9)])
r = lex_rank(x)
print(f"the tabloid {x!r} sits at rank {r}; unrank({r}) == x: {unrank(shape, r) == x}")

print()
print("=== Permutations act by relabeling entries ===")
swap = Permutation.transposition(3, 1, 2)
x0 = Tabloid.first((1, 1, 1))
print(f"swapping labels 1 and 2 sends {x0} to {act_tabloid(swap, x0)}")

print()
print("=== Vectors on tabloids: a three-candidate vote count ===")
votes = ModuleVector((1, 2), [13, 4, 7])  # candidate i <-> the tabloid with i on top
mean_part, deviation = project_mean(votes)
print(f"(13, 4, 7) splits into {mean_part.to_list()} + {deviation.to_list()}")
print("the first part says how many voters there were; the second, who is ahead")

print()
print("=== The action preserves inner products ===")
f = ModuleVector((1, 2), [Fraction(1, 2), 3, -2])
g = ModuleVector((1, 2), [4, 0, 1])
sigma = Permutation((3, 1, 2))
lhs = inner_product(act_vector(sigma, f), act_vector(sigma, g))
print(f"<sigma.f, sigma.g> = {lhs} = <f, g> = {inner_product(f, g)}")
