"""Cooperative games: payoffs, properties, and what no solution concept sees.

Linear symmetric solution concepts are linear combinations of two families
of basis maps (per coalition size: an equal share of the average worth, and
a normalized membership deviation).  Their coefficient coordinates make
efficiency, marginality, and self-duality one-line checks, and expose a
kernel of game data that every such concept ignores.
"""

from fractions import Fraction

from tabloids.games import (
    Game,
    MarginalWeights,
    SolutionCoefficients,
    decompose_game,
    dual_game,
    efficiency_check,
    fit_marginal,
    marginal_apply,
    self_dual_check,
    shapley_coefficients,
    shapley_value,
    solution_apply,
)

print("=== The glove game: player 1 owns a left glove, 2 and 3 own rights ===")
glove = Game.from_coalitions(3, {(1, 2): 1, (1, 3): 1, (1, 2, 3): 1})
print(f"Shapley payoffs: {[str(v) for v in shapley_value(glove).to_list()]}")

print()
print("=== Three equivalent descriptions of the Shapley value ===")
coeffs = shapley_coefficients(3)
weights = MarginalWeights((Fraction(1, 3), Fraction(1, 6), Fraction(1, 3)))
print(f"coefficients: c0={coeffs.to_json_dict()['c0']} c1={coeffs.to_json_dict()['c1']}")
print(f"size weights: {weights.to_json_dict()['m']}")
print(f"coefficient route: {[str(v) for v in solution_apply(coeffs, glove).to_list()]}")
print(f"marginal route:    {[str(v) for v in marginal_apply(weights, glove).to_list()]}")

print()
print("=== Property verdicts from coordinates alone ===")
print(f"efficient:  {efficiency_check(coeffs)}")
fitted, exact = fit_marginal(coeffs)
print(f"marginal:   {exact} with size weights {fitted.to_json_dict()['m']}")
print(f"self-dual:  {self_dual_check(coeffs)}")
lopsided = MarginalWeights((1, 0, 0))
print(f"a lopsided marginal value is self-dual: {self_dual_check(lopsided)}")

print()
print("=== Duality swaps what a coalition has and what it withholds ===")
v = Game(2, {0b01: 1, 0b10: 3, 0b11: 6})
w = dual_game(v)
print(f"v  on ({{1}},{{2}},{{1,2}}): {[str(v.value(m)) for m in (1, 2, 3)]}")
print(f"*v on ({{1}},{{2}},{{1,2}}): {[str(w.value(m)) for m in (1, 2, 3)]}")

print()
print("=== The kernel: game data invisible to every linear symmetric concept ===")
# worths that reward the pairing {1,2}/{3,4} and punish {1,3}/{2,4}: no
# per-player membership pattern can express this tension
spread = Game(4, {0b0011: 1, 0b1100: 1, 0b0101: -1, 0b1010: -1})
decomposition = decompose_game(spread)
level2 = decomposition[2]
print(f"level-2 slice:      {[str(x) for x in (level2.average + level2.deviation + level2.kernel).to_list()]}")
print(f"  average part:     {[str(x) for x in level2.average.to_list()]}")
print(f"  deviation part:   {[str(x) for x in level2.deviation.to_list()]}")
print(f"  kernel part:      {[str(x) for x in level2.kernel.to_list()]}")
kernel_game = Game.from_level_vectors(4, {k: d.kernel for k, d in decomposition.items()})
probe = SolutionCoefficients((2, -1, 3, 0), (1, Fraction(1, 2), -2))
print(f"an arbitrary concept on the kernel part: "
      f"{[str(x) for x in solution_apply(probe, kernel_game).to_list()]}")
