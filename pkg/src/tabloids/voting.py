"""Positional tallies, ranking scoring functions, and the pairs/Kemeny family.

Candidates are labeled 1..n.  A ballot profile is a nonnegative-integer
vector over full-ranking tabloids; every operator here also accepts an
arbitrary exact-rational vector on the same space.  All operators are
matrix-free appliers (cost O(n * n!) for tallies, O(n^2 * n!) for the pairs
family); explicit matrices exist only on demand for small n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Mapping, Sequence, Union

from . import linalg, specht
from .core import (
    InfeasibleError,
    ModuleVector,
    Permutation,
    ShapeLike,
    ShapeMismatchError,
    Tabloid,
    as_composition,
    as_fraction,
    act_vector,
    cached_tabloids,
    candidate_shape,
    full_ranking_shape,
    lex_rank,
    pair_shape,
    unrank,
)
from .specht import LinearMap

__all__ = [
    "Profile",
    "WeightingVector",
    "RankingScores",
    "ConstructedProfile",
    "borda_weights",
    "plurality_weights",
    "antiplurality_weights",
    "as_vector",
    "tally_scores",
    "tally_adjoint",
    "positional_tally",
    "tally_map",
    "weighting_equivalent",
    "srsf_apply",
    "kendall_tau",
    "kendall_score_vector",
    "pair_rank",
    "pair_unrank",
    "pairs_map",
    "pairs_map_adjoint",
    "pairs_operator",
    "kemeny_operator_apply",
    "kemeny_operator",
    "kemeny_apply",
    "family_apply",
    "borda_srsf_apply",
    "construct_profile",
    "profile_from_json_dict",
    "profile_from_csv",
    "weighting_from_json_dict",
]


class Profile:
    """Ballot counts per tabloid: nonnegative integers over one shape.

    Arbitrary rational vectors are fine for every operator in this module;
    this wrapper is the validated "real election data" case.
    """

    __slots__ = ("counts",)

    def __init__(self, counts: ModuleVector):
        for rank, val in counts.support():
            if val.denominator != 1 or val < 0:
                raise ValueError(
                    f"profile entry at rank {rank} is {val}; ballot counts "
                    "must be nonnegative integers (use a raw ModuleVector for "
                    "general functions)"
                )
        object.__setattr__(self, "counts", counts)

    def __setattr__(self, name, value):
        raise AttributeError("Profile is immutable")

    @classmethod
    def from_ballots(cls, shape: ShapeLike, ballots: Iterable) -> "Profile":
        """Build from (tabloid-or-rows, count) pairs; repeated ballots add up."""
        shape = as_composition(shape)
        acc: dict = {}
        for entry, count in ballots:
            x = entry if isinstance(entry, Tabloid) else Tabloid(entry)
            if x.shape != shape:
                raise ShapeMismatchError(
                    f"ballot {x} has shape {x.shape.parts}, expected {shape.parts}"
                )
            acc[lex_rank(x)] = acc.get(lex_rank(x), 0) + int(count)
        return cls(ModuleVector(shape, acc))

    @property
    def shape(self):
        return self.counts.shape

    @property
    def n(self) -> int:
        return self.counts.shape.n

    @property
    def voter_total(self) -> Fraction:
        return self.counts.sum_values()

    def __eq__(self, other):
        return isinstance(other, Profile) and self.counts == other.counts

    def __repr__(self):
        return f"Profile({self.counts!r})"


VectorLike = Union[ModuleVector, Profile]


def as_vector(f: VectorLike) -> ModuleVector:
    if isinstance(f, Profile):
        return f.counts
    if isinstance(f, ModuleVector):
        return f
    raise TypeError(f"expected ModuleVector or Profile, got {type(f).__name__}")


class WeightingVector:
    """Per-rank point schedule w_1 >= ... >= w_n defining a positional rule.

    Monotonicity is required by default; pass allow_unsorted=True to work
    with arbitrary score schedules.
    """

    __slots__ = ("vector",)

    def __init__(self, weights: Iterable, allow_unsorted: bool = False):
        ws = tuple(as_fraction(w) for w in weights)
        if len(ws) < 2:
            raise ValueError("need at least two weights")
        if not allow_unsorted:
            if any(a < b for a, b in zip(ws, ws[1:])):
                raise ValueError(
                    f"weights must be non-increasing: {ws} "
                    "(allow_unsorted=True overrides)"
                )
        object.__setattr__(self, "vector", ModuleVector(candidate_shape(len(ws)), ws))

    def __setattr__(self, name, value):
        raise AttributeError("WeightingVector is immutable")

    @property
    def n(self) -> int:
        return self.vector.shape.n

    @property
    def weights(self) -> tuple:
        return tuple(self.vector.to_list())

    def hat(self) -> ModuleVector:
        """The sum-zero part; it alone determines ordinal outcomes."""
        return specht.project_mean(self.vector)[1]

    def __eq__(self, other):
        return isinstance(other, WeightingVector) and self.vector == other.vector

    def __repr__(self):
        return f"WeightingVector({[str(w) for w in self.weights]})"


def borda_weights(n: int) -> WeightingVector:
    return WeightingVector(range(n - 1, -1, -1))


def plurality_weights(n: int) -> WeightingVector:
    return WeightingVector([1] + [0] * (n - 1))


def antiplurality_weights(n: int) -> WeightingVector:
    return WeightingVector([1] * (n - 1) + [0])


class RankingScores:
    """Scores plus the derived winner set and tie-aware ordinal tiers."""

    __slots__ = ("scores", "winners", "tiers")

    def __init__(self, scores: ModuleVector):
        dense = scores.to_list()
        by_value: dict = {}
        for r, v in enumerate(dense):
            by_value.setdefault(v, []).append(r)
        tiers = tuple(
            tuple(unrank(scores.shape, r) for r in by_value[v])
            for v in sorted(by_value, reverse=True)
        )
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "tiers", tiers)
        object.__setattr__(self, "winners", frozenset(tiers[0]) if tiers else frozenset())

    def __setattr__(self, name, value):
        raise AttributeError("RankingScores is immutable")

    def tier_of(self, x: Tabloid) -> int:
        for i, tier in enumerate(self.tiers):
            if x in tier:
                return i
        raise ValueError(f"{x} not indexed by these scores")

    def ordinal_signature(self) -> tuple:
        """Tier index per lexicographic rank; equal iff ordinal outcomes agree."""
        sig = [0] * self.scores.size
        for i, tier in enumerate(self.tiers):
            for x in tier:
                sig[lex_rank(x)] = i
        return tuple(sig)

    def winner_candidates(self) -> tuple:
        """Winning candidate labels, for per-candidate score shapes."""
        parts = self.scores.shape.parts
        if len(parts) != 2 or parts[0] != 1:
            raise ShapeMismatchError("winner_candidates needs shape (1, n-1)")
        return tuple(sorted(x.rows[0][0] for x in self.winners))

    def __repr__(self):
        return f"RankingScores(winners={sorted(map(str, self.winners))})"


# ---------------------------------------------------------------------------
# Positional tallies


def _row_weights(w, shape) -> list:
    """Resolve the per-row weight list for a tally over the given shape."""
    m = len(shape.parts)
    if isinstance(w, WeightingVector):
        if w.n != shape.n or m != shape.n:
            if m != shape.n:
                raise ShapeMismatchError(
                    f"a WeightingVector scores full rankings; shape {shape.parts} "
                    f"has {m} rows, pass a {m}-entry weight sequence instead"
                )
            raise ShapeMismatchError(
                f"weighting vector is for n={w.n}, data has n={shape.n}"
            )
        return list(w.weights)
    ws = [as_fraction(v) for v in w]
    if len(ws) != m:
        raise ShapeMismatchError(
            f"need one weight per row: {m} rows vs {len(ws)} weights"
        )
    return ws


def tally_scores(w, f: VectorLike) -> ModuleVector:
    """Per-candidate points: candidate i earns f(x) * w_(row of i in x)."""
    vec = as_vector(f)
    shape = vec.shape
    n = shape.n
    weights = _row_weights(w, shape)
    scores = [Fraction(0)] * n
    for rank, val in vec.support():
        x = unrank(shape, rank)
        for row_idx, row in enumerate(x.rows):
            wj = weights[row_idx]
            if wj:
                for e in row:
                    scores[e - 1] += val * wj
    return ModuleVector(candidate_shape(n), scores)


def tally_adjoint(w, scores: ModuleVector, shape: ShapeLike | None = None) -> ModuleVector:
    """Adjoint of the tally: spread per-candidate values back over tabloids."""
    n = scores.shape.n
    shape = full_ranking_shape(n) if shape is None else as_composition(shape)
    if shape.n != n:
        raise ShapeMismatchError(f"shape {shape.parts} does not match n={n}")
    weights = _row_weights(w, shape)
    h = scores.to_list()
    out = []
    for x in cached_tabloids(shape.parts):
        acc = Fraction(0)
        for row_idx, row in enumerate(x.rows):
            wj = weights[row_idx]
            if wj:
                for e in row:
                    acc += wj * h[e - 1]
        out.append(acc)
    return ModuleVector(shape, out)


def positional_tally(w, f: VectorLike) -> RankingScores:
    """Run the positional rule given by w; winners are the argmax candidates."""
    return RankingScores(tally_scores(w, f))


def tally_map(w, shape: ShapeLike | None = None) -> LinearMap:
    """The tally as a LinearMap (with adjoint), for effective-space work."""
    if isinstance(w, WeightingVector):
        n = w.n
        dom = full_ranking_shape(n) if shape is None else as_composition(shape)
    else:
        if shape is None:
            raise ValueError("shape is required when w is a raw weight sequence")
        dom = as_composition(shape)
        n = dom.n
    weights = _row_weights(w, dom)
    return LinearMap(
        dom,
        candidate_shape(n),
        lambda f: tally_scores(weights, f),
        lambda s: tally_adjoint(weights, s, dom),
        name="tally",
    )


def weighting_equivalent(w1: WeightingVector, w2: WeightingVector) -> bool:
    """True iff the two schedules give identical ordinal outcomes on all data.

    Equivalence means the sum-zero parts are positive multiples of each
    other (shifting every weight or rescaling by a positive factor never
    changes who beats whom).
    """
    if w1.n != w2.n:
        raise ShapeMismatchError("weighting vectors have different n")
    h1, h2 = w1.hat(), w2.hat()
    if h1.is_zero() and h2.is_zero():
        return True
    if h1.is_zero() or h2.is_zero():
        return False
    r0, v0 = h1.support()[0]
    alpha = h2[r0] / v0
    return alpha > 0 and h2 == h1 * alpha


# ---------------------------------------------------------------------------
# Simple ranking scoring functions


def srsf_apply(z: ModuleVector, f: VectorLike) -> RankingScores:
    """Score every full ranking by the relabeled copies of the template z.

    The ballot at ranking x contributes f(x) times z relabeled by the
    permutation carrying the reference ranking 1..n onto x.
    """
    vec = as_vector(f)
    shape = vec.shape
    if not shape.is_full_ranking() or not z.shape.is_full_ranking():
        raise ShapeMismatchError("ranking scoring needs full-ranking shapes")
    if z.shape != shape:
        raise ShapeMismatchError("template and data sizes differ")
    total = ModuleVector.zero(shape)
    for rank, val in vec.support():
        sigma = Permutation(unrank(shape, rank).to_ranking())
        total = total + act_vector(sigma, z) * val
    return RankingScores(total)


def kendall_tau(x: Tabloid, y: Tabloid) -> int:
    """Number of candidate pairs the two full rankings order oppositely."""
    if not x.shape.is_full_ranking() or x.shape != y.shape:
        raise ShapeMismatchError("Kendall tau is defined on full rankings of equal n")
    rx, ry = x.row_index(), y.row_index()
    n = x.n
    return sum(
        1
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if (rx[i] < rx[j]) != (ry[i] < ry[j])
    )


def kendall_score_vector(n: int) -> ModuleVector:
    """Template z(x) = (max distance) - (Kendall tau to the reference ranking).

    Feeding this to srsf_apply reproduces the Kemeny rule.
    """
    shape = full_ranking_shape(n)
    x0 = Tabloid.first(shape)
    top = comb(n, 2)
    return ModuleVector(
        shape, [top - kendall_tau(x, x0) for x in cached_tabloids(shape.parts)]
    )


# ---------------------------------------------------------------------------
# Pairs map and the Kemeny rule


def pair_rank(i: int, j: int, n: int) -> int:
    """Lexicographic rank of the ordered-pair tabloid (i on top, j second)."""
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"bad candidate pair ({i}, {j}) for n={n}")
    return (i - 1) * (n - 1) + (j - 1 if j < i else j - 2)


def pair_unrank(rank: int, n: int) -> tuple:
    i, rem = divmod(rank, n - 1)
    j = rem if rem < i else rem + 1
    return (i + 1, j + 1)


def pairs_map(f: VectorLike) -> ModuleVector:
    """Catalogue, per ordered pair (i, j), the weight of rankings with i over j."""
    vec = as_vector(f)
    shape = vec.shape
    if not shape.is_full_ranking():
        raise ShapeMismatchError("pairs map is defined on full rankings")
    n = shape.n
    if n < 2:
        raise ValueError("pairs map needs n >= 2")
    out: dict = {}
    for rank, val in vec.support():
        word = unrank(shape, rank).to_ranking()
        for a in range(n):
            for b in range(a + 1, n):
                pr = pair_rank(word[a], word[b], n)
                out[pr] = out.get(pr, Fraction(0)) + val
    return ModuleVector(pair_shape(n), out)


def pairs_map_adjoint(g: ModuleVector) -> ModuleVector:
    """Adjoint of the pairs map: a ranking collects its pairs' values."""
    n = g.shape.n
    if g.shape != pair_shape(n):
        raise ShapeMismatchError(
            f"expected pair shape {pair_shape(n).parts}, got {g.shape.parts}"
        )
    dense = g.to_list()
    shape = full_ranking_shape(n)
    out = []
    for x in cached_tabloids(shape.parts):
        word = x.to_ranking()
        acc = Fraction(0)
        for a in range(n):
            for b in range(a + 1, n):
                acc += dense[pair_rank(word[a], word[b], n)]
        out.append(acc)
    return ModuleVector(shape, out)


def pairs_operator(n: int) -> LinearMap:
    return LinearMap(
        full_ranking_shape(n), pair_shape(n), pairs_map, pairs_map_adjoint,
        name="pairs",
    )


def kemeny_operator_apply(f: VectorLike) -> ModuleVector:
    """Pairwise-agreement scores: the pairs map composed with its adjoint."""
    return pairs_map_adjoint(pairs_map(f))


def kemeny_operator(n: int) -> LinearMap:
    shape = full_ranking_shape(n)
    return LinearMap(shape, shape, kemeny_operator_apply, kemeny_operator_apply,
                     name="kemeny")


def kemeny_apply(f: VectorLike) -> RankingScores:
    """Kemeny rule: winning rankings maximize total pairwise agreement.

    Equivalently they minimize the summed Kendall tau distance to the
    ballots.
    """
    return RankingScores(kemeny_operator_apply(f))


def family_apply(gamma: Sequence, f: VectorLike) -> RankingScores:
    """The three-parameter spectral family containing Borda and Kemeny.

    gamma = (g0, g1, g2) weights the constant, deviation, and pairwise
    eigencomponents.  Ordinal output depends only on g2/g1 when g1 > 0.
    """
    vec = as_vector(f)
    n = vec.shape.n
    if n < 3:
        raise ValueError("the spectral family needs n >= 3")
    g0, g1, g2 = (as_fraction(g) for g in gamma)
    t0, t1, t2 = specht.kemeny_eigenprojections(n)
    return RankingScores(t0(vec) * g0 + t1(vec) * g1 + t2(vec) * g2)


def borda_srsf_apply(w, f: VectorLike) -> RankingScores:
    """Lift a positional rule to rankings via the Borda adjoint.

    Winning rankings list candidates in descending w-score order, so the top
    candidate of any winning ranking is a w-tally winner.
    """
    vec = as_vector(f)
    n = vec.shape.n
    scores = tally_scores(w, vec)
    return RankingScores(tally_adjoint(borda_weights(n), scores))


# ---------------------------------------------------------------------------
# Profile construction (joint tally inversion)


@dataclass(frozen=True)
class ConstructedProfile:
    """A solution of a joint tally system, with the affine solution dimension.

    When integer post-processing was requested, `scale` and `shift` record
    the positive multiple and the all-ones offset applied to the raw
    solution; tallies of the result equal scale times the requested targets.
    """

    solution: ModuleVector
    affine_dimension: int
    scale: int = 1
    shift: int = 0


def _as_hat(w) -> ModuleVector:
    if isinstance(w, WeightingVector):
        return w.hat()
    if isinstance(w, ModuleVector):
        parts = w.shape.parts
        if len(parts) != 2 or parts[0] != 1:
            raise ShapeMismatchError(f"weighting hat must live on (1, n-1), got {parts}")
        if w.sum_values() != 0:
            raise ValueError("weighting hat must sum to zero (pass a WeightingVector to hat it)")
        return w
    raise TypeError(f"expected WeightingVector or ModuleVector, got {type(w).__name__}")


def construct_profile(ws: Sequence, targets: Sequence[ModuleVector], *,
                      integer_profile: bool = False,
                      shift_bound: int | None = None) -> ConstructedProfile:
    """Find one exact f whose tally under every given weighting hat hits its target.

    `ws` are sum-zero weighting hats (WeightingVectors are hatted
    automatically) and must be linearly independent; `targets` are sum-zero
    per-candidate vectors.  Solutions always exist and form an affine space
    whose dimension is returned; the particular solution is the one with
    free coordinates (in lexicographic rank order) pinned to zero.

    With integer_profile=True the solution is rescaled by a positive integer
    and shifted by a multiple of the all-ones vector (which no sum-zero
    tally can see) until it is a nonnegative-integer profile; an
    InfeasibleError is raised if the needed shift exceeds shift_bound.
    """
    hats = [_as_hat(w) for w in ws]
    if not hats:
        raise ValueError("need at least one weighting vector")
    n = hats[0].shape.n
    if any(h.shape.n != n for h in hats):
        raise ShapeMismatchError("weighting vectors disagree on n")
    if len(targets) != len(hats):
        raise ValueError(f"{len(hats)} weighting vectors but {len(targets)} targets")
    for r in targets:
        if r.shape != candidate_shape(n):
            raise ShapeMismatchError(
                f"target must live on {candidate_shape(n).parts}, got {r.shape.parts}"
            )
        if r.sum_values() != 0:
            raise ValueError("targets must sum to zero")
    if linalg.rank([h.to_list() for h in hats]) != len(hats):
        raise ValueError("weighting vectors must be linearly independent")

    shape = full_ranking_shape(n)
    tabloids = cached_tabloids(shape.parts)
    rows = []
    rhs = []
    for h, r in zip(hats, targets):
        weights = h.to_list()
        dense_target = r.to_list()
        for i in range(1, n + 1):
            rows.append([weights[x.row_of(i)] for x in tabloids])
            rhs.append(dense_target[i - 1])
    solution, nullity = linalg.solve_linear(rows, rhs)
    if solution is None:
        raise RuntimeError("joint tally system unexpectedly inconsistent")
    f = ModuleVector(shape, solution)
    for h, r in zip(hats, targets):
        if tally_scores(h.to_list(), f) != r:
            raise RuntimeError("constructed profile failed verification")

    scale, shift = 1, 0
    if integer_profile:
        scale = lcm(*(v.denominator for _, v in f.support())) if f.nonzero_count() else 1
        f = f * scale
        low = min(f.to_list(), default=Fraction(0))
        if low < 0:
            shift = int(-low)
            if shift_bound is not None and shift > shift_bound:
                raise InfeasibleError(
                    f"nonnegative representative needs shift {shift} > bound {shift_bound}"
                )
            f = f + ModuleVector.constant(shape, shift)
    return ConstructedProfile(f, nullity, scale, shift)


# ---------------------------------------------------------------------------
# File formats


def profile_from_json_dict(data: Mapping) -> Profile:
    """Ballot file: {"n": 3, "shape": [1,1,1], "ballots": [{"ranking": [[1],[2],[3]], "count": 2}, ...]}."""
    try:
        n = int(data["n"])
        shape = as_composition(data.get("shape", (1,) * n))
        ballots = data["ballots"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad ballot file: {exc}") from None
    if shape.n != n:
        raise ShapeMismatchError(f"shape {shape.parts} does not sum to n={n}")
    pairs = []
    for idx, entry in enumerate(ballots):
        try:
            ranking = entry["ranking"]
            count = int(entry.get("count", 1))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad ballot #{idx}: {exc}") from None
        if count < 0:
            raise ValueError(f"bad ballot #{idx}: negative count {count}")
        pairs.append((Tabloid(ranking), count))
    return Profile.from_ballots(shape, pairs)


def profile_from_csv(text: str, n: int | None = None) -> Profile:
    """Ballot lines "1>2>3,count"; full rankings only, blank lines skipped."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            ranking_part, count_part = line.rsplit(",", 1)
            order = [int(v) for v in ranking_part.split(">")]
            count = int(count_part)
        except ValueError:
            raise ValueError(f"bad ballot line {lineno}: {raw!r}") from None
        if count < 0:
            raise ValueError(f"bad ballot line {lineno}: negative count")
        pairs.append((Tabloid.from_ranking(order), count))
    if not pairs:
        if n is None:
            raise ValueError("empty ballot file and no n given")
        return Profile(ModuleVector.zero(full_ranking_shape(n)))
    size = pairs[0][0].n
    if n is not None and n != size:
        raise ShapeMismatchError(f"ballots have n={size}, expected n={n}")
    return Profile.from_ballots(full_ranking_shape(size), pairs)


def weighting_from_json_dict(data: Mapping, allow_unsorted: bool = False) -> WeightingVector:
    """Weighting file: {"weights": ["1", "1/2", "0"]}."""
    try:
        raw = data["weights"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad weighting file: {exc}") from None
    return WeightingVector([as_fraction(v) for v in raw], allow_unsorted=allow_unsorted)
