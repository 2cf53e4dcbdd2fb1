"""Tabloid combinatorics and exact arithmetic on tabloid-indexed spaces.

A tabloid is an ordered set partition of {1..n} whose row sizes are given by
a composition of n.  Full rankings, single candidates, ordered pairs, and
coalitions are all tabloids of suitable shapes, so everything downstream
(ballot profiles, score vectors, pairwise tallies, game levels) is a
rational-valued function on a tabloid set.  This module supplies the index
objects, their lexicographic rank/unrank, the relabeling action of
permutations, and exact vector arithmetic.  No floating point is used
anywhere; scalars are `fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "CapacityError",
    "ShapeMismatchError",
    "InfeasibleError",
    "Composition",
    "Tabloid",
    "Permutation",
    "ModuleVector",
    "ENUMERATION_LIMIT",
    "as_composition",
    "as_fraction",
    "parse_rational",
    "format_rational",
    "enumerate_tabloids",
    "lex_rank",
    "unrank",
    "act_tabloid",
    "act_vector",
    "inner_product",
    "to_group_algebra",
    "from_group_algebra",
    "sort_rows_to_partition",
    "row_sort_bijection",
]

#: Refuse to enumerate tabloid sets larger than this (see enumerate_tabloids).
ENUMERATION_LIMIT = 10_000_000


class CapacityError(RuntimeError):
    """An index set is too large to materialize under the configured limit."""


class ShapeMismatchError(ValueError):
    """Operands live on incompatible tabloid shapes or player counts."""


class InfeasibleError(RuntimeError):
    """A requested post-processing step has no solution within its bounds."""


Rational = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce int/Fraction (or a rational string) to Fraction, rejecting floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text) -> Fraction:
    """Parse "p/q" or "p" (also bare ints) into a Fraction."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"cannot parse rational from {text!r}")
    s = text.strip()
    try:
        if "/" in s:
            p, q = s.split("/")
            den = int(q)
            if den == 0:
                raise ValueError
            return Fraction(int(p), den)
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse rational from {text!r}") from None


def format_rational(value: Fraction):
    """Render a Fraction for JSON: bare int when integral, else "p/q"."""
    f = as_fraction(value)
    if f.denominator == 1:
        return int(f)
    return f"{f.numerator}/{f.denominator}"


class Composition:
    """An ordered list of positive row sizes summing to n."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, value):
        raise AttributeError("Composition is immutable")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def sorted(self) -> "Composition":
        """The partition obtained by reordering parts non-increasingly."""
        return Composition(sorted(self.parts, reverse=True))

    def is_partition(self) -> bool:
        return all(a >= b for a, b in zip(self.parts, self.parts[1:]))

    def is_full_ranking(self) -> bool:
        return all(p == 1 for p in self.parts)

    def tabloid_count(self) -> int:
        """|X^shape| = n! / (prod of part factorials)."""
        num = factorial(self.n)
        for p in self.parts:
            num //= factorial(p)
        return num

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        return isinstance(other, Composition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Composition{self.parts}"


ShapeLike = Union[Composition, Iterable[int]]


def as_composition(shape: ShapeLike) -> Composition:
    if isinstance(shape, Composition):
        return shape
    return Composition(shape)


def full_ranking_shape(n: int) -> Composition:
    return Composition((1,) * n)


def candidate_shape(n: int) -> Composition:
    """Shape (1, n-1): one tabloid per candidate (the one on top)."""
    if n < 2:
        raise ValueError("candidate shape needs n >= 2")
    return Composition((1, n - 1))


def pair_shape(n: int) -> Composition:
    """Shape indexing ordered candidate pairs: (1,1,n-2), or (1,1) at n=2."""
    if n < 2:
        raise ValueError("pair shape needs n >= 2")
    if n == 2:
        return Composition((1, 1))
    return Composition((1, 1, n - 2))


class Tabloid:
    """An ordered set partition of {1..n}; rows are stored sorted ascending."""

    __slots__ = ("rows", "shape")

    def __init__(self, rows: Iterable[Iterable[int]]):
        canon = tuple(tuple(sorted(int(e) for e in row)) for row in rows)
        shape = Composition(len(row) for row in canon)
        n = shape.n
        seen = [e for row in canon for e in row]
        if sorted(seen) != list(range(1, n + 1)):
            raise ValueError(f"rows must partition 1..{n}: {canon}")
        object.__setattr__(self, "rows", canon)
        object.__setattr__(self, "shape", shape)

    def __setattr__(self, name, value):
        raise AttributeError("Tabloid is immutable")

    @classmethod
    def from_ranking(cls, order: Sequence[int]) -> "Tabloid":
        """Full-ranking tabloid with order[0] on top."""
        return cls([e] for e in order)

    @classmethod
    def first(cls, shape: ShapeLike) -> "Tabloid":
        """The lexicographically first tabloid: 1..n filled row by row."""
        shape = as_composition(shape)
        rows, start = [], 1
        for p in shape.parts:
            rows.append(range(start, start + p))
            start += p
        return cls(rows)

    @property
    def n(self) -> int:
        return self.shape.n

    def word(self) -> tuple:
        """Row entries concatenated top to bottom (each row ascending)."""
        return tuple(e for row in self.rows for e in row)

    def to_ranking(self) -> tuple:
        if not self.shape.is_full_ranking():
            raise ShapeMismatchError("not a full-ranking tabloid")
        return tuple(row[0] for row in self.rows)

    def row_of(self, element: int) -> int:
        """0-based index of the row containing element."""
        for i, row in enumerate(self.rows):
            if element in row:
                return i
        raise ValueError(f"{element} not in tabloid")

    def row_index(self) -> dict:
        """element -> 0-based row index, for repeated lookups."""
        return {e: i for i, row in enumerate(self.rows) for e in row}

    def __eq__(self, other):
        return isinstance(other, Tabloid) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __lt__(self, other):
        if self.shape != other.shape:
            raise ShapeMismatchError("cannot compare tabloids of different shapes")
        return self.word() < other.word()

    def __repr__(self):
        return "Tabloid[%s]" % " | ".join(" ".join(map(str, row)) for row in self.rows)

    def __str__(self):
        if self.shape.is_full_ranking():
            return ">".join(str(row[0]) for row in self.rows)
        return " | ".join(" ".join(map(str, row)) for row in self.rows)


class Permutation:
    """A bijection on {1..n}, stored as the image tuple (images[i-1] = sigma(i))."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(v) for v in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a bijection on 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(images)

    @classmethod
    def all(cls, n: int) -> Iterator["Permutation"]:
        """All n! permutations in lexicographic order of their image words."""
        for word in permutations(range(1, n + 1)):
            yield cls(word)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ShapeMismatchError("permutation sizes differ")
        return Permutation(self.images[other.images[i] - 1] for i in range(self.n))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, img in enumerate(self.images):
            inv[img - 1] = i + 1
        return Permutation(inv)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation{self.images}"


# ---------------------------------------------------------------------------
# Enumeration and lexicographic ranking


def _remaining_count(total: int, parts: Sequence[int]) -> int:
    """Number of tabloids with the given row sizes over `total` symbols."""
    num = factorial(total)
    for p in parts:
        num //= factorial(p)
    return num


def enumerate_tabloids(shape: ShapeLike, limit: int | None = None) -> list:
    """All tabloids of the shape, in lexicographic order of their words.

    The order compares the ascending-row representatives read top to bottom,
    so the first element is always the tabloid filled with 1..n row by row.
    Raises CapacityError if the count exceeds `limit` (default
    ENUMERATION_LIMIT).
    """
    shape = as_composition(shape)
    cap = ENUMERATION_LIMIT if limit is None else limit
    count = shape.tabloid_count()
    if count > cap:
        raise CapacityError(
            f"|X^{shape.parts}| = {count} exceeds enumeration limit {cap}"
        )

    out = []

    def build(avail: tuple, parts: tuple, prefix: tuple):
        if not parts:
            out.append(Tabloid(prefix))
            return
        for head in combinations(avail, parts[0]):
            head_set = set(head)
            rest = tuple(v for v in avail if v not in head_set)
            build(rest, parts[1:], prefix + (head,))

    build(tuple(range(1, shape.n + 1)), shape.parts, ())
    return out


def _combination_rank(avail: Sequence[int], subset: Sequence[int]) -> int:
    """Lex rank of `subset` among k-subsets of the sorted pool `avail`."""
    a, k = len(avail), len(subset)
    pos = {v: i for i, v in enumerate(avail)}
    rank, prev = 0, -1
    for t, s in enumerate(sorted(subset)):
        p = pos[s]
        for q in range(prev + 1, p):
            rank += comb(a - q - 1, k - t - 1)
        prev = p
    return rank


def _combination_unrank(avail: Sequence[int], k: int, rank: int) -> tuple:
    out, start = [], 0
    a = len(avail)
    for t in range(k):
        q = start
        while True:
            c = comb(a - q - 1, k - t - 1)
            if rank < c:
                break
            rank -= c
            q += 1
        out.append(avail[q])
        start = q + 1
    return tuple(out)


def lex_rank(x: Tabloid) -> int:
    """Position of x in the lexicographic listing of its shape (0-based)."""
    shape = x.shape
    avail = list(range(1, shape.n + 1))
    remaining = shape.n
    rank = 0
    for i, row in enumerate(x.rows):
        remaining -= len(row)
        completions = _remaining_count(remaining, shape.parts[i + 1 :])
        rank += _combination_rank(avail, row) * completions
        row_set = set(row)
        avail = [v for v in avail if v not in row_set]
    return rank


def unrank(shape: ShapeLike, rank: int) -> Tabloid:
    """Inverse of lex_rank for the given shape."""
    shape = as_composition(shape)
    total = shape.tabloid_count()
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range for |X^{shape.parts}| = {total}")
    avail = list(range(1, shape.n + 1))
    remaining = shape.n
    rows = []
    for i, k in enumerate(shape.parts):
        remaining -= k
        completions = _remaining_count(remaining, shape.parts[i + 1 :])
        c, rank = divmod(rank, completions)
        row = _combination_unrank(avail, k, c)
        rows.append(row)
        row_set = set(row)
        avail = [v for v in avail if v not in row_set]
    return Tabloid(rows)


# ---------------------------------------------------------------------------
# Group action


def act_tabloid(sigma: Permutation, x: Tabloid) -> Tabloid:
    """Apply sigma to every entry of x; row structure is preserved."""
    if sigma.n != x.n:
        raise ShapeMismatchError(f"permutation on {sigma.n} symbols, tabloid on {x.n}")
    return Tabloid((sigma(e) for e in row) for row in x.rows)


def sort_rows_to_partition(x: Tabloid) -> Tabloid:
    """Reorder rows by non-increasing size (stable), landing in X^(sorted shape)."""
    order = sorted(range(len(x.rows)), key=lambda i: (-len(x.rows[i]), i))
    return Tabloid(x.rows[i] for i in order)


def row_sort_bijection(shape: ShapeLike, limit: int | None = None) -> list:
    """rank-to-rank table of the row-sorting bijection X^shape -> X^(sorted shape)."""
    shape = as_composition(shape)
    return [lex_rank(sort_rows_to_partition(x)) for x in enumerate_tabloids(shape, limit)]


# ---------------------------------------------------------------------------
# Module vectors

_DENSE_NUMERATOR = 1
_DENSE_DENOMINATOR = 4  # switch to dense storage at 25% population


class ModuleVector:
    """An exact rational-valued function on the tabloids of one shape.

    Values are addressed by lexicographic rank.  Storage is a plain list when
    at least a quarter of the entries are nonzero and a dict otherwise; the
    choice is not observable through the API.  Instances are immutable and
    all arithmetic is exact.
    """

    __slots__ = ("shape", "size", "_dense", "_sparse")

    def __init__(self, shape: ShapeLike, values=None):
        shape = as_composition(shape)
        size = shape.tabloid_count()
        entries: dict = {}
        if values is None:
            pass
        elif isinstance(values, Mapping):
            for rank, val in values.items():
                r = int(rank)
                if not 0 <= r < size:
                    raise ValueError(f"rank {r} out of range for shape {shape.parts}")
                f = as_fraction(val)
                if f:
                    entries[r] = f
        else:
            seq = list(values)
            if len(seq) != size:
                raise ShapeMismatchError(
                    f"expected {size} values for shape {shape.parts}, got {len(seq)}"
                )
            for r, val in enumerate(seq):
                f = as_fraction(val)
                if f:
                    entries[r] = f
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "size", size)
        if len(entries) * _DENSE_DENOMINATOR >= size * _DENSE_NUMERATOR:
            dense = [Fraction(0)] * size
            for r, f in entries.items():
                dense[r] = f
            object.__setattr__(self, "_dense", dense)
            object.__setattr__(self, "_sparse", None)
        else:
            object.__setattr__(self, "_dense", None)
            object.__setattr__(self, "_sparse", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ModuleVector is immutable")

    # -- constructors

    @classmethod
    def zero(cls, shape: ShapeLike) -> "ModuleVector":
        return cls(shape)

    @classmethod
    def constant(cls, shape: ShapeLike, value) -> "ModuleVector":
        shape = as_composition(shape)
        f = as_fraction(value)
        return cls(shape, {r: f for r in range(shape.tabloid_count())} if f else None)

    @classmethod
    def ones(cls, shape: ShapeLike) -> "ModuleVector":
        return cls.constant(shape, 1)

    @classmethod
    def indicator(cls, x: Tabloid) -> "ModuleVector":
        return cls(x.shape, {lex_rank(x): Fraction(1)})

    # -- access

    def __getitem__(self, rank: int) -> Fraction:
        if not 0 <= rank < self.size:
            raise IndexError(rank)
        if self._dense is not None:
            return self._dense[rank]
        return self._sparse.get(rank, Fraction(0))

    def at(self, x: Tabloid) -> Fraction:
        if x.shape != self.shape:
            raise ShapeMismatchError("tabloid shape does not match vector shape")
        return self[lex_rank(x)]

    def support(self) -> list:
        """Sorted (rank, value) pairs over the nonzero entries."""
        if self._dense is not None:
            return [(r, v) for r, v in enumerate(self._dense) if v]
        return sorted(self._sparse.items())

    def to_list(self) -> list:
        if self._dense is not None:
            return list(self._dense)
        out = [Fraction(0)] * self.size
        for r, v in self._sparse.items():
            out[r] = v
        return out

    def nonzero_count(self) -> int:
        if self._dense is not None:
            return sum(1 for v in self._dense if v)
        return len(self._sparse)

    def is_zero(self) -> bool:
        return self.nonzero_count() == 0

    def sum_values(self) -> Fraction:
        if self._dense is not None:
            return sum(self._dense, Fraction(0))
        return sum(self._sparse.values(), Fraction(0))

    # -- arithmetic

    def _require_same_shape(self, other: "ModuleVector"):
        if not isinstance(other, ModuleVector):
            raise TypeError(f"expected ModuleVector, got {type(other).__name__}")
        if self.shape != other.shape:
            raise ShapeMismatchError(
                f"shapes differ: {self.shape.parts} vs {other.shape.parts}"
            )

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        self._require_same_shape(other)
        acc = dict(self.support())
        for r, v in other.support():
            s = acc.get(r, Fraction(0)) + v
            if s:
                acc[r] = s
            else:
                acc.pop(r, None)
        return ModuleVector(self.shape, acc)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector(self.shape, {r: -v for r, v in self.support()})

    def __mul__(self, scalar) -> "ModuleVector":
        c = as_fraction(scalar)
        if not c:
            return ModuleVector.zero(self.shape)
        return ModuleVector(self.shape, {r: v * c for r, v in self.support()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "ModuleVector":
        c = as_fraction(scalar)
        if not c:
            raise ZeroDivisionError("division of ModuleVector by zero")
        return self * (Fraction(1) / c)

    def inner(self, other: "ModuleVector") -> Fraction:
        self._require_same_shape(other)
        a, b = (self, other) if self.nonzero_count() <= other.nonzero_count() else (other, self)
        return sum((v * b[r] for r, v in a.support()), Fraction(0))

    def norm2(self) -> Fraction:
        """Squared Euclidean norm (kept rational; no square roots)."""
        return sum((v * v for _, v in self.support()), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.shape == other.shape and self.support() == other.support()

    def __hash__(self):
        return hash((self.shape, tuple(self.support())))

    def __repr__(self):
        entries = ", ".join(f"{r}: {v}" for r, v in self.support()[:8])
        more = "" if self.nonzero_count() <= 8 else ", ..."
        return f"ModuleVector({self.shape.parts}, {{{entries}{more}}})"

    # -- serialization

    def to_json_dict(self) -> dict:
        return {
            "shape": list(self.shape.parts),
            "values": {str(r): format_rational(v) for r, v in self.support()},
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "ModuleVector":
        try:
            shape = Composition(data["shape"])
            raw = data.get("values", {})
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad module-vector object: {exc}") from None
        values = {int(r): parse_rational(v) for r, v in raw.items()}
        return cls(shape, values)


def inner_product(f: ModuleVector, g: ModuleVector) -> Fraction:
    """Sum of pointwise products over the common tabloid set."""
    return f.inner(g)


def act_vector(sigma: Permutation, f: ModuleVector) -> ModuleVector:
    """Relabel: the result takes at sigma.x the value f took at x."""
    if sigma.n != f.shape.n:
        raise ShapeMismatchError(
            f"permutation on {sigma.n} symbols, vector on {f.shape.n}"
        )
    moved = {}
    for rank, val in f.support():
        moved[lex_rank(act_tabloid(sigma, unrank(f.shape, rank)))] = val
    return ModuleVector(f.shape, moved)


# ---------------------------------------------------------------------------
# Group-algebra reindexing for full rankings


def permutation_to_tabloid(sigma: Permutation) -> Tabloid:
    """The full ranking with sigma(i) in row i."""
    return Tabloid.from_ranking(sigma.images)


def tabloid_to_permutation(x: Tabloid) -> Permutation:
    """Inverse of permutation_to_tabloid."""
    return Permutation(x.to_ranking())


def to_group_algebra(f: ModuleVector) -> dict:
    """Reindex a full-ranking vector by the permutation moving 1..n into place.

    Returns {sigma: value} over the support; the tabloid with word w
    corresponds to the permutation i -> w[i-1].
    """
    if not f.shape.is_full_ranking():
        raise ShapeMismatchError("group-algebra form needs a full-ranking shape")
    return {
        tabloid_to_permutation(unrank(f.shape, rank)): val
        for rank, val in f.support()
    }


def from_group_algebra(n: int, values: Mapping) -> ModuleVector:
    shape = full_ranking_shape(n)
    data = {}
    for sigma, val in values.items():
        if sigma.n != n:
            raise ShapeMismatchError("permutation size differs from n")
        data[lex_rank(permutation_to_tabloid(sigma))] = as_fraction(val)
    return ModuleVector(shape, data)


@lru_cache(maxsize=64)
def cached_tabloids(shape_parts: tuple, limit: int | None = None) -> tuple:
    """Memoized enumerate_tabloids keyed by the raw parts tuple."""
    return tuple(enumerate_tabloids(Composition(shape_parts), limit))
