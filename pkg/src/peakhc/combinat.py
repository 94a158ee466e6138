"""Compositions, descent/peak/valley sets, and symmetric-group utilities.

Conventions used throughout the package:

* A composition of n is a tuple of positive integers summing to n; its
  descent set is the set of proper partial sums, a subset of [n-1] = {1..n-1}.
  The map composition -> descent set is a bijection onto subsets of [n-1].
* A peak set in [n] is a subset of [2, n-1] containing no two consecutive
  integers.
* Permutations are 1-based one-line words; ``w * v`` composes as functions
  (apply v first).  Left multiplication by the transposition s_i swaps the
  values i, i+1; right multiplication swaps positions i, i+1.

Canonical enumeration orders (fixed so downstream matrices are reproducible):
compositions of n and peak sets in [n] are listed by increasing bitmask of
the underlying subset (bit i-1 encodes membership of i); permutation lists
are lexicographic in one-line notation unless stated otherwise.

Doctest samples:

>>> [c.parts for c in compositions_of(3)]
[(3,), (1, 2), (2, 1), (1, 1, 1)]
>>> Composition((1, 2, 1)).descent_set().elements == frozenset({1, 3})
True
>>> sorted(Composition((2, 2)).peak_set().elements), sorted(Composition((2, 2)).valley_set())
([2], [1, 3])
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "ResourceLimitError",
    "Composition",
    "DescentSet",
    "PeakSet",
    "Permutation",
    "as_composition",
    "compositions_of",
    "composition_from_descents",
    "counterparts",
    "peak_and_valley",
    "peak_sets_in",
    "descent_class",
    "perm_stats",
    "symmetric_difference_shift",
    "min_coset_reps",
    "refines",
    "bruhat_leq",
    "partitions_of",
    "strict_partitions_of",
    "odd_partitions_of",
    "MAX_ENUM_N",
]

MAX_ENUM_N = 10  # permutation-level enumeration guard


class ResourceLimitError(RuntimeError):
    """Raised when a request exceeds the configured desk-scale guards."""


# ---------------------------------------------------------------------------
# compositions and their statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Composition:
    """Ordered tuple of positive integers; the empty composition is the unit."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError("composition parts must be positive: %r" % (parts,))
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def descent_set(self) -> "DescentSet":
        total, out = 0, []
        for p in self.parts[:-1]:
            total += p
            out.append(total)
        return DescentSet(self.n, frozenset(out))

    def peak_set(self) -> "PeakSet":
        n, d = self.n, self.descent_set().elements
        return PeakSet(n, frozenset(x for x in range(2, n) if x - 1 not in d and x in d))

    def valley_set(self) -> frozenset:
        n, d = self.n, self.descent_set().elements
        v = {x for x in range(2, n + 1) if x - 1 in d and x not in d}
        if 1 not in d:
            v.add(1)
        return frozenset(v)

    def reverse(self) -> "Composition":
        return Composition(self.parts[::-1])

    def complement(self) -> "Composition":
        d = self.descent_set()
        return composition_from_descents(
            DescentSet(self.n, frozenset(range(1, self.n)) - d.elements)
        )

    def conjugate(self) -> "Composition":
        return self.reverse().complement()

    def concat(self, other: "Composition") -> "Composition":
        return Composition(self.parts + other.parts)

    def to_partition(self) -> tuple:
        return tuple(sorted(self.parts, reverse=True))

    def __str__(self):
        return ",".join(str(p) for p in self.parts)

    def __repr__(self):
        return "Composition(%s)" % (", ".join(str(p) for p in self.parts))

    def __lt__(self, other):
        # canonical order: degree, then descent-set bitmask
        return (self.n, self.descent_set().bitmask()) < (
            other.n,
            other.descent_set().bitmask(),
        )


def as_composition(alpha) -> Composition:
    if isinstance(alpha, Composition):
        return alpha
    return Composition(tuple(alpha))


@dataclass(frozen=True)
class DescentSet:
    """A subset of [n-1] together with its ambient size n."""

    n: int
    elements: frozenset

    def __post_init__(self):
        elems = frozenset(int(x) for x in self.elements)
        if any(not 1 <= x <= self.n - 1 for x in elems):
            raise ValueError("descent set %r not inside [%d-1]" % (sorted(elems), self.n))
        object.__setattr__(self, "elements", elems)

    def bitmask(self) -> int:
        return sum(1 << (x - 1) for x in self.elements)

    def __repr__(self):
        return "DescentSet(%d, %s)" % (self.n, sorted(self.elements))


@dataclass(frozen=True)
class PeakSet:
    """A sparse subset of [2, n-1]: no two consecutive members."""

    n: int
    elements: frozenset

    def __post_init__(self):
        elems = frozenset(int(x) for x in self.elements)
        if any(not 2 <= x <= self.n - 1 for x in elems):
            raise ValueError("peak set %r not inside [2, %d-1]" % (sorted(elems), self.n))
        if any(x - 1 in elems for x in elems):
            raise ValueError("peak set %r contains consecutive entries" % sorted(elems))
        object.__setattr__(self, "elements", elems)

    def bitmask(self) -> int:
        return sum(1 << (x - 1) for x in self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "PeakSet(%d, %s)" % (self.n, sorted(self.elements))

    def __lt__(self, other):
        return (self.n, self.bitmask()) < (other.n, other.bitmask())


def compositions_of(n: int) -> list:
    """All 2^(n-1) compositions of n >= 1, ordered by descent-set bitmask."""
    if n < 1:
        raise ValueError("compositions_of needs n >= 1; degree 0 is the unit ()")
    return list(_compositions_of(n))


@lru_cache(maxsize=None)
def _compositions_of(n: int) -> tuple:
    out = []
    for mask in range(1 << (n - 1)):
        d = [i + 1 for i in range(n - 1) if mask >> i & 1]
        out.append(composition_from_descents(DescentSet(n, frozenset(d))))
    return tuple(out)


def composition_from_descents(d: DescentSet) -> Composition:
    if d.n == 0:
        return Composition(())
    prev, parts = 0, []
    for x in sorted(d.elements) + [d.n]:
        parts.append(x - prev)
        prev = x
    return Composition(tuple(parts))


def counterparts(alpha) -> tuple:
    """(reverse, complement, conjugate) of a composition."""
    a = as_composition(alpha)
    return a.reverse(), a.complement(), a.conjugate()


def peak_and_valley(alpha) -> tuple:
    """(peak set, valley set) of a composition; |valley| = |peak| + 1."""
    a = as_composition(alpha)
    return a.peak_set(), a.valley_set()


def peak_sets_in(n: int) -> list:
    """All peak sets in [n], ordered by bitmask; counts follow Fibonacci."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_peak_sets_in(n))


@lru_cache(maxsize=None)
def _peak_sets_in(n: int) -> tuple:
    candidates = []
    universe = list(range(2, n))
    for r in range(len(universe) + 1):
        for combo in itertools.combinations(universe, r):
            if all(combo[i + 1] - combo[i] >= 2 for i in range(len(combo) - 1)):
                candidates.append(PeakSet(n, frozenset(combo)))
    candidates.sort(key=lambda p: p.bitmask())
    return tuple(candidates)


def symmetric_difference_shift(d: DescentSet) -> frozenset:
    """D symmetric-difference (D+1), a subset of [n]."""
    shifted = frozenset(x + 1 for x in d.elements)
    return (d.elements - shifted) | (shifted - d.elements)


def refines(alpha, beta) -> bool:
    """alpha <= beta in refinement order: D(beta) is a subset of D(alpha)."""
    a, b = as_composition(alpha), as_composition(beta)
    if a.n != b.n:
        return False
    return b.descent_set().elements <= a.descent_set().elements


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

# raw tuple helpers (hot paths work on plain one-line tuples)


def word_inverse(w: tuple) -> tuple:
    inv = [0] * len(w)
    for pos, val in enumerate(w):
        inv[val - 1] = pos + 1
    return tuple(inv)


def word_compose(u: tuple, v: tuple) -> tuple:
    """(u o v)(j) = u(v(j))."""
    return tuple(u[x - 1] for x in v)


def word_descents(w: tuple) -> frozenset:
    return frozenset(i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1])


def word_length(w: tuple) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def swap_values(i: int, w: tuple) -> tuple:
    """Left multiplication by s_i: exchange the values i and i+1."""
    return tuple(i + 1 if x == i else i if x == i + 1 else x for x in w)


def swap_positions(i: int, w: tuple) -> tuple:
    """Right multiplication by s_i: exchange positions i and i+1."""
    lst = list(w)
    lst[i - 1], lst[i] = lst[i], lst[i - 1]
    return tuple(lst)


def word_reduced(w: tuple) -> tuple:
    """Reduced word by repeatedly stripping the smallest descent.

    If the result is (j_1, ..., j_s) then w = s_{j_1} ... s_{j_s} and s equals
    the inversion number.  Any other reduced word yields the same T_w.
    """
    letters = []
    cur = w
    while True:
        d = word_descents(cur)
        if not d:
            break
        i = min(d)
        cur = swap_positions(i, cur)
        letters.append(i)
    return tuple(reversed(letters))


@dataclass(frozen=True)
class Permutation:
    """A permutation of [n] in one-line notation.

    >>> w = Permutation((2, 3, 1))
    >>> sorted(w.descent_set().elements), w.length()
    ([2], 2)
    >>> (w * w.inverse()).is_identity()
    True
    """

    word: tuple

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError("%r is not a permutation word" % (word,))
        object.__setattr__(self, "word", word)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def transposition(cls, i: int, n: int) -> "Permutation":
        return cls(swap_positions(i, tuple(range(1, n + 1))))

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, j: int) -> int:
        return self.word[j - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(word_compose(self.word, other.word))

    def inverse(self) -> "Permutation":
        return Permutation(word_inverse(self.word))

    def length(self) -> int:
        return word_length(self.word)

    def is_identity(self) -> bool:
        return self.word == tuple(range(1, self.n + 1))

    def descent_set(self) -> DescentSet:
        return DescentSet(self.n, word_descents(self.word))

    def descent_composition(self) -> Composition:
        return composition_from_descents(self.descent_set())

    def peak_set(self) -> PeakSet:
        w = self.word
        return PeakSet(
            self.n,
            frozenset(
                i for i in range(2, self.n) if w[i - 2] < w[i - 1] > w[i]
            ),
        )

    def reduced_word(self) -> tuple:
        return word_reduced(self.word)

    def image_of_set(self, s) -> frozenset:
        return frozenset(self.word[x - 1] for x in s)

    def __str__(self):
        if self.n <= 9:
            return "".join(str(x) for x in self.word)
        return ",".join(str(x) for x in self.word)

    def __repr__(self):
        return "Permutation(%s)" % (",".join(str(x) for x in self.word))


def _check_enum_guard(n: int, max_n: int) -> None:
    if n > max_n:
        raise ResourceLimitError(
            "symmetric group enumeration for n=%d exceeds the guard %d" % (n, max_n)
        )


def descent_class(alpha, max_n: int = MAX_ENUM_N) -> list:
    """All permutations whose descent set equals that of the composition."""
    a = as_composition(alpha)
    _check_enum_guard(a.n, max_n)
    target = a.descent_set().elements
    return [
        Permutation(w)
        for w in itertools.permutations(range(1, a.n + 1))
        if word_descents(w) == target
    ]


@dataclass(frozen=True)
class PermStats:
    descents: DescentSet
    composition: Composition
    peaks: PeakSet
    length: int
    inverse: Permutation
    reduced_word: tuple


def perm_stats(w: Permutation) -> PermStats:
    return PermStats(
        descents=w.descent_set(),
        composition=w.descent_composition(),
        peaks=w.peak_set(),
        length=w.length(),
        inverse=w.inverse(),
        reduced_word=w.reduced_word(),
    )


def min_coset_reps(m: int, n: int, max_n: int = MAX_ENUM_N) -> list:
    """Minimal-length representatives x of the left cosets x S_(m,n) in S_(m+n).

    These are the binomial(m+n, m) permutations with descent set inside {m}:
    both blocks of positions appear in increasing order.  Lexicographic order.
    """
    total = m + n
    _check_enum_guard(total, max_n)
    reps = []
    for first_values in itertools.combinations(range(1, total + 1), m):
        rest = [v for v in range(1, total + 1) if v not in first_values]
        reps.append(Permutation(tuple(first_values) + tuple(rest)))
    reps.sort(key=lambda p: p.word)
    return reps


def coset_factorize(w: tuple, m: int) -> tuple:
    """Factor w = x * u with x a minimal (m, n-m) coset representative.

    x carries the same values per block but sorted increasingly; u permutes
    positions within the blocks, so u lies in the parabolic subgroup.
    """
    n = len(w)
    first = sorted(w[:m])
    second = sorted(w[m:])
    x = tuple(first + second)
    u = word_compose(word_inverse(x), w)
    return x, u


# ---------------------------------------------------------------------------
# Bruhat order (desk-scale, cached per n)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bruhat_table(n: int) -> dict:
    if n > 6:
        raise ResourceLimitError("Bruhat tables kept only for n <= 6")
    perms = [tuple(p) for p in itertools.permutations(range(1, n + 1))]
    lengths = {w: word_length(w) for w in perms}
    # covering relations: w covers v when v = w * t_{ab} and l drops by one
    leq = {w: {w} for w in perms}
    by_length = sorted(perms, key=lambda w: lengths[w])
    for w in by_length:
        lw = lengths[w]
        for a in range(n):
            for b in range(a + 1, n):
                v = list(w)
                v[a], v[b] = v[b], v[a]
                v = tuple(v)
                if lengths[v] == lw - 1:
                    leq[w] |= leq[v]
    return leq


def bruhat_leq(v: Permutation, w: Permutation) -> bool:
    """v <= w in Bruhat order; exhaustive tables, guarded at n <= 6."""
    if v.n != w.n:
        raise ValueError("rank mismatch")
    return v.word in _bruhat_table(v.n)[w.word]


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _partitions_of(n: int, max_part: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int) -> list:
    """Weakly decreasing tuples summing to n (n = 0 gives the empty one)."""
    return list(_partitions_of(n, n if n else 1))


def strict_partitions_of(n: int) -> list:
    return [p for p in partitions_of(n) if all(p[i] > p[i + 1] for i in range(len(p) - 1))]


def odd_partitions_of(n: int) -> list:
    return [p for p in partitions_of(n) if all(x % 2 == 1 for x in p)]
