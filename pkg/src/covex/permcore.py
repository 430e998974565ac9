"""Partial-permutation combinatorics.

A partial permutation of size n is a {0,1} matrix with at most one nonzero
entry in each row and column.  It is stored by its column images: entry
``image[j-1]`` is the row of the dot in column j, or 0 for an empty column.
Full-rank partial permutations are permutations in one-line notation.

Rank matrices count dots from the bottom-left: r(i, j) is the number of
dots in rows i..n and columns 1..j.  Diagrams are the unshaded boxes after
shading everything above and to the right of each dot, and essential sets
are the northeast corners of the diagram.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import EssentialDataError, InputError, NotCovexillaryError
from .exactla import ExactMatrix, FieldSpec


@dataclass(frozen=True)
class PartialPermutation:
    """A size-n {0,1} matrix with at most one nonzero per row and column."""

    n: int
    image: tuple[int, ...]  # image[j-1] = row of the dot in column j, 0 if none

    def __post_init__(self):
        if self.n < 1 or len(self.image) != self.n:
            raise InputError(f"image must have length n={self.n}")
        seen = set()
        for v in self.image:
            if not 0 <= v <= self.n:
                raise InputError(f"image value {v} outside 0..{self.n}")
            if v:
                if v in seen:
                    raise InputError(f"row {v} used by two columns")
                seen.add(v)

    @staticmethod
    def from_one_line(text: str) -> "PartialPermutation":
        """Parse "2 1 4 3" or compact "2143" (compact only when n <= 9)."""
        text = text.strip()
        if not text:
            raise InputError("empty permutation string")
        parts = text.split()
        if len(parts) == 1 and len(parts[0]) > 1:
            values = [int(ch) for ch in parts[0]]
        else:
            values = [int(tok) for tok in parts]
        return PartialPermutation(len(values), tuple(values))

    @staticmethod
    def identity(n: int) -> "PartialPermutation":
        return PartialPermutation(n, tuple(range(1, n + 1)))

    @staticmethod
    def longest(n: int) -> "PartialPermutation":
        """The longest permutation w0 = [n, n-1, ..., 1]."""
        return PartialPermutation(n, tuple(range(n, 0, -1)))

    @staticmethod
    def zero(n: int) -> "PartialPermutation":
        return PartialPermutation(n, (0,) * n)

    @property
    def is_full_rank(self) -> bool:
        return all(self.image)

    @property
    def rank(self) -> int:
        return sum(1 for v in self.image if v)

    def dots(self) -> tuple[tuple[int, int], ...]:
        """Positions (row, col) of the nonzero entries, by column."""
        return tuple((v, j + 1) for j, v in enumerate(self.image) if v)

    def __call__(self, j: int) -> int:
        """Row of the dot in column j, or 0."""
        return self.image[j - 1]

    def matrix(self, field: FieldSpec) -> ExactMatrix:
        one, zero = field.one(), field.zero()
        rows = [[zero] * self.n for _ in range(self.n)]
        for r, c in self.dots():
            rows[r - 1][c - 1] = one
        return ExactMatrix(field, tuple(tuple(row) for row in rows))

    def inverse(self) -> "PartialPermutation":
        image = [0] * self.n
        for r, c in self.dots():
            image[r - 1] = c
        return PartialPermutation(self.n, tuple(image))

    def one_line(self) -> str:
        return " ".join(str(v) for v in self.image)

    def compact(self) -> str:
        """Digit string like "2143"; only valid when n <= 9."""
        if self.n > 9:
            raise InputError("compact notation requires n <= 9")
        return "".join(str(v) for v in self.image)

    def length(self) -> int:
        """Number of inversions (full-rank only)."""
        if not self.is_full_rank:
            raise InputError("length is defined for permutations only")
        img = self.image
        return sum(
            1
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if img[i] > img[j]
        )

    def compose(self, other: "PartialPermutation") -> "PartialPermutation":
        """Composition self o other of full-rank permutations."""
        if not (self.is_full_rank and other.is_full_rank) or self.n != other.n:
            raise InputError("compose requires two permutations of equal size")
        return PartialPermutation(self.n, tuple(self.image[v - 1] for v in other.image))


@dataclass(frozen=True)
class RankMatrix:
    """Southwest rank counts: entries[i-1][j-1] = #dots in rows i..n, cols 1..j."""

    n: int
    entries: tuple[tuple[int, ...], ...]

    def entry(self, i: int, j: int) -> int:
        return self.entries[i - 1][j - 1]

    def dominates(self, other: "RankMatrix") -> bool:
        return all(
            a >= b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )


@dataclass(frozen=True)
class EssentialCondition:
    """A rank bound at one essential box: dim(x E_col / E_{row-1}) <= rank."""

    row: int
    col: int
    rank: int


def rank_matrix(w: PartialPermutation) -> RankMatrix:
    """Rank matrix of w: entry (i, j) counts dots in rows i..n, columns 1..j."""
    n = w.n
    grid = [[0] * (n + 1) for _ in range(n + 2)]
    for r, c in w.dots():
        grid[r][c] = 1
    # suffix sum over rows, prefix sum over columns
    entries = [[0] * n for _ in range(n)]
    for i in range(n, 0, -1):
        acc = 0
        for j in range(1, n + 1):
            acc += grid[i][j]
            entries[i - 1][j - 1] = acc + (entries[i][j - 1] if i < n else 0)
    return RankMatrix(n, tuple(tuple(row) for row in entries))


def _shaded_grid(w: PartialPermutation) -> list[list[bool]]:
    """True at boxes strictly above or strictly to the right of some dot."""
    n = w.n
    shaded = [[False] * (n + 1) for _ in range(n + 1)]
    for r, c in w.dots():
        for i in range(1, r):
            shaded[i][c] = True
        for j in range(c + 1, n + 1):
            shaded[r][j] = True
    return shaded


def diagram(w: PartialPermutation) -> frozenset[tuple[int, int]]:
    """Unshaded non-dot boxes (row, col).  For a permutation, |D(w)| = l(w0 w)."""
    n = w.n
    shaded = _shaded_grid(w)
    dots = set(w.dots())
    return frozenset(
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if not shaded[i][j] and (i, j) not in dots
    )


def essential_set(w: PartialPermutation) -> tuple[EssentialCondition, ...]:
    """Northeast corners of the diagram with their rank bounds, sorted by (row, col)."""
    boxes = diagram(w)
    rm = rank_matrix(w)
    essential = [
        EssentialCondition(i, j, rm.entry(i, j))
        for (i, j) in boxes
        if (i - 1, j) not in boxes and (i, j + 1) not in boxes and (i - 1, j + 1) not in boxes
    ]
    essential.sort(key=lambda e: (e.row, e.col))
    return tuple(essential)


def avoids_pattern(w: PartialPermutation, pattern: PartialPermutation) -> bool:
    """True iff no index subsequence of w is order-isomorphic to the pattern.

    Patterns longer than w are trivially avoided.  Both arguments must be
    full-rank.
    """
    if not (w.is_full_rank and pattern.is_full_rank):
        raise InputError("pattern avoidance is defined for permutations only")
    k = pattern.n
    if k > w.n:
        return True
    target = _relative_order(pattern.image)
    for indices in itertools.combinations(range(w.n), k):
        values = tuple(w.image[i] for i in indices)
        if _relative_order(values) == target:
            return False
    return True


def _relative_order(values: Sequence[int]) -> tuple[int, ...]:
    ordered = sorted(values)
    return tuple(ordered.index(v) + 1 for v in values)


def avoids_3412(w: PartialPermutation) -> bool:
    """No i<j<k<l with w(k) < w(l) < w(i) < w(j)."""
    if not w.is_full_rank:
        raise InputError("3412-avoidance is defined for permutations only")
    img = w.image
    n = w.n
    for i in range(n):
        for j in range(i + 1, n):
            if img[j] <= img[i]:
                continue
            for k in range(j + 1, n):
                if img[k] >= img[i]:
                    continue
                for l in range(k + 1, n):
                    if img[k] < img[l] < img[i]:
                        return False
    return True


@dataclass(frozen=True)
class CovexillaryData:
    """Essential-set triples (p_i, q_i, r_i) of a covexillary partial permutation.

    There are m-1 triples; by convention p_m = q_m = n and t_i = p_i + q_i.
    Padding entry (p_0, q_0, r_0) = (0, 0, 0) is supplied by accessors.
    """

    n: int
    p: tuple[int, ...]
    q: tuple[int, ...]
    r: tuple[int, ...]

    def __post_init__(self):
        k = len(self.p)
        if len(self.q) != k or len(self.r) != k:
            raise EssentialDataError("p, q, r must have equal lengths")
        prev = None
        for pi, qi, ri in zip(self.p, self.q, self.r):
            if not (0 <= pi <= self.n - 1 and 1 <= qi <= self.n):
                raise EssentialDataError(f"triple ({pi},{qi},{ri}) out of range")
            if prev is not None:
                if pi < prev[0] or qi < prev[1]:
                    raise EssentialDataError("p and q must be weakly increasing")
                if (pi, qi) == prev:
                    raise EssentialDataError(f"repeated essential box {prev}")
            prev = (pi, qi)

    @property
    def m(self) -> int:
        return len(self.p) + 1

    def p_at(self, i: int) -> int:
        """p_i with the padding p_0 = 0 and p_m = n."""
        if i == 0:
            return 0
        if i == self.m:
            return self.n
        return self.p[i - 1]

    def q_at(self, i: int) -> int:
        if i == 0:
            return 0
        if i == self.m:
            return self.n
        return self.q[i - 1]

    def r_at(self, i: int) -> int:
        """r_i for 0 <= i <= m-1; the terminal r_m is a conormal-side convention."""
        if i == 0:
            return 0
        if i >= self.m:
            raise IndexError("terminal rank is not part of the essential data")
        return self.r[i - 1]

    def t_at(self, i: int) -> int:
        return self.p_at(i) + self.q_at(i)

    @property
    def triples(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(zip(self.p, self.q, self.r))

    def conditions(self) -> tuple[EssentialCondition, ...]:
        return tuple(
            EssentialCondition(pi + 1, qi, ri) for pi, qi, ri in self.triples
        )


def covexillary_data(w: PartialPermutation) -> CovexillaryData:
    """Essential triples of w, or NotCovexillaryError naming a violating pair.

    The essential boxes, read in (row, col) order, must have both rows and
    columns weakly increasing.  For permutations this succeeds exactly when
    w avoids the pattern 3412.
    """
    conditions = essential_set(w)
    prev = None
    for cond in conditions:
        if prev is not None and cond.col < prev.col:
            raise NotCovexillaryError((prev.row, prev.col), (cond.row, cond.col))
        prev = cond
    return CovexillaryData(
        w.n,
        tuple(c.row - 1 for c in conditions),
        tuple(c.col for c in conditions),
        tuple(c.rank for c in conditions),
    )


def is_covexillary(w: PartialPermutation) -> bool:
    try:
        covexillary_data(w)
    except NotCovexillaryError:
        return False
    return True


def bruhat_leq(u: PartialPermutation, w: PartialPermutation) -> bool:
    """u <= w iff the rank matrix of u is entrywise dominated by that of w."""
    if u.n != w.n:
        raise InputError("Bruhat comparison requires equal sizes")
    return rank_matrix(w).dominates(rank_matrix(u))


def hat_permutation(w: PartialPermutation) -> PartialPermutation:
    """The 2n x 2n permutation with bottom-left block w and aligned essential set.

    The dots outside the bottom-left block sit in the top n rows and last n
    columns, running from bottom-left to top-right: empty columns of w take
    the highest-numbered free top rows in decreasing order, then the last n
    columns take all remaining rows in decreasing order.  The essential set
    of the result is the essential set of w shifted down by n rows.
    """
    n = w.n
    image = [0] * (2 * n)
    for r, c in w.dots():
        image[c - 1] = n + r
    empty_cols = [j for j in range(1, n + 1) if not w(j)]
    top_rows = list(range(n, n - len(empty_cols), -1))
    for col, row in zip(empty_cols, top_rows):
        image[col - 1] = row
    used = set(image)
    remaining = sorted((r for r in range(1, 2 * n + 1) if r not in used), reverse=True)
    for offset, row in enumerate(remaining):
        image[n + offset] = row
    return PartialPermutation(2 * n, tuple(image))


def reconstruct_from_essential(
    n: int, conditions: Iterable[EssentialCondition]
) -> PartialPermutation:
    """The unique partial permutation with the given essential set and ranks.

    The full rank matrix is the largest one compatible with the essential
    bounds (each step right adds at most 1, each step up adds at most one per
    row, and the trivial caps min(j, n-i+1) apply).  The dot pattern is then
    read off from second differences.  Input that does not arise from an
    actual partial permutation raises EssentialDataError.
    """
    conds = sorted(conditions, key=lambda e: (e.row, e.col))
    for c in conds:
        if not (1 <= c.row <= n and 1 <= c.col <= n):
            raise EssentialDataError(f"box ({c.row},{c.col}) outside the grid")
        if c.rank > min(c.col, n - c.row + 1) or c.rank < 0:
            raise EssentialDataError(f"rank {c.rank} impossible at ({c.row},{c.col})")
    r = [[0] * (n + 2) for _ in range(n + 2)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            best = min(j, n - i + 1)
            for c in conds:
                best = min(best, c.rank + max(0, j - c.col) + max(0, c.row - i))
            r[i][j] = best
    image = [0] * n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            delta = r[i][j] - r[i][j - 1] - r[i + 1][j] + r[i + 1][j - 1]
            if delta == 1:
                if image[j - 1]:
                    raise EssentialDataError("derived dots collide in a column")
                image[j - 1] = i
            elif delta != 0:
                raise EssentialDataError("derived rank matrix is not a dot pattern")
    try:
        w = PartialPermutation(n, tuple(image))
    except InputError as exc:
        raise EssentialDataError(str(exc)) from exc
    if essential_set(w) != tuple(conds):
        raise EssentialDataError("conditions are not the essential set of any partial permutation")
    return w


def all_permutations(n: int) -> Iterator[PartialPermutation]:
    for image in itertools.permutations(range(1, n + 1)):
        yield PartialPermutation(n, image)


def all_partial_permutations(n: int) -> Iterator[PartialPermutation]:
    """All partial permutations of size n, in a deterministic order."""
    rows = list(range(1, n + 1))
    for k in range(n + 1):
        for cols in itertools.combinations(range(n), k):
            for chosen in itertools.permutations(rows, k):
                image = [0] * n
                for col, row in zip(cols, chosen):
                    image[col] = row
                yield PartialPermutation(n, tuple(image))


def random_partial_permutation(n: int, rng: random.Random) -> PartialPermutation:
    """Uniform over sizes is not attempted; each column independently empty or a free row."""
    rows = list(range(1, n + 1))
    rng.shuffle(rows)
    image = [0] * n
    for j in range(n):
        if rng.random() < 0.5 and rows:
            image[j] = rows.pop()
    return PartialPermutation(n, tuple(image))
