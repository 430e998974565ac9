"""Membership predicates and samplers for flag, Grassmannian, and matrix
Schubert varieties, plus cell location.

All the rank conditions here are of the "southwest" kind: the dimension
dim(x E_j / E_{i-1}) equals the rank of the submatrix of x on rows i..n and
columns 1..j, so one elimination pass per starting row yields the whole
profile of a matrix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DimensionMismatchError, InputError
from .exactla import (
    ExactMatrix,
    FieldSpec,
    Subspace,
    _row_echelon,
    random_borel,
    standard_subspace,
    subspace_sum,
)
from .permcore import PartialPermutation, rank_matrix


@dataclass(frozen=True)
class Flag:
    """A complete flag stored by an invertible generator matrix.

    F_i is the span of the first i columns of the generator.
    """

    generator: ExactMatrix

    def __post_init__(self):
        if not self.generator.is_square():
            raise DimensionMismatchError("flag generator must be square")

    @property
    def n(self) -> int:
        return self.generator.rows

    @property
    def field(self) -> FieldSpec:
        return self.generator.field

    def subspace(self, i: int) -> Subspace:
        """F_i = span of the first i generator columns (F_0 = 0)."""
        if not 0 <= i <= self.n:
            raise DimensionMismatchError(f"flag index {i} outside 0..{self.n}")
        return Subspace.span(
            self.field, self.n, [self.generator.column(j) for j in range(1, i + 1)]
        )

    def validate(self) -> None:
        if self.generator.rank() != self.n:
            raise InputError("flag generator is singular")


def standard_flag(field: FieldSpec, n: int) -> Flag:
    """The flag E_1 < E_2 < ... of coordinate subspaces."""
    return Flag(ExactMatrix.identity(field, n))


@dataclass(frozen=True)
class GrassIndex:
    """A Schubert index for Gr(d, N): a strictly increasing d-sequence in 1..N."""

    d: int
    N: int
    positions: tuple[int, ...]

    def __post_init__(self):
        if len(self.positions) != self.d:
            raise InputError("index length differs from d")
        prev = 0
        for v in self.positions:
            if not prev < v <= self.N:
                raise InputError(f"positions must strictly increase within 1..{self.N}")
            prev = v

    def leq(self, other: "GrassIndex") -> bool:
        """Componentwise comparison; this is containment of Schubert varieties."""
        if (self.d, self.N) != (other.d, other.N):
            raise InputError("indices live in different Grassmannians")
        return all(a <= b for a, b in zip(self.positions, other.positions))

    def redundancy_free(self) -> tuple[int, ...]:
        """Positions i whose condition is not implied by condition i+1."""
        keep = []
        for i in range(1, self.d + 1):
            if i == self.d or self.positions[i] != self.positions[i - 1] + 1:
                keep.append(i)
        return tuple(keep)


def southwest_profile(x: ExactMatrix) -> tuple[tuple[int, ...], ...]:
    """All dim(x E_j / E_{i-1}) = rank of x[i.., ..j], as profile[i-1][j-1]."""
    n_rows, n_cols = x.rows, x.cols
    field = x.field
    profile = []
    for i in range(1, n_rows + 1):
        rows = [list(r) for r in x.entries[i - 1 :]]
        _, pivots = _row_echelon(rows, field)
        # pivots are 0-based column indices of the echelon form; the rank of
        # the first j columns is the number of pivots < j
        ranks = tuple(sum(1 for p in pivots if p < j) for j in range(1, n_cols + 1))
        profile.append(ranks)
    return tuple(profile)


def in_matrix_schubert(
    x: ExactMatrix, w: PartialPermutation, essential_only: bool = False
) -> bool:
    return matrix_schubert_violation(x, w, essential_only) is None


def matrix_schubert_violation(
    x: ExactMatrix, w: PartialPermutation, essential_only: bool = False
) -> tuple[int, int, int, int] | None:
    """First violated condition (i, j, dim, bound), or None if x lies in g_w."""
    if x.shape != (w.n, w.n):
        raise DimensionMismatchError("matrix size differs from permutation size")
    rm = rank_matrix(w)
    if essential_only:
        from .permcore import essential_set

        for cond in essential_set(w):
            sub = x.submatrix(range(cond.row, w.n + 1), range(1, cond.col + 1))
            got = sub.rank()
            if got > cond.rank:
                return (cond.row, cond.col, got, cond.rank)
        return None
    profile = southwest_profile(x)
    for i in range(1, w.n + 1):
        for j in range(1, w.n + 1):
            if profile[i - 1][j - 1] > rm.entry(i, j):
                return (i, j, profile[i - 1][j - 1], rm.entry(i, j))
    return None


def in_matrix_schubert_cell(x: ExactMatrix, w: PartialPermutation) -> bool:
    """True iff x has exactly the rank profile of w (the open B x B orbit)."""
    if x.shape != (w.n, w.n):
        raise DimensionMismatchError("matrix size differs from permutation size")
    return southwest_profile(x) == rank_matrix(w).entries


def in_flag_schubert(flag: Flag, w: PartialPermutation) -> bool:
    return flag_schubert_violation(flag, w) is None


def flag_schubert_violation(
    flag: Flag, w: PartialPermutation
) -> tuple[int, int, int, int] | None:
    """First (i, j, dim, bound) with dim(F_j / E_{i-1}) > r_w(i, j), else None."""
    if not w.is_full_rank:
        raise InputError("flag Schubert membership requires a permutation")
    if flag.n != w.n:
        raise DimensionMismatchError("flag size differs from permutation size")
    rm = rank_matrix(w)
    profile = southwest_profile(flag.generator)
    for i in range(1, w.n + 1):
        for j in range(1, w.n + 1):
            if profile[i - 1][j - 1] > rm.entry(i, j):
                return (i, j, profile[i - 1][j - 1], rm.entry(i, j))
    return None


def locate_flag_cell(flag: Flag) -> PartialPermutation:
    """The unique permutation whose open cell contains the flag.

    Read off from the jump pattern of dim(F_j / E_{i-1}).
    """
    n = flag.n
    profile = southwest_profile(flag.generator)

    def prof(i: int, j: int) -> int:
        if i == n + 1 or j == 0:
            return 0
        return profile[i - 1][j - 1]

    image = [0] * n
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            if prof(i, j) - prof(i, j - 1) - prof(i + 1, j) + prof(i + 1, j - 1) == 1:
                image[j - 1] = i
    return PartialPermutation(n, tuple(image))


def in_grass_schubert(
    subspace: Subspace, idx: GrassIndex, minimal_only: bool = False
) -> bool:
    return grass_schubert_violation(subspace, idx, minimal_only) is None


def grass_schubert_violation(
    subspace: Subspace, idx: GrassIndex, minimal_only: bool = False
) -> tuple[int, int, int] | None:
    """First violated condition (i, dim(V + E_{u_i}), bound), else None."""
    if subspace.ambient != idx.N:
        raise DimensionMismatchError("ambient dimension differs from N")
    if subspace.dim != idx.d:
        raise DimensionMismatchError(f"subspace dimension {subspace.dim} is not d={idx.d}")
    field = subspace.field
    targets = idx.redundancy_free() if minimal_only else range(1, idx.d + 1)
    for i in targets:
        u_i = idx.positions[i - 1]
        total = subspace_sum(subspace, standard_subspace(field, idx.N, u_i)).dim
        bound = idx.d + u_i - i
        if total > bound:
            return (i, total, bound)
    return None


def locate_grass_cell(subspace: Subspace) -> GrassIndex:
    """Positions j where dim(V + E_j) does not jump; V lies in that open cell."""
    field = subspace.field
    N = subspace.ambient
    dims = [subspace.dim]
    for j in range(1, N + 1):
        dims.append(subspace_sum(subspace, standard_subspace(field, N, j)).dim)
    positions = tuple(j for j in range(1, N + 1) if dims[j] == dims[j - 1])
    return GrassIndex(subspace.dim, N, positions)


def sample_cell_point(
    w: PartialPermutation, field: FieldSpec, rng: random.Random
) -> ExactMatrix:
    """A random point b_l w b_r of the open B x B orbit of w over F_p."""
    b_l = random_borel(field, w.n, rng)
    b_r = random_borel(field, w.n, rng)
    return b_l @ w.matrix(field) @ b_r


def sample_flag(w: PartialPermutation, field: FieldSpec, rng: random.Random) -> Flag:
    """A random flag in the open Schubert cell of the permutation w."""
    if not w.is_full_rank:
        raise InputError("flag sampling requires a permutation")
    return Flag(sample_cell_point(w, field, rng))
