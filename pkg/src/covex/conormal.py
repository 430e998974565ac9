"""Conormal-variety membership predicates and their independent oracles.

Three coordinate forms are covered: pairs (x, y) of n x n matrices for the
conormal variety of a matrix Schubert variety, Springer pairs (V, x) on the
Grassmannian side, and Springer pairs (F, z) on the flag side.  The rank
bounds all come from one table built out of the essential triples with the
padding (p_0, q_0, r_0) = (0, 0, 0) and (p_m, q_m) = (n, n); every bound is
the minimum of the two case formulas.

The ground truth the predicates are calibrated against is the annihilator
of the orbit tangent space under the trace pairing: over a cell point x the
conormal fiber is exactly {y : xy and yx strictly upper triangular}, and
over a flag cell generator g it is {z : z and g^-1 z g strictly upper}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    CellMembershipError,
    DimensionMismatchError,
    InvariantError,
)
from .exactla import (
    ExactMatrix,
    FieldSpec,
    Subspace,
    dim_quotient,
    image,
    kernel,
    standard_subspace,
    subspace_intersect,
    subspace_sum,
)
from .permcore import CovexillaryData, PartialPermutation, covexillary_data
from .varieties import (
    Flag,
    in_flag_schubert,
    in_matrix_schubert_cell,
    locate_flag_cell,
)

# Terminal rank used at index m of the padded triples.  Calibration over all
# covexillary partial permutations with n <= 4 (suite conormal-matrix) shows
# the affected bounds never bind for either candidate value n or rank(w);
# the full-rank value n is kept.
TERMINAL_RANK_IS_N = True


@dataclass(frozen=True)
class CotangentMatrixPoint:
    """A point (x, y) of T*g = g x g*, with y representing tr(y . )."""

    x: ExactMatrix
    y: ExactMatrix

    def __post_init__(self):
        if self.x.shape != self.y.shape or not self.x.is_square():
            raise DimensionMismatchError("x and y must be square of equal size")

    @property
    def n(self) -> int:
        return self.x.rows


@dataclass(frozen=True)
class SpringerFlagPoint:
    """A pair (F, z) with z F_i inside F_{i-1} for every i."""

    flag: Flag
    z: ExactMatrix

    def __post_init__(self):
        n = self.flag.n
        if self.z.shape != (n, n):
            raise DimensionMismatchError("z size differs from flag size")
        for i in range(1, n + 1):
            moved = self.flag.subspace(i).apply(self.z)
            if not self.flag.subspace(i - 1).contains(moved):
                raise InvariantError(f"z F_{i} is not contained in F_{i - 1}")


@dataclass(frozen=True)
class SpringerGrassPoint:
    """A pair (V, x) with Im(x) inside V inside ker(x); in particular x^2 = 0."""

    V: Subspace
    x: ExactMatrix

    def __post_init__(self):
        if self.x.shape != (self.V.ambient, self.V.ambient):
            raise DimensionMismatchError("x size differs from ambient dimension")
        if not self.V.contains(image(self.x)):
            raise InvariantError("Im(x) is not contained in V")
        if not self.V.apply(self.x).dim == 0:
            raise InvariantError("V is not contained in ker(x)")


def terminal_rank(data: CovexillaryData, rank_w: int | None = None) -> int:
    """The r_m padding value; see TERMINAL_RANK_IS_N."""
    if TERMINAL_RANK_IS_N or rank_w is None:
        return data.n
    return rank_w


@dataclass(frozen=True)
class ConormalBoundTable:
    """Rank bounds b(i, j) for the padded index pairs 0 <= j < i <= m."""

    data: CovexillaryData
    r_top: int

    def r_at(self, i: int) -> int:
        return self.r_top if i == self.data.m else self.data.r_at(i)

    def bound(self, i: int, j: int) -> int:
        d = self.data
        case_rows = (d.q_at(i - 1) - self.r_at(i - 1)) - (d.q_at(j) - self.r_at(j))
        case_cols = (d.p_at(i) + self.r_at(i)) - (d.p_at(j + 1) + self.r_at(j + 1))
        return min(case_rows, case_cols)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        m = self.data.m
        return tuple((i, j) for i in range(1, m + 1) for j in range(i))


def bound_table(data: CovexillaryData, rank_w: int | None = None) -> ConormalBoundTable:
    return ConormalBoundTable(data, terminal_rank(data, rank_w))


def big_matrix_M(pt: CotangentMatrixPoint) -> ExactMatrix:
    """The 2n x 2n block matrix ((yx, y), (xyx, xy))."""
    x, y = pt.x, pt.y
    yx = y @ x
    xy = x @ y
    xyx = x @ yx
    top = yx.hstack(y)
    bottom = xyx.hstack(xy)
    return top.vstack(bottom)


def _mij_rows_cols(data: CovexillaryData, i: int, j: int) -> tuple[list[int], list[int]]:
    n = data.n
    rows = list(range(data.q_at(j) + 1, n + 1)) + list(
        range(n + data.p_at(j) + 1, 2 * n + 1)
    )
    cols = list(range(1, data.q_at(i) + 1)) + list(
        range(n + 1, n + data.p_at(i) + 1)
    )
    return rows, cols


def submatrix_Mij(
    M: ExactMatrix, data: CovexillaryData, i: int, j: int
) -> ExactMatrix:
    """Rows {q_j+1..n, n+p_j+1..2n} and columns {1..q_i, n+1..n+p_i} of M."""
    if not 0 <= j < i <= data.m:
        raise IndexError(f"pair ({i},{j}) outside 0 <= j < i <= m")
    rows, cols = _mij_rows_cols(data, i, j)
    return M.submatrix(rows, cols)


def _bound_satisfied(sub: ExactMatrix, bound: int) -> bool:
    # A strictly negative bound is unsatisfiable on a nonempty submatrix,
    # even a zero one; an empty submatrix passes vacuously.
    if sub.rows == 0 or sub.cols == 0:
        return True
    if bound < 0:
        return False
    return sub.rank() <= bound


def in_conormal_matrix(pt: CotangentMatrixPoint, w: PartialPermutation) -> bool:
    return not conormal_matrix_violations(pt, w, first_only=True)


def conormal_matrix_violations(
    pt: CotangentMatrixPoint, w: PartialPermutation, first_only: bool = False
) -> list[dict]:
    """Violated conditions as diagnostics; empty list means membership.

    Raises NotCovexillaryError when w is not covexillary.
    """
    data = covexillary_data(w)
    if pt.n != w.n:
        raise DimensionMismatchError("point size differs from permutation size")
    out: list[dict] = []
    from .varieties import matrix_schubert_violation

    base = matrix_schubert_violation(pt.x, w)
    if base is not None:
        out.append({"kind": "schubert", "condition": base})
        if first_only:
            return out
    table = bound_table(data, w.rank)
    M = big_matrix_M(pt)
    for i, j in table.pairs():
        bound = table.bound(i, j)
        sub = submatrix_Mij(M, data, i, j)
        if not _bound_satisfied(sub, bound):
            out.append(
                {"kind": "rank", "i": i, "j": j, "rank": sub.rank(), "bound": bound}
            )
            if first_only:
                return out
    return out


def conormal_fiber_matrix(x: ExactMatrix, w: PartialPermutation) -> Subspace:
    """The conormal fiber over a cell point, as a subspace of flattened matrices.

    Solves the linear system {y : xy and yx strictly upper triangular}; this
    is the annihilator of the tangent space of the orbit through x, and is
    the oracle every conormal predicate is measured against.  The caller
    must supply x in the open cell of w.
    """
    n = w.n
    if x.shape != (n, n):
        raise DimensionMismatchError("matrix size differs from permutation size")
    if not in_matrix_schubert_cell(x, w):
        raise CellMembershipError("x does not have the rank profile of the open cell")
    field = x.field
    rows = []
    zero = field.zero()
    for a in range(1, n + 1):
        for b in range(1, a + 1):  # entries on or below the diagonal must vanish
            row = [zero] * (n * n)
            for k in range(1, n + 1):
                row[(k - 1) * n + (b - 1)] = x.entry(a, k)  # (xy)_{ab}
            rows.append(row)
            row = [zero] * (n * n)
            for k in range(1, n + 1):
                row[(a - 1) * n + (k - 1)] = x.entry(k, b)  # (yx)_{ab}
            rows.append(row)
    system = ExactMatrix(field, tuple(tuple(r) for r in rows))
    return kernel(system)


def vector_to_matrix(field: FieldSpec, vec: Sequence, n: int) -> ExactMatrix:
    """Unflatten a length-n^2 vector (row-major) into an n x n matrix."""
    return ExactMatrix.from_rows(
        field, [vec[i * n : (i + 1) * n] for i in range(n)]
    )


def tangent_orbit_rank(x: ExactMatrix) -> int:
    """Rank of (u, v) -> u x + x v on pairs of upper-triangular matrices."""
    n = x.rows
    field = x.field
    zero = field.zero()
    cols = []
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            col = [zero] * (n * n)
            for j in range(1, n + 1):  # (E_{ab} x)_{aj} = x_{bj}
                col[(a - 1) * n + (j - 1)] = x.entry(b, j)
            cols.append(col)
            col = [zero] * (n * n)
            for i in range(1, n + 1):  # (x E_{ab})_{ib} = x_{ia}
                col[(i - 1) * n + (b - 1)] = x.entry(i, a)
            cols.append(col)
    return ExactMatrix(field, tuple(zip(*cols))).rank()


def in_conormal_grass(
    pt: SpringerGrassPoint, conditions: Sequence[tuple[int, int]]
) -> bool:
    return not conormal_grass_violations(pt, conditions, first_only=True)


def conormal_grass_violations(
    pt: SpringerGrassPoint,
    conditions: Sequence[tuple[int, int]],
    first_only: bool = False,
) -> list[dict]:
    """Check (V, x) against a condition list [(t'_i, c_i)] for Gr_u.

    V must satisfy dim(V + E_{t'}) <= d + c for every condition, and x must
    satisfy dim(x E_{t'_i} / E_{t'_j}) <= min of the two case bounds over the
    padded pairs, with padding (0, 0) and (N, N - d).
    """
    V, x = pt.V, pt.x
    N, d = V.ambient, V.dim
    field = V.field
    out: list[dict] = []
    for t, c in conditions:
        total = subspace_sum(V, standard_subspace(field, N, t)).dim
        if total > d + c:
            out.append({"kind": "schubert", "condition": (t, total, d + c)})
            if first_only:
                return out
    padded = [(0, 0)] + list(conditions) + [(N, N - d)]
    k1 = len(padded) - 1
    for i in range(1, k1 + 1):
        for j in range(i):
            t_i, c_i = padded[i]
            t_j, c_j = padded[j]
            t_im1, c_im1 = padded[i - 1]
            t_jp1, c_jp1 = padded[j + 1]
            bound = min((t_im1 - c_im1) - (t_j - c_j), c_i - c_jp1)
            sub = x.submatrix(range(t_j + 1, N + 1), range(1, t_i + 1))
            if not _bound_satisfied(sub, bound):
                out.append(
                    {"kind": "rank", "i": i, "j": j, "rank": sub.rank(), "bound": bound}
                )
                if first_only:
                    return out
    return out


def in_conormal_flag(pt: SpringerFlagPoint, w: PartialPermutation) -> bool:
    return not conormal_flag_violations(pt, w, first_only=True)


def conormal_flag_violations(
    pt: SpringerFlagPoint, w: PartialPermutation, first_only: bool = False
) -> list[dict]:
    """Check (F, z) against the flag form of the conormal conditions."""
    data = covexillary_data(w)
    flag, z = pt.flag, pt.z
    if flag.n != w.n:
        raise DimensionMismatchError("flag size differs from permutation size")
    out: list[dict] = []
    if not in_flag_schubert(flag, w):
        out.append({"kind": "schubert"})
        if first_only:
            return out
    field = flag.field
    n = w.n
    table = bound_table(data, w.rank)
    for i, j in table.pairs():
        bound = table.bound(i, j)
        source = subspace_sum(
            flag.subspace(data.q_at(i)), standard_subspace(field, n, data.p_at(i))
        ).apply(z)
        quotient_by = subspace_intersect(
            flag.subspace(data.q_at(j)), standard_subspace(field, n, data.p_at(j))
        )
        if bound < 0:
            ok = source.dim == 0
        else:
            ok = dim_quotient(source, quotient_by) <= bound
        if not ok:
            out.append(
                {
                    "kind": "rank",
                    "i": i,
                    "j": j,
                    "dim": dim_quotient(source, quotient_by),
                    "bound": bound,
                }
            )
            if first_only:
                return out
    return out


def conormal_fiber_flag(
    g: ExactMatrix, w: PartialPermutation
) -> tuple[Flag, Subspace]:
    """Flag-side conormal fiber over a cell generator g.

    Solves {z : z strictly upper and g^-1 z g strictly upper}; each solution
    pairs with the flag generated by g as a Springer flag point.  The flag of
    g must lie in the open cell of w.
    """
    n = w.n
    flag = Flag(g)
    if locate_flag_cell(flag) != w:
        raise CellMembershipError("the flag of g is not in the open cell of w")
    field = g.field
    ginv = g.inverse()
    zero = field.zero()
    rows = []
    for a in range(1, n + 1):
        for b in range(1, a + 1):
            row = [zero] * (n * n)
            row[(a - 1) * n + (b - 1)] = field.one()  # z_{ab} = 0
            rows.append(row)
            row = [zero] * (n * n)
            for k in range(1, n + 1):
                for l in range(1, n + 1):  # (g^-1 z g)_{ab}
                    coeff = field.mul(ginv.entry(a, k), g.entry(l, b))
                    if coeff:
                        row[(k - 1) * n + (l - 1)] = field.add(
                            row[(k - 1) * n + (l - 1)], coeff
                        )
            rows.append(row)
    system = ExactMatrix(field, tuple(tuple(r) for r in rows))
    return flag, kernel(system)


def push_iota(g: ExactMatrix, y: ExactMatrix) -> CotangentMatrixPoint:
    """Cotangent transport along the inclusion of GL_n: (g, y) -> (g, y g^-1)."""
    return CotangentMatrixPoint(g, y @ g.inverse())


def push_graph(pt: CotangentMatrixPoint) -> tuple[ExactMatrix, ExactMatrix]:
    """Cotangent transport along the graph embedding.

    Returns the pair (h1(x), theta(y)) with h1(x) = ((I, 0), (x, I)) and
    theta(y) = ((0, y), (0, 0)), both of size 2n.
    """
    n = pt.n
    field = pt.x.field
    ident = ExactMatrix.identity(field, n)
    zero = ExactMatrix.zeros(field, n, n)
    h1 = ident.hstack(zero).vstack(pt.x.hstack(ident))
    theta = zero.hstack(pt.y).vstack(zero.hstack(zero))
    return h1, theta


def springer_grass(g: ExactMatrix, u: ExactMatrix, d: int) -> SpringerGrassPoint:
    """Springer coordinates on T*Gr(d, N): (g, u) -> (g E_d, g u g^-1)."""
    V = Subspace.span(
        g.field, g.rows, [g.column(j) for j in range(1, d + 1)]
    )
    x = g @ u @ g.inverse()
    return SpringerGrassPoint(V, x)


def springer_flag(g: ExactMatrix, y: ExactMatrix) -> SpringerFlagPoint:
    """Springer coordinates on T*Fl: (g, y) -> (g E_bullet, g y g^-1)."""
    return SpringerFlagPoint(Flag(g), g @ y @ g.inverse())
