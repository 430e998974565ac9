"""The covexillary open embedding of a matrix Schubert variety into a
Grassmannian Schubert variety.

The map sends an n x n matrix x to the column span of the stacked matrix
(I over x) inside Gr(n, 2n), then permutes coordinates by the block
interleaving permutation built from the essential triples.  The image of
the variety is cut out by the conditions dim(V + E_{t_i}) <= n + p_i + r_i.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatchError
from .exactla import (
    ExactMatrix,
    Subspace,
    coordinate_subspace,
    standard_subspace,
    subspace_sum,
)
from .permcore import CovexillaryData, PartialPermutation
from .varieties import GrassIndex


def tau_permutation(data: CovexillaryData) -> PartialPermutation:
    """The interleaving permutation of S_2n attached to covexillary data.

    Block step i sends the basis vectors e_{q_{i-1}+1}..e_{q_i} and then
    e_{n+p_{i-1}+1}..e_{n+p_i} to the next run of consecutive targets, so
    the preimage of E_{t_i} is always <e_1..e_{q_i}, e_{n+1}..e_{n+p_i}>.
    """
    n = data.n
    image = [0] * (2 * n)
    next_target = 1
    for i in range(1, data.m + 1):
        for j in range(data.q_at(i - 1) + 1, data.q_at(i) + 1):
            image[j - 1] = next_target
            next_target += 1
        for j in range(n + data.p_at(i - 1) + 1, n + data.p_at(i) + 1):
            image[j - 1] = next_target
            next_target += 1
    return PartialPermutation(2 * n, tuple(image))


@dataclass(frozen=True)
class EmbeddingTarget:
    """The image side of the embedding: tau plus the Grassmannian conditions.

    ``conditions`` lists the pairs (t_i, n + p_i + r_i) for i = 1..m-1; a
    subspace V of Gr(n, 2n) is in the target variety iff
    dim(V + E_{t_i}) <= n + p_i + r_i for all of them.
    """

    data: CovexillaryData
    tau: PartialPermutation
    conditions: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return self.data.n


def embedding_target(data: CovexillaryData) -> EmbeddingTarget:
    conditions = tuple(
        (data.t_at(i), data.n + data.p_at(i) + data.r_at(i))
        for i in range(1, data.m)
    )
    return EmbeddingTarget(data, tau_permutation(data), conditions)


def graph_embed(x: ExactMatrix) -> Subspace:
    """Column span of (I over x): the graph of x as a point of Gr(n, 2n)."""
    if not x.is_square():
        raise DimensionMismatchError("graph embedding requires a square matrix")
    stacked = ExactMatrix.identity(x.field, x.rows).vstack(x)
    return Subspace.column_span(stacked)


def embed_point(x: ExactMatrix, data: CovexillaryData) -> Subspace:
    """tau applied to the graph of x; sends 0 to the coordinate point of tau."""
    tau = tau_permutation(data)
    stacked = ExactMatrix.identity(x.field, x.rows).vstack(x)
    permuted = tau.matrix(x.field) @ stacked
    return Subspace.column_span(permuted)


def target_violation(
    subspace: Subspace, target: EmbeddingTarget
) -> tuple[int, int, int] | None:
    """First violated target condition (t_i, dim, bound), else None."""
    field = subspace.field
    N = 2 * target.n
    if subspace.ambient != N:
        raise DimensionMismatchError("point does not live in Gr(n, 2n)")
    for t_i, bound in target.conditions:
        total = subspace_sum(subspace, standard_subspace(field, N, t_i)).dim
        if total > bound:
            return (t_i, total, bound)
    return None


def target_holds(subspace: Subspace, target: EmbeddingTarget) -> bool:
    return target_violation(subspace, target) is None


def target_grass_index(target: EmbeddingTarget) -> GrassIndex:
    """The increasing d-sequence cutting out the same Schubert variety.

    Each condition (t, n + p + r) pins position q - r of the sequence to at
    most t; the sequence is the componentwise-largest one obeying the pins.
    This derived conversion is validated against cell location of sampled
    maximal points.
    """
    n = target.n
    N = 2 * n
    positions = [n + i for i in range(1, n + 1)]
    for t_i, bound in target.conditions:
        a = t_i - (bound - n)  # = q_i - r_i
        if a >= 1:
            positions[a - 1] = min(positions[a - 1], t_i)
    for i in range(n - 2, -1, -1):
        positions[i] = min(positions[i], positions[i + 1] - 1)
    return GrassIndex(n, N, tuple(positions))


def check_rank_lemma(
    x: ExactMatrix, p: int, q: int, r: int
) -> tuple[bool, bool]:
    """The two sides of the one-condition rank equivalence.

    Returns (dim(x E_q / E_p) <= r, dim(h(x) + V) <= n + p + r) with
    V = <e_1..e_q, e_{n+1}..e_{n+p}>.  The lemma says they always agree.
    """
    n = x.rows
    if not (0 <= p <= n and 0 <= q <= n):
        raise DimensionMismatchError("p and q must lie in 0..n")
    left_rank = x.submatrix(range(p + 1, n + 1), range(1, q + 1)).rank() if q else 0
    left = left_rank <= r
    field = x.field
    v = coordinate_subspace(
        field, 2 * n, list(range(1, q + 1)) + list(range(n + 1, n + p + 1))
    )
    right = subspace_sum(graph_embed(x), v).dim <= n + p + r
    return (left, right)


def weight_map(data: CovexillaryData) -> dict[int, tuple[str, int]]:
    """Torus-weight dictionary: t_{tau(i)} -> y_i for i <= n, else x_{i-n}."""
    tau = tau_permutation(data)
    n = data.n
    mapping: dict[int, tuple[str, int]] = {}
    for i in range(1, 2 * n + 1):
        mapping[tau(i)] = ("y", i) if i <= n else ("x", i - n)
    return mapping
