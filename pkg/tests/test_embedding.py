"""The interleaving permutation, graph embedding, and target conditions."""

import random

from covex.exactla import (
    ExactMatrix,
    FieldSpec,
    coordinate_subspace,
    random_matrix,
    standard_subspace,
)
from covex.embedding import (
    check_rank_lemma,
    embed_point,
    embedding_target,
    graph_embed,
    target_grass_index,
    target_holds,
    tau_permutation,
    weight_map,
)
from covex.permcore import (
    PartialPermutation,
    all_partial_permutations,
    all_permutations,
    bruhat_leq,
    covexillary_data,
    is_covexillary,
)
from covex.varieties import in_matrix_schubert, locate_grass_cell, sample_cell_point

F = FieldSpec.prime()


def _covexillary_partials(n):
    return [w for w in all_partial_permutations(n) if is_covexillary(w)]


def test_tau_fixtures():
    data = covexillary_data(PartialPermutation.from_one_line("2143"))
    tau = tau_permutation(data)
    assert tau.image == (1, 2, 5, 6, 3, 4, 7, 8)
    # empty essential set: single block pair, tau is the identity
    w0 = PartialPermutation.longest(3)
    assert tau_permutation(covexillary_data(w0)) == PartialPermutation.identity(6)


def test_tau_preserves_block_order():
    for n in (2, 3, 4):
        for w in _covexillary_partials(n):
            tau = tau_permutation(covexillary_data(w))
            data = covexillary_data(w)
            for i in range(1, data.m + 1):
                block = [tau(j) for j in range(data.q_at(i - 1) + 1, data.q_at(i) + 1)]
                assert block == sorted(block)


def test_tau_inverse_standard_subspaces():
    # the preimage of E_{t_i} is always <e_1..e_{q_i}, e_{n+1}..e_{n+p_i}>
    sizes = {1: all_partial_permutations(1), 2: all_partial_permutations(2),
             3: all_partial_permutations(3), 4: all_partial_permutations(4),
             5: all_permutations(5), 6: all_permutations(6)}
    for n, perms in sizes.items():
        for w in perms:
            if not is_covexillary(w):
                continue
            data = covexillary_data(w)
            tau_inv = tau_permutation(data).matrix(F).inverse()
            for i in range(1, data.m + 1):
                pre = standard_subspace(F, 2 * n, data.t_at(i)).apply(tau_inv)
                expected = coordinate_subspace(
                    F,
                    2 * n,
                    list(range(1, data.q_at(i) + 1))
                    + list(range(n + 1, n + data.p_at(i) + 1)),
                )
                assert pre == expected


def test_graph_embed_fixtures():
    n = 3
    zero = ExactMatrix.zeros(F, n, n)
    assert graph_embed(zero) == standard_subspace(F, 2 * n, n)
    ident = ExactMatrix.identity(F, n)
    diag = graph_embed(ident)
    one = F.one()
    expected = [
        tuple(one if k in (i, n + i) else F.zero() for k in range(2 * n))
        for i in range(n)
    ]
    from covex.exactla import Subspace

    assert diag == Subspace.span(F, 2 * n, expected)


def test_graph_embed_injective():
    rng = random.Random(12)
    images = {}
    for _ in range(60):
        x = random_matrix(F, 3, 3, rng)
        key = graph_embed(x).vectors
        assert images.setdefault(key, x) == x


def test_embed_zero_hits_tau_point():
    for n in (1, 2, 3):
        for w in _covexillary_partials(n):
            data = covexillary_data(w)
            tau = tau_permutation(data)
            point = embed_point(ExactMatrix.zeros(F, n, n), data)
            assert point == coordinate_subspace(F, 2 * n, [tau(j) for j in range(1, n + 1)])


def test_embedding_theorem_randomized():
    rng = random.Random(13)
    for n in (1, 2, 3):
        for w in _covexillary_partials(n):
            data = covexillary_data(w)
            target = embedding_target(data)
            for _ in range(40):
                x = random_matrix(F, n, n, rng)
                assert in_matrix_schubert(x, w) == target_holds(embed_point(x, data), target)


def test_negative_control_rejects_random_matrices():
    rng = random.Random(14)
    for wstr in ("1 2 3", "2 1 3", "0 1 2"):
        w = PartialPermutation.from_one_line(wstr)
        data = covexillary_data(w)
        target = embedding_target(data)
        rejected = sum(
            1
            for _ in range(50)
            if not target_holds(embed_point(random_matrix(F, w.n, w.n, rng), data), target)
        )
        assert rejected >= 45


def test_bruhat_monotone_through_embedding():
    rng = random.Random(15)
    for n in (2, 3):
        for w in _covexillary_partials(n):
            data = covexillary_data(w)
            target = embedding_target(data)
            for u in all_partial_permutations(n):
                if bruhat_leq(u, w):
                    x = sample_cell_point(u, F, rng)
                    assert target_holds(embed_point(x, data), target)


def test_check_rank_lemma():
    rng = random.Random(16)
    zero = ExactMatrix.zeros(F, 3, 3)
    for p in range(4):
        for q in range(4):
            for r in range(4):
                assert check_rank_lemma(zero, p, q, r) == (True, True)
    one_by_one = ExactMatrix.from_rows(F, [[4]])
    assert check_rank_lemma(one_by_one, 0, 1, 0) == (False, False)
    assert check_rank_lemma(ExactMatrix.zeros(F, 1, 1), 0, 1, 0) == (True, True)
    for n in (1, 2, 3):
        for p in range(n + 1):
            for q in range(n + 1):
                for r in range(n + 1):
                    for _ in range(8):
                        x = random_matrix(F, n, n, rng)
                        left, right = check_rank_lemma(x, p, q, r)
                        assert left == right


def test_weight_map_fixtures():
    # single block pair: t_i -> y_i for i <= n, t_{n+i} -> x_i
    data = covexillary_data(PartialPermutation.longest(3))
    mapping = weight_map(data)
    assert mapping == {1: ("y", 1), 2: ("y", 2), 3: ("y", 3), 4: ("x", 1), 5: ("x", 2), 6: ("x", 3)}
    data = covexillary_data(PartialPermutation.from_one_line("2143"))
    mapping = weight_map(data)
    assert mapping[1] == ("y", 1)
    assert mapping[2] == ("y", 2)
    assert mapping[3] == ("x", 1)
    assert mapping[4] == ("x", 2)
    assert mapping[5] == ("y", 3)
    # the dictionary is a bijection onto both alphabets
    for n in (2, 3, 4):
        for w in _covexillary_partials(n):
            mapping = weight_map(covexillary_data(w))
            assert sorted(mapping) == list(range(1, 2 * n + 1))
            assert sorted(mapping.values()) == sorted(
                [("x", i) for i in range(1, n + 1)] + [("y", i) for i in range(1, n + 1)]
            )


def test_target_index_matches_located_cells():
    rng = random.Random(17)
    for n in (1, 2, 3):
        for w in _covexillary_partials(n):
            data = covexillary_data(w)
            target = embedding_target(data)
            derived = target_grass_index(target)
            for _ in range(3):
                point = embed_point(sample_cell_point(w, F, rng), data)
                assert locate_grass_cell(point) == derived


def test_target_index_fixture():
    data = covexillary_data(PartialPermutation.from_one_line("2143"))
    assert target_grass_index(embedding_target(data)).positions == (3, 4, 7, 8)
