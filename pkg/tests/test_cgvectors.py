"""Tracking of the two integer transformation matrices.

The recurrences are rebuilt here straight from their printed closed forms,
with no sharing and no shortcuts, as the oracle for the package's
incremental updates.
"""

import random
from dataclasses import replace
from fractions import Fraction

import pytest

from qcluster.cgvectors import (
    c_matrix_via_principal,
    cg_along_path,
    check_sign_coherence,
    det_fraction,
    g_tilde,
    init_state,
    step,
)
from qcluster.certify import enumerate_seeds
from qcluster.seeds import mutate_seed, transpose_seed
from qcluster.torus import generator
from qcluster.transport import Ratio, ratio_step, ratio_tropicalize


def _pos(x):
    return x if x > 0 else 0


def _oracle_cg(seed, path):
    """Reference run of both recurrences, in exact rationals."""
    n = seed.rank
    eps0 = [[seed.eps(i, j) for j in range(n)] for i in range(n)]
    c = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    g = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    cur = seed
    for k in path:
        eps = [[cur.eps(i, j) for j in range(n)] for i in range(n)]
        c2 = [row[:] for row in c]
        g2 = [row[:] for row in g]
        for i in range(n):
            for j in range(n):
                if j == k:
                    c2[i][j] = -c[i][k]
                else:
                    c2[i][j] = c[i][j] + c[i][k] * _pos(eps[k][j]) + _pos(-c[i][k]) * eps[k][j]
            first = (
                -g[i][k]
                + sum(g[i][l] * _pos(eps[l][k]) for l in range(n))
                - sum(eps0[i][l] * _pos(c[l][k]) for l in range(n))
            )
            second = (
                -g[i][k]
                + sum(g[i][l] * _pos(-eps[l][k]) for l in range(n))
                - sum(eps0[i][l] * _pos(-c[l][k]) for l in range(n))
            )
            assert first == second  # the two printed forms of the same column
            g2[i][k] = first
        c, g = c2, g2
        cur = mutate_seed(cur, k)
    for m in (c, g):
        assert all(x.denominator == 1 for row in m for x in row)
    return (
        [[int(x) for x in row] for row in c],
        [[int(x) for x in row] for row in g],
    )


@pytest.mark.parametrize("path", [(), (0,), (0, 1), (1, 0, 1), (0, 1, 0, 1, 0)])
def test_recurrences_match_the_reference(a2, path):
    state = cg_along_path(a2, path)
    c, g = _oracle_cg(a2, path)
    assert [list(r) for r in state.c] == c
    assert [list(r) for r in state.g] == g


def test_recurrences_match_on_random_walks(a3, b2, cycle, markov):
    rng = random.Random(11)
    for seed in (a3, b2, cycle, markov):
        for _ in range(6):
            path = [rng.choice(sorted(seed.unfrozen)) for _ in range(rng.randint(1, 7))]
            state = cg_along_path(seed, path)
            c, g = _oracle_cg(seed, path)
            assert [list(r) for r in state.c] == c
            assert [list(r) for r in state.g] == g
            # the dual track really is the transposed seed's own run
            ct, gt = _oracle_cg(transpose_seed(seed), path)
            assert [list(r) for r in state.c_t] == ct
            assert [list(r) for r in state.g_t] == gt


def test_state_bookkeeping(a2):
    state = init_state(a2)
    assert state.path == () and state.c == ((1, 0), (0, 1))
    nxt = step(state, 0)
    assert nxt.path == (0,)
    assert nxt.seed == mutate_seed(a2, 0)
    assert nxt.seed_t == transpose_seed(nxt.seed)


def test_g_tilde_is_the_transposed_dual_g(cycle):
    state = cg_along_path(cycle, (1, 3))
    gt = g_tilde(state)
    for i in range(4):
        for j in range(4):
            assert gt[i][j] == state.g_t[j][i]


def test_a2_period_gives_a_signed_permutation(a2):
    state = cg_along_path(a2, (0, 1, 0, 1, 0))
    assert state.c == ((0, 1), (1, 0))
    report = check_sign_coherence(state)
    assert report["ok"] and report["det_c"] == -1 and report["violations"] == []


def test_cycle_frozen_rows_stay_nonnegative(cycle):
    nodes, closed = enumerate_seeds(cycle, 8)
    assert closed
    for node in nodes:
        for i in (0, 2):
            assert node.cg.c[i][i] == 1
            assert all(x >= 0 for x in node.cg.c[i])


def test_corruption_is_reported(a2):
    state = cg_along_path(a2, (0, 1))
    bad = replace(state, c=((1, -2), (-1, 1)))
    report = check_sign_coherence(bad)
    assert not report["ok"]
    assert report["path"] == [0, 1]
    col = next(v for v in report["violations"] if v["kind"] == "c_column")
    assert col["index"] == 0 and col["vector"] == [1, -1]


def test_det_fraction_exact():
    assert det_fraction([[2, 1], [1, 1]]) == 1
    assert det_fraction([[1, 2], [2, 4]]) == 0
    assert det_fraction([[0, 1, 0], [0, 0, 1], [1, 0, 0]]) == 1
    assert det_fraction([[Fraction(1, 2), 0], [0, Fraction(2, 3)]]) == Fraction(1, 3)


def test_principal_block_matches_the_recurrence(a3, b2):
    rng = random.Random(2)
    for seed in (a3, b2):
        for _ in range(8):
            path = [rng.choice(sorted(seed.unfrozen)) for _ in range(rng.randint(0, 6))]
            assert c_matrix_via_principal(seed, path) == cg_along_path(seed, path).c


def _pullback_ratio_to_root(seeds, path, j):
    """The endpoint generator rewritten at the root, kept as a ratio."""
    r = Ratio.of(generator(seeds[-1], j))
    for k, s in zip(reversed(path), seeds[-2::-1]):
        r = ratio_step(s, k, r)
    return r


def test_tropicalized_pullbacks_recover_c(a2, cycle):
    for seed, depth in ((a2, 10), (cycle, 8)):
        nodes, closed = enumerate_seeds(seed, depth)
        assert closed
        for node in nodes:
            seeds = [seed]
            for k in node.path:
                seeds.append(mutate_seed(seeds[-1], k))
            for j in range(seed.rank):
                r = _pullback_ratio_to_root(seeds, node.path, j)
                for i in range(seed.rank):
                    assert ratio_tropicalize(r, i) == node.cg.c[i][j]


def test_tropicalized_pushforwards_recover_g_tilde(a2, cycle):
    for seed, depth in ((a2, 10), (cycle, 8)):
        nodes, _ = enumerate_seeds(seed, depth)
        for node in nodes:
            ratios = [Ratio.of(generator(seed, j)) for j in range(seed.rank)]
            cur = seed
            for k in node.path:
                cur = mutate_seed(cur, k)
                ratios = [ratio_step(cur, k, r) for r in ratios]
            gt = g_tilde(node.cg)
            for j, r in enumerate(ratios):
                for i in range(seed.rank):
                    assert ratio_tropicalize(r, i) == gt[i][j]
