from __future__ import annotations

import numpy as np
import pytest

from trilink import (
    EdgeList,
    build_graph,
    enumerate_triangles,
    reinforced_matrix_apply,
    tensor_bilinear,
    tensor_row_sums,
)

import oracles


def single_triangle():
    return build_graph(EdgeList(((0, 1), (1, 2), (0, 2))))


def test_k5_count(k5):
    assert enumerate_triangles(k5).count == 10


def test_path_no_triangles(path3):
    ts = enumerate_triangles(path3)
    assert ts.count == 0
    assert ts.triples.shape == (0, 3)


def test_couple_triangles(couple):
    ts = enumerate_triangles(couple)
    assert ts.count == 6
    ix = couple.label_index
    blues = {ix["b1"], ix["b2"]}
    red = ix["r"]
    for a, b, c in ts.triples:
        tri = {int(a), int(b), int(c)}
        assert blues < tri
        assert red not in tri


def test_canonical_unique_and_matches_brute_force():
    rng = np.random.default_rng(5)
    for _ in range(60):
        g = oracles.random_graph(rng)
        ts = enumerate_triangles(g)
        assert all(a < b < c for a, b, c in ts.triples)
        got = [tuple(int(x) for x in row) for row in ts.triples]
        assert len(set(got)) == len(got)
        assert got == oracles.brute_triangles(g)


def test_bilinear_single_triangle_ones():
    g = single_triangle()
    ts = enumerate_triangles(g)
    ones = np.ones(3)
    assert np.array_equal(tensor_bilinear(ts, ones, ones), [2, 2, 2])


def test_bilinear_zero_vector(k5):
    ts = enumerate_triangles(k5)
    assert np.array_equal(tensor_bilinear(ts, np.zeros(5), np.ones(5)), np.zeros(5))


def test_bilinear_k4_ones(k4):
    ts = enumerate_triangles(k4)
    ones = np.ones(4)
    t = oracles.dense_tensor(ts.triples, 4)
    expected = oracles.dense_bilinear(t, ones, ones)
    assert np.array_equal(expected, [6, 6, 6, 6])
    assert np.array_equal(tensor_bilinear(ts, ones, ones), expected)


def test_row_sums_examples():
    g = single_triangle()
    ts = enumerate_triangles(g)
    assert np.array_equal(tensor_row_sums(ts, np.ones(3)), [2, 2, 2])
    e1 = np.zeros(3)
    e1[0] = 1.0
    assert np.array_equal(tensor_row_sums(ts, e1), [0, 1, 1])


def test_row_sums_empty(path3):
    ts = enumerate_triangles(path3)
    assert np.array_equal(tensor_row_sums(ts, np.ones(3)), np.zeros(3))


def test_length_mismatch_errors(k5):
    ts = enumerate_triangles(k5)
    with pytest.raises(ValueError):
        tensor_bilinear(ts, np.ones(4), np.ones(5))
    with pytest.raises(ValueError):
        tensor_row_sums(ts, np.ones(6))


def test_reinforced_apply_gamma_zero(couple):
    ts = enumerate_triangles(couple)
    rng = np.random.default_rng(0)
    x, y = rng.random(couple.n), rng.random(couple.n)
    got = reinforced_matrix_apply(couple, ts, x, y, 0.0)
    assert np.allclose(got, couple.adjacency @ y)


def test_reinforced_apply_single_triangle():
    g = single_triangle()
    ts = enumerate_triangles(g)
    ones = np.ones(3)
    assert np.array_equal(reinforced_matrix_apply(g, ts, ones, ones, 1.0), [4, 4, 4])


def test_reinforced_apply_matches_dense(couple):
    ts = enumerate_triangles(couple)
    t = oracles.dense_tensor(ts.triples, couple.n)
    a = oracles.adjacency_dense(couple)
    rng = np.random.default_rng(3)
    for gamma in (0.5, 1.0, 2.5):
        x, y = rng.random(couple.n), rng.random(couple.n)
        want = (gamma * oracles.dense_tx(t, x) + a) @ y
        assert np.allclose(reinforced_matrix_apply(couple, ts, x, y, gamma), want, atol=1e-12)
    with pytest.raises(ValueError):
        reinforced_matrix_apply(couple, ts, x, y, -1.0)


def test_bilinear_matches_dense_and_is_bilinear():
    rng = np.random.default_rng(17)
    for _ in range(40):
        g = oracles.random_graph(rng)
        ts = enumerate_triangles(g)
        t = oracles.dense_tensor(ts.triples, g.n)
        x, y = rng.normal(size=g.n), rng.normal(size=g.n)
        assert np.allclose(tensor_bilinear(ts, x, y), oracles.dense_bilinear(t, x, y), atol=1e-12)
        assert np.allclose(tensor_row_sums(ts, x), oracles.dense_tx(t, x).sum(axis=1), atol=1e-12)
        # bilinearity in each argument
        a, b = rng.normal(), rng.normal()
        x2 = rng.normal(size=g.n)
        lhs = tensor_bilinear(ts, a * x + b * x2, y)
        rhs = a * tensor_bilinear(ts, x, y) + b * tensor_bilinear(ts, x2, y)
        assert np.allclose(lhs, rhs, atol=1e-10)
        lhs = tensor_bilinear(ts, x, a * y + b * x2)
        rhs = a * tensor_bilinear(ts, x, y) + b * tensor_bilinear(ts, x, x2)
        assert np.allclose(lhs, rhs, atol=1e-10)


def test_tx_matrix_is_symmetric():
    # probe T[x] entries through the bilinear form: e_i' T[x] e_j == e_j' T[x] e_i
    rng = np.random.default_rng(23)
    for _ in range(10):
        g = oracles.random_graph(rng, max_n=8)
        ts = enumerate_triangles(g)
        x = rng.random(g.n)
        for i in range(g.n):
            ei = np.zeros(g.n)
            ei[i] = 1.0
            col = tensor_bilinear(ts, x, ei)
            for j in range(g.n):
                ej = np.zeros(g.n)
                ej[j] = 1.0
                assert abs(col[j] - tensor_bilinear(ts, x, ej)[i]) < 1e-12
