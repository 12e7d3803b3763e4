"""Integer lattice algorithms and the quasi-isomorphism witness search."""
import random

import pytest

from braidcells.cluster import ExtendedExchangeMatrix
from braidcells.latticeiso import (DimensionMismatch, PrincipalMismatch,
                                   WitnessMatrix, find_witness, hnf_row,
                                   int_det, left_kernel_basis, smith_diagonal,
                                   solve_left, variable_map_from_witness,
                                   verify_witness)


def matmul(a, b):
    return [[sum(a[i][t] * b[t][j] for t in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


def exch(rows, cols, entries):
    return ExtendedExchangeMatrix(tuple(rows), tuple(cols),
                                  tuple(tuple(r) for r in entries))


PAPER_Q = [
    [1, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 1]]

BCIRC = exch([3, 6, 1, 2, 4, 5, 7, 8, 9], [3, 6],
             [[0, 0], [0, 0], [0, 0], [0, 0], [1, -1], [-1, 1],
              [0, 1], [0, -1], [0, 0]])
BPROD = exch([3, 6, 1, 2, 4, 5, 7, 8, 9], [3, 6],
             [[0, 0], [0, 0], [0, 0], [0, 0], [1, 0], [-1, 0],
              [0, 1], [0, -1], [0, 0]])


def test_int_det_small():
    assert int_det([[2, 0], [0, 3]]) == 6
    assert int_det([[0, 1], [1, 0]]) == -1
    assert int_det([[1, 2], [2, 4]]) == 0


def test_hnf_properties():
    rng = random.Random(0)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
        h, u, pivots = hnf_row(m)
        assert matmul(u, m) == h
        assert abs(int_det(u)) == 1
        for r, c in enumerate(pivots):
            assert h[r][c] > 0
            # zeros below each pivot; entries above reduced into [0, pivot)
            assert all(h[r2][c] == 0 for r2 in range(r + 1, rows))
            assert all(0 <= h[r2][c] < h[r][c] for r2 in range(r))


def test_left_kernel():
    rng = random.Random(1)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 4)
        m = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
        ker = left_kernel_basis(m)
        for v in ker:
            assert all(sum(v[i] * m[i][j] for i in range(rows)) == 0
                       for j in range(cols))


def test_solve_left():
    rng = random.Random(2)
    for _ in range(30):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 4)
        m = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
        x = [rng.randint(-3, 3) for _ in range(rows)]
        t = [sum(x[i] * m[i][j] for i in range(rows)) for j in range(cols)]
        x2 = solve_left(m, t)
        assert x2 is not None
        assert [sum(x2[i] * m[i][j] for i in range(rows))
                for j in range(cols)] == t


def test_smith_diagonal():
    assert smith_diagonal([[2, 0], [0, 3]]) == [1, 6]
    assert smith_diagonal([[2, 0], [0, 2]]) == [2, 2]
    assert smith_diagonal([[1, 0], [0, 0]]) == [1]


def test_verify_witness_identity():
    b = BCIRC
    n, m = b.n_mutable, b.n_frozen
    rows = [[1 if i == j else 0 for j in range(n + m)] for i in range(n + m)]
    r = WitnessMatrix(n, m, rows)
    assert verify_witness(r, b, b)


def test_verify_witness_paper_example():
    rows = [[1 if i == j else 0 for j in range(9)] for i in range(2)]
    for k in range(7):
        rows.append([0, 0] + PAPER_Q[k])
    r = WitnessMatrix(2, 7, rows)
    assert verify_witness(r, BCIRC, BPROD)
    assert r.det_q() == 1


def test_verify_witness_rejects_bad_determinant():
    rows = [[1 if i == j else 0 for j in range(9)] for i in range(2)]
    q = [row[:] for row in PAPER_Q]
    q[0][0] = 2
    for k in range(7):
        rows.append([0, 0] + q[k])
    r = WitnessMatrix(2, 7, rows)
    assert not verify_witness(r, BCIRC, BPROD)


def test_find_witness_identity_case():
    r = find_witness(BCIRC, BCIRC, bound=1)
    assert r is not None and verify_witness(r, BCIRC, BCIRC)


def test_find_witness_paper_case():
    r = find_witness(BCIRC, BPROD, bound=3)
    assert r is not None
    assert verify_witness(r, BCIRC, BPROD)
    assert abs(r.det_q()) == 1


def test_find_witness_reverse_direction():
    r = find_witness(BPROD, BCIRC, bound=3)
    assert r is not None and verify_witness(r, BPROD, BCIRC)


def test_find_witness_three_vertex_example():
    # path a -> 1 -> b against the one-arrow quiver a -> 1: the map
    # y1 -> x1/x_b, y_a -> x_a/x_b, y_b -> x_b carries one to the other
    src = exch([1, 2, 3], [1], [[0], [1], [-1]])    # a -> 1 -> b
    tgt = exch([1, 2, 3], [1], [[0], [1], [0]])     # a -> 1, b isolated
    r = find_witness(src, tgt, bound=2)
    assert r is not None and verify_witness(r, src, tgt)
    names = ["y1", "ya", "yb"]
    mapping = variable_map_from_witness(r, names)
    assert mapping[0].get("y1") == 1


def test_find_witness_dimension_mismatch():
    small = exch([1, 2], [1], [[0], [1]])
    with pytest.raises(DimensionMismatch):
        find_witness(BCIRC, small)


def test_find_witness_principal_mismatch():
    a = exch([1, 2, 3], [1, 2], [[0, 1], [-1, 0], [1, 1]])
    b = exch([1, 2, 3], [1, 2], [[0, -1], [1, 0], [1, 1]])
    with pytest.raises(PrincipalMismatch):
        find_witness(a, b)


def test_witness_composition_preserves_shape():
    r1 = find_witness(BCIRC, BPROD, bound=3)
    r2 = find_witness(BPROD, BCIRC, bound=3)
    prod = matmul(r2.rows, r1.rows)
    comp = WitnessMatrix(2, 7, prod)
    assert verify_witness(comp, BCIRC, BCIRC)


def test_really_full_rank_guard():
    # rows of the source span the full column lattice, so every target row
    # admits an integer solution
    diag = smith_diagonal(BCIRC.to_lists())
    assert diag == [1, 1]
    rng = random.Random(3)
    src = BCIRC.to_lists()
    for _ in range(10):
        target = [rng.randint(-4, 4) for _ in range(2)]
        assert solve_left(src, target) is not None


def test_variable_map_identity():
    n, m = BCIRC.n_mutable, BCIRC.n_frozen
    rows = [[1 if i == j else 0 for j in range(n + m)] for i in range(n + m)]
    r = WitnessMatrix(n, m, rows)
    names = [f"x{i}" for i in range(n + m)]
    mapping = variable_map_from_witness(r, names)
    assert all(mapping[j] == {names[j]: 1} for j in range(n + m))
