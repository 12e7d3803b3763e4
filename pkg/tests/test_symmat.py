"""Braid matrices, minors, LU decompositions and slide rewriting."""
import random

import pytest

from braidcells.combinat import BraidWord, Permutation, delta_word, positive_lift
from braidcells.exactalg import RationalFunction, parse_rf, rat
from braidcells import symmat
from braidcells.symmat import (QQ, RF, PatternMismatch, SingularChartMinor,
                               SingularPrincipalMinor, back_to_standard,
                               braid_letter_matrix, braid_word_matrix,
                               delta_matrix_closed_form, det, diagonal_matrix,
                               generalized_lu, identity, is_diagonal,
                               is_upper_triangular, lu_decompose, mat, mat_inv,
                               mat_mul, minor, perm_matrix, principal_minor,
                               signed_perm_matrix, slide_upper_through,
                               symbolic_vars, transport_coords)


def rand_rat(rng):
    return rat(rng.randint(-9, 9)) / rng.randint(1, 9)


def naive_det(m):
    """Cofactor-expansion determinant, the independent oracle for minors."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * naive_det(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def test_letter_matrix_layout():
    z = RationalFunction.var("z")
    b = braid_letter_matrix(2, 1, z, RF)
    assert b == mat([[z, -RationalFunction.one], [RationalFunction.one,
                                                  RationalFunction.zero]])
    b3 = braid_letter_matrix(3, 2, z, RF)
    assert b3[0][0] == RationalFunction.one and b3[1][1] == z
    assert b3[1][2] == -RationalFunction.one and b3[2][1] == RationalFunction.one
    assert det(b3) == RationalFunction.one


def test_letter_matrix_determinant_one():
    rng = random.Random(0)
    for _ in range(20):
        k = rng.randint(2, 5)
        i = rng.randint(1, k - 1)
        assert det(braid_letter_matrix(k, i, rand_rat(rng))) == 1


def test_word_matrix_empty_and_det():
    beta = BraidWord(3, [])
    assert braid_word_matrix(beta, []) == identity(3)
    rng = random.Random(1)
    for _ in range(20):
        k = rng.randint(2, 4)
        n = rng.randint(1, 8)
        word = BraidWord(k, [rng.randint(1, k - 1) for _ in range(n)])
        m = braid_word_matrix(word, [rand_rat(rng) for _ in range(n)])
        assert det(m) == 1


def test_word_matrix_against_plain_product():
    rng = random.Random(2)
    for _ in range(20):
        k = rng.randint(2, 4)
        n = rng.randint(1, 6)
        word = BraidWord(k, [rng.randint(1, k - 1) for _ in range(n)])
        vals = [rand_rat(rng) for _ in range(n)]
        prod = identity(k)
        for i, v in zip(word.letters, vals):
            prod = mat_mul(prod, braid_letter_matrix(k, i, v))
        assert braid_word_matrix(word, vals) == prod


def test_minor_matches_cofactor_expansion():
    rng = random.Random(3)
    for _ in range(15):
        k = rng.randint(2, 4)
        m = mat([[rand_rat(rng) for _ in range(k)] for _ in range(k)])
        rows = sorted(rng.sample(range(1, k + 1), rng.randint(1, k)))
        cols = sorted(rng.sample(range(1, k + 1), len(rows)))
        sub = [[m[r - 1][c - 1] for c in cols] for r in rows]
        assert minor(m, rows, cols) == naive_det(sub)


def test_minor_symbolic_matches_cofactor():
    beta = BraidWord.parse(4, "2 1 3 2 2")
    m = braid_word_matrix(beta, symbolic_vars("z", 5), RF)
    assert minor(m, [3, 4], [1, 2]) == naive_det([[m[2][0], m[2][1]],
                                                  [m[3][0], m[3][1]]])


def test_lu_identity_and_2x2():
    ident = identity(2, RF)
    l, u = lu_decompose(ident)
    assert l == ident and u == ident
    z = RationalFunction.var("z")
    b = braid_letter_matrix(2, 1, z, RF)
    l, u = lu_decompose(b)
    assert l[1][0] == parse_rf("1/z")
    assert u[1][1] == parse_rf("1/z")
    assert mat_mul(l, u) == b


def test_lu_raises_on_singular_minor():
    m = mat([[rat(0), rat(1)], [rat(1), rat(0)]])
    with pytest.raises(SingularPrincipalMinor) as err:
        lu_decompose(m)
    assert err.value.index == 1


def test_lu_matches_elimination_oracle():
    rng = random.Random(4)
    for _ in range(20):
        k = rng.randint(2, 4)
        n = rng.randint(1, 8)
        word = BraidWord(k, [rng.randint(1, k - 1) for _ in range(n)])
        m = braid_word_matrix(word, [rand_rat(rng) for _ in range(n)])
        try:
            l, u = lu_decompose(m)
        except SingularPrincipalMinor:
            continue
        # independent oracle: plain Gaussian elimination
        k2 = len(m)
        lo = [[rat(1) if i == j else rat(0) for j in range(k2)] for i in range(k2)]
        uo = [list(r) for r in m]
        for c in range(k2):
            for r in range(c + 1, k2):
                f = uo[r][c] / uo[c][c]
                lo[r][c] = f
                uo[r] = [a - f * b for a, b in zip(uo[r], uo[c])]
        assert l == mat(lo) and u == mat(uo)


def test_generalized_lu_cases():
    k = 3
    w0 = Permutation.longest(k)
    rng = random.Random(5)
    # w = w0 reduces to the plain LU with an identity permutation factor
    m = braid_word_matrix(BraidWord(3, [1, 2, 1]), [rat(2), rat(3), rat(5)])
    l, u = generalized_lu(m, w0)
    assert mat_mul(l, u) == m
    # w = e on the matrix of w0 gives trivial factors
    pw0 = perm_matrix(w0)
    l, u = generalized_lu(pw0, Permutation.identity(k))
    assert l == identity(k) and u == identity(k)
    # random matrices: re-multiplication through the permutation factor
    w = Permutation.s(3, 1)
    found = 0
    while found < 5:
        m = mat([[rand_rat(rng) for _ in range(k)] for _ in range(k)])
        try:
            l, u = generalized_lu(m, w)
        except (SingularChartMinor, ZeroDivisionError):
            continue
        found += 1
        p = perm_matrix(w * w0)
        assert mat_mul(p, mat_mul(l, u)) == m


def test_generalized_lu_minor_error():
    m = mat([[rat(0), rat(1)], [rat(1), rat(0)]])
    with pytest.raises(SingularChartMinor):
        generalized_lu(m, Permutation.longest(2))


def test_slide_diagonal_2x2():
    u = diagonal_matrix([rat(2), rat(3)])
    word = BraidWord(2, [1])
    primed, u_out = slide_upper_through(u, word, [rat(6)])
    assert primed == [rat(4)]  # (u1/u2) z
    assert u_out == diagonal_matrix([rat(3), rat(2)])


def test_slide_identity_matrix():
    word = BraidWord(3, [1, 2, 1])
    vals = [rat(1), rat(2), rat(3)]
    primed, u_out = slide_upper_through(identity(3), word, vals)
    assert primed == vals and u_out == identity(3)


def test_slide_remultiplies_and_permutes_diagonal():
    rng = random.Random(6)
    for _ in range(30):
        k = rng.randint(2, 4)
        n = rng.randint(1, 4)
        word = BraidWord(k, [rng.randint(1, k - 1) for _ in range(n)])
        rows = [[rat(0)] * k for _ in range(k)]
        for i in range(k):
            rows[i][i] = rat(rng.choice([1, 2, 3, -1, -2])) / rng.randint(1, 3)
            for j in range(i + 1, k):
                rows[i][j] = rand_rat(rng)
        u = mat(rows)
        zs = symbolic_vars("z", n)
        urf = mat([[RationalFunction.const(x) for x in row] for row in u])
        primed, u_out = slide_upper_through(urf, word, zs)
        lhs = mat_mul(urf, braid_word_matrix(word, zs, RF))
        rhs = mat_mul(braid_word_matrix(word, primed, RF), u_out)
        assert lhs == rhs
        pi = word.permutation()
        for p in range(k):
            assert u_out[p][p] == urf[pi(p + 1) - 1][pi(p + 1) - 1]


def test_delta_closed_form_small():
    zs = symbolic_vars("z", 1)
    assert delta_matrix_closed_form(2, zs, RF) == braid_word_matrix(
        delta_word(2), zs, RF)
    zs = symbolic_vars("z", 3)
    m = delta_matrix_closed_form(3, zs, RF)
    assert [[str(x) for x in row] for row in m] == [
        ["z2", "-z3", "1"], ["z1", "-1", "0"], ["1", "0", "0"]]


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_delta_closed_form_equals_product(k):
    zs = symbolic_vars("z", k * (k - 1) // 2)
    assert delta_matrix_closed_form(k, zs, RF) == braid_word_matrix(
        delta_word(k), zs, RF)


def test_signed_perm_matrix_longest():
    w = signed_perm_matrix(Permutation.longest(3))
    assert w == mat([[rat(0), rat(0), rat(1)], [rat(0), rat(-1), rat(0)],
                     [rat(1), rat(0), rat(0)]])


def test_transport_coords_braid_move():
    # B_1(x) B_2(y) B_1(z) = B_2(z) B_1(xz - y) B_2(x), symbolically
    x, y, z = symbolic_vars("c", 3)
    lhs = braid_word_matrix(BraidWord(3, [1, 2, 1]), [x, y, z], RF)
    out = transport_coords((1, 2, 1), [x, y, z], (2, 1, 2))
    rhs = braid_word_matrix(BraidWord(3, [2, 1, 2]), out, RF)
    assert lhs == rhs


def test_transport_coords_random_words():
    rng = random.Random(7)
    from braidcells.combinat import all_permutations
    for w in all_permutations(4):
        word = positive_lift(w)
        if len(word) < 2:
            continue
        # walk to some other reduced word via the matrix equality
        vals = [rand_rat(rng) for _ in range(len(word))]
        other = positive_lift(w.inverse()).letters[::-1]
        other = tuple(other)
        out = transport_coords(word.letters, vals, other)
        assert braid_word_matrix(word, vals) == braid_word_matrix(
            BraidWord(4, other), out)


def test_back_to_standard_roundtrip():
    rng = random.Random(8)
    k = 3
    dw = delta_word(k)
    for _ in range(20):
        c = [rand_rat(rng) for _ in range(len(dw))]
        d = [rat(rng.choice([1, 2, -1, 3])) for _ in range(k)]
        m = mat_mul(diagonal_matrix(d), mat_inv(braid_word_matrix(dw, c)))
        y, diag = back_to_standard(m, dw)
        assert y == c
        assert diag == d
        assert is_diagonal(mat_mul(m, braid_word_matrix(dw, y)))


def test_back_to_standard_other_word():
    rng = random.Random(9)
    k = 3
    dw = delta_word(k)
    other = BraidWord(3, [1, 2, 1])
    for _ in range(10):
        c = [rand_rat(rng) for _ in range(len(dw))]
        m = mat_inv(braid_word_matrix(dw, c))
        y, diag = back_to_standard(m, other)
        assert is_diagonal(mat_mul(m, braid_word_matrix(other, y)))


def test_back_to_standard_zero_point():
    k = 3
    dw = delta_word(k)
    m = mat_inv(braid_word_matrix(dw, [rat(0)] * 3))
    y, _ = back_to_standard(m, dw)
    assert y == [rat(0)] * 3


def test_back_to_standard_pattern_mismatch():
    with pytest.raises(PatternMismatch):
        back_to_standard(identity(3), delta_word(3))


def test_cauchy_binet_invariance_symbolic():
    import itertools
    rng = random.Random(10)
    for _ in range(10):
        k = rng.randint(2, 4)
        m_rat = mat([[rand_rat(rng) for _ in range(k)] for _ in range(k)])
        m = mat([[RationalFunction.const(x) for x in row] for row in m_rat])
        z = RationalFunction.var("z")
        for j in range(1, k):
            mb = mat_mul(m, braid_letter_matrix(k, j, z, RF))
            for i in range(1, k):
                if i == j:
                    continue
                for rows in itertools.combinations(range(1, k + 1), i):
                    assert minor(mb, rows, range(1, i + 1)) == \
                        minor(m, rows, range(1, i + 1))
