"""Matrices over exact fields: braid matrices, minors, LU, slides.

Matrices are tuples of tuples.  Every function is generic over the entry
field: entries may be ``gmpy2.mpq`` rationals (point-level computations) or
:class:`~braidcells.exactalg.RationalFunction` values (symbolic ones); the
entry type is selected by the ``ring`` argument of the constructors.

The braid letter matrix ``B_i(z)`` is the identity except for the 2x2 block
``[[z, -1], [1, 0]]`` in rows/columns i, i+1; a word maps to the product of
its letter matrices read left to right.  The matrix of a permutation w has a
single 1 in row w(j) of column j.  For the longest element a *signed* variant
``B_Delta(0, ..., 0)`` shows up in normalizations; it is available as
``signed_perm_matrix``.
"""
from __future__ import annotations

from typing import Callable, Sequence

from .combinat import BraidWord, Permutation, delta_word, positive_lift
from .exactalg import (Polynomial, Rational, RationalFunction, poly_div, rat)


class SingularPrincipalMinor(ArithmeticError):
    def __init__(self, i: int):
        super().__init__(f"principal minor {i} vanishes identically")
        self.index = i


class SingularChartMinor(ArithmeticError):
    def __init__(self, i: int):
        super().__init__(f"chart minor {i} vanishes identically")
        self.index = i


class PatternMismatch(ValueError):
    """The matrix does not fit the anti-triangular normal-form pattern."""


class Ring:
    """Just enough structure to build matrices generically."""

    def __init__(self, zero, one, of: Callable):
        self.zero = zero
        self.one = one
        self.of = of


QQ = Ring(rat(0), rat(1), rat)
RF = Ring(RationalFunction.zero, RationalFunction.one, lambda v: _rf_of(v))


def _rf_of(v):
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, Polynomial):
        return RationalFunction(v)
    if isinstance(v, str):
        return RationalFunction.var(v)
    return RationalFunction.const(v)


Matrix = tuple  # rows as tuples; entries in a common field


def mat(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(k: int, ring: Ring = QQ) -> Matrix:
    return mat([[ring.one if i == j else ring.zero for j in range(k)]
                for i in range(k)])


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    return mat([[_dot(a[i], b, j, m) for j in range(p)] for i in range(n)])


def _dot(row, b, j, m):
    acc = row[0] * b[0][j]
    for t in range(1, m):
        acc = acc + row[t] * b[t][j]
    return acc


def mat_transpose(a: Matrix) -> Matrix:
    return mat(zip(*a))


def mat_inv(a: Matrix, ring: Ring = QQ) -> Matrix:
    """Gauss-Jordan inverse over the entry field."""
    k = len(a)
    work = [list(row) + [ring.one if i == j else ring.zero for j in range(k)]
            for i, row in enumerate(a)]
    for c in range(k):
        piv = next((r for r in range(c, k) if work[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        work[c], work[piv] = work[piv], work[c]
        inv = work[c][c]
        work[c] = [x / inv for x in work[c]]
        for r in range(k):
            if r != c and work[r][c]:
                f = work[r][c]
                work[r] = [x - f * y for x, y in zip(work[r], work[c])]
    return mat(row[k:] for row in work)


def is_upper_triangular(m: Matrix) -> bool:
    return all(not m[i][j] for i in range(len(m)) for j in range(i))


def is_lower_triangular(m: Matrix) -> bool:
    return all(not m[i][j] for i in range(len(m)) for j in range(i + 1, len(m)))


def is_diagonal(m: Matrix) -> bool:
    return is_upper_triangular(m) and is_lower_triangular(m)


def perm_matrix(w: Permutation, ring: Ring = QQ) -> Matrix:
    """Unsigned permutation matrix: 1 in row w(j), column j."""
    k = w.k
    rows = [[ring.zero] * k for _ in range(k)]
    for j in range(1, k + 1):
        rows[w(j) - 1][j - 1] = ring.one
    return mat(rows)


def braid_letter_matrix(k: int, i: int, value, ring: Ring = QQ) -> Matrix:
    """B_i(z): identity with block [[z, -1], [1, 0]] at rows/columns i, i+1."""
    if not 1 <= i <= k - 1:
        raise ValueError(f"generator index {i} out of range for k={k}")
    rows = [[ring.one if r == c else ring.zero for c in range(k)]
            for r in range(k)]
    rows[i - 1][i - 1] = ring.of(value)
    rows[i - 1][i] = ring.zero - ring.one
    rows[i][i - 1] = ring.one
    rows[i][i] = ring.zero
    return mat(rows)


def braid_word_matrix(beta: BraidWord, values: Sequence, ring: Ring = QQ) -> Matrix:
    """Product of letter matrices of the word, one value per letter."""
    if len(values) != len(beta):
        raise ValueError("need exactly one value per letter")
    m = identity(beta.k, ring)
    for i, v in zip(beta.letters, values):
        m = _mul_letter_right(m, i, ring.of(v), ring)
    return m


def _mul_letter_right(m: Matrix, i: int, z, ring: Ring) -> Matrix:
    """m * B_i(z) touches only columns i, i+1."""
    i0 = i - 1
    rows = []
    for row in m:
        row = list(row)
        a, b = row[i0], row[i0 + 1]
        row[i0] = z * a + b
        row[i0 + 1] = ring.zero - a
        rows.append(row)
    return mat(rows)


def braid_chain_matrices(beta: BraidWord, values: Sequence, ring: Ring = QQ) -> list[Matrix]:
    """All prefix products, from the identity to the full word matrix."""
    out = [identity(beta.k, ring)]
    for i, v in zip(beta.letters, values):
        out.append(_mul_letter_right(out[-1], i, ring.of(v), ring))
    return out


def symbolic_vars(prefix: str, n: int, start: int = 1) -> list[RationalFunction]:
    return [RationalFunction.var(f"{prefix}{j}") for j in range(start, start + n)]


def signed_perm_matrix(w: Permutation, ring: Ring = QQ) -> Matrix:
    """The signed lift B_{word(w)}(0,...,0) of w (canonical reduced word)."""
    word = positive_lift(w)
    return braid_word_matrix(word, [ring.zero] * len(word), ring)


# -- determinants and minors -------------------------------------------------

def _bareiss(rows: list[list], exact_div: Callable, zero, one):
    """Fraction-free Bareiss determinant; entries must form an integral domain
    with the exact division used at each step."""
    n = len(rows)
    if n == 0:
        return one
    m = [list(r) for r in rows]
    sign = 1
    prev = one
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for r in range(c + 1, n):
            for s in range(c + 1, n):
                num = m[r][s] * m[c][c] - m[r][c] * m[c][s]
                m[r][s] = exact_div(num, prev)
            m[r][c] = zero
        prev = m[c][c]
    d = m[n - 1][n - 1]
    return d if sign == 1 else zero - d


def _poly_exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    q = poly_div(a, b)
    if q is None:
        raise ArithmeticError("Bareiss division was not exact")
    return q


def det(m: Matrix):
    """Exact determinant: Bareiss over rationals or over polynomials after
    clearing each row's denominators (rational-function entries)."""
    if not m:
        return rat(1)
    e = m[0][0]
    if isinstance(e, RationalFunction):
        num_rows = []
        den = Polynomial.one
        for row in m:
            rden = Polynomial.one
            for x in row:
                rden = rden * x.den
            num_rows.append([(x.num * _poly_exact_div(rden, x.den)) for x in row])
            den = den * rden
        d = _bareiss(num_rows, _poly_exact_div, Polynomial.zero, Polynomial.one)
        return RationalFunction(d, den)
    return _bareiss([list(r) for r in m], lambda a, b: a / b, rat(0), rat(1))


def minor(m: Matrix, rows: Sequence[int], cols: Sequence[int]):
    """Determinant of the submatrix on 1-based row/column index sets."""
    rows = sorted(rows)
    cols = sorted(cols)
    if len(rows) != len(cols):
        raise ValueError("row and column sets must have equal size")
    sub = [[m[r - 1][c - 1] for c in cols] for r in rows]
    return det(mat(sub))


def principal_minor(m: Matrix, i: int):
    return minor(m, range(1, i + 1), range(1, i + 1))


# -- LU decompositions --------------------------------------------------------

def lu_decompose(m: Matrix, ring: Ring | None = None):
    """Unique L (unit lower) and U (upper) with m = L U.

    Entries are computed by the quotient-of-minors formulas
    ``L[i][j] = D([j-1]+{i}, [j]) / D([j],[j])`` and
    ``U[i][j] = D([i], [i-1]+{j}) / D([i-1],[i-1])`` so denominators are
    exactly the principal minors.  Raises :class:`SingularPrincipalMinor`
    when one of those vanishes.
    """
    k = len(m)
    ring = ring or _ring_of(m)
    pm = [ring.one]
    for i in range(1, k + 1):
        d = principal_minor(m, i)
        if not d:
            raise SingularPrincipalMinor(i)
        pm.append(d)
    lrows = [[ring.one if i == j else ring.zero for j in range(k)] for i in range(k)]
    urows = [[ring.zero] * k for _ in range(k)]
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i > j:
                lrows[i - 1][j - 1] = minor(m, list(range(1, j)) + [i],
                                            range(1, j + 1)) / pm[j]
            else:
                urows[i - 1][j - 1] = minor(m, range(1, i + 1),
                                            list(range(1, i)) + [j]) / pm[i - 1]
    return mat(lrows), mat(urows)


def _ring_of(m: Matrix) -> Ring:
    return RF if isinstance(m[0][0], RationalFunction) else QQ


def generalized_lu(m: Matrix, w: Permutation, ring: Ring | None = None):
    """L, U with m = P L U where P is the (unsigned) matrix of w*w0.

    Exists iff the flag of m is transverse to the coordinate flag of w, i.e.
    iff the minors on rows ``w w0 [i]`` and columns ``[i]`` are nonzero.
    """
    k = len(m)
    ring = ring or _ring_of(m)
    v = w * Permutation.longest(k)
    for i in range(1, k + 1):
        if not minor(m, [v(t) for t in range(1, i + 1)], range(1, i + 1)):
            raise SingularChartMinor(i)
    p = perm_matrix(v, ring)
    return lu_decompose(mat_mul(mat_transpose(p), m), ring)


def slide_upper_through(u: Matrix, beta: BraidWord, values: Sequence,
                        ring: Ring | None = None):
    """Rewrite U * B_word(values) as B_word(primed) * U'.

    Requires U upper-triangular with invertible diagonal; one closed-form
    2x2 step per letter, ``z' = (U[i][i] z + U[i][i+1]) / U[i+1][i+1]``.
    Returns (primed values, U').  The diagonal of U' is that of U permuted
    by the image of the word.
    """
    ring = ring or _ring_of(u)
    if not is_upper_triangular(u):
        raise ValueError("slide requires an upper-triangular matrix")
    k = len(u)
    cur = [list(r) for r in u]
    primed = []
    for i, z in zip(beta.letters, values):
        z = ring.of(z)
        i0 = i - 1
        zp = (cur[i0][i0] * z + cur[i0][i0 + 1]) / cur[i0 + 1][i0 + 1]
        # V = cur * B_i(z), then rows i, i+1 of U' = B_i(zp)^{-1} V
        v = [row[:] for row in cur]
        for r in range(k):
            a, b = cur[r][i0], cur[r][i0 + 1]
            v[r][i0] = z * a + b
            v[r][i0 + 1] = ring.zero - a
        new = [row[:] for row in v]
        new[i0] = v[i0 + 1][:]
        new[i0 + 1] = [zp * b - a for a, b in zip(v[i0], v[i0 + 1])]
        cur = new
        primed.append(zp)
    return primed, mat(cur)


# -- the closed form of the longest-element word matrix -----------------------

def _delta_positions(k: int) -> dict[tuple[int, int], int]:
    """0-based (row, col) -> 1-based variable index in delta_word order."""
    pos = {}
    for j in range(1, k):
        s = (j - 1) * k - (j - 1) * j // 2
        for i in range(1, k - j + 1):
            pos[(i - 1, j - 1)] = s + (k - j + 1 - i)
    return pos


def delta_matrix_closed_form(k: int, values: Sequence, ring: Ring = QQ) -> Matrix:
    """The anti-triangular matrix equal to the word matrix of delta_word(k).

    Column j holds the variables with alternating sign ``(-1)^(j+1)`` and a
    ``(-1)^(j+1)`` pivot on the antidiagonal; everything below the
    antidiagonal is zero.
    """
    n = k * (k - 1) // 2
    if len(values) != n:
        raise ValueError(f"need {n} values")
    values = [ring.of(v) for v in values]
    rows = [[ring.zero] * k for _ in range(k)]
    for (i0, j0), idx in _delta_positions(k).items():
        v = values[idx - 1]
        rows[i0][j0] = v if j0 % 2 == 0 else ring.zero - v
    for j in range(1, k + 1):
        rows[k - j][j - 1] = ring.one if j % 2 == 1 else ring.zero - ring.one
    return mat(rows)


# -- braid-move transport ------------------------------------------------------

def _word_neighbors(word: tuple[int, ...]):
    for p in range(len(word) - 1):
        if abs(word[p] - word[p + 1]) >= 2:
            yield word[:p] + (word[p + 1], word[p]) + word[p + 2:], ("c", p)
    for p in range(len(word) - 2):
        if word[p] == word[p + 2] and abs(word[p] - word[p + 1]) == 1:
            yield word[:p] + (word[p + 1], word[p], word[p + 1]) + word[p + 3:], ("b", p)


def transport_coords(word_from: Sequence[int], coords: Sequence,
                     word_to: Sequence[int]) -> list:
    """Carry coordinates through braid moves from one reduced word to another.

    A commutation move swaps the two values; the relation
    ``B_a(x) B_b(y) B_a(z) = B_b(z) B_a(xz - y) B_b(x)`` handles the braid
    move (both directions, the map being an involution).
    """
    src, dst = tuple(word_from), tuple(word_to)
    if src == dst:
        return list(coords)
    from collections import deque
    seen = {src: None}
    dq = deque([src])
    while dq:
        w = dq.popleft()
        if w == dst:
            break
        for nw, move in _word_neighbors(w):
            if nw not in seen:
                seen[nw] = (w, move)
                dq.append(nw)
    if dst not in seen:
        raise ValueError("words are not related by braid moves")
    path = []
    w = dst
    while seen[w] is not None:
        prev, move = seen[w]
        path.append(move)
        w = prev
    path.reverse()
    out = list(coords)
    for kind, p in path:
        if kind == "c":
            out[p], out[p + 1] = out[p + 1], out[p]
        else:
            x, y, z = out[p], out[p + 1], out[p + 2]
            out[p], out[p + 1], out[p + 2] = z, x * z - y, x
    return out


def back_to_standard(m: Matrix, tilde_delta: BraidWord, ring: Ring | None = None):
    """The unique values y with ``m * B_word(y)`` diagonal, plus that diagonal.

    ``tilde_delta`` must be a reduced word for the longest element.  The
    canonical delta word is solved via the closed-form pattern of the inverse
    matrix; other words are reached by braid-move transport.  Raises
    :class:`PatternMismatch` when no column scaling of the inverse matches
    the anti-triangular pattern.
    """
    k = len(m)
    ring = ring or _ring_of(m)
    w0 = Permutation.longest(k)
    if tilde_delta.permutation() != w0 or len(tilde_delta) != w0.length():
        raise ValueError("need a reduced word for the longest element")
    mi = mat_inv(m, ring)
    for i in range(k):
        for j in range(k):
            if i + j > k - 1 and mi[i][j]:
                raise PatternMismatch(f"nonzero below the antidiagonal at {(i, j)}")
    scale = []
    for j in range(1, k + 1):
        a = mi[k - j][j - 1]
        if not a:
            raise PatternMismatch(f"zero antidiagonal entry in column {j}")
        sign = ring.one if j % 2 == 1 else ring.zero - ring.one
        scale.append(sign / a)
    g = mat([[mi[i][j] * scale[j] for j in range(k)] for i in range(k)])
    n = k * (k - 1) // 2
    y = [ring.zero] * n
    for (i0, j0), idx in _delta_positions(k).items():
        v = g[i0][j0]
        y[idx - 1] = v if j0 % 2 == 0 else ring.zero - v
    if delta_matrix_closed_form(k, y, ring) != g:
        raise PatternMismatch("inverse does not match the closed form")
    y = transport_coords(delta_word(k).letters, y, tilde_delta.letters)
    full = mat_mul(m, braid_word_matrix(tilde_delta, y, ring))
    if not is_diagonal(full):
        raise PatternMismatch("transport did not produce a diagonal matrix")
    return y, [full[i][i] for i in range(k)]


def diagonal_matrix(entries: Sequence, ring: Ring = QQ) -> Matrix:
    k = len(entries)
    return mat([[ring.of(entries[i]) if i == j else ring.zero for j in range(k)]
                for i in range(k)])


def evaluate_matrix(m: Matrix, point) -> Matrix:
    """Evaluate a rational-function matrix at a rational point."""
    return mat([[x.evaluate(point) for x in row] for row in m])
