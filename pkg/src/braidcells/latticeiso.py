"""Integer linear algebra and the search for quasi-isomorphism witnesses.

The witness for two extended exchange matrices is an integer matrix of block
shape ``[[I, 0], [P, Q]]`` with ``R * Bsrc = Btgt`` and ``det Q = +-1``.
Row by row, the solutions of ``x * Bsrc = t`` form a coset of the left
kernel lattice of ``Bsrc``; the search walks a bounded, documented family of
coset representatives (the canonical reduced solution, then adjustments by
up to two kernel basis vectors with coefficients in ``[-bound, bound]``),
pruning partial choices whose rows cannot extend to a unimodular matrix.
``NotFound`` therefore means "no witness within the bound", never a proof of
nonexistence.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence


class DimensionMismatch(ValueError):
    pass


class PrincipalMismatch(ValueError):
    """The principal (mutable) blocks differ, so no witness can exist."""


IntMatrix = list  # list of list of int


def _copy(m: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(r) for r in m]


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant over the integers."""
    n = len(m)
    if n == 0:
        return 1
    a = _copy(m)
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for r in range(c + 1, n):
            for s in range(c + 1, n):
                a[r][s] = (a[r][s] * a[c][c] - a[r][c] * a[c][s]) // prev
            a[r][c] = 0
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def hnf_row(m: Sequence[Sequence[int]]):
    """Row-style Hermite normal form: returns (H, U) with U m = H, det U = +-1.

    H is in row echelon form with positive pivots and reduced entries above
    each pivot.
    """
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    pivot_row = 0
    pivots = []
    for c in range(cols):
        r = pivot_row
        while True:
            nz = [i for i in range(r, rows) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < rows and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            pivots.append(c)
            pivot_row += 1
    return a, u, pivots


def left_kernel_basis(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Rows spanning {x : x m = 0} over the integers."""
    h, u, pivots = hnf_row(m)
    rank = len(pivots)
    return [u[i] for i in range(rank, len(h))]


def solve_left(m: Sequence[Sequence[int]], target: Sequence[int]):
    """One integer solution of x m = target, or None."""
    h, u, pivots = hnf_row(m)
    rank = len(pivots)
    t = list(target)
    x = [0] * len(m)
    coeff = [0] * rank
    for r in range(rank):
        c = pivots[r]
        if t[c] % h[r][c] != 0:
            return None
        q = t[c] // h[r][c]
        coeff[r] = q
        t = [a - q * b for a, b in zip(t, h[r])]
    if any(t):
        return None
    for r in range(rank):
        x = [a + coeff[r] * b for a, b in zip(x, u[r])]
    return x


def _reduce_against(v: list[int], basis_hnf: IntMatrix, pivots: list[int]) -> list[int]:
    out = list(v)
    for row, c in zip(basis_hnf, pivots):
        q = out[c] // row[c]
        if q:
            out = [a - q * b for a, b in zip(out, row)]
    return out


def smith_diagonal(m: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form (nonnegative invariant factors)."""
    a = _copy(m)
    rows, cols = len(a), len(a[0]) if m else 0
    diag = []
    r = c = 0
    while r < rows and c < cols:
        piv = None
        best = None
        for i in range(r, rows):
            for j in range(c, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    piv = (i, j)
        if piv is None:
            break
        while True:
            i0, j0 = piv
            a[r], a[i0] = a[i0], a[r]
            for row in a:
                row[c], row[j0] = row[j0], row[c]
            # one sweep of row/column reduction; repeat from the smallest
            # pivot until the cross is clean
            dirty = False
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        dirty = True
            for j in range(c + 1, cols):
                if a[r][j]:
                    q = a[r][j] // a[r][c]
                    for row in a:
                        row[j] -= q * row[c]
                    if a[r][j]:
                        dirty = True
            if not dirty:
                resid = [(i, j) for i in range(r + 1, rows)
                         for j in range(c + 1, cols) if a[i][j] % a[r][c]]
                if not resid:
                    break
                i, _ = resid[0]
                a[r] = [x + y for x, y in zip(a[r], a[i])]
            piv = None
            best = None
            for i in range(r, rows):
                for j in range(c, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < best):
                        best = abs(a[i][j])
                        piv = (i, j)
        diag.append(abs(a[r][c]))
        r += 1
        c += 1
    return diag


def _primitive(rows: IntMatrix) -> bool:
    """True when the rows extend to a basis of the full integer lattice."""
    if not rows:
        return True
    d = smith_diagonal(rows)
    return len(d) == len(rows) and all(x == 1 for x in d)


@dataclass
class WitnessMatrix:
    """Block-unitriangular witness with unimodular frozen block."""

    n: int
    m: int
    rows: IntMatrix  # full (n+m) x (n+m) matrix

    @property
    def p_block(self) -> IntMatrix:
        return [r[:self.n] for r in self.rows[self.n:]]

    @property
    def q_block(self) -> IntMatrix:
        return [r[self.n:] for r in self.rows[self.n:]]

    def det_q(self) -> int:
        return int_det(self.q_block)


def verify_witness(r: WitnessMatrix, bsrc, btgt) -> bool:
    """Exact check: block shape, R Bsrc = Btgt, and |det Q| = 1."""
    n, m = r.n, r.m
    if len(r.rows) != n + m:
        return False
    for i in range(n):
        for j in range(n + m):
            want = 1 if i == j else 0
            if r.rows[i][j] != want:
                return False
    src = bsrc.to_lists()
    tgt = btgt.to_lists()
    if len(src) != n + m or len(tgt) != n + m:
        return False
    prod = [[sum(r.rows[i][t] * src[t][j] for t in range(n + m))
             for j in range(len(src[0]))] for i in range(n + m)]
    if prod != tgt:
        return False
    return abs(r.det_q()) == 1


def find_witness(bsrc, btgt, bound: int = 3, budget: int = 200_000):
    """Search for a witness R with R Bsrc = Btgt; None when out of bounds.

    Preconditions: equal mutable/frozen counts and equal principal parts.
    Candidate rows for each frozen target row are tried in a documented
    order: unit rows solving the row equation, then the reduced particular
    solution, then its adjustments by one or two kernel basis vectors with
    coefficients up to ``bound``.  A depth-first search with a unimodular-
    extendability prune returns the first completion; the node ``budget``
    caps the search, so ``None`` means "no witness within the bound and
    budget", never a proof of nonexistence.
    """
    n = bsrc.n_mutable
    m = bsrc.n_frozen
    if btgt.n_mutable != n or btgt.n_frozen != m:
        raise DimensionMismatch(
            f"source is {n}+{m}, target {btgt.n_mutable}+{btgt.n_frozen}")
    src = bsrc.to_lists()
    tgt = btgt.to_lists()
    if src[:n] != tgt[:n]:
        raise PrincipalMismatch("principal parts differ")
    kernel = left_kernel_basis(src)
    kh, _, kpiv = hnf_row(kernel) if kernel else ([], [], [])
    kh = [row for row in kh if any(row)]
    particulars = []
    for f in range(m):
        x = solve_left(src, tgt[n + f])
        if x is None:
            return None
        particulars.append(_reduce_against(x, kh, kpiv))
    size = n + m
    units = [[1 if t == n + g else 0 for t in range(size)] for g in range(m)]

    def candidates(f: int):
        seen = set()

        def emit(row):
            key = tuple(row)
            if key not in seen:
                seen.add(key)
                yield row

        target = tgt[n + f]
        for u in units:
            if [sum(u[t] * src[t][j] for t in range(size))
                    for j in range(n)] == target:
                yield from emit(u)
        x0 = particulars[f]
        yield from emit(x0)
        for i in range(len(kernel)):
            for c in range(1, bound + 1):
                for s in (c, -c):
                    yield from emit([a + s * b for a, b in zip(x0, kernel[i])])
        for (i, j) in itertools.combinations(range(len(kernel)), 2):
            for ci in range(-bound, bound + 1):
                if ci == 0:
                    continue
                for cj in range(-bound, bound + 1):
                    if cj == 0:
                        continue
                    yield from emit([a + ci * b + cj * c for a, b, c
                                     in zip(x0, kernel[i], kernel[j])])

    chosen: IntMatrix = []
    nodes = [0]

    def extend(f: int) -> bool:
        if f == m:
            return abs(int_det([row[n:] for row in chosen])) == 1
        for cand in candidates(f):
            nodes[0] += 1
            if nodes[0] > budget:
                return False
            q_rows = [row[n:] for row in chosen] + [cand[n:]]
            if not _primitive(q_rows):
                continue
            chosen.append(cand)
            if extend(f + 1):
                return True
            chosen.pop()
        return False

    if not extend(0):
        return None
    rows = [[1 if i == j else 0 for j in range(size)] for i in range(n)]
    rows.extend(chosen)
    return WitnessMatrix(n, m, rows)


def variable_map_from_witness(r: WitnessMatrix, target_names: Sequence[str]):
    """The induced map on variables: source j maps to prod target_i^R[i][j].

    Returns one ``{target name: exponent}`` Laurent monomial per source
    column, in column order.
    """
    size = r.n + r.m
    if len(target_names) != size:
        raise DimensionMismatch("need one target name per row")
    out = []
    for j in range(size):
        mono = {target_names[i]: r.rows[i][j]
                for i in range(size) if r.rows[i][j]}
        out.append(mono)
    return out
