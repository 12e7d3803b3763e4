"""Flags of rational points: relative position, transversality, membership.

A flag is represented by an invertible k x k matrix of rationals whose
leading column spans give the subspaces.  Points of varieties are tuples of
rationals, one per braid letter; membership tests build the word matrix and
check triangularity or minor conditions.

Sampling conventions: coordinates are drawn with numerator in [-9, 9] and
denominator in [1, 9]; degenerate draws are rejected (up to 64 retries).
Samplers take an explicit ``random.Random`` so runs are reproducible.
Points of a braid variety are built constructively, guiding each step by the
set of relative positions from which the antistandard flag remains reachable
with the remaining letters; where a step must strictly drop the position,
the unique coordinate doing so is solved from an affine minor condition.
"""
from __future__ import annotations

import random
from typing import Sequence

from .combinat import BraidWord, Permutation, all_permutations
from .exactalg import Rational, rat
from . import symmat
from .symmat import QQ, braid_word_matrix, mat, mat_mul, minor, perm_matrix


class NotOnVariety(ValueError):
    """The point does not satisfy the variety's defining conditions."""


class NotInChart(ValueError):
    """The point misses the requested open chart."""


class NotInDBS(ValueError):
    """Some principal minor vanishes at the point."""


def flag_point(m) -> symmat.Matrix:
    m = mat(m)
    if not symmat.det(m):
        raise ValueError("flag matrices must be invertible")
    return m


def _rank(cols: list[list[Rational]], k: int) -> int:
    if not cols:
        return 0
    work = [[col[r] for col in cols] for r in range(k)]
    piv = 0
    for c in range(len(cols)):
        row = next((r for r in range(piv, k) if work[r][c] != 0), None)
        if row is None:
            continue
        work[piv], work[row] = work[row], work[piv]
        for r in range(k):
            if r != piv and work[r][c] != 0:
                f = work[r][c] / work[piv][c]
                work[r] = [a - f * b for a, b in zip(work[r], work[piv])]
        piv += 1
    return piv


def relative_position(a: symmat.Matrix, b: symmat.Matrix) -> Permutation:
    """The unique w with dim(F_i cap F'_j) = #([i] cap w[j]) for all i, j."""
    k = len(a)
    cols_a = [[a[r][c] for r in range(k)] for c in range(k)]
    cols_b = [[b[r][c] for r in range(k)] for c in range(k)]
    dims = [[0] * (k + 1) for _ in range(k + 1)]
    for i in range(k + 1):
        for j in range(k + 1):
            dims[i][j] = i + j - _rank(cols_a[:i] + cols_b[:j], k)
    images = [0] * k
    for j in range(1, k + 1):
        for i in range(1, k + 1):
            if dims[i][j] - dims[i - 1][j] - dims[i][j - 1] + dims[i - 1][j - 1] == 1:
                images[j - 1] = i
                break
    return Permutation(images)


def is_transverse(a: symmat.Matrix, b: symmat.Matrix) -> bool:
    return relative_position(a, b) == Permutation.longest(len(a))


def in_braid_variety(z: Sequence, beta: BraidWord) -> bool:
    """True iff w0 * B_word(z) is upper-triangular."""
    if len(z) != len(beta):
        raise ValueError("need one coordinate per letter")
    m = braid_word_matrix(beta, [rat(v) for v in z])
    w0 = perm_matrix(Permutation.longest(beta.k))
    return symmat.is_upper_triangular(mat_mul(w0, m))


def in_dbs(z: Sequence, beta: BraidWord) -> bool:
    """True iff every principal minor of B_word(z) is nonzero at z."""
    if len(z) != len(beta):
        raise ValueError("need one coordinate per letter")
    m = braid_word_matrix(beta, [rat(v) for v in z])
    return all(symmat.principal_minor(m, i) != 0 for i in range(1, beta.k + 1))


def chart_minor_rows(w: Permutation, i: int) -> list[int]:
    """Row set w0 w w0 [i] cutting out the chart with parameter w."""
    v = Permutation.longest(w.k) * w * Permutation.longest(w.k)
    return sorted(v(t) for t in range(1, i + 1))


def chart_membership(z: Sequence, beta: BraidWord, r1: int, w: Permutation) -> bool:
    """Membership in the open chart: the r1-th flag is transverse to the
    coordinate flag of w0 w, i.e. the minors on rows w0 w w0 [i] of the
    prefix matrix are nonzero."""
    if not 1 <= r1 <= len(beta):
        raise ValueError("split index out of range")
    if not in_braid_variety(z, beta):
        raise NotOnVariety("point is not on the braid variety")
    m1 = braid_word_matrix(beta[:r1], [rat(v) for v in z[:r1]])
    return all(minor(m1, chart_minor_rows(w, i), range(1, i + 1)) != 0
               for i in range(1, beta.k + 1))


def dbs_chart_membership(z: Sequence, beta: BraidWord, r1: int) -> bool:
    """The double Bott-Samelson chart: prefix principal minors nonzero too."""
    if not in_dbs(z, beta):
        return False
    return in_dbs(z[:r1], beta[:r1])


# -- samplers -----------------------------------------------------------------

def sample_rational(rng: random.Random) -> Rational:
    return rat(rng.randint(-9, 9)) / rng.randint(1, 9)


def sample_dbs_point(beta: BraidWord, rng: random.Random,
                     r1: int | None = None, retries: int = 64) -> list[Rational]:
    """A random point of BS(beta); optionally also inside the r1 chart."""
    for _ in range(retries):
        z = [sample_rational(rng) for _ in range(len(beta))]
        if not in_dbs(z, beta):
            continue
        if r1 is not None and not in_dbs(z[:r1], beta[:r1]):
            continue
        return z
    raise NotInDBS("could not sample a point after max retries")


def _reachable_sets(beta: BraidWord):
    """R[t]: relative positions (to the antistandard flag) after t letters
    from which the rest of the word can still finish at position e."""
    k = beta.k
    perms = all_permutations(k)
    r = len(beta)
    sets: list[set[Permutation]] = [set() for _ in range(r + 1)]
    sets[r] = {Permutation.identity(k)}
    for t in range(r, 0, -1):
        i = beta.letters[t - 1]
        nxt = sets[t]
        cur = set()
        for u in perms:
            us = u.right_mul_s(i)
            if us.length() > u.length():
                if us in nxt:
                    cur.add(u)
            elif us in nxt or u in nxt:
                cur.add(u)
        sets[t - 1] = cur
    return sets


def sample_braid_point(beta: BraidWord, rng: random.Random,
                       retries: int = 64) -> list[Rational]:
    """A random point of X(beta), built letter by letter.

    Where the position must stay (generic move) a random coordinate is drawn
    and checked; where it must drop, the unique dropping value is the root of
    an affine minor.  When both moves keep the endpoint reachable we mostly
    stay, occasionally dropping, so repeated calls explore several strata.
    """
    k = beta.k
    sets = _reachable_sets(beta)
    u = Permutation.longest(k)
    if u not in sets[0]:
        raise NotOnVariety("empty braid variety (Demazure product is not w0)")
    w0m = perm_matrix(Permutation.longest(k))
    m = symmat.identity(k)
    z: list[Rational] = []
    for t, i in enumerate(beta.letters, start=1):
        us = u.right_mul_s(i)
        if us.length() > u.length():
            val = sample_rational(rng)
            u = us
        else:
            stay_ok = u in sets[t]
            drop_ok = us in sets[t]
            drop = (not stay_ok) or (drop_ok and rng.random() < 0.25)
            if drop:
                rows = [u(s) for s in range(1, i + 1)]
                def chart_val(x):
                    mt = mat_mul(w0m, symmat._mul_letter_right(m, i, rat(x), QQ))
                    return minor(mt, rows, range(1, i + 1))
                a = chart_val(0)
                b = chart_val(1) - a
                if b == 0:
                    raise NotOnVariety("no dropping coordinate exists")
                val = -a / b
                u = us
            else:
                for _ in range(retries):
                    val = sample_rational(rng)
                    mt = symmat._mul_letter_right(m, i, val, QQ)
                    if relative_position(w0m, mt) == u:
                        break
                else:
                    raise NotOnVariety("could not keep relative position")
        m = symmat._mul_letter_right(m, i, rat(val), QQ)
        z.append(rat(val))
    if not symmat.is_upper_triangular(mat_mul(w0m, m)):
        raise NotOnVariety("sampler produced a point off the variety")
    return z


def sample_chart_point(beta: BraidWord, r1: int, w: Permutation,
                       rng: random.Random, retries: int = 200) -> list[Rational]:
    """Rejection-sample a point of the (r1, w) chart of X(beta)."""
    for _ in range(retries):
        z = sample_braid_point(beta, rng)
        if chart_membership(z, beta, r1, w):
            return z
    raise NotInChart("no chart point found; the chart may be empty or thin")
