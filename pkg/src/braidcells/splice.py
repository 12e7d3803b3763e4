"""Splicing maps between cells and varieties, and their verification.

Double Bott-Samelson splicing is fully symbolic: the prefix matrix is LU
decomposed over rational functions and the upper factor slides through the
suffix, producing the primed coordinates.  Braid-variety splicing works at
exact rational points; the construction follows three LU/slide steps:

1. the y-chain closing the point to a diagonal matrix,
2. a generalized LU of the prefix matrix against the signed lift of
   w0 w w0, whose upper factor slides through the suffix (second factor),
3. the closing upper matrix slides through the first-factor word.

The inverse glues the two flag chains, normalizes against the unipotent
factor of an LU decomposition, extracts coordinates step by step, and then
removes the residual torus twist by comparing a forward pass with the given
inputs (the splice is equivariant for the diagonal torus, so the twist is
read off from ratios of word-matrix entries).

Sign conventions: wherever a matrix of the longest element (or of
w0 w w0) enters a normalization, the signed lift ``B_word(0, ..., 0)`` is
used; with the unsigned permutation matrices the compatibility squares
against the cell-level splice only commute up to signs.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .combinat import (BraidWord, Permutation, delta_word, demazure_product,
                       lift_with_prefix, positive_lift)
from .exactalg import Polynomial, Rational, RationalFunction, rat
from .flags import (NotInChart, NotInDBS, NotOnVariety, in_braid_variety,
                    in_dbs, chart_membership, sample_braid_point,
                    sample_dbs_point)
from . import cluster
from .cluster import (Monomial, last_positions, mono_inv, mono_mul,
                      quiver_from_braid)
from . import symmat
from .symmat import (QQ, RF, back_to_standard, braid_chain_matrices,
                     braid_word_matrix, diagonal_matrix, identity,
                     lu_decompose, mat, mat_inv, mat_mul, perm_matrix,
                     principal_minor, signed_perm_matrix, slide_upper_through,
                     symbolic_vars)


@dataclass
class SpliceWitness:
    """Symbolic record of one cell-splicing computation."""

    beta: BraidWord
    r1: int
    l1: symmat.Matrix
    u1: symmat.Matrix
    zprime: tuple[RationalFunction, ...]
    u1_out: symmat.Matrix

    def remultiplies(self) -> bool:
        """Exact re-check of U1 * B_suffix(z) = B_suffix(z') * U1'."""
        beta2 = self.beta[self.r1:]
        zs = symbolic_vars("z", len(self.beta))[self.r1:]
        lhs = mat_mul(self.u1, braid_word_matrix(beta2, zs, RF))
        rhs = mat_mul(braid_word_matrix(beta2, self.zprime, RF), self.u1_out)
        return lhs == rhs


def dbs_splice_forward(beta: BraidWord, r1: int) -> SpliceWitness:
    """Symbolic splice of the cell: z maps to (z_1..z_r1, z'_{r1+1}..z'_r).

    The primed coordinates are regular wherever the frozen variables of the
    prefix do not vanish (their denominators are its principal minors).
    """
    if not 1 <= r1 < len(beta):
        raise ValueError("need 1 <= r1 < length")
    zs = symbolic_vars("z", len(beta))
    m1 = braid_word_matrix(beta[:r1], zs[:r1], RF)
    l1, u1 = lu_decompose(m1)
    zp, u1_out = slide_upper_through(u1, beta[r1:], zs[r1:])
    return SpliceWitness(beta, r1, l1, u1, tuple(zp), u1_out)


def dbs_splice_apply(beta: BraidWord, r1: int, z: Sequence) -> tuple[list, list]:
    """The splice at a rational point of the chart: (z_left, z'_right)."""
    z = [rat(v) for v in z]
    if not in_dbs(z, beta):
        raise NotInDBS("point is not in the cell")
    if not in_dbs(z[:r1], beta[:r1]):
        raise NotInDBS("prefix principal minor vanishes: not in the chart")
    m1 = braid_word_matrix(beta[:r1], z[:r1])
    _, u1 = lu_decompose(m1)
    zp, _ = slide_upper_through(u1, beta[r1:], z[r1:])
    return z[:r1], zp


def dbs_splice_inverse(beta: BraidWord, r1: int, z_left: Sequence,
                       zp_right: Sequence) -> list:
    """Reassemble a chart point from factor points; inverse of the splice."""
    z_left = [rat(v) for v in z_left]
    zp_right = [rat(v) for v in zp_right]
    beta1, beta2 = beta[:r1], beta[r1:]
    if not in_dbs(z_left, beta1):
        raise NotInDBS("left point is not in its cell")
    if not in_dbs(zp_right, beta2):
        raise NotInDBS("right point is not in its cell")
    _, u1 = lu_decompose(braid_word_matrix(beta1, z_left))
    z_right, _ = slide_upper_through(mat_inv(u1), beta2, zp_right)
    z = z_left + z_right
    if not in_dbs(z, beta):
        raise NotInDBS("assembled point left the cell")
    return z


# -- frozen monomials ---------------------------------------------------------

def splice_monomial(beta: BraidWord, r1: int, ell: int) -> Monomial:
    """The frozen Laurent monomial relating transported and native variables.

    Returned as {unit index: exponent} over the diagonal units of the
    prefix; computed from the formula: the inverse of the product of
    ``u_{sigma(t)}`` for t up to the letter value at ell, where sigma is the
    image of the suffix truncated at ell.
    """
    if not r1 < ell <= len(beta):
        raise ValueError("need r1 < ell <= length")
    i_ell = beta.letters[ell - 1]
    sigma = BraidWord(beta.k, beta.letters[r1:ell]).permutation()
    mono: Monomial = {}
    for t in range(1, i_ell + 1):
        mono = mono_mul(mono, {sigma(t): -1})
    return mono


def splice_monomial_strands(beta: BraidWord, r1: int, ell: int) -> Monomial:
    """Same monomial read off the wiring diagram: just after the suffix
    crossing at ell, trace the bottom strands back to the left edge of the
    suffix; their end heights index the inverted units."""
    if not r1 < ell <= len(beta):
        raise ValueError("need r1 < ell <= length")
    i_ell = beta.letters[ell - 1]
    mono: Monomial = {}
    for start in range(1, i_ell + 1):
        h = start
        for pos in range(ell, r1, -1):
            c = beta.letters[pos - 1]
            if h == c:
                h = c + 1
            elif h == c + 1:
                h = c
        mono = mono_mul(mono, {h: -1})
    return mono


def dbs_frozen_counts(beta: BraidWord, r1: int):
    """Frozen-variable bookkeeping (f, f1, f2, s) for a splice instance.

    f counts the distinct letters of the word, f1/f2 those of the factors,
    and s the letters whose last occurrence inside the prefix is not their
    last occurrence overall; always f1 + f2 = f + s and s >= 0.
    """
    letters = beta.letters
    f = len(set(letters))
    f1 = len(set(letters[:r1]))
    f2 = len(set(letters[r1:]))
    last = last_positions(beta)
    last1 = last_positions(beta[:r1])
    s = sum(1 for v, pos in last1.items() if last[v] != pos)
    return f, f1, f2, s


# -- symbolic verification of the cell splice ---------------------------------

@dataclass
class CheckReport:
    """Outcome of a family of exact checks."""

    check: str
    instances: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, label, passed: bool):
        self.instances += 1
        if not passed:
            self.failures.append(label)


def _unit_fractions(beta1: BraidWord, nvars: int):
    """Diagonal units of the prefix as (numerator, denominator) polynomials
    of the full variable set z1..znvars: u_s = D_s / D_{s-1}."""
    zs = symbolic_vars("z", nvars)[:len(beta1)]
    m = braid_word_matrix(beta1, zs, RF)
    pm = [Polynomial.one]
    for i in range(1, beta1.k + 1):
        d = principal_minor(m, i)
        pm.append(d.num)
    return [(pm[s], pm[s - 1]) for s in range(1, beta1.k + 1)]


def _mono_fraction(mono: Monomial, units):
    """A {unit: exp} monomial as an unreduced (num, den) polynomial pair."""
    num = Polynomial.one
    den = Polynomial.one
    for s, e in mono.items():
        un, ud = units[s - 1]
        if e > 0:
            num, den = num * un ** e, den * ud ** e
        else:
            num, den = num * ud ** (-e), den * un ** (-e)
    return num, den


def verify_variable_transport(beta: BraidWord, r1: int) -> CheckReport:
    """Check the transported variables against the native ones.

    Prefix variables pull back unchanged; each suffix variable computed in
    the primed coordinates equals the monomial of :func:`splice_monomial`
    times the native variable.  All identities are exact equalities of
    rational functions.
    """
    report = CheckReport("transport")
    witness = dbs_splice_forward(beta, r1)
    native = cluster.dbs_seed(beta)
    units = _unit_fractions(beta[:r1], len(beta))
    beta2 = beta[r1:]
    prefix_seed = cluster.dbs_seed(beta[:r1])
    for j in range(1, r1 + 1):
        report.record(("prefix", j), prefix_seed.variable(j) == native.variable(j))
    chain = braid_chain_matrices(beta2, witness.zprime, RF)
    for ell in range(r1 + 1, len(beta) + 1):
        i_ell = beta.letters[ell - 1]
        transported = principal_minor(chain[ell - r1], i_ell)
        mn, md = _mono_fraction(splice_monomial(beta, r1, ell), units)
        x_ell = native.variable(ell)
        lhs = transported.num * md * x_ell.den
        rhs = transported.den * mn * x_ell.num
        report.record(("suffix", ell), lhs == rhs)
    return report


def verify_exchange_ratios(beta: BraidWord, r1: int) -> CheckReport:
    """Exchange ratios of the open structure (freeze the last prefix
    occurrences in the word quiver) against the product structure
    (disjoint factor quivers on transported variables), exactly.

    Both ratios are Laurent monomials in the cluster variables once the
    frozen monomials are expanded through the diagonal-unit dictionary; that
    dictionary (prefix principal minors = frozen variables) is first checked
    polynomially, after which equal exponent vectors prove equality.  Any
    residual mismatch falls back to honest cross-multiplication.
    """
    report = CheckReport("exchange-ratios")
    q_open = cluster.freeze_quiver(quiver_from_braid(beta),
                                   set(last_positions(beta[:r1]).values()))
    q1 = quiver_from_braid(beta[:r1])
    q2 = quiver_from_braid(beta[r1:])
    native = cluster.dbs_seed(beta)
    # frozen dictionary: the s-th prefix principal minor is x at last^1(s)
    beta1 = beta[:r1]
    zs = symbolic_vars("z", len(beta))[:r1]
    m1 = braid_word_matrix(beta1, zs, RF)
    last1 = last_positions(beta1)
    for s, pos in last1.items():
        report.record(("unit-dictionary", s),
                      principal_minor(m1, s) == native.variable(pos))
    units_as_x = cluster.frozen_diag_units(beta1)

    def monomial_in_x(ell: int) -> Monomial:
        out: Monomial = {}
        for s, e in splice_monomial(beta, r1, ell).items():
            for pos, e2 in units_as_x[s - 1].items():
                out = mono_mul(out, {pos: e * e2})
        return out

    def product_arrows(i: int, j: int) -> int:
        if i <= r1 and j <= r1:
            return q1.arrows(i, j)
        if i > r1 and j > r1:
            return q2.arrows(i - r1, j - r1)
        return 0

    for v in q_open.mutable_vertices():
        expo_open: Monomial = {}
        expo_prod: Monomial = {}
        for j in range(1, q_open.n + 1):
            m = q_open.arrows(j, v)
            if m:
                expo_open = mono_mul(expo_open, {j: m})
            mp = product_arrows(j, v)
            if mp:
                expo_prod = mono_mul(expo_prod, {j: mp})
                if j > r1:
                    mono = monomial_in_x(j)
                    if mp != 1:
                        mono = {key: e * mp for key, e in mono.items()}
                    expo_prod = mono_mul(expo_prod, mono)
        if expo_open == expo_prod:
            report.record(("vertex", v), True)
            continue
        residual = mono_mul(expo_open, mono_inv(expo_prod))
        lhs = Polynomial.one
        rhs = Polynomial.one
        for j, e in residual.items():
            xj = native.variable(j)
            if e > 0:
                lhs = lhs * xj.num ** e
                rhs = rhs * xj.den ** e
            else:
                rhs = rhs * xj.num ** (-e)
                lhs = lhs * xj.den ** (-e)
        report.record(("vertex", v), lhs == rhs)
    return report


# -- cell-to-variety isomorphisms ----------------------------------------------

def phi1(beta: BraidWord, z: Sequence) -> list:
    """Append the closing chain: a cell point becomes a point of the variety
    of the word extended by the canonical longest-element word."""
    z = [rat(v) for v in z]
    if not in_dbs(z, beta):
        raise NotInDBS("point is not in the cell")
    _, u = lu_decompose(braid_word_matrix(beta, z))
    dw = delta_word(beta.k)
    y, _ = slide_upper_through(mat_inv(u), dw, [rat(0)] * len(dw))
    out = z + y
    if not in_braid_variety(out, beta * dw):
        raise NotOnVariety("closing chain failed")
    return out


def phi2(beta: BraidWord, z: Sequence) -> list:
    """Prepend the closing chain: the new coordinates are read off the
    anti-triangular pattern of (signed longest element) * L^{-1}."""
    z = [rat(v) for v in z]
    if not in_dbs(z, beta):
        raise NotInDBS("point is not in the cell")
    k = beta.k
    l, _ = lu_decompose(braid_word_matrix(beta, z))
    w = signed_perm_matrix(Permutation.longest(k))
    x = mat_mul(w, mat_inv(l))
    dw = delta_word(k)
    p = [rat(0)] * len(dw)
    for (i0, j0), idx in symmat._delta_positions(k).items():
        p[idx - 1] = x[i0][j0] if j0 % 2 == 0 else -x[i0][j0]
    if symmat.delta_matrix_closed_form(k, p) != x:
        raise symmat.PatternMismatch("unipotent factor off pattern")
    out = p + z
    if not in_braid_variety(out, delta_word(k) * beta):
        raise NotOnVariety("prepended chain failed")
    return out


def phi1_inverse(beta: BraidWord, zy: Sequence) -> list:
    return [rat(v) for v in zy[:len(beta)]]


def phi2_inverse(beta: BraidWord, pz: Sequence) -> list:
    lw = beta.k * (beta.k - 1) // 2
    return [rat(v) for v in pz[lw:]]


# -- splicing of braid varieties at rational points -----------------------------

def splice_words(beta: BraidWord, r1: int, w: Permutation):
    """The factor words: lift(w^{-1} w0) * prefix and suffix * lift(w)."""
    rest = positive_lift(w.inverse() * Permutation.longest(beta.k))
    wword = positive_lift(w)
    return rest * beta[:r1], beta[r1:] * wword


def chart_nonempty(beta: BraidWord, r1: int, w: Permutation) -> bool:
    """Demazure criterion: both factor words must reach the longest element."""
    w0 = Permutation.longest(beta.k)
    word1, word2 = splice_words(beta, r1, w)
    return demazure_product(word1) == w0 and demazure_product(word2) == w0


def braid_splice_forward(beta: BraidWord, r1: int, w: Permutation,
                         z: Sequence, wword: BraidWord | None = None
                         ) -> tuple[list, list]:
    """Split a chart point into points of the two factor varieties.

    ``wword`` selects the reduced word of w used for the second factor
    (canonical by default); different choices give points identified by
    carrying the tail coordinates through braid moves.
    """
    k = beta.k
    z = [rat(v) for v in z]
    if not chart_membership(z, beta, r1, w):
        raise NotInChart("chart minors vanish at the point")
    w0 = Permutation.longest(k)
    if wword is None:
        wword = positive_lift(w)
    elif wword.permutation() != w or len(wword) != w.length():
        raise ValueError("wword must be a reduced word for w")
    w0word = wword * positive_lift(w.inverse() * w0)
    lw = w.length()
    y, diag = back_to_standard(braid_word_matrix(beta, z), w0word)
    y_r, y_l = y[:lw], y[lw:]
    vstar = w0 * w * w0
    p = signed_perm_matrix(vstar)
    m1 = braid_word_matrix(beta[:r1], z[:r1])
    l, u = lu_decompose(mat_mul(mat_inv(p), m1))
    word2_tail = BraidWord(k, beta.letters[r1:] + wword.letters)
    pt2, _ = slide_upper_through(u, word2_tail, z[r1:] + y_r)
    w0s = signed_perm_matrix(w0)
    g1 = mat_mul(w0s, mat_mul(mat_inv(l), mat_inv(p)))
    m0 = mat_mul(braid_word_matrix(beta, z), braid_word_matrix(wword, y_r))
    t = mat_mul(g1, m0)
    if not symmat.is_upper_triangular(t):
        raise NotOnVariety("normalized closing matrix is not triangular")
    d_inv = diagonal_matrix([rat(1) / d for d in diag])
    zp_l, _ = slide_upper_through(d_inv, beta[:r1], z[:r1])
    rest = positive_lift(w.inverse() * w0)
    word1 = BraidWord(k, rest.letters + beta.letters[:r1])
    pt1, _ = slide_upper_through(t, word1, y_l + zp_l)
    word1_full, word2_full = splice_words(beta, r1, w)
    if not in_braid_variety(pt1, word1_full):
        raise NotOnVariety("first factor left its variety")
    if not in_braid_variety(pt2, word2_full):
        raise NotOnVariety("second factor left its variety")
    return pt1, pt2


def _twist_coords(tdiag: Sequence[Rational], beta: BraidWord, vals: Sequence) -> list:
    """Slide a diagonal through the word: scale each coordinate by the
    running ratio t_i / t_{i+1} and swap."""
    t = [rat(x) for x in tdiag]
    out = []
    for i, v in zip(beta.letters, vals):
        out.append(t[i - 1] / t[i] * v)
        t[i - 1], t[i] = t[i], t[i - 1]
    return out


def _solve_twist(relations, k: int) -> list[Rational]:
    """Solve t_a = q * t_b multiplicative relations; free components are 1."""
    val: dict[int, Rational] = {}
    pending = list(relations)
    for base in range(1, k + 1):
        if base in val:
            continue
        val[base] = rat(1)
        changed = True
        while changed:
            changed = False
            for a, b, q in pending:
                if b in val and a not in val:
                    val[a] = q * val[b]
                    changed = True
                elif a in val and b not in val:
                    val[b] = val[a] / q
                    changed = True
                elif a in val and b in val and val[a] != q * val[b]:
                    raise NotOnVariety("inconsistent torus normalization")
    return [val[i] for i in range(1, k + 1)]


def braid_splice_inverse(beta: BraidWord, r1: int, w: Permutation,
                         pt1: Sequence, pt2: Sequence) -> list:
    """Glue two factor points back into a chart point of the variety."""
    k = beta.k
    pt1 = [rat(v) for v in pt1]
    pt2 = [rat(v) for v in pt2]
    word1, word2 = splice_words(beta, r1, w)
    if not in_braid_variety(pt1, word1):
        raise NotOnVariety("first point is off its variety")
    if not in_braid_variety(pt2, word2):
        raise NotOnVariety("second point is off its variety")
    w0 = Permutation.longest(k)
    w0m = perm_matrix(w0)
    ws = signed_perm_matrix(w0)
    rest_len = len(word1) - r1
    chain1 = braid_chain_matrices(word1, pt1)
    chain2 = braid_chain_matrices(word2, pt2)
    # the first-factor frame is the signed flip of the second-factor frame,
    # matching the normalization used by the forward construction
    m1 = chain1[rest_len]
    m2 = mat_mul(ws, chain2[len(beta) - r1])
    try:
        lx, _ = lu_decompose(mat_mul(w0m, mat_mul(mat_inv(m2), m1)))
    except symmat.SingularPrincipalMinor as exc:
        raise NotOnVariety("junction flags are not transverse") from exc
    g = mat_mul(mat_inv(lx), mat_mul(w0m, mat_inv(m2)))
    acc = identity(k)
    z = []
    for t in range(1, len(beta) + 1):
        i = beta.letters[t - 1]
        h = mat_mul(g, chain1[rest_len + t]) if t <= r1 \
            else mat_mul(g, mat_mul(ws, chain2[t - r1]))
        q = mat_mul(mat_inv(acc), h)
        zt = None
        for j in range(i):
            if q[i][j] != 0:
                zt = q[i - 1][j] / q[i][j]
                break
        if zt is None:
            raise NotOnVariety("could not extract a coordinate while gluing")
        acc = symmat._mul_letter_right(acc, i, zt, QQ)
        z.append(zt)
    # z is now a torus twist of the answer.  The splice is equivariant for
    # diagonal twists, and each coordinate of a factor scales by a ratio of
    # two twist entries; which ratio is read off empirically by probing the
    # forward map with a prime-labeled diagonal.
    f1, f2 = braid_splice_forward(beta, r1, w, z)
    primes = [2, 3, 5, 7, 11, 13, 17, 19][:k]
    probe = braid_splice_forward(beta, r1, w,
                                 _twist_coords(primes, beta, z))
    relations = []
    for f_ref, f_probe, target in ((f1, probe[0], pt1), (f2, probe[1], pt2)):
        for fj, fpj, tj in zip(f_ref, f_probe, target):
            if fj == 0 or tj == 0:
                if bool(fj) != bool(tj):
                    raise NotOnVariety("factor points do not match the inputs")
                continue
            chi = fpj / fj
            a = b = None
            if chi.numerator != 1:
                if chi.numerator not in primes:
                    raise NotOnVariety("unexpected torus character")
                a = primes.index(chi.numerator) + 1
            if chi.denominator != 1:
                if chi.denominator not in primes:
                    raise NotOnVariety("unexpected torus character")
                b = primes.index(chi.denominator) + 1
            if a is None and b is None:
                if fj != tj:
                    raise NotOnVariety("factor points do not match the inputs")
                continue
            if a is None or b is None:
                raise NotOnVariety("unexpected torus character")
            relations.append((a, b, tj / fj))
    twist = _solve_twist(relations, k)
    out = _twist_coords(twist, beta, z)
    g1, g2 = braid_splice_forward(beta, r1, w, out)
    if g1 != pt1 or g2 != pt2:
        raise NotOnVariety("round trip failed after torus normalization")
    return out


def sample_chart_via_inverse(beta: BraidWord, r1: int, w: Permutation,
                             rng: random.Random) -> list:
    """A guaranteed chart point: glue random points of the factor varieties."""
    word1, word2 = splice_words(beta, r1, w)
    pt1 = sample_braid_point(word1, rng)
    pt2 = sample_braid_point(word2, rng)
    return braid_splice_inverse(beta, r1, w, pt1, pt2)


# -- compatibility of the two splices ------------------------------------------

def verify_compat_diagrams(beta: BraidWord, r1: int, samples: int = 10,
                           seed: int = 0) -> CheckReport:
    """Both squares relating the cell splice (through the two closing
    isomorphisms) with the variety splice must commute exactly at points."""
    if not 1 <= r1 < len(beta):
        raise ValueError("need 1 <= r1 < length")
    report = CheckReport("compat-diagrams")
    rng = random.Random(seed)
    k = beta.k
    dw = delta_word(k)
    e = Permutation.identity(k)
    w0 = Permutation.longest(k)
    for trial in range(samples):
        z = sample_dbs_point(beta, rng, r1=r1)
        z_l, zp_r = dbs_splice_apply(beta, r1, z)
        lhs1 = phi2(beta[:r1], z_l)
        lhs2 = phi1(beta[r1:], zp_r)
        pt1, pt2 = braid_splice_forward(beta * dw, r1, e, phi1(beta, z))
        report.record(("square-1", trial), pt1 == lhs1 and pt2 == lhs2)
        pt1, pt2 = braid_splice_forward(dw * beta, r1 + len(dw), w0,
                                        phi2(beta, z))
        report.record(("square-2", trial), pt1 == lhs1 and pt2 == lhs2)
    return report
