"""Open Richardson varieties as braid varieties, and frozen-variable counts.

The variety of a Bruhat pair v <= w is modeled on the word
``lift(w) * lift(v^{-1} w0)``.  The count of frozen variables satisfies
``f(v, w) = f(e, w) - f(e, v) + s(v, w)`` where s counts the distinct
factors, other than principal minors, of the minors on rows v[i] of the
word matrix of lift(w).

Factoring is by maximal trial division against a pool (principal minors,
single variables, caller-supplied hints).  A leftover factor is certified
irreducible only when it is linear in some variable with coprime
coefficients, or a univariate quadratic with non-square discriminant;
otherwise the count is flagged INCOMPLETE rather than guessed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .combinat import BraidWord, Permutation, bruhat_leq, positive_lift
from .exactalg import Polynomial, factor_against_pool, poly_gcd
from .symmat import RF, braid_word_matrix, minor, principal_minor, symbolic_vars
from .splice import braid_splice_forward, braid_splice_inverse, splice_words


class BruhatViolation(ValueError):
    pass


class IncompleteFactorization(ArithmeticError):
    """A leftover factor could not be certified irreducible."""


def richardson_braid(u: Permutation, w: Permutation) -> BraidWord:
    """The defining word lift(w) * lift(u^{-1} w0); its image is w0."""
    if u.k != w.k:
        raise ValueError("size mismatch")
    if not bruhat_leq(u, w):
        raise BruhatViolation(f"{u} is not below {w}")
    w0 = Permutation.longest(u.k)
    return positive_lift(w) * positive_lift(u.inverse() * w0)


def frozen_count_base(w: Permutation) -> int:
    """f(e, w): the number of distinct letters in any reduced word of w."""
    return len(set(positive_lift(w).letters))


def _certify_irreducible(p: Polynomial) -> bool:
    """Conservative irreducibility certificate for leftover factors."""
    if p.is_constant():
        return True
    for v in p.vars:
        if p.degree_in(v) == 1:
            coeffs = p.coefficients_in(v)
            a = coeffs.get(1, Polynomial.zero)
            b = coeffs.get(0, Polynomial.zero)
            if not b:
                return True
            if poly_gcd(a, b).is_constant():
                return True
    if len(p.vars) == 1 and p.total_degree() == 2:
        c = p.coefficients_in(p.vars[0])
        a = c.get(2, Polynomial.zero).constant_value()
        b = c.get(1, Polynomial.zero).constant_value()
        cc = c.get(0, Polynomial.zero).constant_value()
        disc = b * b - 4 * a * cc
        num = disc.numerator * disc.denominator
        if num < 0:
            return True
        root = _isqrt(num)
        return root * root != num
    return False


def _isqrt(n: int) -> int:
    import math
    return math.isqrt(int(n))


@dataclass
class SCountReport:
    """The factor data behind s(v, w)."""

    minors: list = field(default_factory=list)     # (i, rows, polynomial)
    factors: list = field(default_factory=list)    # distinct non-principal factors
    complete: bool = True

    @property
    def s(self) -> int:
        return len(self.factors)


def s_count(v: Permutation, w: Permutation,
            pool_hints: Sequence[Polynomial] = ()) -> SCountReport:
    """Distinct non-principal-minor factors of the minors on rows v[i].

    The pool is the principal minors of the word matrix, plus single
    variables, plus the caller's hints.  The INCOMPLETE flag reports any
    uncertified leftover instead of failing.
    """
    if not bruhat_leq(v, w):
        raise BruhatViolation(f"{v} is not below {w}")
    k = v.k
    word = positive_lift(w)
    zs = symbolic_vars("z", len(word))
    m = braid_word_matrix(word, zs, RF)
    principal = []
    for i in range(1, k + 1):
        d = principal_minor(m, i)
        if not d.num.is_constant():
            principal.append(d.num)
    pool = list(principal)
    for hint in pool_hints:
        if all(hint != q for q in pool):
            pool.append(hint)
    report = SCountReport()
    seen: list[Polynomial] = []
    for i in range(1, k + 1):
        rows = sorted(v(t) for t in range(1, i + 1))
        if rows == list(range(1, i + 1)):
            continue
        mn = minor(m, rows, range(1, i + 1))
        report.minors.append((i, rows, mn.num))
        pool_exp, var_exp, rem = factor_against_pool(mn.num, pool)
        cands: list[Polynomial] = []
        for name in var_exp:
            cands.append(Polynomial.variable(name))
        for idx in pool_exp:
            q = pool[idx]
            if all(q != p for p in principal):
                cands.append(q)
        if not rem.is_constant():
            if _certify_irreducible(rem):
                cands.append(rem.monic())
            else:
                report.complete = False
        for q in cands:
            if any(q == p for p in principal):
                continue
            if all(q != p for p in seen):
                seen.append(q)
    report.factors = seen
    return report


def frozen_count(v: Permutation, w: Permutation,
                 pool_hints: Sequence[Polynomial] = ()) -> int:
    """f(v, w) = f(e, w) - f(e, v) + s(v, w); raises when s is uncertified."""
    rep = s_count(v, w, pool_hints)
    if not rep.complete:
        raise IncompleteFactorization(
            "some factor could not be certified irreducible")
    return frozen_count_base(w) - frozen_count_base(v) + rep.s


def frozen_inequality_check(u: Permutation, v: Permutation, w: Permutation,
                            pool_hints: Sequence[Polynomial] = ()) -> bool:
    """f(u, v) + f(v, w) >= f(u, w) on a Bruhat chain u <= v <= w.

    The two lower counts come from the splice factors, realized as the
    Richardson models R(u, v) and R(v, w)."""
    if not (bruhat_leq(u, v) and bruhat_leq(v, w)):
        raise BruhatViolation("need u <= v <= w")
    # f(u, v) via the model on lift(v) * lift(u^{-1} w0): shift both by v
    fuv = _pair_count(u, v, pool_hints)
    fvw = _pair_count(v, w, pool_hints)
    fuw = _pair_count(u, w, pool_hints)
    return fuv + fvw >= fuw


def _pair_count(a: Permutation, b: Permutation, pool_hints) -> int:
    return frozen_count(a, b, pool_hints)


def richardson_splice(u: Permutation, v: Permutation, w: Permutation,
                      point: Sequence):
    """Split a point of the R(u, w) model across the chart of v.

    Delegates to the variety splice with prefix length len(lift(w)) and
    parameter w0 v w0; the outputs model R(v, w) and R(u, v).
    """
    if not (bruhat_leq(u, v) and bruhat_leq(v, w)):
        raise BruhatViolation("need u <= v <= w")
    k = u.k
    w0 = Permutation.longest(k)
    beta = richardson_braid(u, w)
    r1 = w.length()
    vstar = w0 * v * w0
    return braid_splice_forward(beta, r1, vstar, point)


def richardson_splice_inverse(u: Permutation, v: Permutation, w: Permutation,
                              pt1: Sequence, pt2: Sequence):
    k = u.k
    w0 = Permutation.longest(k)
    beta = richardson_braid(u, w)
    return braid_splice_inverse(beta, w.length(), w0 * v * w0, pt1, pt2)


def richardson_splice_words(u: Permutation, v: Permutation, w: Permutation):
    beta = richardson_braid(u, w)
    w0 = Permutation.longest(u.k)
    return splice_words(beta, w.length(), w0 * v * w0)
