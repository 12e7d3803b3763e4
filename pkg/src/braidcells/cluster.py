"""Ice quivers, seeds, mutation, and the cluster data of Bott-Samelson cells.

Vertices are the 1-based letter positions of the braid word.  The quiver of
a word has one vertex per letter; writing clr(j) for the letter at position
j, its arrows are:

- unmixed: ``j1 -> j2`` between consecutive positions of the same letter;
- mixed: ``j2 -> j1`` for adjacent letters ``clr(j2) = clr(j1) +- 1``
  whenever j2 lies strictly between consecutive same-letter positions
  ``j1 < j1'`` and no position of clr(j2) lies strictly between j2 and j1'.

The frozen vertices are the last positions of each letter value.  A second,
independent construction accumulates half-arrows around every crossing of
the wiring diagram; the two agree after cancelling two-cycles (residual
half-arrows occur only between frozen vertices and are dropped).

Cluster variables of the Bott-Samelson cell are the leading principal minors
``x_j = D_{[i_j],[i_j]}`` of the prefix word matrices; the diagonal units of
the LU decomposition are Laurent monomials in the frozen variables, here
represented as plain ``{vertex: exponent}`` dictionaries.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .combinat import BraidWord
from .exactalg import Polynomial, RationalFunction, factor_against_pool
from . import symmat
from .symmat import RF, braid_chain_matrices, principal_minor, symbolic_vars


class FrozenVertex(ValueError):
    """Mutation was requested at a frozen vertex."""


@dataclass(frozen=True)
class Quiver:
    """Ice quiver on vertices 1..n with signed multiplicity matrix b.

    ``b[i-1][j-1]`` is #(arrows i->j) - #(arrows j->i); no loops, and the
    2-cycle cancellation is implicit in the sign convention.
    """

    n: int
    frozen: frozenset[int]
    b: tuple[tuple[int, ...], ...]

    def arrows(self, i: int, j: int) -> int:
        return self.b[i - 1][j - 1]

    def is_frozen(self, v: int) -> bool:
        return v in self.frozen

    def mutable_vertices(self) -> list[int]:
        return [v for v in range(1, self.n + 1) if v not in self.frozen]

    def arrow_list(self) -> list[tuple[int, int, int]]:
        """Positive entries as (source, target, multiplicity), sorted."""
        out = []
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                m = self.arrows(i, j)
                if m > 0:
                    out.append((i, j, m))
        return out

    def mutable_part_arrows(self) -> set[tuple[int, int, int]]:
        return {(s, t, m) for (s, t, m) in self.arrow_list()
                if s not in self.frozen and t not in self.frozen}


def quiver_from_arrows(n: int, frozen, arrows: Sequence[tuple[int, int, int]]) -> Quiver:
    b = [[0] * n for _ in range(n)]
    for s, t, m in arrows:
        b[s - 1][t - 1] += m
        b[t - 1][s - 1] -= m
    return Quiver(n, frozenset(frozen), tuple(tuple(r) for r in b))


def last_positions(beta: BraidWord) -> dict[int, int]:
    """For each letter value s present in the word, its last position."""
    out: dict[int, int] = {}
    for pos, s in enumerate(beta.letters, start=1):
        out[s] = pos
    return out


def quiver_from_braid(beta: BraidWord) -> Quiver:
    """The inductive quiver of a word, from the mixed/unmixed arrow rules."""
    letters = beta.letters
    n = len(letters)
    arrows = []
    nxt_same = [None] * (n + 1)
    seen: dict[int, int] = {}
    for pos in range(n, 0, -1):
        s = letters[pos - 1]
        nxt_same[pos] = seen.get(s)
        seen[s] = pos
    for j1 in range(1, n + 1):
        j1n = nxt_same[j1]
        if j1n is not None:
            arrows.append((j1, j1n, 1))
        for j2 in range(j1 + 1, n + 1):
            if abs(letters[j2 - 1] - letters[j1 - 1]) != 1:
                continue
            if j1n is None or not (j2 < j1n):
                continue
            c2 = letters[j2 - 1]
            if any(letters[p - 1] == c2 for p in range(j2 + 1, j1n)):
                continue
            arrows.append((j2, j1, 1))
    return quiver_from_arrows(n, set(last_positions(beta).values()), arrows)


def quiver_from_braid_halfarrows(beta: BraidWord) -> Quiver:
    """Same quiver from the half-arrow picture around each crossing.

    Around a crossing c: one full arrow from the previous same-letter
    crossing into c, and four half-arrows tying c and that predecessor to
    the regions above and below.  Residual half-arrows survive only between
    two frozen vertices and are discarded.
    """
    letters = beta.letters
    n = len(letters)
    frozen = set(last_positions(beta).values())
    halves: dict[tuple[int, int], int] = {}

    def add(src, dst, units):
        if src is None or dst is None:
            return
        halves[(src, dst)] = halves.get((src, dst), 0) + units

    prev_of: list[int | None] = [None] * (n + 1)
    latest: dict[int, int] = {}
    for pos in range(1, n + 1):
        s = letters[pos - 1]
        prev_of[pos] = latest.get(s)
        latest[s] = pos
    for c in range(1, n + 1):
        s = letters[c - 1]
        left = prev_of[c]
        top = _last_before(letters, c, s + 1)
        bottom = _last_before(letters, c, s - 1)
        add(left, c, 2)
        add(c, top, 1)
        add(c, bottom, 1)
        add(top, left, 1)
        add(bottom, left, 1)
    b = [[0] * n for _ in range(n)]
    for (src, dst), units in halves.items():
        b[src - 1][dst - 1] += units
    arrows = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            net = b[i - 1][j - 1] - b[j - 1][i - 1]
            if net % 2 != 0:
                if not (i in frozen and j in frozen):
                    raise ArithmeticError(
                        f"half arrows do not cancel between {i} and {j}")
                net -= 1 if net > 0 else -1
            if net > 0:
                arrows.append((i, j, net // 2))
            elif net < 0:
                arrows.append((j, i, -net // 2))
    return quiver_from_arrows(n, frozen, arrows)


def _last_before(letters, pos: int, value: int):
    for p in range(pos - 1, 0, -1):
        if letters[p - 1] == value:
            return p
    return None


@dataclass(frozen=True)
class Seed:
    """A quiver together with one rational function per vertex."""

    quiver: Quiver
    x: tuple[RationalFunction, ...]

    def variable(self, v: int) -> RationalFunction:
        return self.x[v - 1]


def dbs_seed(beta: BraidWord) -> Seed:
    """Initial seed of the Bott-Samelson cell: x_j is the leading principal
    minor of size i_j of the length-j prefix matrix, in variables z1..zr."""
    zs = symbolic_vars("z", len(beta))
    chain = braid_chain_matrices(beta, zs, RF)
    xs = [principal_minor(chain[j], beta.letters[j - 1])
          for j in range(1, len(beta) + 1)]
    return Seed(quiver_from_braid(beta), tuple(xs))


def mutate_quiver(q: Quiver, v: int) -> Quiver:
    """Matrix mutation rule at v (valid at any vertex; callers gate frozen)."""
    n = q.n
    b = [list(r) for r in q.b]
    new = [[0] * n for _ in range(n)]
    vi = v - 1
    for i in range(n):
        for j in range(n):
            if i == vi or j == vi:
                new[i][j] = -b[i][j]
            else:
                new[i][j] = b[i][j] + (abs(b[i][vi]) * b[vi][j]
                                       + b[i][vi] * abs(b[vi][j])) // 2
    return Quiver(n, q.frozen, tuple(tuple(r) for r in new))


def mutate_quiver_arrows(q: Quiver, v: int) -> Quiver:
    """Three-step arrow procedure (reverse at v, compose through v, cancel
    2-cycles); independent implementation used to cross-check the rule."""
    n = q.n
    counts: dict[tuple[int, int], int] = {}
    for (s, t, m) in q.arrow_list():
        counts[(s, t)] = m
    new: dict[tuple[int, int], int] = {}
    for (s, t), m in counts.items():
        if s == v or t == v:
            new[(t, s)] = new.get((t, s), 0) + m
        else:
            new[(s, t)] = new.get((s, t), 0) + m
    for (s, t), m in counts.items():
        if t != v:
            continue
        for (s2, t2), m2 in counts.items():
            if s2 == v:
                new[(s, t2)] = new.get((s, t2), 0) + m * m2
    b = [[0] * n for _ in range(n)]
    for (s, t), m in new.items():
        b[s - 1][t - 1] += m
        b[t - 1][s - 1] -= m
    return Quiver(n, q.frozen, tuple(tuple(r) for r in b))


def mutate(seed: Seed, v: int) -> Seed:
    """Seed mutation: x_v' = (prod of in-arrows + prod of out-arrows) / x_v."""
    if seed.quiver.is_frozen(v):
        raise FrozenVertex(f"vertex {v} is frozen")
    q = seed.quiver
    inc = RationalFunction.one
    out = RationalFunction.one
    for j in range(1, q.n + 1):
        m = q.arrows(j, v)
        if m > 0:
            inc = inc * seed.variable(j) ** m
        elif m < 0:
            out = out * seed.variable(j) ** (-m)
    new_x = list(seed.x)
    new_x[v - 1] = (inc + out) / seed.variable(v)
    return Seed(mutate_quiver(q, v), tuple(new_x))


def exchange_ratio(seed: Seed, v: int) -> RationalFunction:
    """The ratio of in-arrow to out-arrow variable products at v."""
    if seed.quiver.is_frozen(v):
        raise FrozenVertex(f"vertex {v} is frozen")
    num = RationalFunction.one
    den = RationalFunction.one
    for j in range(1, seed.quiver.n + 1):
        m = seed.quiver.arrows(j, v)
        if m > 0:
            num = num * seed.variable(j) ** m
        elif m < 0:
            den = den * seed.variable(j) ** (-m)
    return num / den


def freeze(seed: Seed, vertices) -> Seed:
    q = seed.quiver
    return Seed(Quiver(q.n, q.frozen | frozenset(vertices), q.b), seed.x)


def freeze_quiver(q: Quiver, vertices) -> Quiver:
    return Quiver(q.n, q.frozen | frozenset(vertices), q.b)


@dataclass(frozen=True)
class ExtendedExchangeMatrix:
    """Integer matrix with mutable rows on top, frozen rows below, and one
    column per mutable vertex."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def n_mutable(self) -> int:
        return len(self.cols)

    @property
    def n_frozen(self) -> int:
        return len(self.rows) - len(self.cols)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def extended_exchange_matrix(q: Quiver) -> ExtendedExchangeMatrix:
    mut = q.mutable_vertices()
    fro = sorted(q.frozen)
    rows = mut + fro
    entries = tuple(tuple(q.arrows(i, j) for j in mut) for i in rows)
    return ExtendedExchangeMatrix(tuple(rows), tuple(mut), entries)


# -- Laurent monomials in frozen variables ------------------------------------

Monomial = dict  # {key: integer exponent}; key is a vertex index or a label


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    out = dict(a)
    for k, e in b.items():
        e2 = out.get(k, 0) + e
        if e2:
            out[k] = e2
        else:
            out.pop(k, None)
    return out


def mono_inv(a: Monomial) -> Monomial:
    return {k: -e for k, e in a.items()}


def mono_eval(mono: Monomial, values: Mapping) -> RationalFunction:
    out = RationalFunction.one
    for k, e in mono.items():
        out = out * values[k] ** e
    return out


def mono_str(mono: Monomial, name: str = "u") -> str:
    if not mono:
        return "1"
    parts = []
    for k in sorted(mono):
        e = mono[k]
        parts.append(f"{name}{k}" + (f"^{e}" if e != 1 else ""))
    return "*".join(parts)


def frozen_diag_units(beta: BraidWord) -> list[Monomial]:
    """Diagonal units of the LU decomposition as Laurent monomials in the
    frozen variables: u_1 = x_last(1), u_s = x_last(s) / x_last(s-1), and
    u_k = 1 / x_last(k-1); absent letters contribute nothing (x = 1)."""
    last = last_positions(beta)
    units = []
    for s in range(1, beta.k + 1):
        mono: Monomial = {}
        if s <= beta.k - 1 and s in last:
            mono[last[s]] = 1
        if s >= 2 and (s - 1) in last:
            mono = mono_mul(mono, {last[s - 1]: -1})
        units.append(mono)
    return units


def frozen_diag_units_rf(beta: BraidWord) -> list[RationalFunction]:
    """The same units as rational functions: ratios of principal minors of
    the full word matrix."""
    zs = symbolic_vars("z", len(beta))
    m = symmat.braid_word_matrix(beta, zs, RF)
    pm = [RationalFunction.one]
    for i in range(1, beta.k + 1):
        pm.append(principal_minor(m, i))
    return [pm[s] / pm[s - 1] for s in range(1, beta.k + 1)]


# -- the inductive minor ladder of a braid variety -----------------------------

def inductive_minor_factors(beta: BraidWord):
    """Cluster variables of the left-to-right inductive seed of X(beta).

    At every position m where the Demazure product does not grow, the minor
    on rows delta(beta_m)[i_m] of the prefix matrix is a product of earlier
    variables times exactly one new factor; the new factor is extracted by
    maximal trial division against the earlier ones.  Returns a list of
    (position, minor, variable) with polynomials in z1..zr.
    """
    from .combinat import Permutation, demazure_step

    zs = symbolic_vars("z", len(beta))
    chain = braid_chain_matrices(beta, zs, RF)
    d = Permutation.identity(beta.k)
    found: list[Polynomial] = []
    records = []
    for m, i in enumerate(beta.letters, start=1):
        d2 = demazure_step(d, i)
        if d2 != d:
            d = d2
            continue
        rows = sorted(d(t) for t in range(1, i + 1))
        mn = symmat.minor(chain[m], rows, range(1, i + 1))
        if not mn.is_polynomial():
            raise ArithmeticError("prefix minor was not polynomial")
        _, _, rem = factor_against_pool(mn.num, found, include_variables=False)
        records.append((m, mn.num, rem))
        found.append(rem)
    return records
