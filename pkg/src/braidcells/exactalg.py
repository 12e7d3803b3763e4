"""Exact arithmetic: rationals, sparse multivariate polynomials, rational functions.

Conventions used throughout the package:

- Rational numbers are arbitrary-precision ``gmpy2.mpq`` values (exposed here
  as ``Rational``); ``rat("3/2")`` parses the string form used in all JSON
  interfaces.
- A :class:`Polynomial` is a sparse sum of terms, stored as a map from
  exponent tuples (aligned with the polynomial's own sorted variable tuple)
  to nonzero rational coefficients.  Variables sort naturally, so
  ``z2 < z10``.
- The term order is graded lexicographic: first by total degree, ties broken
  by the exponent tuple read along the sorted variable list.  Leading
  coefficients, monic normalization and the printed order of terms all refer
  to this order.
- A :class:`RationalFunction` is a reduced fraction ``num/den`` with ``den``
  monic; all arithmetic is exact.

The text format for polynomials is a signed sum of monomials such as
``-z6*z7 + z5*z8`` with ``^`` for powers; the parser also accepts ``**``,
parentheses and quotients, and returns a :class:`RationalFunction`.
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational


class ZeroDenominator(ZeroDivisionError):
    """A rational function was built with an identically zero denominator."""


class PoleAtPoint(ZeroDivisionError):
    """Evaluation hit a zero of the denominator."""


class MissingVariable(KeyError):
    """A point assignment does not cover some variable."""


def rat(value) -> Rational:
    """Coerce ints, strings like ``"3/2"``, or rationals to :class:`Rational`.

    >>> rat("-7/3") + rat(1)
    mpq(-4,3)
    """
    if isinstance(value, str):
        value = value.strip()
        if "/" in value:
            num, den = value.split("/")
            return Rational(int(num), int(den))
        return Rational(int(value))
    return Rational(value)


def rat_str(q) -> str:
    """Render a rational as ``p`` or ``p/q``."""
    q = Rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_VAR_RE = re.compile(r"([A-Za-z_]+)(\d*)$")


def _var_key(name: str):
    m = _VAR_RE.match(name)
    if not m:
        return (name, -1, name)
    prefix, digits = m.groups()
    return (prefix, int(digits) if digits else -1, name)


def _merge_vars(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    if a == b:
        return a
    return tuple(sorted(set(a) | set(b), key=_var_key))


class Polynomial:
    """Sparse multivariate polynomial over the rationals.

    ``vars`` is the sorted tuple of variable names actually occurring;
    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    coefficients.  Instances are immutable; all operators return new values.

    >>> p = Polynomial.variable("z1") * 2 + 1
    >>> str(p * p)
    '4*z1^2 + 4*z1 + 1'
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: tuple[str, ...], terms: dict):
        self.vars = vars
        self.terms = terms
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(c) -> "Polynomial":
        c = rat(c)
        if c == 0:
            return _P_ZERO
        return Polynomial((), {(): c})

    @staticmethod
    def variable(name: str) -> "Polynomial":
        return Polynomial((name,), {(1,): Rational(1)})

    @staticmethod
    def _make(vars: tuple[str, ...], terms: dict) -> "Polynomial":
        terms = {e: c for e, c in terms.items() if c != 0}
        if not terms:
            return _P_ZERO
        used = [i for i in range(len(vars)) if any(e[i] for e in terms)]
        if len(used) != len(vars):
            vars2 = tuple(vars[i] for i in used)
            terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
            return Polynomial(vars2, terms)
        return Polynomial(vars, terms)

    # -- ring structure ----------------------------------------------------

    def _aligned(self, other: "Polynomial"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vs = _merge_vars(self.vars, other.vars)
        return vs, self._remap(vs), other._remap(vs)

    def _remap(self, vs: tuple[str, ...]) -> dict:
        if vs == self.vars:
            return self.terms
        idx = [vs.index(v) for v in self.vars]
        n = len(vs)
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for pos, exp in zip(idx, e):
                e2[pos] = exp
            out[tuple(e2)] = c
        return out

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        vs, t1, t2 = self._aligned(other)
        out = dict(t1)
        for e, c in t2.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
        return Polynomial._make(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return _P_ZERO
        if other.is_constant():
            c = other.terms[()]
            return Polynomial(self.vars, {e: k * c for e, k in self.terms.items()})
        if self.is_constant():
            c = self.terms[()]
            return Polynomial(other.vars, {e: k * c for e, k in other.terms.items()})
        vs, t1, t2 = self._aligned(other)
        out = {}
        for e1, c1 in t1.items():
            for e2, c2 in t2.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                if s is None:
                    out[e] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s == 0:
                        del out[e]
                    else:
                        out[e] = s
        return Polynomial._make(vs, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial; use RationalFunction")
        out = _P_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __truediv__(self, other):
        return RationalFunction(self, other)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return other == self
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- queries -----------------------------------------------------------

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> Rational:
        if self.vars:
            raise ValueError("not a constant polynomial")
        return self.terms.get((), Rational(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, var: str) -> int:
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def leading_key(self):
        return max((sum(e), e) for e in self.terms)

    def leading_coefficient(self) -> Rational:
        if not self.terms:
            return Rational(0)
        return self.terms[self.leading_key()[1]]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        return Polynomial(self.vars, {e: c / lc for e, c in self.terms.items()})

    def coefficients_in(self, var: str) -> dict[int, "Polynomial"]:
        """Coefficients of powers of ``var``, each a polynomial in the rest."""
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            d = e[i]
            e2 = e[:i] + e[i + 1:]
            buckets.setdefault(d, {})[e2] = c
        return {d: Polynomial._make(rest, t) for d, t in buckets.items()}

    def evaluate(self, point: Mapping[str, Rational]) -> Rational:
        total = Rational(0)
        for e, c in self.terms.items():
            val = c
            for v, exp in zip(self.vars, e):
                if exp:
                    if v not in point:
                        raise MissingVariable(v)
                    val = val * rat(point[v]) ** exp
            total += val
        return total

    def substitute(self, assignment: Mapping[str, "Polynomial"]) -> "Polynomial":
        out = _P_ZERO
        for e, c in self.terms.items():
            term = Polynomial.const(c)
            for v, exp in zip(self.vars, e):
                if exp:
                    base = assignment.get(v, Polynomial.variable(v))
                    term = term * base ** exp
            out = out + term
        return out

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"Polynomial({poly_str(self)!r})"


_P_ZERO = Polynomial((), {})
_P_ONE = Polynomial((), {(): Rational(1)})
Polynomial.zero = _P_ZERO
Polynomial.one = _P_ONE


def _coerce(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, type(Rational(0)))):
        return Polynomial.const(x)
    return NotImplemented


def poly_div(p: Polynomial, q: Polynomial) -> Polynomial | None:
    """Exact quotient ``p/q``, or None when ``q`` does not divide ``p``."""
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return _P_ZERO
    if q.is_constant():
        c = q.terms[()]
        return Polynomial(p.vars, {e: k / c for e, k in p.terms.items()})
    vs, tp, tq = p._aligned(q)
    lq = max((sum(e), e) for e in tq)[1]
    cq = tq[lq]
    rem = dict(tp)
    quot = {}
    while rem:
        le = max((sum(e), e) for e in rem)[1]
        d = tuple(a - b for a, b in zip(le, lq))
        if any(x < 0 for x in d):
            return None
        c = rem[le] / cq
        quot[d] = c
        for e, k in tq.items():
            e2 = tuple(a + b for a, b in zip(d, e))
            s = rem.get(e2, Rational(0)) - c * k
            if s == 0:
                rem.pop(e2, None)
            else:
                rem[e2] = s
    return Polynomial._make(vs, quot)


def _monomial_content(p: Polynomial):
    """Split off the largest monomial dividing ``p``: returns (exps, reduced)."""
    mins = [min(e[i] for e in p.terms) for i in range(len(p.vars))]
    if not any(mins):
        return {}, p
    terms = {tuple(a - b for a, b in zip(e, mins)): c for e, c in p.terms.items()}
    mono = {v: m for v, m in zip(p.vars, mins) if m}
    return mono, Polynomial._make(p.vars, terms)


def _gcd_list(polys: Sequence[Polynomial]) -> Polynomial:
    g = polys[0]
    for p in polys[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, p)
    return g


def _prem(a: dict[int, Polynomial], b: dict[int, Polynomial]):
    """Pseudo-remainder of univariate-with-polynomial-coefficients a by b."""
    da, db = max(a), max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        shift = dr - db
        r = {d: c * lb for d, c in r.items()}
        for d, c in b.items():
            d2 = d + shift
            s = r.get(d2, _P_ZERO) - c * lr
            if s:
                r[d2] = s
            else:
                r.pop(d2, None)
        r = {d: c for d, c in r.items() if c}
    return r


def _from_coeffs(coeffs: dict[int, Polynomial], var: str) -> Polynomial:
    x = Polynomial.variable(var)
    out = _P_ZERO
    for d, c in coeffs.items():
        out = out + c * x ** d
    return out


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Greatest common divisor, normalized monic (leading coefficient 1).

    >>> z1, z2 = Polynomial.variable("z1"), Polynomial.variable("z2")
    >>> str(poly_gcd(z1 * z2, z1))
    'z1'
    """
    if not p.terms:
        return q.monic()
    if not q.terms:
        return p.monic()
    mono_p, p1 = _monomial_content(p)
    mono_q, q1 = _monomial_content(q)
    common = _P_ONE
    for v, m in mono_p.items():
        m2 = min(m, mono_q.get(v, 0))
        if m2:
            common = common * Polynomial.variable(v) ** m2
    if p1.is_constant() or q1.is_constant():
        return common
    if p1 == q1 or p1 == q1.monic() or p1.monic() == q1:
        return (common * q1).monic()
    if poly_div(p1, q1) is not None:
        return (common * q1).monic()
    if poly_div(q1, p1) is not None:
        return (common * p1).monic()
    shared = [v for v in p1.vars if v in q1.vars]
    if not shared:
        return common
    # subresultant PRS in a shared main variable of least joint degree
    var = min(shared, key=lambda v: p1.degree_in(v) + q1.degree_in(v))
    a = p1.coefficients_in(var)
    b = q1.coefficients_in(var)
    if max(a) < max(b):
        a, b = b, a
    cont_a = _gcd_list(list(a.values()))
    cont_b = _gcd_list(list(b.values()))
    gamma = poly_gcd(cont_a, cont_b)
    a = {d: poly_div(c, cont_a) for d, c in a.items()}
    b = {d: poly_div(c, cont_b) for d, c in b.items()}
    g = _P_ONE
    h = _P_ONE
    while True:
        delta = max(a) - max(b)
        r = _prem(a, b)
        if not r:
            pp = _from_coeffs(b, var)
            cont = _gcd_list(list(b.values()))
            pp = poly_div(pp, cont)
            return (common * gamma * pp).monic()
        if max(r) == 0:
            return common * gamma
        denom = g * h ** delta
        a = b
        b = {d: poly_div(c, denom) for d, c in r.items()}
        g = a[max(a)]
        if delta == 0:
            h = h
        elif delta == 1:
            h = g
        else:
            h = poly_div(g ** delta, h ** (delta - 1))


class RationalFunction:
    """Reduced fraction of two polynomials with monic denominator.

    >>> z1 = RationalFunction.var("z1")
    >>> str((z1 * z1) / z1)
    'z1'
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        if isinstance(num, RationalFunction):
            if den is not None:
                raise TypeError("pass a single RationalFunction or num/den polys")
            self.num, self.den = num.num, num.den
            return
        num = _coerce(num)
        den = _P_ONE if den is None else _coerce(den)
        if isinstance(den, RationalFunction) or den is NotImplemented:
            raise TypeError("denominator must be a polynomial")
        if not den.terms:
            raise ZeroDenominator("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def var(name: str) -> "RationalFunction":
        return RationalFunction(Polynomial.variable(name), _P_ONE, _reduced=True)

    @staticmethod
    def const(c) -> "RationalFunction":
        return RationalFunction(Polynomial.const(c), _P_ONE, _reduced=True)

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_rf(other) - self

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num.terms:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rf(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (RationalFunction.const(1) / self) ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __bool__(self):
        return bool(self.num.terms)

    def __hash__(self):
        return hash((self.num, self.den))

    def is_polynomial(self) -> bool:
        return self.den == _P_ONE

    def evaluate(self, point: Mapping[str, Rational]) -> Rational:
        d = self.den.evaluate(point)
        if d == 0:
            raise PoleAtPoint(f"denominator vanishes at {dict(point)!r}")
        return self.num.evaluate(point) / d

    def __str__(self):
        return rf_str(self)

    def __repr__(self):
        return f"RationalFunction({rf_str(self)!r})"


RationalFunction.zero = RationalFunction(_P_ZERO, _P_ONE, _reduced=True)
RationalFunction.one = RationalFunction(_P_ONE, _P_ONE, _reduced=True)


def _reduce(num: Polynomial, den: Polynomial):
    if not num.terms:
        return _P_ZERO, _P_ONE
    if den.is_constant():
        c = den.terms[()]
        if c == 1:
            return num, _P_ONE
        return num * Polynomial.const(1 / c), _P_ONE
    g = poly_gcd(num, den)
    if not g.is_constant():
        num = poly_div(num, g)
        den = poly_div(den, g)
    lc = den.leading_coefficient()
    if lc != 1:
        inv = Polynomial.const(1 / lc)
        num, den = num * inv, den * inv
    if den.is_constant():
        return num, _P_ONE
    return num, den


def _coerce_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction(x, _P_ONE, _reduced=True)
    if isinstance(x, (int, type(Rational(0)))):
        return RationalFunction.const(x)
    return NotImplemented


def rf_normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Cancel the gcd and make the denominator monic; errors on zero den."""
    return RationalFunction(num, den)


def evaluate(f: RationalFunction | Polynomial, point: Mapping[str, Rational]) -> Rational:
    """Exact evaluation at a rational point; raises on poles / missing vars."""
    return f.evaluate(point)


def factor_against_pool(p: Polynomial, pool: Sequence[Polynomial],
                        include_variables: bool = True):
    """Maximal trial division of ``p`` against a pool of candidate factors.

    Single variables are implicitly part of the pool (unless disabled).
    Returns ``(pool_exponents, variable_exponents, remainder)`` with
    ``p == remainder * prod(pool[i]**e) * prod(var**e)`` exactly.
    """
    pool_exp: dict[int, int] = {}
    var_exp: dict[str, int] = {}
    rem = p
    if include_variables and rem.terms:
        mono, rem = _monomial_content(rem)
        var_exp.update(mono)
    for i, q in enumerate(pool):
        if q.is_constant():
            raise ValueError("pool elements must be nonconstant")
        while True:
            d = poly_div(rem, q)
            if d is None:
                break
            pool_exp[i] = pool_exp.get(i, 0) + 1
            rem = d
    return pool_exp, var_exp, rem


# -- printing and parsing ---------------------------------------------------

def poly_str(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    items = sorted(p.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)
    pieces = []
    for e, c in items:
        factors = [f"{v}^{x}" if x > 1 else v
                   for v, x in zip(p.vars, e) if x]
        mono = "*".join(factors)
        neg = c < 0
        ac = -c if neg else c
        if mono and ac == 1:
            body = mono
        elif mono:
            body = f"{rat_str(ac)}*{mono}"
        else:
            body = rat_str(ac)
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)


def rf_str(f: RationalFunction) -> str:
    if f.den == _P_ONE:
        return poly_str(f.num)
    num_s = poly_str(f.num)
    den_s = poly_str(f.den)
    if len(f.num.terms) > 1:
        num_s = f"({num_s})"
    if len(f.den.terms) > 1:
        den_s = f"({den_s})"
    return f"{num_s}/{den_s}"


_TOKEN = re.compile(r"\s*(\*\*|\^|[()+\-*/]|\d+|[A-Za-z_][A-Za-z_0-9]*)")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad character in expression at {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self) -> RationalFunction:
        t = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            rhs = self.term()
            t = t + rhs if op == "+" else t - rhs
        return t

    def term(self) -> RationalFunction:
        t = self.factor()
        while self.peek() in ("*", "/"):
            op = self.next()
            rhs = self.factor()
            t = t * rhs if op == "*" else t / rhs
        return t

    def factor(self) -> RationalFunction:
        if self.peek() == "-":
            self.next()
            return -self.factor()
        if self.peek() == "+":
            self.next()
            return self.factor()
        base = self.atom()
        while self.peek() in ("^", "**"):
            self.next()
            neg = False
            if self.peek() == "-":
                self.next()
                neg = True
            tok = self.next()
            if tok is None or not tok.isdigit():
                raise ValueError("expected integer exponent")
            e = int(tok)
            base = base ** (-e if neg else e)
        return base

    def atom(self) -> RationalFunction:
        tok = self.next()
        if tok == "(":
            inner = self.expr()
            if self.next() != ")":
                raise ValueError("unbalanced parenthesis")
            return inner
        if tok is None:
            raise ValueError("unexpected end of expression")
        if tok.isdigit():
            return RationalFunction.const(int(tok))
        if re.match(r"[A-Za-z_]", tok):
            return RationalFunction.var(tok)
        raise ValueError(f"unexpected token {tok!r}")


def parse_rf(text: str) -> RationalFunction:
    """Parse an expression like ``-z6*z7 + z5*z8`` or ``(z1+1)/(z2^2)``."""
    parser = _Parser(_tokenize(text))
    out = parser.expr()
    if parser.peek() is not None:
        raise ValueError(f"trailing input at {parser.toks[parser.i:]!r}")
    return out


def parse_poly(text: str) -> Polynomial:
    f = parse_rf(text)
    if not f.is_polynomial():
        raise ValueError(f"{text!r} is not polynomial")
    return f.num
