"""Permutations of {1..k} and words in the positive braid monoid.

Conventions:

- A :class:`Permutation` stores one-line notation ``(w(1), ..., w(k))`` with
  values in 1..k.  Products compose as functions, ``(u * v)(i) = u(v(i))``,
  and ``s(k, i)`` is the simple transposition swapping i and i+1.
- A :class:`BraidWord` on k strands is a finite sequence of letters ``i``
  with ``1 <= i <= k-1``, standing for the product of the corresponding
  braid generators read left to right.  Words multiply by concatenation.
- The canonical reduced word of a permutation (:func:`positive_lift`) is the
  staircase word read off the Lehmer code: for each position i, the code
  entry c_i contributes the descending run ``i+c_i-1, ..., i+1, i``.  With
  this choice the lift of the longest element is exactly :func:`delta_word`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass


class Permutation:
    """Element of S_k in one-line notation.

    >>> w = Permutation([2, 1, 4, 3])
    >>> w.length(), w(1), (w * w).is_identity()
    (2, 2, True)
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        self.images = images

    @property
    def k(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(k: int) -> "Permutation":
        return Permutation(range(1, k + 1))

    @staticmethod
    def s(k: int, i: int) -> "Permutation":
        if not 1 <= i <= k - 1:
            raise ValueError(f"generator index {i} out of range for k={k}")
        im = list(range(1, k + 1))
        im[i - 1], im[i] = im[i], im[i - 1]
        return Permutation(im)

    @staticmethod
    def longest(k: int) -> "Permutation":
        return Permutation(range(k, 0, -1))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.k != other.k:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        out = [0] * self.k
        for i, v in enumerate(self.images, start=1):
            out[v - 1] = i
        return Permutation(out)

    def length(self) -> int:
        im = self.images
        return sum(1 for i in range(len(im)) for j in range(i + 1, len(im))
                   if im[i] > im[j])

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def right_mul_s(self, i: int) -> "Permutation":
        im = list(self.images)
        im[i - 1], im[i] = im[i], im[i - 1]
        return Permutation(im)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def __str__(self):
        return "[" + ",".join(str(v) for v in self.images) + "]"


@dataclass(frozen=True)
class BraidWord:
    """Positive braid word: strand count plus a sequence of letters.

    >>> b = BraidWord(3, [1, 2]) * BraidWord(3, [1])
    >>> b.letters, len(b)
    ((1, 2, 1), 3)
    """

    k: int
    letters: tuple[int, ...]

    def __init__(self, k: int, letters=()):
        letters = tuple(int(i) for i in letters)
        for i in letters:
            if not 1 <= i <= k - 1:
                raise ValueError(f"letter {i} out of range for k={k}")
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.k != other.k:
            raise ValueError("strand count mismatch")
        return BraidWord(self.k, self.letters + other.letters)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return BraidWord(self.k, self.letters[idx])
        return self.letters[idx]

    def permutation(self) -> Permutation:
        p = Permutation.identity(self.k)
        for i in self.letters:
            p = p.right_mul_s(i)
        return p

    def __str__(self):
        return " ".join(str(i) for i in self.letters)

    @staticmethod
    def parse(k: int, text: str) -> "BraidWord":
        """Parse whitespace-separated generator indices, e.g. ``"2 1 3 2"``."""
        return BraidWord(k, [int(t) for t in text.split()])


def parse_permutation(k: int, text: str) -> Permutation:
    """Parse ``[2,1,4,3]`` one-line notation or a word like ``"s2"``/``"2 1"``."""
    text = text.strip()
    if text.startswith("["):
        vals = [int(t) for t in text.strip("[]").replace(",", " ").split()]
        if len(vals) != k:
            raise ValueError(f"expected {k} entries, got {vals}")
        return Permutation(vals)
    if text in ("e", "id", ""):
        return Permutation.identity(k)
    if text == "w0":
        return Permutation.longest(k)
    letters = [int(t.lstrip("s")) for t in text.replace(",", " ").split()]
    return BraidWord(k, letters).permutation()


def coxeter_length(w: Permutation) -> int:
    """Number of inversions of ``w``; the length of any reduced word."""
    return w.length()


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """Bruhat order via the rank-matrix (dominance) criterion.

    ``u <= w`` iff for all i, j the count ``#{a <= i : u(a) <= j}`` is at
    least the corresponding count for w.
    """
    if u.k != w.k:
        raise ValueError("size mismatch")
    k = u.k
    ru = _rank_table(u)
    rw = _rank_table(w)
    return all(ru[i][j] >= rw[i][j] for i in range(k + 1) for j in range(k + 1))


def _rank_table(w: Permutation):
    k = w.k
    r = [[0] * (k + 1) for _ in range(k + 1)]
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            r[i][j] = r[i - 1][j] + (1 if w(i) <= j else 0)
    return r


def bruhat_leq_subword(u: Permutation, w: Permutation) -> bool:
    """Brute-force subword criterion; exponential, for cross-checks only."""
    wu = positive_lift(u).letters
    ww = positive_lift(w).letters
    lu = len(wu)
    for sub in itertools.combinations(range(len(ww)), lu):
        cand = BraidWord(u.k, [ww[i] for i in sub]).permutation()
        if cand == u:
            return True
    return lu == 0


def demazure_step(w: Permutation, i: int) -> Permutation:
    """One step of the Demazure product: multiply by s_i only if it lengthens."""
    ws = w.right_mul_s(i)
    return ws if ws.length() > w.length() else w


def demazure_product(beta: BraidWord) -> Permutation:
    """Greedy left-to-right fold of :func:`demazure_step` over the word.

    >>> demazure_product(BraidWord(2, [1, 1])).images
    (2, 1)
    """
    d = Permutation.identity(beta.k)
    for i in beta.letters:
        d = demazure_step(d, i)
    return d


def demazure_product_reverse(beta: BraidWord) -> Permutation:
    """Fold the word from its right end, taking left Demazure steps.

    Always agrees with :func:`demazure_product`; kept as the independent
    second route for the two-direction property test.
    """
    k = beta.k
    d = Permutation.identity(k)
    for i in reversed(beta.letters):
        sd = Permutation.s(k, i) * d
        if sd.length() > d.length():
            d = sd
    return d


def demazure_star(v: Permutation, w: Permutation) -> Permutation:
    """Demazure product of two permutations via their canonical lifts."""
    if v.k != w.k:
        raise ValueError("size mismatch")
    return demazure_product(positive_lift(v) * positive_lift(w))


def lehmer_code(w: Permutation) -> tuple[int, ...]:
    im = w.images
    k = len(im)
    return tuple(sum(1 for j in range(i + 1, k) if im[j] < im[i])
                 for i in range(k))


def positive_lift(w: Permutation) -> BraidWord:
    """The canonical reduced word of ``w`` (staircase word of the Lehmer code).

    >>> positive_lift(Permutation([3, 2, 1])).letters
    (2, 1, 2)
    """
    letters: list[int] = []
    for i, c in enumerate(lehmer_code(w), start=1):
        letters.extend(range(i + c - 1, i - 1, -1))
    return BraidWord(w.k, letters)


def delta_word(k: int) -> BraidWord:
    """The word (s_{k-1}..s_1)(s_{k-1}..s_2)...(s_{k-1}) for the longest element.

    >>> delta_word(4).letters
    (3, 2, 1, 3, 2, 3)
    """
    if k < 2:
        raise ValueError("need k >= 2")
    letters: list[int] = []
    for j in range(1, k):
        letters.extend(range(k - 1, j - 1, -1))
    return BraidWord(k, letters)


def lift_with_prefix(w: Permutation) -> BraidWord:
    """A reduced word for the longest element whose prefix is the canonical
    reduced word of ``w``; the suffix is the canonical word of w^{-1}w_0."""
    rest = positive_lift(w.inverse() * Permutation.longest(w.k))
    return positive_lift(w) * rest


def all_permutations(k: int):
    """All of S_k, in lexicographic one-line order."""
    return [Permutation(p) for p in itertools.permutations(range(1, k + 1))]
