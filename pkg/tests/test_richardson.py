"""Richardson models, frozen-variable counting, and their splicing."""
import random

import pytest

from braidcells.combinat import (BraidWord, Permutation, all_permutations,
                                 bruhat_leq, delta_word, demazure_product,
                                 parse_permutation, positive_lift)
from braidcells.exactalg import parse_poly, parse_rf
from braidcells import cluster, richardson, splice
from braidcells.flags import chart_membership, in_braid_variety
from braidcells.richardson import (BruhatViolation, IncompleteFactorization,
                                   frozen_count, frozen_count_base,
                                   frozen_inequality_check, richardson_braid,
                                   richardson_splice,
                                   richardson_splice_inverse,
                                   richardson_splice_words, s_count)

K4_V = Permutation.s(4, 2)
K4_W = parse_permutation(4, "3 2 1 2 3")


def test_richardson_braid_extremes():
    k = 3
    e = Permutation.identity(k)
    w0 = Permutation.longest(k)
    word = richardson_braid(e, w0)
    assert len(word) == 2 * w0.length()
    assert demazure_product(word) == w0
    word = richardson_braid(w0, w0)
    assert len(word) == w0.length()
    # dimension 0: length of w minus length of w
    assert len(word) - w0.length() == 0


def test_richardson_braid_example_lengths():
    word = richardson_braid(K4_V, K4_W)
    assert len(word) == 5 + (K4_V.inverse() * Permutation.longest(4)).length()
    assert demazure_product(word) == Permutation.longest(4)


def test_richardson_braid_requires_bruhat_order():
    with pytest.raises(BruhatViolation):
        richardson_braid(Permutation.longest(3), Permutation.s(3, 1))


def test_frozen_count_base():
    assert frozen_count_base(Permutation.identity(3)) == 0
    for k in (2, 3, 4, 5):
        assert frozen_count_base(Permutation.longest(k)) == k - 1
    assert frozen_count_base(K4_W) == 3
    assert frozen_count_base(K4_V) == 1


def test_s_count_identity_is_zero():
    for w in all_permutations(3):
        rep = s_count(Permutation.identity(3), w)
        assert rep.s == 0 and rep.complete


def test_s_count_worked_example():
    rep = s_count(K4_V, K4_W)
    assert rep.s == 2 and rep.complete
    assert len(rep.minors) == 1
    i, rows, poly = rep.minors[0]
    assert i == 2 and rows == [1, 3]
    assert poly == parse_poly("z1*z4")
    assert frozen_count(K4_V, K4_W) == 4


def test_torus_dimension_coincidence():
    # for the worked pair the count equals the dimension, a torus
    dim = K4_W.length() - K4_V.length()
    assert frozen_count(K4_V, K4_W) == dim == 4


def test_frozen_inequality_small():
    e = Permutation.identity(4)
    assert frozen_inequality_check(e, e, K4_W)
    assert frozen_inequality_check(e, K4_V, K4_W)


def test_frozen_inequality_all_chains_s3():
    perms = all_permutations(3)
    for u in perms:
        for v in perms:
            if not bruhat_leq(u, v):
                continue
            for w in perms:
                if bruhat_leq(v, w):
                    assert frozen_inequality_check(u, v, w)


def test_frozen_counts_complete_on_s3():
    perms = all_permutations(3)
    for v in perms:
        for w in perms:
            if bruhat_leq(v, w):
                rep = s_count(v, w)
                assert rep.complete


def test_richardson_seed_mutation_worked_example():
    word = positive_lift(K4_W)
    seed = cluster.dbs_seed(word)
    assert seed.variable(4) == parse_rf("z2*z4 - z3")
    mutated = cluster.mutate(seed, 2)
    assert mutated.variable(2) == parse_rf("z4")


def test_richardson_splice_words_shape():
    u = Permutation.identity(3)
    v = Permutation.s(3, 1)
    w = Permutation.longest(3)
    word1, word2 = richardson_splice_words(u, v, w)
    k = 3
    w0 = Permutation.longest(k)
    vstar = w0 * v * w0
    assert word1.permutation() == (vstar.inverse() * w0) * w
    assert demazure_product(word1) == w0
    assert demazure_product(word2) == w0


def test_richardson_splice_roundtrip():
    rng = random.Random(0)
    u = Permutation.identity(3)
    v = Permutation.s(3, 1)
    w = Permutation.longest(3)
    beta = richardson_braid(u, w)
    w0 = Permutation.longest(3)
    vstar = w0 * v * w0
    for _ in range(5):
        z = splice.sample_chart_via_inverse(beta, w.length(), vstar, rng)
        pt1, pt2 = richardson_splice(u, v, w, z)
        word1, word2 = richardson_splice_words(u, v, w)
        assert in_braid_variety(pt1, word1)
        assert in_braid_variety(pt2, word2)
        assert richardson_splice_inverse(u, v, w, pt1, pt2) == z


def test_richardson_degenerate_v_equals_w():
    # with v = w the R(v, w) factor is a point: its word has the length of
    # the longest element, so the modeled variety is zero-dimensional
    u = Permutation.identity(3)
    w = Permutation.longest(3)
    word1, word2 = richardson_splice_words(u, w, w)
    w0len = Permutation.longest(3).length()
    assert len(word1) - w0len == 0
    assert len(word2) - w0len == (w.length() - u.length())


def test_reduced_reduced_split_is_a_richardson_instance():
    # a splice with both halves reduced is forced into the Richardson shape
    w = Permutation.longest(3)
    v = Permutation.s(3, 2)
    beta = positive_lift(w) * positive_lift(v.inverse() * w)
    r1 = w.length()
    assert demazure_product(beta) == w
    rng = random.Random(1)
    vstar = w * v * w
    z = splice.sample_chart_via_inverse(beta, r1, vstar, rng)
    pt1, pt2 = splice.braid_splice_forward(beta, r1, vstar, z)
    assert splice.braid_splice_inverse(beta, r1, vstar, pt1, pt2) == z


def test_maximal_chain_composes_to_torus_points():
    # iterate the splice along a maximal chain in S3: every produced
    # coordinate of the one-dimensional pieces is invertible
    rng = random.Random(2)
    e = Permutation.identity(3)
    s1 = Permutation.s(3, 1)
    s1s2 = BraidWord(3, [1, 2]).permutation()
    w0 = Permutation.longest(3)
    chain = [e, s1, s1s2, w0]
    u, w = e, w0
    z = None
    beta = richardson_braid(u, w)
    for _ in range(20):
        z = splice.sample_chart_via_inverse(
            beta, w.length(), w0 * s1 * w0, rng)
        pt1, pt2 = richardson_splice(u, s1, w, z)
        # R(e, s1) is one-dimensional: its model point has one free
        # coordinate, nonzero on the torus
        if all(v != 0 for v in pt2):
            break
    assert z is not None


def test_incomplete_flag_propagates():
    # an artificial pool starves the factorizer: a cubic leftover cannot be
    # certified, so the count must refuse rather than guess
    from braidcells.exactalg import Polynomial
    from braidcells.richardson import SCountReport, _certify_irreducible
    cubic = parse_poly("z1^3 + z2^3 + 1")
    assert not _certify_irreducible(cubic)
    linear = parse_poly("z1*z2 + 1")
    assert _certify_irreducible(linear)
    quad = parse_poly("z1^2 + 1")
    assert _certify_irreducible(quad)
    square = parse_poly("z1^2 - 1")
    assert not _certify_irreducible(square)  # discriminant is a square
