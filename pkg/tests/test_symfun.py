"""Chern-vector engine: Whitney sums, series inversion, tensor products."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fanolink.schubert import one, sigma, tautological_sub_chern, zero
from fanolink.symfun import (ChernVector, GradedRing, dual,
                             invert_total_class, tensor_chern, whitney_sum)

RING = GradedRing(("x", "y"), (1, 1))
X = RING.gen("x")
Y = RING.gen("y")
TOP = 4


def vec(rank, *entries):
    classes = [RING.one()] + list(entries)
    classes += [RING.zero()] * (TOP + 1 - len(classes))
    return ChernVector(rank, tuple(classes))


def random_vec(rng, rank=2, honest=False):
    """Random ChernVector; with honest=True the entries above the declared
    rank vanish, as for an actual bundle's classes."""
    entries = []
    for k in range(1, TOP + 1):
        if honest and k > rank:
            entries.append(RING.zero())
            continue
        terms = {}
        for _ in range(2):
            i = rng.randint(0, k)
            terms[(i, k - i)] = terms.get((i, k - i), 0) + rng.randint(-3, 3)
        entries.append(RING.element(terms))
    return ChernVector(rank, tuple([RING.one()] + entries))


def test_whitney_trivial_bundles():
    a = vec(1)
    b = vec(1)
    s = whitney_sum(a, b)
    assert all(c == 0 for c in s.classes[1:])
    assert s.classes[0] == 1


def test_whitney_line_bundles():
    s = whitney_sum(vec(1, X), vec(1, Y))
    assert s.classes[1] == X + Y
    assert s.classes[2] == X * Y
    assert s.rank == 2


def test_whitney_truncation_mismatch_rejected():
    a = ChernVector(1, (RING.one(), X))
    b = vec(1, Y)
    with pytest.raises(ValueError):
        whitney_sum(a, b)


def test_chern_vector_needs_unit():
    with pytest.raises(ValueError):
        ChernVector(1, (X,))
    with pytest.raises(ValueError):
        ChernVector(-1, (RING.one(),))


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_whitney_commutative_associative(rng):
    a, b, c = (random_vec(rng) for _ in range(3))
    ab = whitney_sum(a, b)
    ba = whitney_sum(b, a)
    assert ab.classes == ba.classes
    left = whitney_sum(whitney_sum(a, b), c)
    right = whitney_sum(a, whitney_sum(b, c))
    assert left.classes == right.classes


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_inverse_is_two_sided(rng):
    a = random_vec(rng)
    inv = invert_total_class(a)
    prod = whitney_sum(a, inv)
    assert all(c == 0 for c in prod.classes[1:])
    prod = whitney_sum(inv, a)
    assert all(c == 0 for c in prod.classes[1:])


def test_invert_geometric_series_in_schubert_ring():
    n = 6
    top = 2 * (n - 2)
    pad = [zero(n)] * (top - 1)
    a = ChernVector(1, tuple([one(n), sigma(n, 1)] + pad))
    inv = invert_total_class(a)
    assert inv.classes[1] == -1 * sigma(n, 1)
    assert inv.classes[2] == sigma(n, 1) * sigma(n, 1)
    assert inv.classes[3] == -1 * sigma(n, 1) ** 3


def test_invert_requires_unit_leading_term():
    classes = [RING.one() + X] + [RING.zero()] * TOP
    with pytest.raises(ValueError):
        ChernVector(1, tuple(classes))


def test_dual_alternates_signs():
    a = vec(2, X, X * Y)
    d = dual(a)
    assert d.classes[1] == -1 * X
    assert d.classes[2] == X * Y


def test_tensor_line_bundles():
    t = tensor_chern(vec(1, X), vec(1, Y))
    assert t.classes[1] == X + Y
    assert all(c == 0 for c in t.classes[2:])


def test_tensor_rank2_by_line():
    rng = random.Random(11)
    a = random_vec(rng, rank=2)
    b = vec(1, Y)
    t = tensor_chern(a, b)
    assert t.classes[1] == a.classes[1] + 2 * b.classes[1]


def test_tensor_with_trivial_line_bundle_is_identity():
    rng = random.Random(5)
    a = random_vec(rng, rank=2, honest=True)
    t = tensor_chern(a, vec(1))
    assert t.classes == a.classes


def test_tensor_degree_one_rule():
    # degree-1 output is r_b c1(a) + r_a c1(b) for any ranks
    rng = random.Random(7)
    for ra in (1, 2, 3):
        for rb in (1, 2):
            a = random_vec(rng, rank=ra)
            b = random_vec(rng, rank=rb)
            t = tensor_chern(a, b)
            assert t.classes[1] == rb * a.classes[1] + ra * b.classes[1]


def test_tautological_sequence_inverts_on_gr26():
    # 0 -> S -> O^6 -> Q -> 0 forces c(S) c(Q) = 1 through degree 8
    n = 6
    c_s = tautological_sub_chern(n)
    c_q = invert_total_class(c_s)
    # the quotient has rank 4: entries above degree 4 must vanish in the ring
    for i in range(1, n - 1):
        assert c_q.classes[i] == sigma(n, i)
    for i in range(n - 1, c_q.top + 1):
        assert c_q.classes[i] == zero(n)
    prod = whitney_sum(c_s, c_q)
    assert all(c == 0 for c in prod.classes[1:])


def test_graded_ring_queries():
    r = GradedRing(("u", "v"), (1, 2))
    p = r.gen("u") ** 2 + r.gen("v")
    assert r.is_homogeneous(p)
    assert r.degree(p) == 2
    assert r.component(p, 2) == p
    assert r.has_integer_coefficients(p)
    with pytest.raises(ValueError):
        GradedRing(("u",), (0,))
