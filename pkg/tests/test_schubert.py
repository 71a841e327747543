"""Schubert calculus on Gr(2,n), checked against an independent
Littlewood-Richardson oracle and the classical duality pairing.

The oracle enumerates semistandard skew tableaux with the lattice-word
condition by brute force; it never touches the Pieri/Giambelli code path.
"""

import random
from importlib import resources
from itertools import product
from math import comb

import pytest

from fanolink.schubert import (ChowClassGr, SchubertIndex,
                               adjunct_linear_sections, cell_count,
                               euler_characteristic_section, format_triangle,
                               integrate, multiply, one, pairing_on_section,
                               parse_triangle, pieri_multiply,
                               section_gram_matrix, sigma, tangent_chern,
                               total_class, zero)


# -- independent oracle -------------------------------------------------------

def lr_count(nu, lam, mu):
    """Number of Littlewood-Richardson tableaux of shape nu/lam, content mu,
    by brute-force enumeration over {1,2} fillings."""
    (e, f), (a, b), (c, d) = nu, lam, mu
    if a > e or b > f:
        return 0
    row1 = list(range(a + 1, e + 1))   # occupied columns, 1-based
    row2 = list(range(b + 1, f + 1))
    cells = [(1, j) for j in row1] + [(2, j) for j in row2]
    count = 0
    for filling in product((1, 2), repeat=len(cells)):
        entry = dict(zip(cells, filling))
        ones = sum(1 for v in filling if v == 1)
        if ones != c or len(filling) - ones != d:
            continue
        if any(entry[(1, j)] > entry[(1, k)] for j in row1 for k in row1 if j < k):
            continue
        if any(entry[(2, j)] > entry[(2, k)] for j in row2 for k in row2 if j < k):
            continue
        if any((1, j) in entry and (2, j) in entry and
               entry[(1, j)] >= entry[(2, j)] for j in range(1, f + 1)):
            continue
        word = [entry[(1, j)] for j in reversed(row1)]
        word += [entry[(2, j)] for j in reversed(row2)]
        balance = 0
        ok = True
        for v in word:
            balance += 1 if v == 1 else -1
            if balance < 0:
                ok = False
                break
        if ok:
            count += 1
    return count


def lr_product(n, lam, mu):
    """sigma_lam * sigma_mu on Gr(2,n) via the oracle, as a ChowClassGr."""
    total = lam[0] + lam[1] + mu[0] + mu[1]
    coeffs = {}
    for e in range(n - 1):
        f = total - e
        if 0 <= f <= e:
            m = lr_count((e, f), lam, mu)
            if m:
                coeffs[(e, f)] = m
    return ChowClassGr(n, coeffs)


def duality_pairing(n, lam, mu):
    """Classical Poincare duality on Gr(2,n)."""
    (a, b), (c, d) = lam, mu
    return 1 if (a + d == n - 2 and b + c == n - 2) else 0


def all_indices(n):
    return [(a, b) for a in range(n - 1) for b in range(a + 1)]


# -- basis and validation -----------------------------------------------------

def test_index_validation():
    SchubertIndex(6, 4, 4)
    with pytest.raises(ValueError):
        SchubertIndex(6, 5, 0)
    with pytest.raises(ValueError):
        SchubertIndex(6, 1, 2)
    with pytest.raises(ValueError):
        SchubertIndex(6, 1, -1)


def test_zero_coefficients_not_stored():
    x = ChowClassGr(6, {(1, 0): 1, (2, 0): 0})
    assert (2, 0) not in x.coeffs
    assert (x - x).coeffs == {}


# -- Pieri examples -----------------------------------------------------------

def test_pieri_sigma1_squared():
    assert sigma(6, 1) * sigma(6, 1) == sigma(6, 2) + sigma(6, 1, 1)


def test_pieri_is_identity_for_c_zero():
    x = sigma(6, 2, 1) + 3 * sigma(6, 1)
    assert pieri_multiply(x, 0) == x


def test_sigma11_times_sigma2_matches_oracle():
    assert multiply(sigma(6, 1, 1), sigma(6, 2)) == lr_product(6, (1, 1), (2, 0))
    assert multiply(sigma(6, 1, 1), sigma(6, 2)) == sigma(6, 3, 1)


def test_sigma1_fourth_power():
    expected = sigma(6, 4) + 3 * sigma(6, 3, 1) + 2 * sigma(6, 2, 2)
    assert sigma(6, 1) ** 4 == expected
    # cross-check through the quintic del Pezzo class
    assert sigma(6, 1, 1) * sigma(6, 1) ** 4 == 3 * sigma(6, 4, 2) + 2 * sigma(6, 3, 3)


def test_sigma2_squared():
    assert sigma(6, 2) * sigma(6, 2) == lr_product(6, (2, 0), (2, 0))
    assert sigma(6, 2) * sigma(6, 2) == \
        sigma(6, 4) + sigma(6, 3, 1) + sigma(6, 2, 2)


def test_multiply_unit():
    x = 2 * sigma(6, 3, 1) - sigma(6, 1)
    assert one(6) * x == x
    assert x * one(6) == x


def test_multiply_matches_lr_oracle_exhaustively():
    for n in (5, 6):
        for lam in all_indices(n):
            for mu in all_indices(n):
                got = multiply(sigma(n, *lam), sigma(n, *mu))
                assert got == lr_product(n, lam, mu), (n, lam, mu)


def test_multiply_associative_commutative_random():
    rng = random.Random(20260809)
    for _ in range(100):
        n = rng.choice((4, 5, 6, 7))
        idx = all_indices(n)
        def rand_class():
            return ChowClassGr(n, {rng.choice(idx): rng.randint(-4, 4)
                                   for _ in range(3)})
        x, y, z = rand_class(), rand_class(), rand_class()
        assert multiply(x, y) == multiply(y, x)
        assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


def test_grading_adds_under_multiplication():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.choice((5, 6, 7))
        idx = all_indices(n)
        a, b = rng.choice(idx), rng.choice(idx)
        prod = multiply(sigma(n, *a), sigma(n, *b))
        want = a[0] + a[1] + b[0] + b[1]
        assert all(e + f == want for (e, f) in prod.coeffs)
        if want > 2 * (n - 2):
            assert prod == zero(n)


# -- integration and duality --------------------------------------------------

def test_integrate_point_class():
    assert integrate(sigma(6, 4, 4)) == 1
    assert integrate(sigma(6, 4, 3)) == 0


def test_plucker_degree_of_gr26():
    # number of standard Young tableaux on the 2 x 4 box (Catalan 14)
    assert integrate(sigma(6, 1) ** 8) == 14


def test_poincare_duality_exhaustive():
    for n in (4, 5, 6, 7):
        for lam in all_indices(n):
            for mu in all_indices(n):
                got = integrate(multiply(sigma(n, *lam), sigma(n, *mu)))
                assert got == duality_pairing(n, lam, mu), (n, lam, mu)


# -- tangent classes and golden triangles -------------------------------------

GR26_ROWS = [[1], [6, 18], [16, 58, 67], [26, 91, 120, 65],
             [31, 90, 105, 60, 15]]
X14_ROWS = [[1], [2, 4], [2, 2, 5], [2, 0, -2, 5], [2, -2, 7, -18, 27]]


def rows_of(total, n):
    return [[total.coefficient(a, b) for b in range(a + 1)]
            for a in range(n - 1)]


def test_tangent_chern_gr26_triangle():
    total = total_class(tangent_chern(6))
    assert rows_of(total, 6) == GR26_ROWS


def test_tangent_chern_top_class_is_cell_count():
    for n in (4, 5, 6):
        c_top = tangent_chern(n).classes[2 * (n - 2)]
        assert integrate(c_top) == cell_count(n) == comb(n, 2)


def test_adjunct_section_triangle():
    total = total_class(adjunct_linear_sections(6, 4))
    assert rows_of(total, 6) == X14_ROWS


def test_adjunct_named_classes():
    adj = adjunct_linear_sections(6, 4)
    assert adj.classes[1] == 2 * sigma(6, 1)
    assert adj.classes[2] == 2 * sigma(6, 2) + 4 * sigma(6, 1, 1)
    assert adj.classes[4] == 2 * sigma(6, 4) + 5 * sigma(6, 2, 2)
    assert adj.rank == 4


def test_adjunct_k_zero_is_tangent():
    assert adjunct_linear_sections(6, 0).classes == tangent_chern(6).classes


def test_adjunct_first_class_is_index_times_hyperplane():
    # c1 of the k-fold section is (n - k) sigma_1
    for n, k in ((6, 4), (6, 2), (5, 1), (7, 3)):
        adj = adjunct_linear_sections(n, k)
        assert adj.classes[1] == (n - k) * sigma(n, 1)


def test_golden_triangle_files():
    data = resources.files("fanolink")
    gr = data.joinpath("data/gr26_chern_triangle.txt").read_text()
    assert format_triangle(total_class(tangent_chern(6))) == gr.strip()
    x14 = data.joinpath("data/x14_chern_triangle.txt").read_text()
    assert format_triangle(total_class(adjunct_linear_sections(6, 4))) == x14.strip()
    # and the parser inverts the formatter
    assert parse_triangle(gr, 6) == total_class(tangent_chern(6))


# -- Euler characteristics ----------------------------------------------------

def test_euler_of_genus8_section():
    assert euler_characteristic_section(6, 4) == 12


def test_euler_cell_counts():
    assert euler_characteristic_section(6, 0) == 15
    assert euler_characteristic_section(5, 0) == 10


def test_euler_precondition():
    with pytest.raises(ValueError):
        euler_characteristic_section(5, 7)


# -- restricted pairings ------------------------------------------------------

def test_pairing_examples():
    assert pairing_on_section(6, 4, sigma(6, 1, 1), sigma(6, 1, 1)) == 2
    assert pairing_on_section(6, 4, sigma(6, 1, 1), sigma(6, 2)) == 3
    c2 = 2 * sigma(6, 2) + 4 * sigma(6, 1, 1)
    assert pairing_on_section(6, 4, c2, sigma(6, 1, 1)) == 14


def test_pairing_degree_mismatch_rejected():
    with pytest.raises(ValueError):
        pairing_on_section(6, 4, sigma(6, 1), sigma(6, 2))
    with pytest.raises(ValueError):
        pairing_on_section(6, 4, sigma(6, 1) + sigma(6, 2), sigma(6, 2))


def test_section_intersection_form():
    gram = section_gram_matrix(6, 4, [sigma(6, 1, 1), sigma(6, 2)])
    assert gram == [[2, 3], [3, 6]]
