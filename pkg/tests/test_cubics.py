"""Cubic hypersurface geometry: singular loci, orbits, plane pencils,
quadric ranks, and the cubic Cremona transformation.

Independent oracles: double-line membership is cross-checked by requiring
the value and the full gradient of f to vanish identically along a
parametrization of the line (order-2 vanishing, no coordinate change);
quadric ranks are cross-checked on sums of k squares of independent linear
forms, which have rank exactly k.
"""

import random
from fractions import Fraction
from math import comb, factorial

import pytest

from fanolink.cubics import (ExactDivisionError, LinearSubspace,
                             contains_subspace, cremona_transform,
                             double_line_membership, gram_matrix,
                             hessian_rank_at, line_singular_cubic, node_at,
                             nine_nodal_fourfold, nine_nodal_lines,
                             nine_nodal_section, nine_nodal_threespaces,
                             orbit_closure, plane_degree, plane_through_line,
                             quadric_rank, residual_line,
                             segre_cremona_instance, singular_along,
                             singular_at, subspace_from_forms,
                             subspace_from_points, ten_nodal_cubic_p5,
                             ten_nodal_cubic_threefold, ten_nodal_nodes,
                             ten_nodal_planes, vanishes_to_order_two)
from fanolink.poly import MultiPoly, parse_poly

P4 = ("x0", "x1", "x2", "x3", "x4")


def line_through(p, q):
    return subspace_from_points([p, q])


def order_two_along_line_oracle(f, line):
    """Independent of the coordinate-change route: f and grad f vanish
    identically along a parametrization of the line."""
    p, q = line.spanning_points()
    s, t = MultiPoly.gens(("s", "t"))
    images = [s * p[i] + t * q[i] for i in range(line.ncoords)]
    if not f.compose(images).is_zero():
        return False
    return all(g.compose(images).is_zero() for g in f.gradient())


# -- linear subspaces -----------------------------------------------------------

def test_subspace_presentations_agree():
    sub = subspace_from_forms([(1, 1, 0, 0, 0), (0, 0, 1, 1, 0)])
    assert sub.dim == 2
    pts = sub.spanning_points()
    both = LinearSubspace(5, points=pts, forms=sub.cutting_forms())
    assert both.dim == 2


def test_inconsistent_presentation_rejected():
    with pytest.raises(ValueError):
        LinearSubspace(5, points=((1, 0, 0, 0, 0),),
                       forms=((1, 0, 0, 0, 0),))


def test_zero_point_rejected():
    with pytest.raises(ValueError):
        subspace_from_points([(0, 0, 0, 0, 0)])


# -- singular points and nodes ----------------------------------------------------

def test_ten_nodal_cubic_singular_at_seed_node():
    f = ten_nodal_cubic_threefold()
    assert singular_at(f, (1, 1, 1, -1, -1))
    assert node_at(f, (1, 1, 1, -1, -1))


def test_ten_nodal_cubic_nonsingular_elsewhere():
    f = ten_nodal_cubic_threefold()
    # the image of (1:0:0:0:0:-1) under dropping the last coordinate
    assert not singular_at(f, (1, 0, 0, 0, 0))


def test_full_rank_quadric_has_no_singular_points():
    g = parse_poly("x0*x1 + x2*x3 + x4^2", P4)
    assert quadric_rank(g) == 5
    for p in [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (1, -1, 1, 1, 1)]:
        if g.evaluate([Fraction(x) for x in p]) == 0:
            assert not singular_at(g, p)


def test_hessian_rank_detects_worse_singularities():
    # x0^3 + x1^3 + x2^3 restricted: singular along a positive-dimensional
    # locus at (0,0,0,1,0); Hessian there degenerates
    f = parse_poly("x0^3 + x1^3 + x2^3", P4)
    assert singular_at(f, (0, 0, 0, 1, 0))
    assert hessian_rank_at(f, (0, 0, 0, 1, 0)) == 0
    assert not node_at(f, (0, 0, 0, 1, 0))


# -- orbits -----------------------------------------------------------------------

def test_node_orbit_size_matches_subset_count():
    # 3-subsets of 6 slots modulo complement: C(6,3)/2 = 10
    nodes = ten_nodal_nodes()
    assert len(nodes) == comb(6, 3) // 2 == 10


def test_all_ten_nodes_are_ordinary_double_points():
    f = ten_nodal_cubic_threefold()
    for p in ten_nodal_nodes():
        assert node_at(f, p)


def test_plane_orbit_size_matches_matching_count():
    # perfect matchings of six symbols: 6!/(2^3 3!) = 15
    planes = ten_nodal_planes()
    assert len(planes) == factorial(6) // (2 ** 3 * factorial(3)) == 15


def test_all_fifteen_planes_contained():
    f = ten_nodal_cubic_threefold()
    for plane in ten_nodal_planes():
        assert plane.dim == 2
        assert contains_subspace(f, plane)


def test_seed_plane_in_p5_satisfies_both_equations():
    lin, cubic = ten_nodal_cubic_p5()
    seed = subspace_from_forms([(1, 1, 0, 0, 0, 0), (0, 0, 1, 1, 0, 0),
                                (0, 0, 0, 0, 1, 1)])
    assert contains_subspace(lin, seed)
    assert contains_subspace(cubic, seed)


def test_generic_plane_not_contained():
    f = ten_nodal_cubic_threefold()
    plane = subspace_from_points([(1, 0, 0, 0, 0), (0, 1, 0, 0, 0),
                                  (0, 0, 1, 0, 0)])
    assert not contains_subspace(f, plane)


def test_orbit_closure_on_explicit_group():
    swap01 = (1, 0, 2, 3, 4, 5)
    identity = tuple(range(6))
    orbit = orbit_closure((1, 2, 3, 4, 5, 6), group=[identity, swap01])
    assert len(orbit) == 2


# -- the nine-line cubic fourfold ---------------------------------------------------

def test_nine_lines_singular_identically():
    z = nine_nodal_fourfold()
    lines = nine_nodal_lines()
    assert len(lines) == 9
    for key, line in lines.items():
        assert line.dim == 1
        assert singular_along(z, line), key


def test_nine_threespaces_contained():
    z = nine_nodal_fourfold()
    spaces = nine_nodal_threespaces()
    assert len(spaces) == 9
    for key, space in spaces.items():
        assert space.dim == 3
        assert contains_subspace(z, space), key


def test_hyperplane_section_has_nine_nodes():
    section, _, nodes = nine_nodal_section()
    assert section.is_homogeneous() and section.degree() == 3
    assert len(nodes) == 9
    for p in nodes:
        assert node_at(section, p)


def test_section_rejects_bad_hyperplanes():
    with pytest.raises(ValueError):
        nine_nodal_section((1, 0, 0, 0, 0, 0))  # contains singular lines


# -- double lines and residual factorization -----------------------------------------

def test_double_line_membership_trivial_examples():
    line = subspace_from_forms([(0, 0, 1, 0, 0), (0, 0, 0, 1, 0),
                                (0, 0, 0, 0, 1)])
    f = parse_poly("x2^2*x0 + x3*x4*x1", P4)
    assert double_line_membership(f, line)
    g = parse_poly("x0^2*x2", P4)
    assert not double_line_membership(g, line)


def test_double_line_membership_matches_gradient_oracle():
    rng = random.Random(42)
    line = subspace_from_forms([(0, 0, 1, 0, 0), (0, 0, 0, 1, 0),
                                (0, 0, 0, 0, 1)])
    tilted = line_through((1, 2, 0, 0, 0), (0, 1, 1, 0, -1))
    gens = MultiPoly.gens(P4)
    for _ in range(10):
        f = MultiPoly.zero(P4)
        for _ in range(6):
            i, j, k = (rng.randrange(5) for _ in range(3))
            f = f + rng.randint(-3, 3) * gens[i] * gens[j] * gens[k]
        if f.is_zero():
            continue
        for ln in (line, tilted):
            assert double_line_membership(f, ln) == \
                order_two_along_line_oracle(f, ln)


def test_double_line_membership_needs_a_line():
    plane = subspace_from_forms([(0, 0, 1, 0, 0), (0, 0, 0, 1, 0)])
    with pytest.raises(ValueError):
        double_line_membership(parse_poly("x0^3", P4), plane)


def test_residual_line_monomial_example():
    # f = u^2 w in plane coordinates: residual is exactly w
    line = subspace_from_forms([(0, 0, 1, 0, 0), (0, 0, 0, 1, 0),
                                (0, 0, 0, 0, 1)])
    f = parse_poly("x2^2*x0", P4)   # on the plane span(e0, e1, e2): w^2 s
    res = residual_line(f, line, (0, 0, 1, 0, 0))
    s = MultiPoly.variable(res.variables, "s")
    assert res == s


def test_residual_line_numeric_lambda_exact():
    f, line = line_singular_cubic()
    rng = random.Random(8)
    for _ in range(5):
        lam = (0, 0, Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
               Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
               Fraction(rng.randint(1, 5)))
        res = residual_line(f, line, lam)
        assert plane_degree(res) == 1
        images = plane_through_line(line, lam)
        restricted = f.compose(images)
        w = MultiPoly.variable(restricted.variables, "w")
        assert w * w * res == restricted


def test_residual_line_symbolic_lambda_identity():
    f, line = line_singular_cubic()
    a, b, c = MultiPoly.gens(("a", "b", "c"))
    zero = MultiPoly.zero(("a", "b", "c"))
    lam = (zero, zero, a, b, c)
    res = residual_line(f, line, lam)
    assert plane_degree(res) == 1
    images = plane_through_line(line, lam)
    restricted = f.compose(images)
    w = MultiPoly.variable(restricted.variables, "w")
    assert w * w * res.with_variables(restricted.variables) == restricted


def test_residual_line_inexact_division_signals():
    line = subspace_from_forms([(0, 0, 1, 0, 0), (0, 0, 0, 1, 0),
                                (0, 0, 0, 0, 1)])
    f = parse_poly("x0^2*x2", P4)   # only order 1 along the line
    with pytest.raises(ExactDivisionError):
        residual_line(f, line, (0, 0, 1, 0, 0))


# -- quadric ranks ----------------------------------------------------------------

def test_quadric_rank_examples():
    assert quadric_rank(parse_poly("x0*x1 + x2*x3", P4)) == 4
    assert quadric_rank(parse_poly("x0^2 + x1^2 + x2^2 + x3^2 + x4^2", P4)) == 5
    # cone: no x4 dependence
    assert quadric_rank(parse_poly("x0*x1 + x2^2 + x3^2", P4)) == 4


def test_quadric_rank_rejects_nonquadrics():
    with pytest.raises(ValueError):
        quadric_rank(parse_poly("x0^3", P4))
    with pytest.raises(ValueError):
        quadric_rank(parse_poly("x0^2 + x1", P4))


def test_gram_matrix_symmetric_and_exact():
    g = parse_poly("x0*x1 + 3*x2^2", P4)
    m = gram_matrix(g)
    assert m[0][1] == m[1][0] == Fraction(1, 2)
    assert m[2][2] == 3


def test_sum_of_squares_rank_oracle():
    rng = random.Random(17)
    gens = MultiPoly.gens(P4)
    for k in range(1, 6):
        while True:
            forms = []
            rows = []
            for _ in range(k):
                coeffs = [rng.randint(-3, 3) for _ in range(5)]
                rows.append(coeffs)
                forms.append(sum((c * x for c, x in zip(coeffs, gens)),
                                 MultiPoly.zero(P4)))
            from fanolink.poly import matrix_rank
            if matrix_rank(rows) == k:
                break
        q = sum((l * l for l in forms), MultiPoly.zero(P4))
        assert quadric_rank(q) == k


def test_quadric_rank_invariant_under_coordinate_changes():
    rng = random.Random(20260809)
    from fanolink.poly import matrix_rank
    gens = MultiPoly.gens(P4)
    quadrics = [parse_poly("x0*x1 + x2*x3", P4),
                parse_poly("x0^2 + x1*x4", P4),
                parse_poly("x0*x1 + x2^2 + x3^2 + x4^2", P4)]
    done = 0
    while done < 20:
        m = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(5)]
        if matrix_rank(m) < 5:
            continue
        done += 1
        images = [sum((m[i][j] * gens[j] for j in range(5)),
                      MultiPoly.zero(P4)) for i in range(5)]
        for q in quadrics:
            assert quadric_rank(q.compose(images)) == quadric_rank(q)


# -- Cremona transformation ---------------------------------------------------------

def test_cremona_segre_instance_passes_all_checks():
    f, p, g = segre_cremona_instance()
    assert vanishes_to_order_two(g, p)
    plane = ten_nodal_planes()[0]
    result = cremona_transform(f, p, g,
                               sample_points=plane.spanning_points())
    assert result.report.passed, result.report.render_table()
    assert len(result.components) == 5
    assert [c.degree() for c in result.components] == [3, 3, 3, 3, 3]
    assert result.components[-1] == f


def test_cremona_rejects_nonsingular_center():
    f, _, g = segre_cremona_instance()
    with pytest.raises(ValueError):
        cremona_transform(f, (1, 0, 0, 0, 0), g)


def test_cremona_rejects_wrong_rank():
    f, p, _ = segre_cremona_instance()
    gens = MultiPoly.gens(P4)
    forms = [gens[0] - gens[1], gens[1] - gens[2], gens[3] - gens[4]]
    g3 = sum((l * l for l in forms), MultiPoly.zero(P4))
    with pytest.raises(ValueError):
        cremona_transform(f, p, g3)


def test_cremona_rejects_quadric_not_through_center():
    f, p, _ = segre_cremona_instance()
    g = parse_poly("x0*x1 + x2*x3", P4)
    with pytest.raises(ValueError):
        cremona_transform(f, p, g)


def test_cremona_warns_on_non_node_center():
    # a cubic with a worse-than-nodal singular point
    f = parse_poly("x0^3 + x1^3 + x2^3", P4)
    p = (0, 0, 0, 1, 0)
    gens = MultiPoly.gens(P4)
    forms = [gens[0], gens[1], gens[2], gens[4]]
    g = sum((l * l for l in forms), MultiPoly.zero(P4))
    result = cremona_transform(f, p, g)
    assert any("not an ordinary double point" in n for n in result.report.notes)
    assert not result.report.passed
