"""Exact projective geometry of the catalog cubic hypersurfaces.

Singular loci, containment of linear subspaces, double-line ideal
membership by monomial inspection after a linear change of coordinates,
plane-pencil factorization f|_Pi = u^2 . L with exact division, quadric
ranks by Gram elimination, and the cubic Cremona transformation centered
at a node.  All coordinates and coefficients are exact rationals.

Catalog varieties:

* the 10-nodal cubic threefold, cut out in P^5 by sum(x_i) = sum(x_i^3) = 0
  and realized in P^4 by eliminating x5; its nodes and its 15 planes are
  single orbits under coordinate permutations;
* the cubic fourfold x1 x2 x3 = y1 y2 y3, singular along nine lines l_ij
  and containing nine 3-spaces M_ij; its hyperplane sections are 9-nodal
  cubic threefolds;
* a fixed cubic threefold singular along a line, built by symbolic
  squaring, used for the plane-pencil factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence

from .poly import (MultiPoly, invert_matrix, matrix_rank, nullspace, rref,
                   solve_linear)
from .reporting import VerificationReport


class ExactDivisionError(ArithmeticError):
    """Division of the restricted cubic by the squared line form left a
    remainder: the input was not singular along the line."""


def _frac_tuple(seq) -> tuple:
    return tuple(Fraction(x) for x in seq)


# ---------------------------------------------------------------------------
# linear subspaces of projective space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSubspace:
    """Projective linear subspace, given by spanning points, cutting forms
    (coefficient vectors), or both; presentations are checked against each
    other."""

    ncoords: int
    points: Optional[tuple] = None
    forms: Optional[tuple] = None

    def __post_init__(self):
        if self.points is None and self.forms is None:
            raise ValueError("need spanning points or cutting forms")
        if self.points is not None:
            pts = tuple(_frac_tuple(p) for p in self.points)
            if any(len(p) != self.ncoords for p in pts):
                raise ValueError("point has wrong number of coordinates")
            if any(all(x == 0 for x in p) for p in pts):
                raise ValueError("zero vector is not a projective point")
            object.__setattr__(self, "points", pts)
        if self.forms is not None:
            fs = tuple(_frac_tuple(f) for f in self.forms)
            if any(len(f) != self.ncoords for f in fs):
                raise ValueError("form has wrong number of coefficients")
            object.__setattr__(self, "forms", fs)
        if self.points is not None and self.forms is not None:
            for f in self.forms:
                for p in self.points:
                    if sum(a * b for a, b in zip(f, p)) != 0:
                        raise ValueError(
                            "inconsistent presentation: a cutting form does "
                            "not vanish on a spanning point")
            if matrix_rank(self.points) + matrix_rank(self.forms) != self.ncoords:
                raise ValueError("inconsistent presentation: ranks do not fill")

    @property
    def dim(self) -> int:
        if self.points is not None:
            return matrix_rank(self.points) - 1
        return self.ncoords - 1 - matrix_rank(self.forms)

    def spanning_points(self) -> tuple:
        if self.points is not None:
            return self.points
        return tuple(tuple(v) for v in nullspace(self.forms))

    def cutting_forms(self) -> tuple:
        if self.forms is not None:
            return self.forms
        return tuple(tuple(v) for v in nullspace(self.points))

    def canonical_key(self) -> tuple:
        red, _ = rref(self.cutting_forms())
        return tuple(tuple(row) for row in red if any(row))


def subspace_from_points(points) -> LinearSubspace:
    points = tuple(_frac_tuple(p) for p in points)
    return LinearSubspace(ncoords=len(points[0]), points=points)


def subspace_from_forms(forms, ncoords: int | None = None) -> LinearSubspace:
    forms = tuple(_frac_tuple(f) for f in forms)
    return LinearSubspace(ncoords=ncoords or len(forms[0]), forms=forms)


# ---------------------------------------------------------------------------
# singular points and nodes
# ---------------------------------------------------------------------------

def gradient_at(f: MultiPoly, p) -> list:
    p = _frac_tuple(p)
    return [g.evaluate(p) for g in f.gradient()]


def singular_at(f: MultiPoly, p) -> bool:
    """All first partials vanish at p (homogeneous f, so f(p) = 0 follows)."""
    p = _frac_tuple(p)
    if all(x == 0 for x in p):
        raise ValueError("zero vector is not a projective point")
    if not f.is_homogeneous():
        raise ValueError("need a homogeneous polynomial")
    return all(v == 0 for v in gradient_at(f, p))


def hessian_rank_at(f: MultiPoly, p) -> int:
    p = _frac_tuple(p)
    n = len(f.variables)
    rows = []
    for i in range(n):
        fi = f.partial(i)
        rows.append([fi.partial(j).evaluate(p) for j in range(n)])
    return matrix_rank(rows)


def node_at(f: MultiPoly, p) -> bool:
    """Ordinary double point: singular, with the projective Hessian of
    maximal possible rank (ncoords - 1; the point itself is always in the
    kernel by the Euler relation)."""
    return singular_at(f, p) and hessian_rank_at(f, p) == len(f.variables) - 1


def contains_subspace(f: MultiPoly, space: LinearSubspace) -> bool:
    """f restricted to a parametrization of the subspace is identically 0."""
    pts = space.spanning_points()
    k = len(pts)
    params = tuple(f"t{i}" for i in range(k))
    gens = MultiPoly.gens(params)
    images = []
    for i in range(space.ncoords):
        coord = MultiPoly.zero(params)
        for t, p in zip(gens, pts):
            coord = coord + t * p[i]
        images.append(coord)
    return f.compose(images).is_zero()


def singular_along(f: MultiPoly, space: LinearSubspace) -> bool:
    """Every partial of f vanishes identically along the subspace."""
    pts = space.spanning_points()
    params = tuple(f"t{i}" for i in range(len(pts)))
    gens = MultiPoly.gens(params)
    images = [sum((t * p[i] for t, p in zip(gens, pts)),
                  MultiPoly.zero(params)) for i in range(space.ncoords)]
    return all(g.compose(images).is_zero() for g in f.gradient())


# ---------------------------------------------------------------------------
# orbits under coordinate permutations
# ---------------------------------------------------------------------------

def _canonical_point(p) -> tuple:
    p = _frac_tuple(p)
    lead = next((x for x in p if x != 0), None)
    if lead is None:
        raise ValueError("zero vector is not a projective point")
    return tuple(x / lead for x in p)


def orbit_closure(seed, group=None) -> list:
    """Orbit of a point (coordinate tuple) or LinearSubspace under
    coordinate permutations, deduplicated projectively.  ``group`` may be an
    iterable of permutation tuples; default is the full symmetric group."""
    if isinstance(seed, LinearSubspace):
        n = seed.ncoords
        perms = group if group is not None else permutations(range(n))
        seen = {}
        forms = seed.cutting_forms()
        for perm in perms:
            moved = tuple(tuple(form[perm[j]] for j in range(n)) for form in forms)
            sub = subspace_from_forms(moved, n)
            seen.setdefault(sub.canonical_key(), sub)
        return [seen[k] for k in sorted(seen)]
    p = _frac_tuple(seed)
    n = len(p)
    perms = group if group is not None else permutations(range(n))
    out = {}
    for perm in perms:
        moved = tuple(p[perm[j]] for j in range(n))
        out.setdefault(_canonical_point(moved), moved)
    return sorted(out)


# ---------------------------------------------------------------------------
# double lines, plane pencils, residual lines
# ---------------------------------------------------------------------------

def double_line_membership(f: MultiPoly, line: LinearSubspace) -> bool:
    """f lies in the square of the line's ideal: after a rational linear
    change of coordinates sending the line to {u_2 = ... = 0}, every
    monomial has total degree >= 2 in the trailing coordinates."""
    if line.dim != 1:
        raise ValueError("expected a line (1-dimensional subspace)")
    n = len(f.variables)
    if line.ncoords != n:
        raise ValueError("line lives in the wrong ambient space")
    forms = [list(v) for v in line.cutting_forms()]
    # complete the cutting forms to a basis: two rows spanning the rest
    completion = []
    for i in range(n):
        row = [Fraction(int(j == i)) for j in range(n)]
        if matrix_rank(forms + completion + [row]) > len(forms) + len(completion):
            completion.append(row)
        if len(completion) == 2:
            break
    change = completion + forms           # u = change . x, line = {u_2.. = 0}
    inverse = invert_matrix(change)       # x = inverse . u
    unames = tuple(f"u{i}" for i in range(n))
    ugens = MultiPoly.gens(unames)
    images = [sum((inverse[i][j] * ugens[j] for j in range(n)),
                  MultiPoly.zero(unames)) for i in range(n)]
    g = f.compose(images)
    return all(sum(exps[2:]) >= 2 for exps in g.terms)


PLANE_VARS = ("s", "t", "w")


def plane_through_line(line: LinearSubspace, lam) -> list:
    """Parametrize the plane spanned by the line and the point lam with
    coordinates (s, t, w); the line is {w = 0}.  lam entries may be exact
    scalars or polynomials in extra parameter variables."""
    p, q = line.spanning_points()[:2]
    param_vars = ()
    for x in lam:
        if isinstance(x, MultiPoly):
            param_vars = x.variables
            break
    names = PLANE_VARS + tuple(v for v in param_vars if v not in PLANE_VARS)
    s, t, w = (MultiPoly.variable(names, v) for v in PLANE_VARS)
    images = []
    for i in range(line.ncoords):
        third = lam[i].with_variables(names) if isinstance(lam[i], MultiPoly) \
            else MultiPoly.constant(names, lam[i])
        images.append(s * p[i] + t * q[i] + w * third)
    return images


def residual_line(f: MultiPoly, line: LinearSubspace, lam) -> MultiPoly:
    """Exact division of f|_{span(line, lam)} by w^2 in plane coordinates
    (s, t, w): for a cubic singular along the line this leaves the residual
    linear form L with f|_plane = w^2 . L.  Raises ExactDivisionError when
    the division is not exact."""
    if line.dim != 1:
        raise ValueError("expected a line")
    images = plane_through_line(line, lam)
    restricted = f.compose(images)
    names = restricted.variables
    w_index = names.index("w")
    shifted = {}
    for exps, coeff in restricted.terms.items():
        if exps[w_index] < 2:
            raise ExactDivisionError(
                "restriction is not divisible by w^2: the cubic is not "
                "singular along the line")
        e = list(exps)
        e[w_index] -= 2
        shifted[tuple(e)] = coeff
    return MultiPoly(names, shifted)


def plane_degree(p: MultiPoly) -> int:
    """Degree in the plane coordinates (s, t, w) only."""
    weights = [1 if v in PLANE_VARS else 0 for v in p.variables]
    return p.weighted_degree(weights)


# ---------------------------------------------------------------------------
# quadrics and the cubic Cremona transformation
# ---------------------------------------------------------------------------

def gram_matrix(g: MultiPoly) -> list:
    if g.degree() != 2 or not g.is_homogeneous():
        raise ValueError("expected a homogeneous quadric")
    n = len(g.variables)
    m = [[Fraction(0)] * n for _ in range(n)]
    for exps, coeff in g.terms.items():
        idx = [i for i, e in enumerate(exps) for _ in range(e)]
        i, j = idx[0], idx[1]
        if i == j:
            m[i][i] = coeff
        else:
            m[i][j] = m[j][i] = coeff / 2
    return m


def quadric_rank(g: MultiPoly) -> int:
    """Rank of the symmetric Gram matrix over the rationals."""
    return matrix_rank(gram_matrix(g))


def vanishes_to_order_two(g: MultiPoly, p) -> bool:
    """g in I_p^2, checked as g(p) = 0 and grad g(p) = 0 (characteristic 0)."""
    p = _frac_tuple(p)
    return g.evaluate(p) == 0 and all(v == 0 for v in gradient_at(g, p))


@dataclass
class CremonaResult:
    components: tuple
    report: VerificationReport


def cremona_transform(f: MultiPoly, p, g: MultiPoly,
                      sample_points: Sequence = ()) -> CremonaResult:
    """Cubic Cremona transformation |g l_1, g l_2, g l_3, g l_4, f| centered
    at a node p of the cubic f, where g is a rank-4 quadric singular at p
    and the l_i span the linear forms through p.

    Checks performed: membership g in I_p^2, rank 4, all five components of
    degree 3 (quadric times linear form, and the cubic itself), and that the
    image of V(f) lands in the hyperplane {last coordinate = 0} (the last
    component is f itself, so this holds identically; supplied sample points
    of V(f) are additionally mapped and checked to have a well-defined image
    there).  A singular center that is not a node only produces a warning
    entry.
    """
    p = _frac_tuple(p)
    if not singular_at(f, p):
        raise ValueError("the center must be a singular point of the cubic")
    if not vanishes_to_order_two(g, p):
        raise ValueError("the quadric must vanish to order two at the center")
    rank = quadric_rank(g)
    if rank != 4:
        raise ValueError(f"the quadric must have rank 4, got {rank}")

    report = VerificationReport("cubic:cremona")
    n = len(f.variables)
    forms = nullspace([list(p)], n)      # linear forms vanishing at p
    if len(forms) != n - 1:
        raise AssertionError("expected a hyperplane of forms through the center")
    gens = MultiPoly.gens(f.variables)
    linear = [sum((c * x for c, x in zip(coeffs, gens)),
                  MultiPoly.zero(f.variables)) for coeffs in forms]
    components = tuple(g * l for l in linear) + (f,)

    report.check("quadric rank", 4, rank, "reference")
    report.check("quadric vanishes to order 2 at the center", True,
                 vanishes_to_order_two(g, p), "identity")
    report.check("node criterion (Hessian rank)", n - 1, hessian_rank_at(f, p),
                 "derived")
    if hessian_rank_at(f, p) != n - 1:
        report.note("warning: the center is singular but not an ordinary "
                    "double point")
    report.check("all five components are cubics", [3] * n,
                 [c.degree() for c in components], "identity")
    report.check("image of the cubic lies in {last coordinate = 0}", True,
                 components[-1] == f, "identity")
    for q in sample_points:
        q = _frac_tuple(q)
        image = [c.evaluate(q) for c in components]
        report.check(f"sample point {tuple(map(str, q))} maps into the "
                     f"hyperplane", True,
                     image[-1] == 0 and any(v != 0 for v in image[:-1]),
                     "derived")
    return CremonaResult(components=components, report=report)


# ---------------------------------------------------------------------------
# catalog varieties
# ---------------------------------------------------------------------------

P5_VARS = ("x0", "x1", "x2", "x3", "x4", "x5")
P4_VARS = ("x0", "x1", "x2", "x3", "x4")
NINE_VARS = ("x1", "x2", "x3", "y1", "y2", "y3")


def ten_nodal_cubic_p5() -> tuple[MultiPoly, MultiPoly]:
    """The pair (sum x_i, sum x_i^3) cutting the 10-nodal cubic threefold
    out of P^5."""
    gens = MultiPoly.gens(P5_VARS)
    lin = sum(gens, MultiPoly.zero(P5_VARS))
    cubic = sum((x ** 3 for x in gens), MultiPoly.zero(P5_VARS))
    return lin, cubic


def ten_nodal_cubic_threefold() -> MultiPoly:
    """P^4 model: eliminate x5 = -(x0+..+x4) from sum x_i^3."""
    gens = MultiPoly.gens(P4_VARS)
    s = sum(gens, MultiPoly.zero(P4_VARS))
    return sum((x ** 3 for x in gens), MultiPoly.zero(P4_VARS)) - s ** 3


def _drop_last(p6) -> tuple:
    return tuple(p6[:-1])


def ten_nodal_nodes() -> list:
    """The S6-orbit of (1,1,1,-1,-1,-1), pushed to the P^4 model."""
    orbit = orbit_closure((1, 1, 1, -1, -1, -1))
    return [_drop_last(p) for p in orbit]


def ten_nodal_planes() -> list:
    """The S6-orbit of the plane {x0+x1 = x2+x3 = x4+x5 = 0}, pushed to the
    P^4 model (each orbit plane lies in the hyperplane sum x_i = 0)."""
    seed = subspace_from_forms([
        (1, 1, 0, 0, 0, 0),
        (0, 0, 1, 1, 0, 0),
        (0, 0, 0, 0, 1, 1),
    ])
    planes = []
    for plane in orbit_closure(seed):
        pts = [_drop_last(p) for p in plane.spanning_points()]
        planes.append(subspace_from_points(pts))
    return planes


def nine_nodal_fourfold() -> MultiPoly:
    """The cubic fourfold x1 x2 x3 - y1 y2 y3 in P^5."""
    x1, x2, x3, y1, y2, y3 = MultiPoly.gens(NINE_VARS)
    return x1 * x2 * x3 - y1 * y2 * y3


def nine_nodal_lines() -> dict:
    """The nine lines l_ij = {x_k = y_l = 0 for k != i, l != j} along which
    the fourfold is singular, keyed by (i, j) with 1-based indices."""
    lines = {}
    for i in range(3):
        for j in range(3):
            pts = [tuple(Fraction(int(k == i)) for k in range(3)) + (0, 0, 0),
                   (0, 0, 0) + tuple(Fraction(int(l == j)) for l in range(3))]
            lines[(i + 1, j + 1)] = subspace_from_points(pts)
    return lines


def nine_nodal_threespaces() -> dict:
    """The nine 3-spaces M_ij = {x_i = y_j = 0}, 1-based indices."""
    spaces = {}
    for i in range(3):
        for j in range(3):
            forms = [tuple(Fraction(int(k == i)) for k in range(3)) + (0, 0, 0),
                     (0, 0, 0) + tuple(Fraction(int(l == j)) for l in range(3))]
            spaces[(i + 1, j + 1)] = subspace_from_forms(forms)
    return spaces


DEFAULT_SECTION_HYPERPLANE = (1, 2, 3, 5, 7, 11)


def nine_nodal_section(hyperplane=DEFAULT_SECTION_HYPERPLANE):
    """A hyperplane section of the nine-line fourfold: a 9-nodal cubic
    threefold in the hyperplane's coordinates u0..u4.

    Returns (cubic in u0..u4, spanning basis of the hyperplane, list of the
    nine singular points in u-coordinates).  The default hyperplane has all
    coefficients nonzero, so it meets each singular line in one point.
    """
    h = _frac_tuple(hyperplane)
    if len(h) != 6 or all(x == 0 for x in h):
        raise ValueError("hyperplane needs six coordinates, not all zero")
    f = nine_nodal_fourfold()
    basis = nullspace([list(h)], 6)
    unames = tuple(f"u{i}" for i in range(5))
    ugens = MultiPoly.gens(unames)
    images = [sum((basis[k][i] * ugens[k] for k in range(5)),
                  MultiPoly.zero(unames)) for i in range(6)]
    section = f.compose(images)
    nodes = []
    for (i, j), line in sorted(nine_nodal_lines().items()):
        p, q = line.spanning_points()
        hp = sum(a * b for a, b in zip(h, p))
        hq = sum(a * b for a, b in zip(h, q))
        point = tuple(hq * a - hp * b for a, b in zip(p, q))
        if all(x == 0 for x in point):
            raise ValueError("hyperplane contains a singular line; "
                             "choose a more general one")
        # coordinates of the point in the hyperplane basis
        cols = [[basis[k][i] for k in range(5)] for i in range(6)]
        nodes.append(tuple(solve_linear(cols, point)))
    return section, basis, nodes


def line_singular_cubic() -> tuple[MultiPoly, LinearSubspace]:
    """A fixed cubic threefold in P^4 singular along the line
    {x2 = x3 = x4 = 0}: every monomial is quadratic in (x2, x3, x4).
    The six coefficient forms are a fixed generic-looking choice."""
    x0, x1, x2, x3, x4 = MultiPoly.gens(P4_VARS)
    f = ((x0 + 2 * x1) * x2 ** 2 + (x1 - x4) * x2 * x3
         + (3 * x0 - x3) * x3 ** 2 + (x0 + x1 + x2) * x2 * x4
         + (2 * x3 - x0) * x3 * x4 + (x1 + 5 * x4) * x4 ** 2)
    line = subspace_from_forms([
        (0, 0, 1, 0, 0),
        (0, 0, 0, 1, 0),
        (0, 0, 0, 0, 1),
    ])
    return f, line


def segre_cremona_instance():
    """The 10-nodal cubic in its P^4 model, one of its nodes, and a rank-4
    quadric singular there (a sum of four squares of independent linear
    forms through the node)."""
    f = ten_nodal_cubic_threefold()
    p = (1, 1, 1, -1, -1)
    x0, x1, x2, x3, x4 = MultiPoly.gens(P4_VARS)
    forms = [x0 - x1, x1 - x2, x3 - x4, x0 + x3]
    g = sum((l * l for l in forms), MultiPoly.zero(P4_VARS))
    return f, p, g
