"""Numerical Chow calculus on the blowup of a smooth fourfold along a surface.

A ``BlowupTable`` stores the complete degree-4 intersection pairing on the
blowup: the five mixed monomials in (p*H, E) together with the pairings of
c_2 and c_1 c_2 against degree-2 and degree-1 monomials.  Everything is an
exact integer.

For the blowup of a smooth fourfold X along a smooth surface S:

    (p*H)^4 = H^4,   (p*H)^3.E = 0,   (p*H)^2.E^2 = -S.H^2,
    (p*H).E^3 = -H|_S.K_S + K_X.H.S,
    E^4 = c2(X).S + K_X|_S.K_S - c2(S) - K_X^2.S,

and c2 of the blowup is p*c2(X) + p*[S] + p*K_X.E.  Pushforwards of powers
of E pair through the Segre classes of the normal bundle: E maps to 0 in
codim >= 2 pairings, E^2 pairs as -[S], E^3 as K_X|_S - K_S.

For an irreducible surface F in P^4 with delta transverse double points
(S its normalization, C a general sectional curve, d = deg F):

    (p*H)^3.E = 0,  (p*H)^2.E^2 = -d,  (p*H).E^3 = -5d - K_S.C,
    E^4 = d^2 - 25d - 10 K_S.C - K_S^2 + 4 delta.

The Chern pairings in the nodal case carry a node correction: the blowup
has a P^1 x P^1 fiber over each node, and factoring through the blowup of
the nodes shows c2.E^2 gains +2 delta and c1c2.E gains -2 delta relative to
the smooth formulas.  These are exactly the values that make Riemann-Roch
on the blowup reproduce the classical dimension counts for every catalog
surface (see the test suite's independent chi(I_F(a)) oracle).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


class InconsistentTableError(ValueError):
    """Riemann-Roch bracket not divisible by 24: the table cannot come from
    a smooth fourfold."""


@dataclass(frozen=True)
class SurfaceInvariants:
    """Numerical invariants of a surface with (possibly) nodal image.

    d: degree; pi: sectional genus; ksq: K_S^2 of the normalization;
    c2: topological Euler number c_2(S); delta: transverse double points
    of the embedded image.  K_S.C is derived from the sectional genus
    formula 2 pi - 2 = d + K_S.C.
    """

    d: int
    pi: int
    ksq: int
    c2: int
    delta: int = 0

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("degree must be >= 1")
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")

    @property
    def k_dot_c(self) -> int:
        return 2 * self.pi - 2 - self.d


@dataclass(frozen=True)
class FourfoldAmbient:
    """Ambient numerical data: H^4, the Fano index r (c_1 = r H), the
    pairings c2(X).H^2 and c2(X).S when known, and chi(O_X)."""

    h4: int
    index: int
    c2_h2: Optional[int] = None
    c2_s: Optional[int] = None
    chi_o: int = 1

    @classmethod
    def p4(cls, c2_s: Optional[int] = None) -> "FourfoldAmbient":
        return cls(h4=1, index=5, c2_h2=10, c2_s=c2_s, chi_o=1)

    @classmethod
    def mukai(cls, g: int, c2_h2: Optional[int] = None,
              c2_s: Optional[int] = None) -> "FourfoldAmbient":
        return cls(h4=2 * g - 2, index=2, c2_h2=c2_h2, c2_s=c2_s, chi_o=1)


@dataclass(frozen=True)
class SurfacePairings:
    """The five ambient pairings the smooth blowup table needs, plus the
    optional self-intersection [S]^2 used for the c2.E^2 pairing."""

    s_h2: int           # S.H^2
    h_ks: int           # H|_S.K_S
    kx_h_s: int         # K_X.H.S
    kx_ks: int          # K_X|_S.K_S
    kx2_s: int          # K_X^2.S
    s_self: Optional[int] = None   # [S]^2 in X


def mukai_sigma_pairings(sigma: SurfaceInvariants,
                         s_self: Optional[int] = None) -> SurfacePairings:
    """Pairings of a smooth surface inside an index-2 Fano fourfold,
    K_X = -2L, in terms of (d, K_S.C)."""
    d, kc = sigma.d, sigma.k_dot_c
    return SurfacePairings(s_h2=d, h_ks=kc, kx_h_s=-2 * d,
                           kx_ks=-2 * kc, kx2_s=4 * d, s_self=s_self)


@dataclass(frozen=True)
class BlowupTable:
    """Degree-4 pairing table on the blowup, basis (p*H, E)."""

    h4: int
    h3e: int
    h2e2: int
    he3: int
    e4: int
    c2_h2: Optional[int] = None
    c2_he: Optional[int] = None
    c2_e2: Optional[int] = None
    c1c2_h: Optional[int] = None
    c1c2_e: Optional[int] = None

    @property
    def monomials(self) -> tuple:
        return (self.h4, self.h3e, self.h2e2, self.he3, self.e4)

    @property
    def has_chern_pairings(self) -> bool:
        return None not in (self.c2_h2, self.c2_he, self.c2_e2,
                            self.c1c2_h, self.c1c2_e)


def smooth_blowup_table(X: FourfoldAmbient, S: SurfaceInvariants,
                        pairings: SurfacePairings) -> BlowupTable:
    """Blowup of X along the smooth surface S; requires delta = 0."""
    if S.delta != 0:
        raise ValueError("smooth blowup table needs a smooth center (delta = 0)")
    if X.c2_s is None:
        raise ValueError("smooth blowup table needs c2(X).S")
    he3 = -pairings.h_ks + pairings.kx_h_s
    e4 = X.c2_s + pairings.kx_ks - S.c2 - pairings.kx2_s
    c2_h2 = c2_he = c2_e2 = c1c2_h = c1c2_e = None
    if X.c2_h2 is not None:
        c2_h2 = X.c2_h2 + pairings.s_h2
        c2_he = -pairings.kx_h_s
        c1c2_h = X.index * c2_h2 - c2_he
        if pairings.s_self is not None:
            c2_e2 = (-X.c2_s - pairings.s_self + pairings.kx2_s
                     - pairings.kx_ks)
            c1c2_e = X.index * c2_he - c2_e2
    return BlowupTable(h4=X.h4, h3e=0, h2e2=-pairings.s_h2, he3=he3, e4=e4,
                       c2_h2=c2_h2, c2_he=c2_he, c2_e2=c2_e2,
                       c1c2_h=c1c2_h, c1c2_e=c1c2_e)


def nodal_blowup_table(S: SurfaceInvariants) -> BlowupTable:
    """Blowup of P^4 along an irreducible surface with delta transverse
    double points; all Chern pairings filled."""
    d, kc, delta = S.d, S.k_dot_c, S.delta
    e4 = d * d - 25 * d - 10 * kc - S.ksq + 4 * delta
    # [F] = d planes and [F]^2 = d^2 in P^4; node fibers shift the two
    # E-heavy Chern pairings by +-2 delta (see module docstring).
    c2_e2 = 15 * d + 5 * kc - d * d + 2 * delta
    c1c2_e = d * d + 10 * d - 5 * kc - 2 * delta
    return BlowupTable(h4=1, h3e=0, h2e2=-d, he3=-5 * d - kc, e4=e4,
                       c2_h2=10 + d, c2_he=5 * d, c2_e2=c2_e2,
                       c1c2_h=50, c1c2_e=c1c2_e)


# ---------------------------------------------------------------------------
# divisor expressions and the two bases
# ---------------------------------------------------------------------------

BASIS_HE = "HE"   # (p*H, E)
BASIS_LD = "LD"   # (f*L, D), with f*L = 4 p*H - E and D = 3 p*H - E


@dataclass(frozen=True)
class DivisorExpr:
    """Integer divisor class in a declared basis."""

    basis: str
    a: int
    b: int

    def __post_init__(self):
        if self.basis not in (BASIS_HE, BASIS_LD):
            raise ValueError(f"unknown basis {self.basis!r}")

    def to_he(self) -> "DivisorExpr":
        if self.basis == BASIS_HE:
            return self
        # f*L = 4H - E, D = 3H - E
        return DivisorExpr(BASIS_HE, 4 * self.a + 3 * self.b, -self.a - self.b)

    def to_ld(self) -> "DivisorExpr":
        if self.basis == BASIS_LD:
            return self
        # H = f*L - D, E = 3 f*L - 4D
        return DivisorExpr(BASIS_LD, self.a + 3 * self.b, -self.a - 4 * self.b)

    def __add__(self, other: "DivisorExpr") -> "DivisorExpr":
        if other.basis != self.basis:
            raise ValueError("cannot add divisors in different bases")
        return DivisorExpr(self.basis, self.a + other.a, self.b + other.b)

    def __rmul__(self, k: int) -> "DivisorExpr":
        return DivisorExpr(self.basis, k * self.a, k * self.b)


def h_class(a: int = 1) -> DivisorExpr:
    return DivisorExpr(BASIS_HE, a, 0)


def e_class(b: int = 1) -> DivisorExpr:
    return DivisorExpr(BASIS_HE, 0, b)


def _pair_coeffs(divisors) -> list:
    """Coefficients of (p*H)^{4-j} E^j in the product of four divisors."""
    coeffs = [1]
    for d in divisors:
        nxt = [0] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j] += d.a * c
            nxt[j + 1] += d.b * c
        coeffs = nxt
    return coeffs


def intersection_number(t: BlowupTable, d1: DivisorExpr, d2: DivisorExpr,
                        d3: DivisorExpr, d4: DivisorExpr) -> int:
    """Multilinear expansion of d1.d2.d3.d4 against the monomial table."""
    hs = [d.to_he() for d in (d1, d2, d3, d4)]
    coeffs = _pair_coeffs(hs)
    return sum(c * m for c, m in zip(coeffs, t.monomials))


def exceptional_slope_coeffs(t: BlowupTable) -> tuple[int, int]:
    """(4 p*H - E)^3 . (3 p*H - k E) as (constant, slope) in k."""
    quad = DivisorExpr(BASIS_HE, 4, -1)
    const = intersection_number(t, quad, quad, quad, DivisorExpr(BASIS_HE, 3, 0))
    slope = -intersection_number(t, quad, quad, quad, DivisorExpr(BASIS_HE, 0, 1))
    return const, slope


def exceptional_slope_identity(t: BlowupTable, k) -> Fraction:
    """Value of (4 p*H - E)^3 . (3 p*H - k E) at an exact rational k."""
    c0, c1 = exceptional_slope_coeffs(t)
    return Fraction(c0) + Fraction(k) * c1


def rr_bracket(t: BlowupTable, X: FourfoldAmbient, D: DivisorExpr) -> int:
    """The Riemann-Roch bracket D^4 + 2 D^3 c1 + D^2 (c1^2 + c2) + D c1 c2
    on the blowup, with c1 = r p*H - E."""
    if not t.has_chern_pairings:
        raise ValueError("table is missing Chern pairings")
    d = D.to_he()
    c1 = DivisorExpr(BASIS_HE, X.index, -1)
    d4 = intersection_number(t, d, d, d, d)
    d3c1 = intersection_number(t, d, d, d, c1)
    d2c12 = intersection_number(t, d, d, c1, c1)
    d2c2 = d.a * d.a * t.c2_h2 + 2 * d.a * d.b * t.c2_he + d.b * d.b * t.c2_e2
    dc1c2 = d.a * t.c1c2_h + d.b * t.c1c2_e
    return d4 + 2 * d3c1 + d2c12 + d2c2 + dc1c2


def riemann_roch_chi(t: BlowupTable, X: FourfoldAmbient, D: DivisorExpr) -> int:
    """chi(O(D)) on the blowup; raises InconsistentTableError when the
    bracket is not divisible by 24."""
    bracket = rr_bracket(t, X, D)
    if bracket % 24:
        raise InconsistentTableError(
            f"Riemann-Roch bracket {bracket} is not divisible by 24")
    return X.chi_o + bracket // 24


def canonical_class(X: FourfoldAmbient) -> DivisorExpr:
    """K of the blowup in the (p*H, E) basis: -r p*H + E."""
    return DivisorExpr(BASIS_HE, -X.index, 1)


def table_in_basis(t: BlowupTable, u: DivisorExpr, v: DivisorExpr) -> BlowupTable:
    """Re-express the table in the basis (u, v); Chern pairings transform
    bilinearly (c1 and c2 are classes of the fourfold, independent of basis)."""
    uu, vv = u.to_he(), v.to_he()
    mono = lambda *ds: intersection_number(t, *ds)
    c2_h2 = c2_he = c2_e2 = c1c2_h = c1c2_e = None
    if t.has_chern_pairings:
        pair2 = lambda x, y: (x.a * y.a * t.c2_h2
                              + (x.a * y.b + x.b * y.a) * t.c2_he
                              + x.b * y.b * t.c2_e2)
        pair1 = lambda x: x.a * t.c1c2_h + x.b * t.c1c2_e
        c2_h2, c2_he, c2_e2 = pair2(uu, uu), pair2(uu, vv), pair2(vv, vv)
        c1c2_h, c1c2_e = pair1(uu), pair1(vv)
    return BlowupTable(h4=mono(u, u, u, u), h3e=mono(u, u, u, v),
                       h2e2=mono(u, u, v, v), he3=mono(u, v, v, v),
                       e4=mono(v, v, v, v),
                       c2_h2=c2_h2, c2_he=c2_he, c2_e2=c2_e2,
                       c1c2_h=c1c2_h, c1c2_e=c1c2_e)
