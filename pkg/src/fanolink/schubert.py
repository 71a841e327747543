"""The Chow ring of Gr(2,n) in the Schubert basis.

Classes are integer combinations of sigma_{a,b} with n-2 >= a >= b >= 0.
Products are computed with the Pieri rule for the special classes sigma_c,

    sigma_{a,b} * sigma_c = sum sigma_{e,f},   e+f = a+b+c,
                            e >= a >= f >= b,  e <= n-2,

and reduced to it through the two-row Giambelli identity
sigma_{a,b} = sigma_a sigma_b - sigma_{a+1} sigma_{b-1}.  Integration reads
off the coefficient of the point class sigma_{n-2,n-2}.

Display convention for inhomogeneous (total Chern) classes: a triangle whose
row r lists the coefficients of sigma_{r,0}, sigma_{r,1}, ..., sigma_{r,r}.
The golden files under ``data/`` use exactly this format, one row per line.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .symfun import ChernVector, invert_total_class, tensor_chern, whitney_sum


@dataclass(frozen=True)
class SchubertIndex:
    """Partition (a, b) indexing sigma_{a,b} on a fixed Gr(2,n)."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("need n >= 4 for Gr(2,n)")
        if not (self.n - 2 >= self.a >= self.b >= 0):
            raise ValueError(
                f"invalid Schubert index ({self.a},{self.b}) for Gr(2,{self.n})")

    @property
    def codim(self) -> int:
        return self.a + self.b


class ChowClassGr:
    """Integer combination of Schubert classes on Gr(2,n)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        clean = {}
        for (a, b), c in (coeffs or {}).items():
            SchubertIndex(n, a, b)  # validate
            c = int(c)
            if c:
                clean[(a, b)] = clean.get((a, b), 0) + c
                if not clean[(a, b)]:
                    del clean[(a, b)]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ChowClassGr is immutable")

    # -- ring structure ------------------------------------------------------

    def _coerce(self, other) -> "ChowClassGr":
        if isinstance(other, ChowClassGr):
            if other.n != self.n:
                raise ValueError("classes live on different Grassmannians")
            return other
        if isinstance(other, int):
            return ChowClassGr(self.n, {(0, 0): other})
        raise TypeError(f"cannot combine ChowClassGr with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ChowClassGr(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return ChowClassGr(self.n, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowClassGr(self.n, {k: other * c for k, c in self.coeffs.items()})
        return multiply(self, self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = ChowClassGr(self.n, {(0, 0): other})
        if not isinstance(other, ChowClassGr):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    __hash__ = None

    # -- grading --------------------------------------------------------------

    def component(self, k: int) -> "ChowClassGr":
        return ChowClassGr(self.n, {ab: c for ab, c in self.coeffs.items()
                                    if ab[0] + ab[1] == k})

    def codims(self) -> set:
        return {a + b for a, b in self.coeffs}

    def is_homogeneous(self) -> bool:
        return len(self.codims()) <= 1

    def codim(self) -> int:
        degs = self.codims()
        if len(degs) != 1:
            raise ValueError("class is zero or not homogeneous")
        return degs.pop()

    def coefficient(self, a: int, b: int = 0) -> int:
        return self.coeffs.get((a, b), 0)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for (a, b) in sorted(self.coeffs):
            c = self.coeffs[(a, b)]
            name = f"s[{a},{b}]" if b else (f"s[{a}]" if a else "1")
            bits.append(f"{c}*{name}" if name != "1" else f"{c}")
        return " + ".join(bits).replace("+ -", "- ")


def sigma(n: int, a: int, b: int = 0) -> ChowClassGr:
    return ChowClassGr(n, {(a, b): 1})


def one(n: int) -> ChowClassGr:
    return ChowClassGr(n, {(0, 0): 1})


def zero(n: int) -> ChowClassGr:
    return ChowClassGr(n, {})


@lru_cache(maxsize=None)
def _pieri_index(n: int, a: int, b: int, c: int) -> tuple:
    lo = max(a, b + c)
    hi = min(n - 2, a + c)
    return tuple((e, a + b + c - e) for e in range(lo, hi + 1))


def pieri_multiply(x: ChowClassGr, c: int) -> ChowClassGr:
    """x * sigma_c by the Pieri rule; c = 0 is the identity."""
    if c < 0:
        raise ValueError("Pieri index must be nonnegative")
    out = {}
    for (a, b), co in x.coeffs.items():
        for ef in _pieri_index(x.n, a, b, c):
            out[ef] = out.get(ef, 0) + co
    return ChowClassGr(x.n, out)


def multiply(x: ChowClassGr, y: ChowClassGr) -> ChowClassGr:
    """Product in the Chow ring, via Giambelli reduction to Pieri."""
    if x.n != y.n:
        raise ValueError("classes live on different Grassmannians")
    acc = zero(x.n)
    for (a, b), co in y.coeffs.items():
        term = pieri_multiply(pieri_multiply(x, a), b)
        if b > 0:
            term = term - pieri_multiply(pieri_multiply(x, a + 1), b - 1)
        acc = acc + co * term
    return acc


def integrate(x: ChowClassGr) -> int:
    """Degree against the fundamental class: coefficient of sigma_{n-2,n-2}."""
    top = x.n - 2
    return x.coeffs.get((top, top), 0)


# ---------------------------------------------------------------------------
# tangent bundle, hyperplane sections, Euler numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def tangent_chern(n: int) -> ChernVector:
    """Total Chern class of Gr(2,n): the tangent bundle is S^v tensor Q,
    with c(S^v) = 1 + sigma_1 + sigma_{1,1} and c_i(Q) = sigma_i."""
    if n < 4:
        raise ValueError("need n >= 4")
    top = 2 * (n - 2)
    pad = [zero(n)] * (top - 2)
    s_dual = ChernVector(2, tuple([one(n), sigma(n, 1), sigma(n, 1, 1)] + pad))
    q_classes = [one(n)] + [sigma(n, i) for i in range(1, n - 1)]
    q_classes += [zero(n)] * (top - (n - 2))
    quotient = ChernVector(n - 2, tuple(q_classes))
    return tensor_chern(s_dual, quotient)


def tautological_sub_chern(n: int) -> ChernVector:
    """c(S) = 1 - sigma_1 + sigma_{1,1}, padded to the ambient top degree."""
    top = 2 * (n - 2)
    pad = [zero(n)] * (top - 2)
    return ChernVector(2, tuple([one(n), -1 * sigma(n, 1), sigma(n, 1, 1)] + pad))


@lru_cache(maxsize=None)
def adjunct_linear_sections(n: int, k: int) -> ChernVector:
    """Chern classes of a smooth section of Gr(2,n) by k general hyperplanes,
    written as ambient classes: c(Gr(2,n)) / (1 + sigma_1)^k.

    The quotient series is carried through the full ambient degree 2(n-2);
    the declared rank is the section dimension 2(n-2) - k.  Restriction back
    to the section happens implicitly when integrating against sigma_1^k.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    top = 2 * (n - 2)
    if top - k < 0:
        raise ValueError("more hyperplanes than the ambient dimension")
    tangent = tangent_chern(n)
    pad = [zero(n)] * (top - 1)
    hyper = ChernVector(1, tuple([one(n), sigma(n, 1)] + pad))
    power = ChernVector(0, tuple([one(n)] + [zero(n)] * top))
    for _ in range(k):
        power = whitney_sum(power, hyper)
    quotient = whitney_sum(tangent, invert_total_class(power))
    return ChernVector(top - k, quotient.classes)


def euler_characteristic_section(n: int, k: int) -> int:
    """Topological Euler number of a k-fold hyperplane section:
    integral of c_top restricted, i.e. integral of c_{2(n-2)-k} sigma_1^k."""
    dim = 2 * (n - 2) - k
    if dim < 0:
        raise ValueError("section dimension is negative")
    c_top = adjunct_linear_sections(n, k).classes[dim]
    return integrate(c_top * sigma(n, 1) ** k)


def pairing_on_section(n: int, k: int, x: ChowClassGr, y: ChowClassGr) -> int:
    """Restricted intersection form: integral of x * y * sigma_1^k.

    x and y must be homogeneous with codim(x) + codim(y) + k = 2(n-2).
    """
    if x.n != n or y.n != n:
        raise ValueError("classes live on the wrong Grassmannian")
    if not (x.is_homogeneous() and y.is_homogeneous()):
        raise ValueError("pairing needs homogeneous classes")
    if x.coeffs and y.coeffs:
        if x.codim() + y.codim() + k != 2 * (n - 2):
            raise ValueError("degree mismatch: codims plus k must fill the ambient")
    return integrate(x * y * sigma(n, 1) ** k)


def section_gram_matrix(n: int, k: int, classes) -> list:
    """Gram matrix of the restricted pairing on the given classes."""
    return [[pairing_on_section(n, k, x, y) for y in classes] for x in classes]


def cell_count(n: int) -> int:
    """Number of Schubert cells of Gr(2,n) = its Euler number."""
    return comb(n, 2)


# ---------------------------------------------------------------------------
# triangle display / golden-file format
# ---------------------------------------------------------------------------

def total_class(v: ChernVector) -> ChowClassGr:
    """Sum of the graded entries of a ChernVector over this ring."""
    acc = None
    for entry in v.classes:
        acc = entry if acc is None else acc + entry
    if not isinstance(acc, ChowClassGr):
        raise TypeError("ChernVector entries are not Schubert classes")
    return acc


def format_triangle(x: ChowClassGr) -> str:
    """Row r lists the coefficients of sigma_{r,0..r}, one row per line."""
    rows = []
    for a in range(x.n - 1):
        rows.append(" ".join(str(x.coefficient(a, b)) for b in range(a + 1)))
    return "\n".join(rows)


def parse_triangle(text: str, n: int) -> ChowClassGr:
    coeffs = {}
    rows = [line for line in text.strip().splitlines() if line.strip()]
    if len(rows) != n - 1:
        raise ValueError(f"expected {n - 1} triangle rows, found {len(rows)}")
    for a, line in enumerate(rows):
        entries = [int(tok) for tok in line.split()]
        if len(entries) != a + 1:
            raise ValueError(f"row {a} must have {a + 1} entries")
        for b, c in enumerate(entries):
            if c:
                coeffs[(a, b)] = c
    return ChowClassGr(n, coeffs)
