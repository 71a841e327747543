"""Universal Chern-class calculus via the splitting principle.

A ``ChernVector`` holds the graded pieces (c_0=1, c_1, ..., c_T) of a total
Chern class, truncated at a declared top degree T.  Entries live in any
commutative ring whose elements support ``+`` and ``*`` (with plain ints
interoperating): exact polynomials, Schubert classes, ...

Whitney sums and series inversion are degree-wise convolutions.  Tensor
products use the classical Chern-root expansion: adjoin formal roots
y_1..y_ra and q_1..q_rb, expand prod(1 + y_i + q_j), and rewrite the result
in the two banks of elementary symmetric polynomials by iterated subtraction
of leading terms under lexicographic order.  The rewriting happens once per
(rank_a, rank_b, degree) triple over the integers and is cached; actual ring
elements are only substituted at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .poly import MultiPoly


@dataclass(frozen=True)
class ChernVector:
    """Total Chern class (c_0, ..., c_T) of a declared-rank bundle."""

    rank: int
    classes: tuple

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if not self.classes:
            raise ValueError("need at least the degree-0 entry")
        if not _is_one(self.classes[0]):
            raise ValueError("c_0 must equal 1")
        object.__setattr__(self, "classes", tuple(self.classes))

    @property
    def top(self) -> int:
        return len(self.classes) - 1

    def __getitem__(self, k: int):
        return self.classes[k]


def _is_one(x) -> bool:
    try:
        return bool(x == 1)
    except TypeError:
        return False


def _check_same_top(a: ChernVector, b: ChernVector):
    if a.top != b.top:
        raise ValueError(
            f"mismatched truncation degrees: {a.top} vs {b.top}")


def whitney_sum(a: ChernVector, b: ChernVector) -> ChernVector:
    """Degree-wise product of total classes: c(E + F) = c(E) c(F)."""
    _check_same_top(a, b)
    out = [a.classes[0]]
    for k in range(1, a.top + 1):
        acc = 0
        for i in range(k + 1):
            acc = acc + a.classes[i] * b.classes[k - i]
        out.append(acc)
    return ChernVector(a.rank + b.rank, tuple(out))


def dual(a: ChernVector) -> ChernVector:
    """c_i(E^v) = (-1)^i c_i(E)."""
    out = [a.classes[0]]
    for i in range(1, a.top + 1):
        out.append(a.classes[i] if i % 2 == 0 else (-1) * a.classes[i])
    return ChernVector(a.rank, tuple(out))


def invert_total_class(a: ChernVector) -> ChernVector:
    """Multiplicative inverse of the total class through the truncation.

    The output has declared rank 0 (it represents a formal series, the
    class of a virtual complement).
    """
    if not _is_one(a.classes[0]):
        raise ValueError("c_0 must equal 1 to invert")
    out = [a.classes[0]]
    for k in range(1, a.top + 1):
        acc = 0
        for i in range(1, k + 1):
            acc = acc + a.classes[i] * out[k - i]
        out.append((-1) * acc)
    return ChernVector(0, tuple(out))


# ---------------------------------------------------------------------------
# universal tensor polynomials over the integers
# ---------------------------------------------------------------------------

def _mul_capped(p: dict, q: dict, cap: int | None = None) -> dict:
    out: dict[tuple, int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if cap is not None and sum(e) > cap:
                continue
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _elementary(nvars: int, positions: Sequence[int], i: int) -> dict:
    """e_i in the variables at the given positions, inside an nvars-tuple ring."""
    out = {}
    for subset in combinations(positions, i):
        e = [0] * nvars
        for p in subset:
            e[p] = 1
        out[tuple(e)] = 1
    return out


def _rewrite_bank(groups: dict, m: int):
    """Rewrite a polynomial, symmetric in one bank of m variables, as a
    combination of the elementary symmetric polynomials of that bank.

    ``groups`` maps bank-exponent tuples (length m) to coefficients, which
    are either plain ints or dicts over the *other* bank (so the two-bank
    rewrite can run in two stages).  Returns a list of (alpha, coeff) with
    alpha[i] the exponent of e_{i+1}.
    """
    work = {k: v for k, v in groups.items() if v}
    out = []
    while work:
        mu = max(work)  # lex-max exponent; python tuple order is lex
        if any(mu[i] < mu[i + 1] for i in range(m - 1)):
            raise ValueError("polynomial is not symmetric in the expected bank")
        coeff = work[mu]
        alpha = tuple(mu[i] - (mu[i + 1] if i + 1 < m else 0) for i in range(m))
        # expand prod_i e_{i+1}^{alpha[i]} in the bank variables
        eprod = {(0,) * m: 1}
        for i, a in enumerate(alpha):
            for _ in range(a):
                eprod = _mul_capped(eprod, _elementary(m, range(m), i + 1))
        for ex, ce in eprod.items():
            cur = work.get(ex)
            newc = _combine(cur, coeff, -ce)
            if newc:
                work[ex] = newc
            else:
                work.pop(ex, None)
        out.append((alpha, coeff))
    return out


def _combine(cur, delta, scale: int):
    """cur + scale * delta where operands are int or dict-of-int."""
    if isinstance(delta, int):
        base = cur or 0
        return base + scale * delta
    base = dict(cur) if cur else {}
    for k, v in delta.items():
        s = base.get(k, 0) + scale * v
        if s:
            base[k] = s
        else:
            base.pop(k, None)
    return base


@lru_cache(maxsize=None)
def universal_tensor(rank_a: int, rank_b: int, top: int) -> tuple:
    """Chern classes of a tensor product as integer polynomials in the
    elementary symmetric classes of the factors.

    Returns a tuple indexed by degree k of tuples (alpha, beta, coeff):
    c_k(A o B) = sum coeff * prod_i c_{i+1}(A)^alpha[i] * prod_j c_{j+1}(B)^beta[j].
    """
    nv = rank_a + rank_b
    poly: dict[tuple, int] = {(0,) * nv: 1}
    for i in range(rank_a):
        for j in range(rank_b):
            factor = {(0,) * nv: 1}
            ey = [0] * nv
            ey[i] = 1
            factor[tuple(ey)] = 1
            eq = [0] * nv
            eq[rank_a + j] = 1
            factor[tuple(eq)] = 1
            poly = _mul_capped(poly, factor, top)

    # group by the y-bank exponents, with q-bank dicts as coefficients
    groups: dict[tuple, dict] = {}
    for exps, c in poly.items():
        ye, qe = exps[:rank_a], exps[rank_a:]
        groups.setdefault(ye, {})
        groups[ye][qe] = groups[ye].get(qe, 0) + c

    by_degree: dict[int, list] = {}
    for alpha, qcoeff in _rewrite_bank(groups, rank_a):
        for beta, c in _rewrite_bank(qcoeff, rank_b):
            if not isinstance(c, int):
                raise AssertionError("rewrite did not terminate in integers")
            deg = sum((i + 1) * a for i, a in enumerate(alpha)) + \
                sum((j + 1) * b for j, b in enumerate(beta))
            if deg <= top:
                by_degree.setdefault(deg, []).append((alpha, beta, c))
    return tuple(tuple(by_degree.get(k, ())) for k in range(top + 1))


def tensor_chern(a: ChernVector, b: ChernVector) -> ChernVector:
    """Total Chern class of the tensor product of bundles with the given
    declared ranks, through the common truncation degree."""
    _check_same_top(a, b)
    top = a.top
    if a.rank == 0 or b.rank == 0:
        # tensoring with a rank-0 (virtual trivial) factor: nothing survives
        unit = [a.classes[0]] + [0] * top
        return ChernVector(0, tuple(unit))
    uni = universal_tensor(a.rank, b.rank, top)
    out = [a.classes[0]]
    for k in range(1, top + 1):
        acc = 0
        for alpha, beta, coeff in uni[k]:
            term = coeff
            dead = False
            for i, e in enumerate(alpha):
                for _ in range(e):
                    if i + 1 > top:
                        dead = True
                        break
                    term = term * a.classes[i + 1]
            for j, e in enumerate(beta):
                if dead:
                    break
                for _ in range(e):
                    if j + 1 > top:
                        dead = True
                        break
                    term = term * b.classes[j + 1]
            if not dead:
                acc = acc + term
        out.append(acc)
    return ChernVector(a.rank * b.rank, tuple(out))


# ---------------------------------------------------------------------------
# graded polynomial rings with named generators (abstract-ring entries)
# ---------------------------------------------------------------------------

class GradedRing:
    """Polynomial ring over the integers with named generators of declared
    degrees.  Elements are plain MultiPoly values; the ring object supplies
    the grading queries."""

    def __init__(self, generators: Sequence[str], degrees: Sequence[int]):
        self.generators = tuple(generators)
        self.degrees = tuple(int(d) for d in degrees)
        if len(self.generators) != len(self.degrees):
            raise ValueError("one degree per generator")
        if any(d <= 0 for d in self.degrees):
            raise ValueError("generator degrees must be positive")

    def gen(self, name: str) -> MultiPoly:
        return MultiPoly.variable(self.generators, name)

    def zero(self) -> MultiPoly:
        return MultiPoly.zero(self.generators)

    def one(self) -> MultiPoly:
        return MultiPoly.constant(self.generators, 1)

    def element(self, terms) -> MultiPoly:
        return MultiPoly(self.generators, terms)

    def degree(self, p: MultiPoly) -> int:
        return p.weighted_degree(self.degrees)

    def is_homogeneous(self, p: MultiPoly) -> bool:
        return p.is_homogeneous(self.degrees)

    def component(self, p: MultiPoly, k: int) -> MultiPoly:
        return p.homogeneous_component(k, self.degrees)

    def has_integer_coefficients(self, p: MultiPoly) -> bool:
        return all(isinstance(c, Fraction) and c.denominator == 1
                   for c in p.terms.values())
