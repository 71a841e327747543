"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a mapping from exponent tuples to nonzero
``fractions.Fraction`` coefficients, relative to a fixed ordered tuple of
variable names.  Everything is exact; no floats anywhere.

The module also carries the small amount of exact linear algebra (RREF,
kernels, inverses over the rationals) that the geometry modules need.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


class PolyParseError(ValueError):
    """Raised when polynomial text cannot be parsed."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact integer or Fraction, got {type(x).__name__}")


class MultiPoly:
    """Sparse polynomial in named variables over the rationals."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Scalar] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        clean: dict[tuple, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(variables):
                raise ValueError("exponent tuple length does not match variables")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = _frac(coeff)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Sequence[str], value: Scalar) -> "MultiPoly":
        n = len(tuple(variables))
        return cls(variables, {(0,) * n: _frac(value)})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {exps: 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list["MultiPoly"]:
        return [cls.variable(variables, v) for v in variables]

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        if not self.terms:
            return -1
        return max(sum(w * e for w, e in zip(weights, exps)) for exps in self.terms)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        if not self.terms:
            return True
        if weights is None:
            weights = (1,) * len(self.variables)
        degs = {sum(w * e for w, e in zip(weights, exps)) for exps in self.terms}
        return len(degs) == 1

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def homogeneous_component(self, k: int, weights: Sequence[int] | None = None) -> "MultiPoly":
        if weights is None:
            weights = (1,) * len(self.variables)
        sel = {e: c for e, c in self.terms.items()
               if sum(w * x for w, x in zip(weights, e)) == k}
        return MultiPoly(self.variables, sel)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("polynomials live in different variable tuples")
            return other
        return MultiPoly.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            return MultiPoly(self.variables, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.variables, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    __hash__ = None  # mutable-dict backed; not hashable

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        point = [_frac(x) for x in point]
        if len(point) != len(self.variables):
            raise ValueError("wrong number of coordinates")
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            v = coeff
            for x, e in zip(point, exps):
                if e:
                    v *= x ** e
            total += v
        return total

    def partial(self, var: str | int) -> "MultiPoly":
        i = var if isinstance(var, int) else self.variables.index(var)
        out: dict[tuple, Fraction] = {}
        for exps, coeff in self.terms.items():
            if exps[i] == 0:
                continue
            e = list(exps)
            c = coeff * e[i]
            e[i] -= 1
            out[tuple(e)] = out.get(tuple(e), Fraction(0)) + c
        return MultiPoly(self.variables, out)

    def gradient(self) -> list["MultiPoly"]:
        return [self.partial(i) for i in range(len(self.variables))]

    def compose(self, images: Sequence) -> "MultiPoly":
        """Substitute images[i] for variable i.

        Images may be MultiPoly (all in one common variable tuple) or exact
        scalars; the result lives in the images' ring.
        """
        if len(images) != len(self.variables):
            raise ValueError("need one image per variable")
        target = None
        for im in images:
            if isinstance(im, MultiPoly):
                if target is None:
                    target = im.variables
                elif im.variables != target:
                    raise ValueError("images live in different variable tuples")
        if target is None:
            raise ValueError("at least one image must be a MultiPoly")
        imgs = [im if isinstance(im, MultiPoly) else MultiPoly.constant(target, im)
                for im in images]
        acc = MultiPoly.zero(target)
        for exps, coeff in self.terms.items():
            term = MultiPoly.constant(target, coeff)
            for im, e in zip(imgs, exps):
                if e:
                    term = term * im ** e
            acc = acc + term
        return acc

    def with_variables(self, variables: Sequence[str]) -> "MultiPoly":
        """Embed into a (super)set of variables, matching by name."""
        variables = tuple(variables)
        idx = []
        for v in self.variables:
            if v not in variables:
                raise ValueError(f"variable {v!r} missing from target tuple")
            idx.append(variables.index(v))
        out: dict[tuple, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = [0] * len(variables)
            for j, x in zip(idx, exps):
                e[j] = x
            out[tuple(e)] = coeff
        return MultiPoly(variables, out)

    # -- printing -----------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r})"


def _term_key(exps: tuple) -> tuple:
    # graded order, then reverse-lex inside a degree: stable, readable output
    return (-sum(exps), tuple(-e for e in exps))


def format_poly(p: MultiPoly) -> str:
    """Render in the documented syntax: integer (or a/b) coefficients,
    ``*`` products, ``^`` powers, ``+``/``-`` separators."""
    if not p.terms:
        return "0"
    pieces = []
    for exps in sorted(p.terms, key=_term_key):
        coeff = p.terms[exps]
        factors = []
        for name, e in zip(p.variables, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        body = "*".join(factors)
        if not factors:
            body = str(mag)
        elif mag != 1:
            body = f"{mag}*{body}"
        sign = "-" if coeff < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)"
                    r"|(?P<op>\*\*|[\^*+\-()/]))")


def _natural_var_key(name: str):
    m = re.match(r"([A-Za-z_]+)(\d*)$", name)
    if m:
        return (m.group(1), int(m.group(2) or 0))
    return (name, 0)


def parse_poly(text: str, variables: Sequence[str] | None = None) -> MultiPoly:
    """Parse the documented plain-text polynomial syntax.

    If ``variables`` is omitted, the names found in the text are used in
    natural order (x0, x1, ..., y0, ...).
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PolyParseError(f"unexpected character at {text[pos:pos+10]!r}")
            break
        pos = m.end()
        if m.group("name"):
            tokens.append(("name", m.group("name")))
        elif m.group("int"):
            tokens.append(("int", int(m.group("int"))))
        else:
            op = m.group("op")
            tokens.append(("op", "^" if op == "**" else op))
    if variables is None:
        names = sorted({t[1] for t in tokens if t[0] == "name"}, key=_natural_var_key)
        if not names:
            raise PolyParseError("no variables found; pass them explicitly")
        variables = names
    variables = tuple(variables)

    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else ("end", None)

    def take():
        nonlocal i
        t = peek()
        i += 1
        return t

    def parse_expr() -> MultiPoly:
        kind, val = peek()
        sign = 1
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        acc = parse_term() * sign
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                t = parse_term()
                acc = acc + (t if val == "+" else -t)
            else:
                return acc

    def parse_term() -> MultiPoly:
        acc = parse_factor()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * parse_factor()
            elif kind == "op" and val == "/":
                take()
                kind2, v2 = take()
                if kind2 != "int" or v2 == 0:
                    raise PolyParseError("'/' must be followed by a nonzero integer")
                acc = acc * Fraction(1, v2)
            else:
                return acc

    def parse_factor() -> MultiPoly:
        base = parse_atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            kind2, v2 = take()
            if kind2 != "int":
                raise PolyParseError("'^' must be followed by an integer")
            return base ** v2
        return base

    def parse_atom() -> MultiPoly:
        kind, val = take()
        if kind == "int":
            return MultiPoly.constant(variables, val)
        if kind == "name":
            if val not in variables:
                raise PolyParseError(f"unknown variable {val!r}")
            return MultiPoly.variable(variables, val)
        if kind == "op" and val == "(":
            inner = parse_expr()
            kind2, v2 = take()
            if (kind2, v2) != ("op", ")"):
                raise PolyParseError("missing closing parenthesis")
            return inner
        if kind == "op" and val == "-":
            return -parse_atom()
        raise PolyParseError(f"unexpected token {val!r}")

    result = parse_expr()
    if peek()[0] != "end":
        raise PolyParseError(f"trailing tokens near {peek()!r}")
    return result


# ---------------------------------------------------------------------------
# exact linear algebra over the rationals
# ---------------------------------------------------------------------------

Matrix = list  # list of rows of Fractions


def _as_matrix(rows: Iterable[Sequence[Scalar]]) -> Matrix:
    return [[_frac(x) for x in row] for row in rows]


def rref(rows: Iterable[Sequence[Scalar]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = _as_matrix(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def matrix_rank(rows: Iterable[Sequence[Scalar]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Iterable[Sequence[Scalar]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    m = _as_matrix(rows)
    if not m:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve_linear(rows: Iterable[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list[Fraction]:
    """One exact solution of A x = b; raises ValueError if inconsistent."""
    m = _as_matrix(rows)
    b = [_frac(x) for x in rhs]
    aug = [row + [bi] for row, bi in zip(m, b)]
    ncols = len(m[0])
    red, pivots = rref(aug)
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def invert_matrix(rows: Iterable[Sequence[Scalar]]) -> Matrix:
    m = _as_matrix(rows)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]
