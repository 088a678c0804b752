"""Exact algebra: graded dimension vectors, bivariate degree-2 polynomials,
Hilbert functions of their quotient rings, and rank over the rationals.

Scalars are :class:`fractions.Fraction` throughout; nothing here ever touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/2"`` to a Fraction.

    Floats are refused: a float has already lost exactness.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r}; pass a string 'p/q'")
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def render_rational(x: Fraction) -> str:
    """Canonical text form: ``"p"`` for integers, ``"p/q"`` otherwise."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Poincare polynomials


class PoincarePolynomial:
    """A finitely supported map degree -> dimension, read as a polynomial in t.

    Coefficients are integers and may be negative (wall-crossing increments
    are signed); use :meth:`is_nonnegative` before treating one as Betti data.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[int] = ()):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        clean = {}
        for k, v in items:
            k = int(k)
            if k < 0:
                raise ValueError(f"negative degree {k}")
            if v != int(v):
                raise ValueError(f"non-integer dimension {v!r} in degree {k}")
            if v:
                clean[k] = clean.get(k, 0) + int(v)
        self._coeffs = tuple(sorted((k, v) for k, v in clean.items() if v))

    @classmethod
    def from_dims(cls, dims: Sequence[int]) -> "PoincarePolynomial":
        return cls(list(dims))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "PoincarePolynomial":
        return cls({degree: coeff})

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def __getitem__(self, degree: int) -> int:
        for k, v in self._coeffs:
            if k == degree:
                return v
        return 0

    def __iter__(self):
        return iter(self._coeffs)

    @property
    def degree(self) -> int:
        """Top degree with nonzero coefficient; -1 for the zero polynomial."""
        return self._coeffs[-1][0] if self._coeffs else -1

    def dims(self, max_degree: int | None = None) -> list[int]:
        top = self.degree if max_degree is None else max_degree
        return [self[k] for k in range(top + 1)]

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for _, v in self._coeffs)

    def is_even(self) -> bool:
        return all(k % 2 == 0 for k, _ in self._coeffs)

    def is_palindromic(self, top: int | None = None) -> bool:
        """True when b_k == b_{top-k} for all k (top defaults to the degree)."""
        if self.is_zero():
            return True
        if top is None:
            top = self.degree
        return all(self[top - k] == v for k, v in self._coeffs) and self.degree <= top

    def euler_characteristic(self) -> int:
        return sum(v if k % 2 == 0 else -v for k, v in self._coeffs)

    def truncate(self, max_degree: int) -> "PoincarePolynomial":
        return PoincarePolynomial({k: v for k, v in self._coeffs if k <= max_degree})

    def shift(self, by: int) -> "PoincarePolynomial":
        """Multiply by t**by."""
        return PoincarePolynomial({k + by: v for k, v in self._coeffs})

    def __add__(self, other):
        if isinstance(other, int):
            other = PoincarePolynomial({0: other})
        if not isinstance(other, PoincarePolynomial):
            return NotImplemented
        out = dict(self._coeffs)
        for k, v in other._coeffs:
            out[k] = out.get(k, 0) + v
        return PoincarePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return PoincarePolynomial({k: -v for k, v in self._coeffs})

    def __sub__(self, other):
        if isinstance(other, int):
            other = PoincarePolynomial({0: other})
        if not isinstance(other, PoincarePolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return PoincarePolynomial({k: other * v for k, v in self._coeffs})
        if not isinstance(other, PoincarePolynomial):
            return NotImplemented
        out: dict[int, int] = {}
        for k1, v1 in self._coeffs:
            for k2, v2 in other._coeffs:
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return PoincarePolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = PoincarePolynomial({0: other})
        if not isinstance(other, PoincarePolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"PoincarePolynomial({dict(self._coeffs)!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for k, v in self._coeffs:
            if k == 0:
                term = str(abs(v))
            else:
                mono = "t" if k == 1 else f"t^{k}"
                term = mono if abs(v) == 1 else f"{abs(v)}{mono}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, term))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text


def gs(m: int) -> PoincarePolynomial:
    """1 + t^2 + ... + t^(2m-2): the Poincare polynomial of CP^(m-1); gs(0) = 0."""
    if m < 0:
        raise ValueError("gs needs m >= 0")
    return PoincarePolynomial({2 * j: 1 for j in range(m)})


# ---------------------------------------------------------------------------
# Rational matrices and exact rank


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        data = tuple(tuple(as_rational(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )


def _integer_rows(rows) -> list[list[int]]:
    # clearing denominators row by row does not change the rank
    out = []
    for r in rows:
        r = [as_rational(x) for x in r]
        lcm = 1
        for x in r:
            d = x.denominator
            lcm = lcm * d // _gcd(lcm, d)
        out.append([int(x * lcm) for x in r])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def rank(m) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Accepts a :class:`RationalMatrix` or any sequence of equal-length rows.
    """
    if isinstance(m, RationalMatrix):
        rows = m.entries
    else:
        rows = list(m)
    a = _integer_rows(rows)
    if not a or not a[0]:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c, ncols):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
        prev = p
        r += 1
        if r == nrows:
            break
    return r


# ---------------------------------------------------------------------------
# Bivariate homogeneous polynomials in sigma, Xi (each of degree 2)


class BivariatePoly:
    """Polynomial in two degree-2 generators sigma and Xi with rational
    coefficients.  ``terms`` maps (i, j) to the coefficient of sigma^i Xi^j.

    Homogeneity is checked on construction; the zero polynomial has no degree.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, object] = ()):
        clean = {}
        for (i, j), c in dict(terms).items():
            c = as_rational(c)
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), 0) + c
        clean = {k: v for k, v in clean.items() if v}
        if len({i + j for i, j in clean}) > 1:
            raise ValueError("BivariatePoly must be homogeneous")
        self._terms = tuple(sorted(clean.items()))

    @classmethod
    def sigma(cls) -> "BivariatePoly":
        return cls({(1, 0): 1})

    @classmethod
    def xi(cls) -> "BivariatePoly":
        return cls({(0, 1): 1})

    @classmethod
    def one(cls) -> "BivariatePoly":
        return cls({(0, 0): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def half_degree(self) -> int | None:
        """i + j of every term (None for zero)."""
        return self._terms[0][0][0] + self._terms[0][0][1] if self._terms else None

    @property
    def degree(self) -> int | None:
        """Cohomological degree 2(i + j)."""
        d = self.half_degree
        return None if d is None else 2 * d

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def __add__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms:
            out[k] = out.get(k, 0) + v
        return BivariatePoly(out)

    def __neg__(self):
        return BivariatePoly({k: -v for k, v in self._terms})

    def __sub__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BivariatePoly):
            out: dict = {}
            for (i1, j1), c1 in self._terms:
                for (i2, j2), c2 in other._terms:
                    k = (i1 + i2, j1 + j2)
                    out[k] = out.get(k, 0) + c1 * c2
            return BivariatePoly(out)
        c = as_rational(other)
        return BivariatePoly({k: c * v for k, v in self._terms})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = BivariatePoly.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def truncate(self, max_degree: int) -> "BivariatePoly":
        if self.degree is not None and self.degree > max_degree:
            return BivariatePoly()
        return self

    def __eq__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        if not self._terms:
            return "BivariatePoly(0)"
        parts = []
        for (i, j), c in self._terms:
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("sigma" if i == 1 else f"sigma^{i}"),
                    "" if j == 0 else ("Xi" if j == 1 else f"Xi^{j}"),
                ) if s
            ) or "1"
            parts.append(f"({render_rational(c)})*{mono}")
        return "BivariatePoly(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class GradedQuotientRing:
    """Q[sigma, Xi] modulo the ideal generated by ``ideal_generators``."""

    ideal_generators: tuple

    def __init__(self, ideal_generators: Iterable[BivariatePoly]):
        object.__setattr__(self, "ideal_generators", tuple(ideal_generators))

    def hilbert_dims(self, max_degree: int) -> PoincarePolynomial:
        return hilbert_dims(self, max_degree)


def _slice_rows(gens: Sequence[BivariatePoly], d: int) -> list[list[Fraction]]:
    """Spanning set of the ideal in half-degree d, in the basis sigma^i Xi^(d-i)."""
    rows = []
    for g in gens:
        e = g.half_degree
        if e is None or e > d:
            continue
        s = d - e
        for a in range(s + 1):
            shifted = g * BivariatePoly({(a, s - a): 1})
            rows.append([shifted.coefficient(i, d - i) for i in range(d + 1)])
    return rows


def hilbert_dims(ring: GradedQuotientRing, max_degree: int) -> PoincarePolynomial:
    """Graded dimensions of the quotient ring up to ``max_degree``.

    In degree 2d the quotient has dimension (d + 1) minus the rank of the
    ideal's degree-2d slice; odd degrees vanish.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    gens = [g for g in ring.ideal_generators if not g.is_zero()]
    dims = {}
    for d in range(max_degree // 2 + 1):
        rows = _slice_rows(gens, d)
        dims[2 * d] = (d + 1) - (rank(rows) if rows else 0)
    return PoincarePolynomial(dims)


def linear_forms() -> tuple[BivariatePoly, BivariatePoly]:
    """The pair (Xi/2 + sigma, Xi/2 - sigma)."""
    half_xi = BivariatePoly({(0, 1): Fraction(1, 2)})
    s = BivariatePoly.sigma()
    return half_xi + s, half_xi - s

