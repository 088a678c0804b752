"""Equivariant cohomology of sphere products and restriction to fixed points.

The circle action on a product of spheres is equivariantly formal, so
H_{S^1}(M) = Q[x] (x) H(M), with a basis in degree 2k given by the monomials
x^(k - |I|) u_I for subsets I of the spheres, |I| <= k.  Here u_i is an
equivariant extension of the area class of sphere i, normalised (the gauge)
by u_i|north = a_i x and u_i|south = 0.  Any other extension u_i + c_i x
differs by an invertible change of basis.

Two facts feed the collapse computation in :mod:`singred.les`:

* the Kirwan map H_{S^1}(M) -> H(M_{-eps}) is onto at the regular level just
  below 0;
* restricted to the negative cone at a level-0 fixed point F, a class
  alpha lands in H(CP^(l_F^- - 1)) through alpha|_F = c x^k, and x^k maps to
  a nonzero multiple of the k-th hyperplane power exactly when
  k <= l_F^- - 1.

Hence the rank of H^{2k}(M_{-eps}) -> (+)_F H^{2k}(CP^(l_F^- - 1)) is the rank
of the matrix alpha -> (coefficient of x^k in alpha|_F).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, prod
from typing import Sequence

from .exactalg import PoincarePolynomial, RationalMatrix, as_rational, rank
from .model import SphereProductModel, enumerate_fixed_points


@dataclass(frozen=True)
class EquivariantDims:
    n: int
    max_degree: int
    poincare: PoincarePolynomial

    def __getitem__(self, degree: int) -> int:
        return self.poincare[degree]


def equivariant_dims(m: SphereProductModel, max_degree: int) -> EquivariantDims:
    dims = {}
    for k in range(max_degree // 2 + 1):
        dims[2 * k] = sum(comb(m.n, j) for j in range(min(k, m.n) + 1))
    return EquivariantDims(m.n, max_degree, PoincarePolynomial(dims))


@dataclass(frozen=True)
class RestrictionMatrix:
    degree: int
    row_labels: tuple
    column_labels: tuple  # (power of x, subset I)
    matrix: RationalMatrix


def restriction_matrix(m: SphereProductModel, k: int, gauge: Sequence | None = None) -> RestrictionMatrix:
    """Rows: level-0 fixed points with at least k+1 negative weights.
    Columns: basis monomials x^(k-|I|) u_I.  Entry: coefficient of x^k in the
    restriction of the column class to the row point.

    ``gauge`` shifts u_i by c_i x (default all zero).
    """
    c = [Fraction(0)] * m.n if gauge is None else [as_rational(g) for g in gauge]
    if len(c) != m.n:
        raise ValueError("gauge needs one entry per sphere")
    rows = [f for f in enumerate_fixed_points(m) if f.value == 0 and f.ell_minus >= k + 1]
    cols = [
        (k - size, subset)
        for size in range(min(k, m.n) + 1)
        for subset in combinations(range(m.n), size)
    ]
    entries = []
    for f in rows:
        s = f.label
        restr = [m.speeds[i] * (1 if s[i] == 1 else 0) + c[i] for i in range(m.n)]
        entries.append(tuple(prod((restr[i] for i in subset), start=Fraction(1)) for _, subset in cols))
    return RestrictionMatrix(
        degree=2 * k,
        row_labels=tuple(f.label for f in rows),
        column_labels=tuple(cols),
        matrix=RationalMatrix(len(rows), len(cols), tuple(entries)),
    )


def restriction_rank(m: SphereProductModel, k: int, gauge: Sequence | None = None) -> int:
    r = restriction_matrix(m, k, gauge)
    if r.matrix.rows == 0:
        return 0
    return rank(r.matrix)


@dataclass(frozen=True)
class EvenMargin:
    degree: int
    equivariant_dim: int
    quotient_dim: int
    desing_dim: int | None

    @property
    def margin(self) -> int:
        return self.equivariant_dim - self.quotient_dim


@dataclass(frozen=True)
class OddObstruction:
    degree: int
    quotient_dim: int
    equivariant_dim: int = 0

    def __str__(self):
        return (f"ODD-OBSTRUCTION in degree {self.degree}: "
                f"b_{self.degree}(M_0) = {self.quotient_dim} but H^{self.degree}_S1(M) = 0")


@dataclass(frozen=True)
class KirwanReport:
    level_kind: str
    even: tuple
    obstructions: tuple = field(default_factory=tuple)

    @property
    def surjection_possible_in_even_degrees(self) -> bool:
        return all(e.margin >= 0 for e in self.even)


class KirwanInequalityError(AssertionError):
    """An even-degree quotient Betti number exceeds the equivariant dimension."""


def kirwan_report(m: SphereProductModel) -> KirwanReport:
    """Dimension audit of the even-degree surjection H_{S^1}(M) -> H(M_0) at
    level 0, plus witnesses of odd-degree classes no equivariant class can hit."""
    from .les import quotient_betti

    table = quotient_betti(m)
    top = m.real_dimension - 2
    eq = equivariant_dims(m, max(top, 0))
    desing = table.desing
    even = []
    for k in range(0, top + 1, 2):
        e = EvenMargin(k, eq[k], table.dims[k], None if desing is None else desing[k])
        if e.margin < 0:
            raise KirwanInequalityError(
                f"degree {k}: b_{k}(M_0) = {e.quotient_dim} > dim H^{k}_S1(M) = {e.equivariant_dim}"
            )
        if e.desing_dim is not None and e.quotient_dim > e.desing_dim:
            raise KirwanInequalityError(
                f"degree {k}: b_{k}(M_0) = {e.quotient_dim} > b_{k}(desing) = {e.desing_dim}"
            )
        even.append(e)
    odd = []
    for k in range(1, top + 1, 2):
        if table.dims[k] > 0 and eq[k] == 0:
            odd.append(OddObstruction(k, table.dims[k]))
    return KirwanReport(table.kind, tuple(even), tuple(odd))
