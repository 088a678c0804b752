"""Singular Betti numbers at a critical level.

Two independent routes:

* the long exact sequence
      ... -> H^k(M_0) -> H^k(M~_0) -> C^k -> H^(k+1)(M_0) -> ...
  with M~_0 the partial desingularization and C the sum over level-0 fixed
  points of the exceptional fiber cohomology without its unit.  For isolated
  fixed points C vanishes in odd degrees and the sequence falls apart into
  segments 0 -> b_2k -> d_2k -> c_2k -> b_(2k+1) -> d_(2k+1) -> 0, which pin each
  b_k down to an interval;
* the collapse route: M_0 is the chamber space M_{-eps} with the projective
  space CP^(l_F^- - 1) of each level-0 fixed point F crushed to a point, so
  the pair sequence of (M_{-eps}, union of those spaces) computes H(M_0) once
  the restriction ranks from :mod:`singred.equiv` are known.

:func:`les_assemble` runs both and refuses to return if they disagree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .desing import OneSidedWeightsError, cokernel_term, desing_poincare
from .equiv import restriction_rank
from .exactalg import PoincarePolynomial, RationalMatrix, rank
from .model import LevelKind, SphereProductModel, enumerate_fixed_points, is_regular
from .wallcross import poincare_below, reduced_poincare


class RouteInconsistencyError(RuntimeError):
    """Two independent computations of the same dimension disagree."""


class Status(enum.Enum):
    EXACT = "Exact"
    SPLIT_EVEN = "SplitEven"
    UNDERDETERMINED = "Underdetermined"


class Provenance(enum.Enum):
    COLLAPSE_ROUTE = "CollapseRoute"
    SPLIT_ROUTE = "SplitRoute"
    REGULAR = "Regular"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class LesRow:
    degree: int
    singular: int | None
    singular_range: tuple  # (lo, hi) allowed by exactness alone
    desing: int
    cokernel: int
    status: Status


@dataclass(frozen=True)
class LesReport:
    rows: tuple
    map_ranks: tuple  # ranks of consecutive maps along the sequence, once solved
    splitting_hypothesis_holds: bool
    euler_consistent: bool
    level_kind: LevelKind

    def column(self, name: str) -> PoincarePolynomial:
        return PoincarePolynomial({r.degree: getattr(r, name) or 0 for r in self.rows})

    @property
    def solved(self) -> bool:
        return all(r.singular is not None for r in self.rows)

    def odd_relations(self) -> list[tuple[int, int]]:
        """(k, offset) with b_(k+1) = b_k + offset forced by exactness, one per
        even degree k: the segment 0 -> b_k -> d_k -> c_k -> b_(k+1) -> 0 gives
        offset = c_k - d_k."""
        by_degree = {r.degree: r for r in self.rows}
        return [(k, by_degree[k].cokernel - by_degree[k].desing)
                for k in sorted(by_degree) if k % 2 == 0 and k + 1 in by_degree]


@dataclass(frozen=True)
class BettiTable:
    kind: str  # "regular", "singular", "point" or "empty"
    dims: PoincarePolynomial
    provenance: tuple
    desing: PoincarePolynomial | None = None
    les: LesReport | None = None


@dataclass(frozen=True)
class LinkData:
    ell_plus: int
    ell_minus: int

    def __post_init__(self):
        if self.ell_plus < 1 or self.ell_minus < 1:
            raise ValueError("link needs ell_plus >= 1 and ell_minus >= 1")


def exact_sequence_ranks(dims: Sequence[int]) -> list[int] | None:
    """Ranks r_i of the maps V_i -> V_(i+1) of an exact sequence
    0 -> V_0 -> ... -> V_m -> 0 with the given dimensions, or None when no
    exact sequence with these dimensions exists."""
    ranks = []
    prev = 0
    for i, d in enumerate(dims):
        r = d - prev
        nxt = dims[i + 1] if i + 1 < len(dims) else 0
        if r < 0 or r > nxt:
            return None
        ranks.append(r)
        prev = r
    return ranks if prev == 0 else None


def _level_points(m: SphereProductModel):
    pts = [f for f in enumerate_fixed_points(m) if f.value == 0]
    for f in pts:
        if not f.two_sided:
            raise OneSidedWeightsError(
                f"fixed point {f.label} on level 0 has one-sided weights {f.weights}"
            )
    return pts


def _top(m: SphereProductModel) -> int:
    return m.real_dimension - 2


def collapse_dims(m: SphereProductModel) -> PoincarePolynomial:
    """Betti numbers of M_0 from the collapse of the negative cones."""
    pts = _level_points(m)
    below = poincare_below(m, 0)
    top = _top(m)
    dims = {}
    for k in range(top // 2 + 1):
        rho = restriction_rank(m, k)
        h = sum(1 for f in pts if f.ell_minus >= k + 1)
        rel_even = below[2 * k] - rho
        rel_odd = h - rho
        if k == 0:
            # pair (M_0, P) with P the singular points; H^0(M_0) -> H^0(P) has rank rho
            b0 = rel_even + rho
            b1 = rel_odd - (len(pts) - rho)
            dims[0], dims[1] = b0, b1
        else:
            dims[2 * k], dims[2 * k + 1] = rel_even, rel_odd
    out = PoincarePolynomial({k: v for k, v in dims.items() if k <= top})
    if not out.is_nonnegative():
        raise RouteInconsistencyError(f"collapse route produced negative dimensions: {out}")
    return out


def _sequence(b: PoincarePolynomial, d: PoincarePolynomial, c: PoincarePolynomial, top: int) -> list[int]:
    seq = []
    for k in range(top + 1):
        seq += [b[k], d[k], c[k]]
    return seq


def les_assemble(m: SphereProductModel) -> LesReport:
    kind = is_regular(m, 0)
    top = _top(m)
    if kind is not LevelKind.CRITICAL:
        p = reduced_poincare(m, 0)
        rows = tuple(
            LesRow(k, p[k], (p[k], p[k]), p[k], 0, Status.EXACT) for k in range(top + 1)
        )
        ranks = exact_sequence_ranks(_sequence(p, p, PoincarePolynomial(), top))
        return LesReport(rows, tuple(ranks), True, True, kind)

    pts = _level_points(m)
    d = desing_poincare(m, "below")
    if desing_poincare(m, "above") != d:
        raise RouteInconsistencyError("desingularization differs when approached from above")
    c = PoincarePolynomial()
    for f in pts:
        c = c + cokernel_term(f).graded_dims
    if not d.is_even() or not c.is_even():
        raise RouteInconsistencyError("odd classes in resolution or cokernel for isolated fixed points")

    ranges = {}
    for k in range(0, top + 1, 2):
        dk, ck = d[k], c[k]
        lo = max(0, dk - ck)
        ranges[k] = (lo, dk)
        ranges[k + 1] = (lo - dk + ck, ck)

    b = collapse_dims(m)
    for k in range(top + 1):
        lo, hi = ranges[k]
        if not lo <= b[k] <= hi:
            raise RouteInconsistencyError(
                f"collapse route gives b_{k} = {b[k]}, exactness allows [{lo}, {hi}]"
            )
    ranks = exact_sequence_ranks(_sequence(b, d, c, top))
    if ranks is None:
        raise RouteInconsistencyError("collapse-route dimensions do not fit an exact sequence")

    split = all(b[k] == 0 for k in range(1, top + 1, 2))
    rows = []
    for k in range(top + 1):
        lo, hi = ranges[k]
        if lo == hi:
            status = Status.EXACT
        elif split:
            status = Status.SPLIT_EVEN
        else:
            status = Status.UNDERDETERMINED
        rows.append(LesRow(k, b[k], (lo, hi), d[k], c[k], status))
    euler = b.euler_characteristic() - d.euler_characteristic() + c.euler_characteristic() == 0
    return LesReport(tuple(rows), tuple(ranks), split, euler, kind)


def singular_betti_collapse(m: SphereProductModel) -> BettiTable:
    report = les_assemble(m)
    if report.level_kind is not LevelKind.CRITICAL:
        raise ValueError("level 0 is not critical; use reduced_poincare")
    prov = tuple(
        Provenance.COLLAPSE_ROUTE if r.status is Status.UNDERDETERMINED else Provenance.SPLIT_ROUTE
        for r in report.rows
    )
    return BettiTable("singular", report.column("singular"), prov, report.column("desing"), report)


def quotient_betti(m: SphereProductModel) -> BettiTable:
    """Betti numbers of the level-0 quotient, whatever kind of level 0 is."""
    top = _top(m)
    kind = is_regular(m, 0)
    if kind is LevelKind.OUTSIDE_IMAGE:
        return BettiTable("empty", PoincarePolynomial(), (Provenance.DEGENERATE,) * (top + 1))
    if kind is LevelKind.REGULAR:
        p = reduced_poincare(m, 0)
        return BettiTable("regular", p, (Provenance.REGULAR,) * (top + 1), p)
    pts = [f for f in enumerate_fixed_points(m) if f.value == 0]
    if any(not f.two_sided for f in pts):
        # extremum of J: the level set is the single extremal fixed point
        return BettiTable("point", PoincarePolynomial({0: 1}), (Provenance.DEGENERATE,) * (top + 1))
    return singular_betti_collapse(m)


def link_cohomology(link: LinkData) -> PoincarePolynomial:
    """Rational cohomology of S^(2l+ - 1) x_{S^1} S^(2l- - 1) through the Gysin
    sequence of the circle bundle over CP^(l+ - 1) x CP^(l- - 1) with Euler
    class h+ + h-."""
    a, b = link.ell_plus, link.ell_minus
    top_half = (a - 1) + (b - 1)

    def basis(j):
        return [(i, j - i) for i in range(a) if 0 <= j - i < b]

    def euler_rank(j):
        # multiplication by h+ + h- from half-degree j to j + 1
        src, dst = basis(j), basis(j + 1)
        if not src or not dst:
            return 0
        index = {mono: r for r, mono in enumerate(dst)}
        cols = []
        for i, jj in src:
            col = [0] * len(dst)
            for mono in ((i + 1, jj), (i, jj + 1)):
                if mono in index:
                    col[index[mono]] += 1
            cols.append(col)
        return rank(RationalMatrix.from_rows(cols))

    dims = {}
    for j in range(top_half + 1):
        n_j = len(basis(j))
        dims[2 * j] = n_j - (euler_rank(j - 1) if j >= 1 else 0)
        dims[2 * j + 1] = n_j - euler_rank(j)
    return PoincarePolynomial(dims)
