"""Betti numbers of regular reduced spaces by wall-crossing.

Crossing a critical value upward past a fixed component F with Poincare
polynomial P_F and ell_minus / ell_plus negative / positive weights changes the
reduced Poincare polynomial by

    P_F * (t^(2 ell_minus) - t^(2 ell_plus)) / (1 - t^2).

Summing these jumps over every fixed point below a regular level gives the
reduced space at that level; summed over all fixed points the total vanishes.
Rational cohomology of weighted projective spaces is that of ordinary ones,
so non-unit weights change nothing here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .exactalg import PoincarePolynomial, as_rational
from .model import (
    FixedPointData,
    SphereProductModel,
    WeightedProjectiveModel,
    critical_values,
    enumerate_fixed_points,
    projective_fixed_components,
)


class CriticalLevelError(ValueError):
    """A wall-crossing query was made exactly at a critical value."""

    def __init__(self, value):
        self.value = as_rational(value)
        super().__init__(f"level {self.value} is a critical value; reduced space is singular there")


def crossing_delta(f: FixedPointData) -> PoincarePolynomial:
    lo, hi = f.ell_minus, f.ell_plus
    if lo + hi < 1:
        raise ValueError("a fixed point with no weights has no wall to cross")
    if lo < hi:
        band = PoincarePolynomial({2 * j: 1 for j in range(lo, hi)})
    elif hi < lo:
        band = -PoincarePolynomial({2 * j: 1 for j in range(hi, lo)})
    else:
        return PoincarePolynomial()
    return f.component_poincare * band


def accumulate(points: Iterable[FixedPointData], below, inclusive: bool = False) -> PoincarePolynomial:
    """Sum of crossing deltas over fixed points with value < below
    (<= below when ``inclusive``)."""
    below = as_rational(below)
    total = PoincarePolynomial()
    for f in points:
        if f.value < below or (inclusive and f.value == below):
            total = total + crossing_delta(f)
    return total


def _checked(p: PoincarePolynomial, where) -> PoincarePolynomial:
    if not p.is_nonnegative():
        raise AssertionError(f"negative Betti number at level {where}: {p}")
    return p


def reduced_poincare(m: SphereProductModel, level) -> PoincarePolynomial:
    """Poincare polynomial of J^-1(level)/S^1 for a regular (or out-of-image)
    level."""
    level = as_rational(level)
    points = enumerate_fixed_points(m)
    if any(f.value == level for f in points):
        raise CriticalLevelError(level)
    return _checked(accumulate(points, level), level)


def poincare_below(m: SphereProductModel, c) -> PoincarePolynomial:
    """Reduced Poincare polynomial on the chamber just below c."""
    return _checked(accumulate(enumerate_fixed_points(m), c), f"{c}-")


def poincare_above(m: SphereProductModel, c) -> PoincarePolynomial:
    """Reduced Poincare polynomial on the chamber just above c."""
    return _checked(accumulate(enumerate_fixed_points(m), c, inclusive=True), f"{c}+")


def chamber_levels(m: SphereProductModel) -> list[Fraction]:
    """One sample level per open chamber: midpoints of consecutive critical
    values."""
    vals = [lv.value for lv in critical_values(m)]
    return [(a + b) / 2 for a, b in zip(vals, vals[1:])]


def chamber_table(m: SphereProductModel) -> list[tuple[Fraction, Fraction, PoincarePolynomial]]:
    """(lower wall, upper wall, Poincare polynomial) for every chamber."""
    levels = critical_values(m)
    out = []
    total = PoincarePolynomial()
    for lower, upper in zip(levels, levels[1:]):
        for f in lower.fixed_points:
            total = total + crossing_delta(f)
        out.append((lower.value, upper.value, _checked(total, (lower.value + upper.value) / 2)))
    return out


def projective_reduced_poincare(m: WeightedProjectiveModel, level) -> PoincarePolynomial:
    level = as_rational(level)
    comps = projective_fixed_components(m)
    if any(c.value == level for c in comps):
        raise CriticalLevelError(level)
    return _checked(accumulate(comps, level), level)
