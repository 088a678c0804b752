"""Hamiltonian circle actions supported by the calculator.

Two model families:

* :class:`SphereProductModel` -- a product of 2-spheres S^2_{r_i}, the circle
  rotating sphere i with integer speed a_i, momentum map
  J = sum_i a_i z_i + C.  Fixed points are the 2^n pole combinations.
* :class:`WeightedProjectiveModel` -- CP^(k-1) with the circle acting by
  weights (lambda_1, ..., lambda_k); fixed components are the projectivized
  eigenspaces.

Weight convention: near a fixed point F the momentum map looks like
J(F) + 1/2 sum_j lambda_j |w_j|^2, so the number of positive (negative) weights
is the complex dimension of the ascending (descending) direction.  At the
pole with sign s_i on sphere i this gives lambda_i = -a_i s_i.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .exactalg import PoincarePolynomial, as_rational, gs


class ModelValidationError(ValueError):
    """A model violates its invariants (zero speed, empty product, ...)."""


class LevelKind(enum.Enum):
    REGULAR = "regular"
    CRITICAL = "critical"
    OUTSIDE_IMAGE = "outside_image"


@dataclass(frozen=True)
class SphereProductModel:
    radii: tuple
    speeds: tuple
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        try:
            radii = tuple(as_rational(r) for r in self.radii)
        except (TypeError, ValueError) as exc:
            raise ModelValidationError(f"bad radius: {exc}") from None
        try:
            speeds = tuple(as_rational(a) for a in self.speeds)
        except (TypeError, ValueError) as exc:
            raise ModelValidationError(f"bad speed: {exc}") from None
        if any(a.denominator != 1 for a in speeds):
            raise ModelValidationError("speeds must be integers")
        speeds = tuple(int(a) for a in speeds)
        if not radii:
            raise ModelValidationError("need at least one sphere")
        if len(radii) != len(speeds):
            raise ModelValidationError(
                f"{len(radii)} radii but {len(speeds)} speeds"
            )
        if any(r <= 0 for r in radii):
            raise ModelValidationError("radii must be positive")
        zero = [i for i, a in enumerate(speeds) if a == 0]
        if zero:
            raise ModelValidationError(
                f"speed 0 on sphere(s) {zero}: fixed set would not be isolated"
            )
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "speeds", speeds)
        try:
            object.__setattr__(self, "shift", as_rational(self.shift))
        except (TypeError, ValueError) as exc:
            raise ModelValidationError(f"bad shift: {exc}") from None

    @classmethod
    def diagonal(cls, n: int, radius=1, shift=0) -> "SphereProductModel":
        """n spheres of equal radius rotated with speed 1."""
        return cls((radius,) * n, (1,) * n, shift)

    @property
    def n(self) -> int:
        return len(self.radii)

    @property
    def real_dimension(self) -> int:
        return 2 * self.n

    def value(self, signs: Sequence[int]) -> Fraction:
        return sum((a * r * s for a, r, s in zip(self.speeds, self.radii, signs)), Fraction(0)) + self.shift

    def at_level(self, c) -> "SphereProductModel":
        """The same action with J shifted so that level c becomes level 0."""
        return SphereProductModel(self.radii, self.speeds, self.shift - as_rational(c))

    def negated(self) -> "SphereProductModel":
        """Speeds and shift negated, i.e. J replaced by -J."""
        return SphereProductModel(self.radii, tuple(-a for a in self.speeds), -self.shift)

    def image(self) -> tuple[Fraction, Fraction]:
        span = sum((abs(a) * r for a, r in zip(self.speeds, self.radii)), Fraction(0))
        return self.shift - span, self.shift + span


@dataclass(frozen=True)
class WeightedProjectiveModel:
    weights: tuple

    def __post_init__(self):
        try:
            ws = tuple(as_rational(w) for w in self.weights)
        except (TypeError, ValueError) as exc:
            raise ModelValidationError(f"bad weight: {exc}") from None
        if any(w.denominator != 1 for w in ws):
            raise ModelValidationError("weights must be integers")
        ws = tuple(int(w) for w in ws)
        if not ws:
            raise ModelValidationError("need at least one weight")
        if any(w == 0 for w in ws):
            raise ModelValidationError("weights must be nonzero")
        object.__setattr__(self, "weights", ws)


@dataclass(frozen=True)
class FixedPointData:
    label: object
    value: Fraction
    weights: tuple
    component_poincare: PoincarePolynomial = field(default_factory=lambda: PoincarePolynomial({0: 1}))

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(sorted(int(w) for w in self.weights)))
        object.__setattr__(self, "value", as_rational(self.value))
        if any(w == 0 for w in self.weights):
            raise ModelValidationError("fixed point weights must be nonzero")

    @property
    def ell_plus(self) -> int:
        return sum(1 for w in self.weights if w > 0)

    @property
    def ell_minus(self) -> int:
        return sum(1 for w in self.weights if w < 0)

    @property
    def is_isolated(self) -> bool:
        return self.component_poincare == PoincarePolynomial({0: 1})

    @property
    def two_sided(self) -> bool:
        return self.ell_plus >= 1 and self.ell_minus >= 1


@dataclass(frozen=True)
class CriticalLevel:
    value: Fraction
    fixed_points: tuple

    def __post_init__(self):
        if not self.fixed_points:
            raise ValueError("a critical level carries at least one fixed point")


def enumerate_fixed_points(m: SphereProductModel) -> list[FixedPointData]:
    """All 2^n pole combinations, in lexicographic order of the sign vector
    (-1 = south pole, +1 = north pole)."""
    out = []
    for s in product((-1, 1), repeat=m.n):
        out.append(FixedPointData(
            label=s,
            value=m.value(s),
            weights=tuple(-a * si for a, si in zip(m.speeds, s)),
        ))
    return out


def group_levels(points: Sequence[FixedPointData]) -> list[CriticalLevel]:
    by_value: dict[Fraction, list] = {}
    for f in points:
        by_value.setdefault(f.value, []).append(f)
    return [CriticalLevel(v, tuple(by_value[v])) for v in sorted(by_value)]


def critical_values(m: SphereProductModel) -> list[CriticalLevel]:
    return group_levels(enumerate_fixed_points(m))


def is_regular(m: SphereProductModel, c) -> LevelKind:
    c = as_rational(c)
    levels = critical_values(m)
    if c < levels[0].value or c > levels[-1].value:
        return LevelKind.OUTSIDE_IMAGE
    if any(lv.value == c for lv in levels):
        return LevelKind.CRITICAL
    return LevelKind.REGULAR


def projective_fixed_components(m: WeightedProjectiveModel) -> list[FixedPointData]:
    """One component per distinct weight value mu, the projectivized
    mu-eigenspace CP^(m_mu - 1), sitting at momentum value mu."""
    out = []
    for mu in sorted(set(m.weights)):
        mult = m.weights.count(mu)
        out.append(FixedPointData(
            label=mu,
            value=Fraction(mu),
            weights=tuple(w - mu for w in m.weights if w != mu),
            component_poincare=gs(mult),
        ))
    return out
