"""Partial desingularization at a singular level.

Blowing up an isolated fixed point F with weights lambda_1..lambda_k replaces
it by the exceptional divisor CP^(k-1); the circle fixes there one projective
space CP^(m_mu - 1) per distinct weight value mu.  Its tangent weights inside
the divisor are lambda_j - mu and the normal (tautological) direction carries
weight mu, so with an infinitesimal blow-up it sits just below level J(F)
when mu < 0 and just above when mu > 0.  The regular reduced space of the
blow-up at J(F) is the partial desingularization; its exceptional fiber over
F is the reduction of the weighted projective space CP^(k-1)_lambda at 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .exactalg import (
    GradedQuotientRing,
    PoincarePolynomial,
    gs,
    linear_forms,
)
from .model import (
    FixedPointData,
    SphereProductModel,
    WeightedProjectiveModel,
    enumerate_fixed_points,
)
from .wallcross import (
    crossing_delta,
    poincare_above,
    poincare_below,
    projective_reduced_poincare,
)


class OneSidedWeightsError(ValueError):
    """Every weight of a fixed point on the level has the same sign; the level
    is then the extremum of J and there is nothing to resolve."""


class UnequalWeightsError(ValueError):
    """The explicit fiber ideal is only available for weights of one absolute value."""


@dataclass(frozen=True)
class ExceptionalComponent:
    parent: FixedPointData
    mu: int
    multiplicity: int
    component_poincare: PoincarePolynomial
    tangent_weights: tuple

    @property
    def ell_plus(self) -> int:
        return sum(1 for w in self.tangent_weights if w > 0)

    @property
    def ell_minus(self) -> int:
        return sum(1 for w in self.tangent_weights if w < 0)

    def as_fixed_point(self) -> FixedPointData:
        return FixedPointData(
            label=(self.parent.label, self.mu),
            value=self.parent.value,
            weights=self.tangent_weights,
            component_poincare=self.component_poincare,
        )


@dataclass(frozen=True)
class CokernelTerm:
    parent: FixedPointData
    graded_dims: PoincarePolynomial


def _require_two_sided(f: FixedPointData):
    if not f.two_sided:
        raise OneSidedWeightsError(
            f"fixed point {f.label} at value {f.value} has weights {f.weights}; "
            "all of one sign"
        )


def blowup_components(f: FixedPointData) -> list[ExceptionalComponent]:
    if not f.is_isolated:
        raise ValueError("blow-up bookkeeping is implemented for isolated fixed points only")
    _require_two_sided(f)
    counts = Counter(f.weights)
    out = []
    for mu in sorted(counts):
        mult = counts[mu]
        tangent = [w - mu for w in f.weights if w != mu] + [mu]
        out.append(ExceptionalComponent(
            parent=f,
            mu=mu,
            multiplicity=mult,
            component_poincare=gs(mult),
            tangent_weights=tuple(sorted(tangent)),
        ))
    return out


def _level_points(m: SphereProductModel) -> list[FixedPointData]:
    return [f for f in enumerate_fixed_points(m) if f.value == 0]


def desing_poincare(m: SphereProductModel, side: str = "below") -> PoincarePolynomial:
    """Poincare polynomial of the partial desingularization of the level-0
    quotient.

    ``side="below"`` starts from the chamber under 0 and adds the exceptional
    components with mu < 0; ``side="above"`` starts from the chamber over 0
    and removes those with mu > 0.  Both must agree.  A regular level 0 needs
    no resolution and returns the reduced space itself.
    """
    if side not in ("below", "above"):
        raise ValueError("side must be 'below' or 'above'")
    centre = _level_points(m)
    if side == "below":
        total = poincare_below(m, 0)
    else:
        total = poincare_above(m, 0)
    for f in centre:
        for comp in blowup_components(f):
            if side == "below" and comp.mu < 0:
                total = total + crossing_delta(comp.as_fixed_point())
            elif side == "above" and comp.mu > 0:
                total = total - crossing_delta(comp.as_fixed_point())
    if not total.is_nonnegative():
        raise AssertionError(f"negative Betti number in desingularization: {total}")
    return total


def fiber_poincare(f: FixedPointData) -> PoincarePolynomial:
    """Exceptional fiber CP^(k-1)_lambda // S^1 over an isolated fixed point."""
    _require_two_sided(f)
    return projective_reduced_poincare(WeightedProjectiveModel(f.weights), 0)


def cokernel_term(f: FixedPointData) -> CokernelTerm:
    if not f.is_isolated:
        raise ValueError("cokernel terms are implemented for isolated fixed points only")
    fiber = fiber_poincare(f)
    return CokernelTerm(parent=f, graded_dims=fiber - PoincarePolynomial({0: fiber[0]}))


def equal_weight_ideal(ell_plus: int, ell_minus: int) -> GradedQuotientRing:
    """Relations of the exceptional fiber when all weights share one absolute
    value: the fiber is CP^(l+ - 1) x CP^(l- - 1) with hyperplane classes
    Xi/2 + sigma and Xi/2 - sigma."""
    if ell_plus < 1 or ell_minus < 1:
        raise OneSidedWeightsError("both weight signs must occur")
    plus, minus = linear_forms()
    return GradedQuotientRing((plus ** ell_plus, minus ** ell_minus))


def fiber_ideal(f: FixedPointData) -> GradedQuotientRing:
    _require_two_sided(f)
    if len({abs(w) for w in f.weights}) != 1:
        raise UnequalWeightsError(
            f"weights {f.weights} do not share one absolute value; "
            "use fiber_poincare for the graded dimensions"
        )
    return equal_weight_ideal(f.ell_plus, f.ell_minus)


def fiber_top_degree(f: FixedPointData) -> int:
    return 2 * (len(f.weights) - 2)


def leray_hirsch(fiber: PoincarePolynomial, base: PoincarePolynomial) -> PoincarePolynomial:
    return fiber * base

