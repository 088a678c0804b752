"""Abelian polygon spaces APol(r_1, ..., r_n): the product of the spheres of
radii r_1..r_(n-1), rotated diagonally, reduced at level r_n."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .equiv import KirwanReport, kirwan_report
from .exactalg import PoincarePolynomial, as_rational
from .les import LesReport, LinkData, link_cohomology, quotient_betti
from .model import (
    LevelKind,
    ModelValidationError,
    SphereProductModel,
    enumerate_fixed_points,
    is_regular,
)


@dataclass(frozen=True)
class PolygonSpec:
    lengths: tuple

    def __post_init__(self):
        try:
            ls = tuple(as_rational(x) for x in self.lengths)
        except (TypeError, ValueError) as exc:
            raise ModelValidationError(f"bad side length: {exc}") from None
        if len(ls) < 3:
            raise ModelValidationError("a polygon needs at least 3 sides")
        if any(x <= 0 for x in ls):
            raise ModelValidationError("side lengths must be positive")
        object.__setattr__(self, "lengths", ls)

    def __str__(self):
        body = ",".join(str(x) for x in self.lengths[:-1])
        return f"APol({body};{self.lengths[-1]})"


def apol_model(p: PolygonSpec) -> tuple[SphereProductModel, Fraction]:
    radii = p.lengths[:-1]
    return SphereProductModel(radii, (1,) * len(radii), 0), p.lengths[-1]


@dataclass(frozen=True)
class LinkEntry:
    label: tuple
    link: LinkData
    poincare: PoincarePolynomial


@dataclass(frozen=True)
class ApolReport:
    spec: PolygonSpec
    model: SphereProductModel
    level: Fraction
    verdict: str  # regular / singular / point / empty
    betti: PoincarePolynomial
    duality_defect: tuple = ()
    desing: PoincarePolynomial | None = None
    les: LesReport | None = None
    links: tuple = ()
    kirwan: KirwanReport | None = None
    notes: tuple = field(default_factory=tuple)


def _duality_defect(p: PoincarePolynomial, top: int) -> tuple:
    return tuple(k for k in range(top + 1) if p[k] != p[top - k])


def apol_report(p: PolygonSpec) -> ApolReport:
    model, level = apol_model(p)
    shifted = model.at_level(level)
    top = shifted.real_dimension - 2
    kind = is_regular(model, level)
    table = quotient_betti(shifted)
    if kind is LevelKind.OUTSIDE_IMAGE:
        return ApolReport(p, model, level, "empty", table.dims,
                          notes=("level lies outside the momentum image",))
    if table.kind == "point":
        return ApolReport(p, model, level, "point", table.dims,
                          notes=("level is an extreme value of J; the level set is one fixed point",))
    kirwan = kirwan_report(shifted)
    if table.kind == "regular":
        defect = _duality_defect(table.dims, top)
        if defect:
            raise AssertionError(f"regular polygon space {p} fails Poincare duality in degrees {defect}")
        return ApolReport(p, model, level, "regular", table.dims, (), table.desing, None, (), kirwan)
    links = tuple(
        LinkEntry(f.label, LinkData(f.ell_plus, f.ell_minus),
                  link_cohomology(LinkData(f.ell_plus, f.ell_minus)))
        for f in enumerate_fixed_points(shifted) if f.value == 0
    )
    return ApolReport(
        p, model, level, "singular", table.dims,
        _duality_defect(table.dims, top), table.desing, table.les, links, kirwan,
    )

