import random
from fractions import Fraction
from math import comb

import sympy

from _models import random_singular_model
from singred.equiv import (
    KirwanInequalityError,
    equivariant_dims,
    kirwan_report,
    restriction_matrix,
    restriction_rank,
)
from singred.model import SphereProductModel


def test_equivariant_dims():
    e = equivariant_dims(SphereProductModel.diagonal(4), 8)
    assert [e[2 * k] for k in range(5)] == [1, 5, 11, 15, 16]
    assert e[3] == 0


def test_equivariant_dims_match_poincare_series():
    # coefficients of (1+t^2)^n / (1-t^2)
    t = sympy.symbols("t")
    for n in range(1, 6):
        series = sympy.series((1 + t ** 2) ** n / (1 - t ** 2), t, 0, 13).removeO()
        e = equivariant_dims(SphereProductModel.diagonal(n), 12)
        for k in range(13):
            assert e[k] == series.coeff(t, k)


def test_four_sphere_restriction_matrix():
    r = restriction_matrix(SphereProductModel.diagonal(4), 1)
    assert r.matrix.rows == 6 and r.matrix.cols == 5
    assert restriction_rank(SphereProductModel.diagonal(4), 1) == 4
    assert restriction_rank(SphereProductModel.diagonal(4), 2) == 0


def test_rank_bounds():
    rng = random.Random(3)
    for _ in range(30):
        m = random_singular_model(rng)
        for k in range(m.n):
            r = restriction_matrix(m, k)
            rho = restriction_rank(m, k)
            assert 0 <= rho <= min(r.matrix.rows, r.matrix.cols)


def test_gauge_invariance():
    rng = random.Random(8)
    for _ in range(15):
        m = random_singular_model(rng)
        base = [restriction_rank(m, k) for k in range(m.n)]
        for _ in range(10):
            g = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(m.n)]
            assert [restriction_rank(m, k, g) for k in range(m.n)] == base


def test_speed_rescaling():
    rng = random.Random(12)
    for _ in range(20):
        m = random_singular_model(rng)
        c = rng.choice([2, 3, 5])
        scaled = SphereProductModel(m.radii, [c * a for a in m.speeds], c * m.shift)
        assert [restriction_rank(scaled, k) for k in range(m.n)] == [restriction_rank(m, k) for k in range(m.n)]


def test_kirwan_four_spheres():
    rep = kirwan_report(SphereProductModel.diagonal(4))
    assert [o.degree for o in rep.obstructions] == [3]
    assert str(rep.obstructions[0]).startswith("ODD-OBSTRUCTION in degree 3")
    assert rep.surjection_possible_in_even_degrees
    assert [e.margin for e in rep.even] == [0, 4, 6, 14]


def test_kirwan_random_models():
    rng = random.Random(77)
    for _ in range(30):
        try:
            kirwan_report(random_singular_model(rng))
        except KirwanInequalityError as exc:  # pragma: no cover
            raise AssertionError(str(exc))


def test_binomial_sum():
    m = SphereProductModel.diagonal(6)
    e = equivariant_dims(m, 6)
    assert e[6] == sum(comb(6, j) for j in range(4))
