import random
from fractions import Fraction

import pytest

from singred.exactalg import PoincarePolynomial
from singred.model import ModelValidationError
from singred.polygon import PolygonSpec, apol_model, apol_report


def test_name():
    assert str(PolygonSpec((1, 1, 1, 1, 1))) == "APol(1,1,1,1;1)"


def test_equilateral_pentagon_is_regular():
    rep = apol_report(PolygonSpec((1, 1, 1, 1, 1)))
    assert rep.verdict == "regular"
    assert rep.betti == PoincarePolynomial([1, 0, 5, 0, 5, 0, 1])
    assert rep.duality_defect == ()


def test_model_and_level():
    m, level = apol_model(PolygonSpec((1, 2, Fraction(1, 2))))
    assert m.radii == (1, 2) and m.speeds == (1, 1) and level == Fraction(1, 2)


def test_square_is_singular():
    rep = apol_report(PolygonSpec((1, 1, 1, 1)))
    assert rep.verdict == "singular"
    assert rep.betti == PoincarePolynomial([1, 0, 1, 0, 1])
    assert [(e.link.ell_plus, e.link.ell_minus) for e in rep.links] == [(1, 2)] * 3


def test_equilateral_hexagon_fails_duality():
    rep = apol_report(PolygonSpec((1,) * 6))
    assert rep.verdict == "singular"
    assert rep.duality_defect
    assert [o.degree for o in rep.kirwan.obstructions] == [3]


def test_point_and_empty():
    assert apol_report(PolygonSpec((1, 1, 1, 3))).verdict == "point"
    assert apol_report(PolygonSpec((1, 1, 1, 5))).verdict == "empty"


@pytest.mark.parametrize("lengths", [(1, 1), (1, 0, 1), (1, -1, 2)])
def test_invalid(lengths):
    with pytest.raises(ModelValidationError):
        PolygonSpec(lengths)


def _fingerprint(rep):
    return rep.verdict, rep.betti


def test_permutation_and_scaling_invariance():
    rng = random.Random(17)
    for _ in range(50):
        n = rng.randint(3, 7)
        lengths = [Fraction(rng.randint(1, 5), rng.randint(1, 2)) for _ in range(n)]
        base = _fingerprint(apol_report(PolygonSpec(lengths)))
        sides = lengths[:-1]
        rng.shuffle(sides)
        assert _fingerprint(apol_report(PolygonSpec(sides + lengths[-1:]))) == base
        c = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        assert _fingerprint(apol_report(PolygonSpec([c * x for x in lengths]))) == base
