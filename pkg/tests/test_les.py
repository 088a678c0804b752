import random
from itertools import combinations

import pytest
import sympy

from _models import random_singular_model
from singred.exactalg import PoincarePolynomial
from singred.les import (
    LinkData,
    Provenance,
    Status,
    collapse_dims,
    exact_sequence_ranks,
    les_assemble,
    link_cohomology,
    quotient_betti,
    singular_betti_collapse,
)
from singred.model import SphereProductModel


def test_exact_sequence_ranks():
    assert exact_sequence_ranks([1, 2, 1]) == [1, 1, 0]
    assert exact_sequence_ranks([1, 1]) == [1, 0]
    assert exact_sequence_ranks([1, 2]) is None
    assert exact_sequence_ranks([2, 1]) is None
    assert exact_sequence_ranks([]) == []


def test_two_spheres_table():
    report = les_assemble(SphereProductModel.diagonal(2))
    assert report.column("singular") == PoincarePolynomial([1, 0, 1])
    assert report.column("desing") == PoincarePolynomial([1, 0, 1])
    assert report.column("cokernel").is_zero()
    assert all(r.status is Status.EXACT for r in report.rows)


def test_three_spheres_table_splits():
    report = les_assemble(SphereProductModel.diagonal(3, shift=1))
    assert report.column("singular") == PoincarePolynomial([1, 0, 1, 0, 1])
    assert report.column("cokernel") == PoincarePolynomial({2: 3})
    assert report.splitting_hypothesis_holds
    assert report.euler_consistent


def sympy_four_sphere_collapse():
    """Independent computation for the four-sphere level 0: the chamber below
    is 1 + 5t^2 + 5t^4 + t^6, the six level-0 points each carry a CP^1 negative
    cone, and in degree 2 the restriction matrix has rows (1, chi_{ij})."""
    rows = [[1] + [1 if k in pair else 0 for k in range(4)] for pair in combinations(range(4), 2)]
    rho1 = sympy.Matrix(rows).rank()
    below = [1, 0, 5, 0, 5, 0, 1]
    b = [1, 0, below[2] - rho1, 6 - rho1, below[4], 0, below[6]]
    return PoincarePolynomial(b)


def test_four_spheres_routes_agree():
    m = SphereProductModel.diagonal(4)
    expected = sympy_four_sphere_collapse()
    assert expected == PoincarePolynomial([1, 0, 1, 2, 5, 0, 1])
    assert collapse_dims(m) == expected
    report = les_assemble(m)
    assert report.column("singular") == expected
    assert not report.splitting_hypothesis_holds
    assert dict(report.odd_relations())[2] == 1


def test_four_spheres_ranges():
    rows = {r.degree: r for r in les_assemble(SphereProductModel.diagonal(4)).rows}
    assert rows[3].singular_range == (1, 12)
    assert rows[0].status is Status.EXACT and rows[6].status is Status.EXACT
    assert rows[3].status is Status.UNDERDETERMINED


def test_provenance():
    table = singular_betti_collapse(SphereProductModel.diagonal(4))
    assert table.provenance[3] is Provenance.COLLAPSE_ROUTE
    assert table.provenance[0] is Provenance.SPLIT_ROUTE


def test_quotient_kinds():
    assert quotient_betti(SphereProductModel.diagonal(3)).kind == "regular"
    assert quotient_betti(SphereProductModel.diagonal(3, shift=5)).kind == "empty"
    pt = quotient_betti(SphereProductModel.diagonal(3, shift=3))
    assert pt.kind == "point" and pt.dims == 1
    assert quotient_betti(SphereProductModel.diagonal(4)).kind == "singular"


def test_random_models_route_agreement():
    rng = random.Random(31)
    for _ in range(40):
        m = random_singular_model(rng)
        report = les_assemble(m)
        b = report.column("singular")
        assert b[0] == 1 and b[1] == 0
        assert report.euler_consistent
        for r in report.rows:
            lo, hi = r.singular_range
            assert lo <= r.singular <= hi
        for k, off in report.odd_relations():
            assert b[k + 1] == b[k] + off


def sympy_link(a, b):
    """Gysin oracle with sympy: kernel and cokernel of multiplication by
    h+ + h- on Q[h+, h-]/(h+^a, h-^b)."""
    def basis(j):
        return [(i, j - i) for i in range(a) if 0 <= j - i < b]

    def mult(j):
        src, dst = basis(j), basis(j + 1)
        if not src or not dst:
            return 0
        mat = sympy.zeros(len(dst), len(src))
        for c, (i, k) in enumerate(src):
            for mono in ((i + 1, k), (i, k + 1)):
                if mono in dst:
                    mat[dst.index(mono), c] += 1
        return mat.rank()

    out = {}
    for j in range(a + b - 1):
        out[2 * j] = len(basis(j)) - (mult(j - 1) if j else 0)
        out[2 * j + 1] = len(basis(j)) - mult(j)
    return PoincarePolynomial(out)


def test_link_examples():
    assert link_cohomology(LinkData(1, 1)) == PoincarePolynomial({0: 1, 1: 1})
    assert link_cohomology(LinkData(2, 2)) == PoincarePolynomial({0: 1, 2: 1, 3: 1, 5: 1})


@pytest.mark.parametrize("a", range(1, 6))
@pytest.mark.parametrize("b", range(1, 6))
def test_links_palindromic_and_match_oracle(a, b):
    p = link_cohomology(LinkData(a, b))
    assert p == sympy_link(a, b)
    assert p.degree == 2 * (a + b) - 3
    assert p.is_palindromic(2 * (a + b) - 3)


def test_link_rejects_one_sided():
    with pytest.raises(ValueError):
        LinkData(0, 2)
