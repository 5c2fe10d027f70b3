from fractions import Fraction

import numpy as np
import pytest

from starplane import conformal as cf
from starplane.errors import PreconditionError
from starplane.scalars import GaussianRational
from starplane.star import Symbol
from starplane.weyl import NCPoly, Z, diffop_commutator, specialize_h


def sample_mobius():
    # ad - bc = 1 with exact Gaussian entries
    return cf.MobiusCoeffs(GaussianRational(2, 1), 1, GaussianRational(1, 1), 1)


def test_unimodular_check():
    with pytest.raises(ValueError):
        cf.MobiusCoeffs(1, 1, 1, 1)
    with pytest.raises(ValueError):
        cf.MobiusCoeffs(1.0, 1.0, 1.0, 1.0)


def test_det_of_sample():
    m = sample_mobius()
    assert m.a * m.d - m.b * m.c == 1


@pytest.mark.parametrize("terms", [1, 3, 5])
def test_difference_series(terms):
    m = sample_mobius()
    assert cf.mobius_difference(m, terms) == cf.mobius_difference_closed(m, terms)


def test_difference_vanishes_classically():
    m = sample_mobius()
    assert not specialize_h(cf.mobius_difference(m, 5), 0)
    assert cf.mobius_s1(m, 5) != cf.mobius_s2(m, 5)


def test_affine_has_no_series():
    with pytest.raises(PreconditionError):
        cf.inverse_linear_series(0, 1, 3)


def test_decomposition_numeric():
    rng = np.random.default_rng(11)
    c = 0.7 - 0.4j
    d = 1.3 + 0.2j
    a = 0.5j
    b = (a * d - 1) / c
    m = cf.MobiusCoeffs(a, b, c, d)
    maps = cf.mobius_decompose(m)
    assert [mp.kind for mp in maps] == ["translate", "invertStep", "dilate", "translate"]
    for z in rng.normal(size=10) + 1j * rng.normal(size=10):
        direct = m.evaluate(z)
        assert abs(cf.compose_maps(maps, z) - direct) <= 1e-12 * max(1, abs(direct))
        assert abs(cf.unambiguous_form(m, z) - direct) <= 1e-12 * max(1, abs(direct))


def test_decompose_exact_k():
    maps = cf.mobius_decompose(cf.MobiusCoeffs(0, 1, -1, 0))
    assert maps[2].param == GaussianRational(-1)


def test_inverse_maps():
    for mp in [cf.ElementaryMap("translate", 1.5), cf.ElementaryMap("rotate", 0.3),
               cf.ElementaryMap("dilate", 2 - 1j), cf.ElementaryMap("invertStep")]:
        z = 0.4 + 0.9j
        assert mp.inverse().apply(mp.apply(z)) == pytest.approx(z)


def test_transport_factor():
    assert cf.transport_commutator(cf.ElementaryMap("translate", GaussianRational(1, 2))).coeffs == {0: 1}
    dil = cf.transport_commutator(cf.ElementaryMap("dilate", GaussianRational(1, 1)))
    assert dil.coeffs == {0: 2}
    rot = cf.ElementaryMap("rotate", GaussianRational(Fraction(3, 5), Fraction(4, 5)))
    assert cf.transport_commutator(rot).coeffs == {0: 1}
    assert cf.transport_commutator(cf.ElementaryMap("rotate", 0.7)) == pytest.approx(1.0)
    with pytest.raises(PreconditionError):
        cf.transport_commutator(cf.ElementaryMap("invertStep"))


def test_primary_rotation():
    rot = cf.ElementaryMap("rotate", GaussianRational(0, 1))
    phi = Symbol.monomial(1, 0)
    out = cf.primary_transform(phi, cf.ConformalWeight(1, 0), rot)
    assert out == Symbol.monomial(1, 0, GaussianRational(-1))
    assert cf.measure_jacobian(cf.ElementaryMap("dilate", GaussianRational(0, 2))) == GaussianRational(4)


def test_primary_translation():
    out = cf.primary_transform(Symbol.monomial(1, 1), cf.ConformalWeight(0, 0), cf.ElementaryMap("translate", 1))
    assert out == Symbol({(0, 1, 1): 1, (0, 1, 0): 1, (0, 0, 1): 1, (0, 0, 0): 1})


def test_inversion_forms():
    forms = cf.inversion_forms(GaussianRational(2), 4)
    assert forms["decomposed"] != forms["printed"]
    vals = cf.inversion_forms_numeric(0.5 + 0.5j, 0.3 - 0.1j)
    assert vals["decomposed"] == pytest.approx(vals["S1"])
    assert vals["printed"] != pytest.approx(vals["S1"])


@pytest.mark.parametrize("m,n", [(0, 1), (0, -1), (0, 2), (0, -2), (1, 1), (1, -1),
                                 (1, -2), (2, -1), (2, -2), (1, 2)])
def test_virasoro_table(m, n):
    forms = cf.paper_virasoro_forms()
    if (m, n) in forms:
        diff = cf.virasoro_bracket(m, n) - forms[(m, n)]
        assert not diff
    else:
        assert not cf.virasoro_bracket(m, n)


@pytest.mark.parametrize("m", range(-1, 4))
@pytest.mark.parametrize("n", range(-1, 4))
def test_classical_range(m, n):
    assert not (cf.virasoro_bracket(m, n) - cf.classical_bracket(m, n))


def _jacobi(a, b, c):
    L = cf.virasoro_generator
    br = diffop_commutator
    return br(L(a), br(L(b), L(c))) + br(L(b), br(L(c), L(a))) + br(L(c), br(L(a), L(b)))


def test_jacobi():
    assert not cf.sl2_jacobi()
    for triple in [(2, -1, 0), (3, 1, -1), (2, 3, 0)]:
        assert not _jacobi(*triple)


def test_jacobi_defect_with_inverse_letters():
    # formal dz on zi is not compatible with [z, zi]; the defect is pure H
    defect = _jacobi(-2, 1, 0)
    assert defect
    assert all(not specialize_h(c, 0) for c in defect.coeffs.values())


def test_bound():
    with pytest.raises(PreconditionError):
        cf.virasoro_bracket(40, 1)


@pytest.mark.parametrize("l", range(5))
def test_similarity_translation(l):
    res = cf.virasoro_similarity(-1, l)
    assert res.exact
    assert res.series == cf.similarity_closed_form(-1, l)


@pytest.mark.parametrize("l", range(1, 4))
def test_similarity_mobius_series(l):
    res = cf.virasoro_similarity(1, l, terms=6)
    assert res.series == cf.similarity_closed_form(1, l, 6)
    # numerically z^l (1 + z)^-l at a small point
    z = 0.05
    val = sum(complex(c) * z ** len(w) for (_, _, w), c in res.series.terms.items())
    assert val == pytest.approx((z / (1 + z)) ** l, abs=1e-9)


def test_similarity_dilation_tag():
    res = cf.virasoro_similarity(0, 3)
    assert res.scalar_tag == "exp(-3)"
    assert res.series == NCPoly.word((Z,) * 3)
