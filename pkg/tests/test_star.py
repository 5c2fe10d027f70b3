from fractions import Fraction
from math import comb, factorial

import pytest

from starplane.frontend import parse_symbol as S
from starplane.star import (FormalSeries1D, HMatrix, MultiSymbol, RootBoundError, Symbol,
                            check_canonical, geometric_check, hamilton_on_coordinates,
                            h_derivative_check, moyal_star, moyal_star_multi, moyal_star_report,
                            poisson_bracket, pullback_star, series_revert, sigma_star,
                            star_commutator, star_limit_at_origin)


def zl_zbm(l, m, sign=1):
    """sum_k (sign H)^k k! C(l,k) C(m,k) z^(l-k) zb^(m-k)."""
    return Symbol({(k, l - k, m - k): sign ** k * factorial(k) * comb(l, k) * comb(m, k)
                   for k in range(min(l, m) + 1)})


@pytest.mark.parametrize("l", range(5))
@pytest.mark.parametrize("m", range(5))
def test_monomial_table(l, m):
    z_l, zb_m = Symbol.monomial(l, 0), Symbol.monomial(0, m)
    assert moyal_star(z_l, zb_m, 4) == zl_zbm(l, m)
    assert moyal_star(zb_m, z_l, 4) == zl_zbm(l, m, -1)


def test_basic_values():
    assert str(moyal_star(S("z"), S("zb"))) == "z*zb + H"
    assert str(moyal_star(S("zb"), S("z"))) == "z*zb - H"
    assert str(star_commutator(S("z^3"), S("zb^3"))) == "18*H*z^2*zb^2 + 12*H^3"


def test_square_root_pair():
    got = moyal_star(S("z^(1/2)"), S("zb^(1/2)"), 2)
    assert got == S("z^(1/2)*zb^(1/2) + 1/4*H*z^(-1/2)*zb^(-1/2) + 1/32*H^2*z^(-3/2)*zb^(-3/2)")


def test_termination_flag():
    assert moyal_star_report(S("z^2"), S("zb^2"), 4)[1]
    _, flag = moyal_star_report(S("z^(1/2)"), S("zb^(1/2)"), 4)
    assert not flag


def test_root_bound():
    with pytest.raises(RootBoundError):
        moyal_star(S("z^(1/9)"), S("zb"), root_bound=8)
    # denominator equal to the bound is admitted
    moyal_star(S("z^(1/8)"), S("zb"), root_bound=8)


def test_order_range():
    with pytest.raises(ValueError):
        moyal_star(S("z"), S("zb"), order=-1)


def test_h_derivative():
    r = h_derivative_check(S("z^3*zb"), S("z*zb^2"))
    assert r["equal"]
    assert r["rhs"] == poisson_bracket(S("z^3*zb"), S("z*zb^2"))


def test_hamilton_and_canonical():
    assert hamilton_on_coordinates(S("z^2*zb")) == (S("-z^2"), S("2*z*zb"))
    assert check_canonical([[1, 0], [0, 1]])
    assert not check_canonical([[2, 0], [0, 1]])
    assert poisson_bracket(S("z"), S("zb")) == Symbol.const(1)


def test_multi_and_sigma():
    f, g = MultiSymbol.var(2, 0), MultiSymbol.var(2, 1)
    assert str(moyal_star_multi(f, g, HMatrix.two(), 2)) == "z1*z2 + 1/2*i*H"
    assert str(sigma_star(f, g)) == "z1*z2 + 1/2*i*H"


def test_series_revert_catalan():
    # inverse of x + x^2 has signed Catalan coefficients
    r = series_revert(FormalSeries1D({1: 1, 2: 1}), 6)
    cat = [comb(2 * n, n) // (n + 1) for n in range(6)]
    assert [r.coeffs[n + 1] for n in range(6)] == [(-1) ** n * c for n, c in enumerate(cat)]
    p = FormalSeries1D({1: 1, 2: 1})
    assert p.compose(r, 6).coeffs == {1: 1}


def test_pullback_identity_map():
    assert pullback_star(FormalSeries1D({1: 1}), S("z"), S("zb"), 2, 4) == moyal_star(S("z"), S("zb"), 2)


def test_geometric_and_origin():
    assert all(geometric_check(n) for n in range(1, 6))
    assert star_limit_at_origin(S("z"), S("zb")) == S("H")


def test_substitute_and_conjugate():
    s = moyal_star(S("z^2"), S("zb^2"))
    assert s.substitute_h(0) == S("z^2*zb^2")
    assert s.conjugate().conjugate() == s
    assert s.h_coefficient(2) == Symbol.const(2)
    assert s.evaluate(1 + 1j, 0.0) == pytest.approx(abs(1 + 1j) ** 4)
    assert Fraction(1, 2) in {a for (_, a, _) in S("z^(1/2)").terms}
