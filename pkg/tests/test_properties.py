"""Further invariants, 1000 cases each; the criterion-level suites live in the acceptance file."""

from hypothesis import given

from starplane.star import Symbol, moyal_star, poisson_bracket
from starplane.weyl import NCPoly, Z, ZB, conjugate, normal_form, weyl_order
from strategies import THOROUGH, laurent_symbols, ncpolys, polynomial_symbols


# ---------------------------------------------------------------- rewriting

@THOROUGH
@given(ncpolys())
def test_normal_form_idempotent(p):
    q = normal_form(p)
    assert q.is_canonical()
    assert normal_form(q) == q


@THOROUGH
@given(ncpolys())
def test_conjugation_commutes(p):
    for rev in (True, False):
        assert normal_form(conjugate(p, rev)) == normal_form(conjugate(normal_form(p), rev))


# ---------------------------------------------------------------- star product

@THOROUGH
@given(polynomial_symbols(), polynomial_symbols())
def test_first_order_is_poisson(f, g):
    assert moyal_star(f, g, order=1).h_coefficient(1) == poisson_bracket(f, g)


@THOROUGH
@given(laurent_symbols(-3, 0), laurent_symbols(-3, 0))
def test_holomorphic_collapse_negative_powers(f, g):
    f = Symbol({(h, a, 0): c for (h, a, b), c in f.terms.items()})
    g = Symbol({(h, a, 0): c for (h, a, b), c in g.terms.items()})
    assert moyal_star(f, g, 6) == f * g


@THOROUGH
@given(polynomial_symbols(2, 2), polynomial_symbols(2, 2))
def test_star_is_weyl_ordered_product(f, g):
    # the symbol z^a zb^b stands for the symmetrized word
    def weyl(s):
        out = NCPoly()
        for (h, a, b), c in s.terms.items():
            out = out + weyl_order((Z,) * int(a) + (ZB,) * int(b)) * NCPoly.word((), c, h)
        return normal_form(out)
    assert weyl(moyal_star(f, g, 8)) == normal_form(weyl(f) * weyl(g))
