import random
import pytest

from starplane import _backend, _kernels_py
from starplane.errors import PreconditionError
from starplane.frontend import parse_ncpoly
from starplane.scalars import GaussianRational
from starplane.weyl import (NCPoly, Z, ZB, ZI, ZBI, commutator, conjugate, kaehler_metric,
                            left_derivative_z, nc_mul, normal_form, reduce_randomly,
                            rewrite_step_bound, right_derivative_zbar, substitute_inverses,
                            verify_identity, weyl_order, zbar_z_closed_form)


def W(text):
    return normal_form(parse_ncpoly(text))


def zw(n):
    return NCPoly.word((Z,) * n)


def zbw(n):
    return NCPoly.word((ZB,) * n)


def naive_nf(p):
    """Leftmost-descent rewriting on explicit strings, z/zb only."""
    todo = [(k, c) for k, c in p.terms.items()]
    out = NCPoly()
    while todo:
        (h, m, w), c = todo.pop()
        for i in range(len(w) - 1):
            if w[i] == ZB and w[i + 1] == Z:
                todo.append(((h, m, w[:i] + (Z, ZB) + w[i + 2:]), c))
                todo.append(((h + 1, m, w[:i] + w[i + 2:]), c * -2))
                break
        else:
            out = out + NCPoly({(h, m, w): c})
    return out


def test_basic_commutator():
    assert commutator(zw(1), zbw(1)) == NCPoly.word((), 2, 1)
    assert W("zb*z") == W("z*zb - 2*H")


def test_normal_form_idempotent():
    p = W("zb^3*z^2*zi*zbi + zbi*zi*z")
    assert normal_form(p) == p
    assert p.is_canonical()


@pytest.mark.parametrize("l,m", [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 2)])
def test_commutator_matches_string_oracle(l, m):
    engine = commutator(zw(l), zbw(m))
    oracle = naive_nf(NCPoly.word((Z,) * l + (ZB,) * m)) - naive_nf(NCPoly.word((ZB,) * m + (Z,) * l))
    assert engine == oracle


def test_z3_zb3_value():
    # frozen from the string oracle; note the 72, not 88
    assert str(commutator(zw(3), zbw(3))) == "18*H*z^2*zb^2 - 72*H^2*z*zb + 48*H^3"


@pytest.mark.parametrize("l", range(1, 6))
def test_z_power_commutator(l):
    assert commutator(zw(l), zbw(1)) == NCPoly.word((Z,) * (l - 1), 2 * l, 1)


@pytest.mark.parametrize("l,n", [(a, b) for a in range(1, 6) for b in range(1, 6)])
def test_nested_form(l, n):
    total = NCPoly()
    for i in range(1, l + 1):
        total = total + NCPoly.word((Z,) * (i - 1) + (ZB,) * (n - 1) + (Z,) * (l - i), 2 * n, 1)
    assert commutator(zw(l), zbw(n)) == normal_form(total)


def test_zbar_z_closed_form():
    for l in range(5):
        for m in range(5):
            assert normal_form(NCPoly.word((ZB,) * m + (Z,) * l)) == zbar_z_closed_form(l, m)


def test_inverse_rules():
    assert commutator(zw(1), NCPoly.letter(ZI)) == NCPoly.word((), 2, 1, -1)
    assert commutator(zbw(1), NCPoly.letter(ZBI)) == NCPoly.word((), -2, 1, -1)
    assert commutator(NCPoly.letter(ZB), NCPoly.letter(ZI)) == NCPoly()
    assert commutator(NCPoly.letter(Z), NCPoly.letter(ZBI)) == NCPoly()


def test_inverse_pair_rule_follows_substitution():
    lhs = substitute_inverses(NCPoly.word((ZBI, ZI)))
    rhs = substitute_inverses(normal_form(NCPoly.word((ZBI, ZI))))
    assert lhs == rhs
    assert normal_form(NCPoly.word((ZBI, ZI))) == NCPoly.word((ZI, ZBI)) + NCPoly.word((), 2, 1, -2)


@pytest.mark.parametrize("n", range(1, 5))
def test_z_inverse_power(n):
    value = substitute_inverses(commutator(zw(1), NCPoly.word((ZI,) * n)))
    assert value == NCPoly.word((ZB,) * (n - 1), 2 * n, 1, -n)


def test_random_reduction_agrees():
    rng = random.Random(7)
    p = NCPoly.word((ZB, ZBI, Z, ZI, ZB, Z, ZI, ZBI))
    q, steps = reduce_randomly(p, rng)
    assert q == normal_form(p)
    assert steps <= rewrite_step_bound(8)


def test_step_bound_values():
    assert [rewrite_step_bound(n) for n in range(5)] == [0, 0, 1, 3, 12]


def test_weyl_order():
    # symmetrized z zb equals z zb - H
    assert weyl_order((Z, ZB)) == W("z*zb - H")
    with pytest.raises(PreconditionError):
        weyl_order((Z,) * 9)


def test_conjugation():
    p = W("z^2*zb + 3*i*H*zi")
    assert conjugate(conjugate(p)) == p
    assert conjugate(conjugate(p, reverse=True), reverse=True) == p
    q = NCPoly.word((ZB, Z, Z))
    assert normal_form(conjugate(q, reverse=True)) == conjugate(normal_form(q), reverse=True)


def test_derivatives():
    assert left_derivative_z(W("z^3*zb^2")) == W("3*z^2*zb^2")
    assert right_derivative_zbar(W("z^3*zb^2")) == W("2*z^3*zb")
    assert kaehler_metric() == NCPoly.scalar(GaussianRational(1) / 2)
    assert kaehler_metric(2) == NCPoly.scalar(1)


def test_verify_identity():
    lhs = W("1/2*(z^2 - zb^2) - 1/2*(z^2 - z*zb + zb*z - zb^2)")
    r = verify_identity(lhs, W("H"))
    assert r["equal"]
    assert not verify_identity(W("z"), W("zb"))["equal"]


def test_nc_mul_associative_sample():
    a, b, c = W("zb*zi + z"), W("zbi*z^2"), W("zb^2 + H")
    assert nc_mul(nc_mul(a, b), c) == nc_mul(a, nc_mul(b, c))


def test_pow_negative():
    with pytest.raises(PreconditionError):
        zw(1) ** -1


def test_backends_agree():
    rng = random.Random(3)
    for _ in range(200):
        w = tuple(rng.randrange(4) for _ in range(rng.randrange(9)))
        assert list(_kernels_py.normalize_word(w)) == list(_backend.normalize_word(w))


def test_backend_name():
    assert _backend.BACKEND in ("cython", "python")


def test_exact_coefficients():
    p = W("2/3*z") * GaussianRational(3, 0)
    assert p == W("2*z")


def test_pure_python_fallback():
    import os
    import subprocess
    import sys
    env = dict(os.environ, STARPLANE_PURE_PYTHON="1")
    code = "from starplane import _backend, weyl; print(_backend.BACKEND, weyl.commutator(weyl.NCPoly.letter(0, 3), weyl.NCPoly.letter(1, 3)))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == "python 18*H*z^2*zb^2 - 72*H^2*z*zb + 48*H^3"
