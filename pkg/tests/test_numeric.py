import math

import numpy as np
import pytest

from starplane.errors import DivergenceError, PreconditionError
from starplane.frontend import parse_ncpoly, parse_symbol as S
from starplane.numeric.action import (TrigSymbol, exp_pair_corrections, fourier_window_check,
                                      string_action, symbolic_pb_identity)
from starplane.numeric.contour import (contour_exact, contour_integral_circle, family_commutator,
                                       family_expected, format_contour)
from starplane.numeric.functional import (KernelSpec, classical_inner_product, closed_form_h0,
                                          dense_solve_oracle, disc_moment, gram_schmidt,
                                          neumann_solve, norm_diagnostic, operator_norm_bound,
                                          star_inner_product)
from starplane.numeric.nsymbol import NumericSymbol, numeric_star
from starplane.numeric.quadrature import NumericEnv, QuadratureSpec, integrate_fn, nodes_weights, richardson
from starplane.numeric.records import dumps, record
from starplane.star import Symbol, moyal_star
from starplane.weyl import normal_form

H = 0.1j


# ---------------------------------------------------------------- quadrature

def test_disc_area():
    assert integrate_fn(lambda z: np.ones_like(z), QuadratureSpec("disc", 16)) == pytest.approx(math.pi)


@pytest.mark.parametrize("domain,params,area", [
    ("annulus", (0.5, 1.0), math.pi * 0.75),
    ("rectangle", (0.0, 2.0, -1.0, 1.0), 4.0),
    ("torus", (1.0, 3.0), 3.0),
])
def test_areas(domain, params, area):
    assert integrate_fn(lambda z: np.ones_like(z), QuadratureSpec(domain, 12, params)) == pytest.approx(area)


@pytest.mark.parametrize("a,b", [(0, 0), (1, 1), (2, 2), (3, 1), (2, 0)])
def test_disc_moments(a, b):
    val = integrate_fn(lambda z: z ** a * np.conj(z) ** b, QuadratureSpec("disc", 24))
    assert val == pytest.approx(disc_moment(a, b), abs=1e-12)


def test_quadrature_preconditions():
    with pytest.raises(PreconditionError):
        QuadratureSpec("disc", 4)
    with pytest.raises(PreconditionError):
        QuadratureSpec("annulus", 16, (1.0, 0.5))
    with pytest.raises(PreconditionError):
        QuadratureSpec("sphere", 16)


def test_richardson_flag():
    fine, coarse, ok = richardson(lambda z: np.abs(z) ** 2, QuadratureSpec("disc", 16))
    assert ok and fine == pytest.approx(math.pi / 2)


def test_nodes_weights_shape():
    z, w = nodes_weights(QuadratureSpec("disc", 10))
    assert z.shape == w.shape == (100,)


# ---------------------------------------------------------------- numeric symbols

def test_numeric_star_matches_exact():
    f, g = S("z^2*zb + 3*zb"), S("z*zb^2 - z")
    exact = moyal_star(f, g, 4)
    num = numeric_star(NumericSymbol.from_symbol(f), NumericSymbol.from_symbol(g), H, 4)
    pts = np.array([0.3 + 0.2j, -0.7 + 0.1j, 0.5j])
    ref = np.array([exact.evaluate(p, H) for p in pts])
    assert np.allclose(num.evaluate(pts), ref, atol=1e-13)


def test_star_inner_product_coordinate():
    # <z, z> = int zb * z = int |z|^2 - H int 1 on the unit disc
    val = star_inner_product(S("z"), S("z"), QuadratureSpec("disc", 16), NumericEnv(H, 4))
    assert val == pytest.approx(math.pi / 2 - H * math.pi, abs=1e-12)
    assert classical_inner_product(S("z"), S("z"), QuadratureSpec("disc", 16)) == pytest.approx(math.pi / 2)


def test_pole_inside_disc():
    with pytest.raises(PreconditionError):
        star_inner_product(S("z^-1"), S("z"), QuadratureSpec("disc", 16), NumericEnv(H, 4))


def test_norm_diagnostic():
    d = norm_diagnostic(S("z*zb"), QuadratureSpec("disc", 16), NumericEnv(H, 4))
    assert d["classical"] == pytest.approx(math.pi / 3)
    assert abs(d["delta"]) < 1e-12


def test_gram_schmidt_phases():
    basis = [Symbol.monomial(0, 0), Symbol.monomial(1, 0), Symbol.monomial(0, 1)]
    r = gram_schmidt(basis, QuadratureSpec("disc", 32), NumericEnv(H, 4))
    phase = (0.5 - 0.1j) / abs(0.5 - 0.1j)
    assert r.gram[1, 1] == pytest.approx(phase, abs=1e-12)
    assert r.gram[2, 2] == pytest.approx(phase.conjugate(), abs=1e-12)
    assert r.max_offdiag() < 1e-12
    assert r.hermitian_defect == pytest.approx(2 * abs(phase.imag), abs=1e-12)


def test_gram_schmidt_triangular():
    basis = [S("1 + z"), S("z + zb"), S("z*zb + 2*z")]
    r = gram_schmidt(basis, QuadratureSpec("disc", 32), NumericEnv(H, 4))
    upper = np.triu(r.gram, 1)
    assert np.max(np.abs(upper)) < 1e-10
    assert np.allclose(np.abs(np.diag(r.gram)), 1.0)


def test_gram_schmidt_rank():
    with pytest.raises(PreconditionError):
        gram_schmidt([S("z"), S("2*z")], QuadratureSpec("disc", 16), NumericEnv(H, 4))


# ---------------------------------------------------------------- contours

FAMILIES = ["z,zb", "z,zi", "z,zb^n", "z^n,zb", "z,zi^n", "z^n,zi"]


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("r", [1.0, 1.7])
def test_contour_families(family, n, r):
    res = contour_integral_circle(family_commutator(family, n), r, H, 256)
    assert res["exact"] == family_expected(family, n)
    assert abs(res["numeric"] - res["value"]) <= 1e-9 * max(1.0, abs(res["value"]))


def test_contour_text():
    assert format_contour(contour_exact(family_commutator("z,zb^n", 2))) == "8*i*pi*H*r^2"


def test_contour_of_inverse():
    # integral of zi over |z| = r is 2 pi i
    res = contour_integral_circle(normal_form(parse_ncpoly("zi")), 1.3, H)
    assert res["value"] == pytest.approx(2j * math.pi)


def test_contour_radius_and_nodes():
    with pytest.raises(PreconditionError):
        contour_integral_circle(normal_form(parse_ncpoly("z")), -1.0)
    for n in (8, 17):
        with pytest.raises(PreconditionError):
            contour_integral_circle(normal_form(parse_ncpoly("z")), 1.0, nodes=n)


# ---------------------------------------------------------------- Fredholm

def _kernel():
    return KernelSpec([(S("z^2"), S("zb^2")), (S("1/2*z^3"), S("zb^3"))])


def test_fredholm_neumann_vs_dense():
    k, f = _kernel(), S("1 + z^2 + z^3")
    q, env = QuadratureSpec("disc", 32), NumericEnv(H, 4)
    bound = operator_norm_bound(k, q, env)["bound"]
    lam = 0.8 / bound
    r = neumann_solve(k, f, lam, q, env)
    assert r["converged"]
    u = dense_solve_oracle(k, f, lam, env, r["nodes"])
    assert np.max(np.abs(u - r["u"])) <= 1e-7


def test_fredholm_classical():
    k, f = _kernel(), S("1 + z^2 + z^3")
    q, env = QuadratureSpec("disc", 32), NumericEnv(0.0, 4)
    lam = 0.8 / operator_norm_bound(k, q, env)["bound"]
    r = neumann_solve(k, f, lam, q, env)
    assert np.max(np.abs(closed_form_h0(k, f, lam, r["nodes"]) - r["u"])) <= 1e-8


def test_fredholm_divergence():
    k, f = _kernel(), S("1 + z^2 + z^3")
    q, env = QuadratureSpec("disc", 32), NumericEnv(H, 4)
    bound = operator_norm_bound(k, q, env)["bound"]
    with pytest.raises(DivergenceError):
        neumann_solve(k, f, 1.2 / bound, q, env)
    with pytest.raises(PreconditionError):
        neumann_solve(k, f, 1.2 / bound, q, env, guaranteed=True, bound=bound)


def test_bound_is_refined():
    b = operator_norm_bound(_kernel(), QuadratureSpec("disc", 16), NumericEnv(H, 4))
    assert b["levels"] == [16, 32]
    # sup over nodes moves a little with refinement
    assert b["coarse"] == pytest.approx(b["refined"], rel=0.05)


# ---------------------------------------------------------------- string action

@pytest.mark.parametrize("text", ["z^3*zb^2", "z^2 + zb^3*z", "i*z^4*zb - zb^2", "z*zb", "2*z^3 + zb^3*z^2"])
def test_pb_identity(text):
    assert symbolic_pb_identity(S(text))


def test_torus_action():
    modes = [(1, 1, 0), (1, -1, 0), (0.5, 0, 1), (0.5, 0, -1), (0.25j, 1, 1), (-0.25j, -1, -1)]
    x = TrigSymbol.fourier(modes)
    res = string_action(x, QuadratureSpec("torus", 32))
    assert abs(res["h1_coefficient"] - res["gamma1"]) <= 1e-8
    assert abs(res["h2_coefficient"] - res["gamma2"]) <= 1e-8
    assert res["gamma0"].real > 0


def test_torus_requires_periodic():
    x = TrigSymbol.fourier([(1, 0.5, 0)])
    with pytest.raises(PreconditionError):
        string_action(x, QuadratureSpec("torus", 16))


def test_polynomial_action_on_disc():
    res = string_action(S("z^2*zb + zb^3"), QuadratureSpec("disc", 24))
    assert abs(res["h1_coefficient"] - res["gamma1"]) <= 1e-10


def test_fourier_window():
    out = fourier_window_check([0, 1, 2], window=40.0, nodes=128)
    for row in out["rows"]:
        assert row["abs_error"] < 1e-9
        assert row["corrections_zero"]
    assert all(not c for c in exp_pair_corrections(1, 2))


def test_record_json():
    rec = record("contour", ["z"], 1 + 2j, exact=True)
    assert '"re": 1.0' in dumps(rec)
    assert len(rec["inputs_hash"]) == 16
