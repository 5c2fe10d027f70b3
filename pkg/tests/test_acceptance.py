"""Acceptance criteria 1-11.  Each test prints one PASS/FAIL line."""

import math
import random
import time

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from starplane import conformal as cf
from starplane.cli import main
from starplane.numeric.action import TrigSymbol, string_action, symbolic_pb_identity
from starplane.numeric.contour import contour_integral_circle, family_commutator, family_expected
from starplane.numeric.functional import (KernelSpec, closed_form_h0, dense_solve_oracle,
                                          neumann_solve, operator_norm_bound)
from starplane.numeric.quadrature import NumericEnv, QuadratureSpec
from starplane.errors import DivergenceError
from starplane.frontend import parse_symbol as S
from starplane.scalars import GaussianRational
from starplane.star import Symbol, moyal_star, moyal_star_report, poisson_bracket
from starplane.suite import ENTRIES, bf_comm, run_entry
from starplane.weyl import (NCPoly, Z, ZB, commutative_reorder, commutator, conjugate_by_exp,
                            exp_truncated, final_truncate, normal_form, reduce_randomly,
                            set_h_zero, specialize_h, substitute_inverses, truncated_mul)
from strategies import THOROUGH, holomorphic_symbols, inverse_ncpolys, laurent_symbols, ncpolys

# tolerances and budgets
TABLE_SECONDS = 1.0
CONTOUR_SECONDS = 5.0
CONTOUR_REL = 1e-9
MOBIUS_ABS = 1e-12
FREDHOLM_DENSE = 1e-7
FREDHOLM_CLASSICAL = 1e-8
FREDHOLM_SECONDS = 30.0
ACTION_TOL = 1e-8
SUITE_SECONDS = 60.0
H_ORDER, WORD_LEN = 6, 8

REPORT = {}


def run_checks(n, checks, note):
    try:
        for check in checks:
            check()
    except Exception as exc:  # hypothesis may wrap several failures
        report(n, False, f"{check.__name__}: {type(exc).__name__}")
    report(n, True, note)


def report(n, ok, note=""):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}" + (f"  {note}" if note else "")
    REPORT[n] = line
    print(line)
    assert ok, line


def entries(*prefixes):
    return [e for e in ENTRIES if e.id.split(".")[0] in prefixes]


def run_table(*prefixes):
    t = time.perf_counter()
    res = [run_entry(e) for e in entries(*prefixes)]
    return res, time.perf_counter() - t


def zw(n):
    return NCPoly.word((Z,) * n)


def zbw(n):
    return NCPoly.word((ZB,) * n)


# ---------------------------------------------------------------- 1

def test_criterion_01_commutator_table():
    res, dt = run_table("eq13", "eq31", "eq52", "eq59", "eq75", "eq76")
    failed = [r.id for r in res if r.status == "fail"]
    errata = {r.id for r in res if r.status == "paper-erratum"}
    t = time.perf_counter()
    z3 = commutator(zw(3), zbw(3))
    dt += time.perf_counter() - t
    coef = z3.terms.get((2, 0, (Z, ZB)))
    ok = (not failed and errata == {"eq59.8", "eq75.2", "eq76.2"}
          and z3 == bf_comm(3, 3) and coef == GaussianRational(-72) and dt < TABLE_SECONDS)
    report(1, ok, f"{len(res)} entries, errata {sorted(errata)}, {dt:.2f}s")


# ---------------------------------------------------------------- 2

def test_criterion_02_star_table():
    res, dt = run_table("eq52", "eq53", "eq55", "eq56", "eq58")
    failed = [r.id for r in res if r.status == "fail"]
    t = time.perf_counter()
    flags = [moyal_star_report(Symbol.monomial(l, 0), Symbol.monomial(0, m), 4)[1]
             for l in range(5) for m in range(5)]
    dt += time.perf_counter() - t
    _, root_flag = moyal_star_report(S("z^(1/2)"), S("zb^(1/2)"), 4)
    ok = not failed and all(flags) and not root_flag and dt < TABLE_SECONDS
    report(2, ok, f"{len(res)} entries, {dt:.2f}s")


# ---------------------------------------------------------------- 3

@THOROUGH
@given(laurent_symbols(), laurent_symbols())
def check_poisson(f, g):
    assert moyal_star(f, g, 1).h_coefficient(1) == poisson_bracket(f, g)


@THOROUGH
@given(laurent_symbols(max_terms=2), laurent_symbols(max_terms=2), laurent_symbols(max_terms=2))
def check_associativity(f, g, h):
    left = moyal_star(moyal_star(f, g, H_ORDER), h, H_ORDER).truncate(H_ORDER)
    right = moyal_star(f, moyal_star(g, h, H_ORDER), H_ORDER).truncate(H_ORDER)
    assert left == right


@THOROUGH
@given(holomorphic_symbols(), holomorphic_symbols())
def check_holomorphic(f, g):
    assert moyal_star(f, g) == f * g
    assert moyal_star(f.conjugate(), g.conjugate()) == f.conjugate() * g.conjugate()


@THOROUGH
@given(st.integers(1, 8))
def check_coordinates(order):
    z, zb = Symbol.monomial(1, 0), Symbol.monomial(0, 1)
    assert moyal_star(z, zb, order) - moyal_star(zb, z, order) == Symbol.monomial(0, 0, 2, 1)


def test_criterion_03_moyal_properties():
    run_checks(3, [check_poisson, check_associativity, check_holomorphic, check_coordinates],
               "4 properties x 1000 cases")


# ---------------------------------------------------------------- 4

@THOROUGH
@given(ncpolys(), st.integers(0, 2**32 - 1))
def check_confluence(p, seed):
    assert reduce_randomly(p, random.Random(seed))[0] == normal_form(p)


@THOROUGH
@given(inverse_ncpolys())
def check_substitution(p):
    assert substitute_inverses(normal_form(p)) == normal_form(substitute_inverses(p))


@THOROUGH
@given(ncpolys())
def check_h_zero(p):
    assert set_h_zero(normal_form(p)) == commutative_reorder(set_h_zero(p))


def test_criterion_04_rewriting():
    run_checks(4, [check_confluence, check_substitution, check_h_zero],
               "3 properties x 1000 cases, word length <= 8")


# ---------------------------------------------------------------- 5

def _exp(p):
    return exp_truncated(p, H_ORDER, WORD_LEN, final=False)


def _prod(*factors):
    out = NCPoly.scalar(1)
    for f in factors:
        out = truncated_mul(out, f, H_ORDER, WORD_LEN)
    return final_truncate(out, H_ORDER, WORD_LEN)


def test_criterion_05_exponentials():
    lhs = exp_truncated(zw(1) + zbw(1), H_ORDER, WORD_LEN)
    rhs = _prod(_exp(NCPoly.word((), -1, 1)), _exp(zw(1)), _exp(zbw(1)))
    eq37 = not (lhs - rhs)
    res, _ = run_table("eq67")
    eq67 = all(r.status != "fail" for r in res)
    eq62 = True
    for n in range(11):
        ref = NCPoly({(k, 0, (ZB,) * (n - k)): math.comb(n, k) * 2 ** k for k in range(n + 1)})
        eq62 &= conjugate_by_exp(Z, 1, zbw(n)) == ref
    report(5, eq37 and eq67 and eq62, f"e^(z+zb) exact to H^{H_ORDER}/len {WORD_LEN}; closed form n <= 10")


# ---------------------------------------------------------------- 6

PAIRS = [(0, 1), (0, -1), (0, 2), (0, -2), (1, 1), (1, -1), (1, -2), (2, -1), (2, -2), (1, 2)]


def test_criterion_06_virasoro():
    forms = cf.paper_virasoro_forms()
    table = all(not (cf.virasoro_bracket(m, n) - forms[(m, n)]) if (m, n) in forms
                else not cf.virasoro_bracket(m, n) for m, n in PAIRS)
    jacobi = not cf.sl2_jacobi()
    sim = all(cf.virasoro_similarity(-1, l).series == cf.similarity_closed_form(-1, l) for l in range(6))
    sim &= all(cf.virasoro_similarity(1, l, 8).series == cf.similarity_closed_form(1, l, 8) for l in range(4))
    sim &= all(cf.virasoro_similarity(0, l).series == zw(l) for l in range(4))
    res, _ = run_table("eq139", "eq140")
    side_by_side = all(r.status != "fail" and (r.status == "pass" or r.oracle) for r in res)
    report(6, table and jacobi and sim and side_by_side,
           f"{len(PAIRS)} brackets, sl(2) Jacobi, similarity forms; errata "
           f"{sorted(r.id for r in res if r.status == 'paper-erratum')}")


# ---------------------------------------------------------------- 7

def test_criterion_07_contours():
    t = time.perf_counter()
    worst, exact = 0.0, True
    for fam in ["z,zb", "z,zi", "z,zb^n", "z^n,zb", "z,zi^n", "z^n,zi"]:
        for n in (2, 3):
            for r in (1.0, 1.7):
                res = contour_integral_circle(family_commutator(fam, n), r, 0.1j)
                exact &= res["exact"] == family_expected(fam, n)
                worst = max(worst, res["abs_error"] / max(1.0, abs(res["value"])))
    dt = time.perf_counter() - t
    report(7, exact and worst <= CONTOUR_REL and dt < CONTOUR_SECONDS, f"max rel err {worst:.1e}, {dt:.2f}s")


# ---------------------------------------------------------------- 8

def test_criterion_08_mobius():
    maps = [cf.MobiusCoeffs(GaussianRational(2, 1), 1, GaussianRational(1, 1), 1),
            cf.MobiusCoeffs(1, 0, 2, 1), cf.MobiusCoeffs(0, 1, -1, 0)]
    series = all(cf.mobius_difference(m, 5) == cf.mobius_difference_closed(m, 5) for m in maps)
    classical = all(not specialize_h(cf.mobius_difference(m, 5), 0) for m in maps)
    rng = np.random.default_rng(2024)
    c, d, a = 0.7 - 0.4j, 1.3 + 0.2j, 0.5j
    m = cf.MobiusCoeffs(a, (a * d - 1) / c, c, d)
    chain = cf.mobius_decompose(m)
    worst = 0.0
    for z in rng.normal(size=10) + 1j * rng.normal(size=10):
        direct = m.evaluate(z)
        worst = max(worst, abs(cf.compose_maps(chain, z) - direct), abs(cf.unambiguous_form(m, z) - direct))
    report(8, series and classical and worst <= MOBIUS_ABS, f"5-term series, max composition err {worst:.1e}")


# ---------------------------------------------------------------- 9

def test_criterion_09_fredholm():
    t = time.perf_counter()
    k = KernelSpec([(S("z^2"), S("zb^2")), (S("1/2*z^3"), S("zb^3"))])
    f = S("1 + z^2 + z^3")
    q, env = QuadratureSpec("disc", 32), NumericEnv(0.1j, 4)
    bound = operator_norm_bound(k, q, env)["bound"]
    lam = 0.8 / bound
    r = neumann_solve(k, f, lam, q, env)
    dense = float(np.max(np.abs(dense_solve_oracle(k, f, lam, env, r["nodes"]) - r["u"])))
    env0 = NumericEnv(0.0, 4)
    lam0 = 0.8 / operator_norm_bound(k, q, env0)["bound"]
    r0 = neumann_solve(k, f, lam0, q, env0)
    classical = float(np.max(np.abs(closed_form_h0(k, f, lam0, r0["nodes"]) - r0["u"])))
    try:
        neumann_solve(k, f, 1.2 / bound, q, env)
        detected = False
    except DivergenceError:
        detected = True
    dt = time.perf_counter() - t
    ok = (r["converged"] and dense <= FREDHOLM_DENSE and classical <= FREDHOLM_CLASSICAL
          and detected and dt < FREDHOLM_SECONDS)
    report(9, ok, f"dense {dense:.1e}, classical {classical:.1e}, divergence detected, {dt:.2f}s")


# ---------------------------------------------------------------- 10

def _random_polynomial(rng):
    terms = {(0, rng.randrange(5), rng.randrange(5)): GaussianRational(rng.randint(-3, 3) or 1, rng.randint(-2, 2))
             for _ in range(4)}
    return Symbol(terms)


def test_criterion_10_string_action():
    rng = random.Random(10)
    pointwise = all(symbolic_pb_identity(_random_polynomial(rng)) for _ in range(5))
    modes = [(1, 1, 0), (1, -1, 0), (0.5, 0, 1), (0.5, 0, -1), (0.25j, 1, 1), (-0.25j, -1, -1)]
    res = string_action(TrigSymbol.fourier(modes), QuadratureSpec("torus", 32))
    e1 = abs(res["h1_coefficient"] - res["gamma1"])
    e2 = abs(res["h2_coefficient"] - res["gamma2"])
    report(10, pointwise and e1 <= ACTION_TOL and e2 <= ACTION_TOL, f"|dG1| {e1:.1e}, |dG2| {e2:.1e}")


# ---------------------------------------------------------------- 11

def test_criterion_11_verify_suite(capsys):
    t = time.perf_counter()
    code1 = main(["verify-suite", "--format", "csv"])
    first = capsys.readouterr().out
    dt = time.perf_counter() - t
    code2 = main(["verify-suite", "--format", "csv"])
    second = capsys.readouterr().out
    rows = first.strip().splitlines()[1:]
    groups = {row.split(",")[1] for row in rows}
    ok = code1 == code2 == 0 and first == second and len(rows) >= 60 and len(groups) >= 10 and dt < SUITE_SECONDS
    report(11, ok, f"{len(rows)} entries in {len(groups)} groups, {dt:.1f}s, deterministic")
