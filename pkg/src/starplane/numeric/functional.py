"""Star inner products, Gram-Schmidt, operator-norm bounds and Neumann solves."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..errors import DivergenceError, PreconditionError
from ..star import Symbol, moyal_star
from .nsymbol import NumericSymbol, numeric_star, _ns
from .quadrature import NumericEnv, QuadratureSpec, integrate, nodes_weights

RICHARDSON_TOL = 1e-8


def _check_domain(f: NumericSymbol, q: QuadratureSpec):
    for (_, a, b) in f.terms:
        if (a < 0 or b < 0) and q.contains_origin():
            raise PreconditionError(f"pole of z^{a} zb^{b} inside the {q.domain} domain")


def _bar(f, h: complex) -> NumericSymbol:
    """Pointwise complex conjugate at the numeric H."""
    return _ns(f).collapse_h(h).conjugate()


def _integral(s: NumericSymbol, q: QuadratureSpec) -> complex:
    z, w = nodes_weights(q)
    return integrate(s.evaluate(z), w)


def _checked_integral(s: NumericSymbol, q: QuadratureSpec, tol: float = RICHARDSON_TOL) -> complex:
    coarse = _integral(s, q)
    fine = _integral(s, q.refined())
    if abs(fine - coarse) > tol * max(1.0, abs(fine)):
        raise PreconditionError(
            f"quadrature did not converge: {coarse} vs {fine} at {q.nodes}/{2 * q.nodes} nodes")
    return fine


def star_inner_product(f, g, q: QuadratureSpec, env: NumericEnv, tol: float = RICHARDSON_TOL) -> complex:
    """Integral of conj(f) * g over the area measure (conjugate on the left)."""
    f, g = _ns(f), _ns(g)
    _check_domain(f, q)
    _check_domain(g, q)
    integrand = numeric_star(_bar(f, env.h), g.collapse_h(env.h), env.h, env.order)
    return _checked_integral(integrand, q, tol)


def classical_inner_product(f, g, q: QuadratureSpec, h: complex = 0.0) -> complex:
    f, g = _ns(f).collapse_h(h), _ns(g).collapse_h(h)
    z, w = nodes_weights(q)
    return integrate(np.conj(f.evaluate(z)) * g.evaluate(z), w)


def poisson_integral(f, g, q: QuadratureSpec) -> complex:
    """Integral of {conj f, g} = d(conj f) dbar(g) - dbar(conj f) d(g), by direct quadrature."""
    fb = _bar(f, 0.0)
    g = _ns(g).collapse_h(0.0)
    z, w = nodes_weights(q)
    vals = _d(fb, 1, 0).evaluate(z) * _d(g, 0, 1).evaluate(z) - _d(fb, 0, 1).evaluate(z) * _d(g, 1, 0).evaluate(z)
    return integrate(vals, w)


def _d(s: NumericSymbol, nz: int, nzb: int) -> NumericSymbol:
    from ..star import falling
    out = {}
    for (h, a, b), c in s.terms.items():
        k = float(falling(a, nz) * falling(b, nzb))
        if k:
            key = (h, a - nz, b - nzb)
            out[key] = out.get(key, 0j) + c * k
    return NumericSymbol(out)


def norm_diagnostic(f, q: QuadratureSpec, env: NumericEnv) -> dict:
    """Star norm with left and right conjugation, and their difference."""
    f = _ns(f)
    left = star_inner_product(f, f, q, env)
    right = _checked_integral(numeric_star(f.collapse_h(env.h), _bar(f, env.h), env.h, env.order), q)
    classical = classical_inner_product(f, f, q, env.h)
    return {"left": left, "right": right, "classical": classical,
            "norm_left": cmath.sqrt(left), "norm_right": cmath.sqrt(right),
            "delta": cmath.sqrt(left) - cmath.sqrt(right),
            "normalization": "area measure; dz dzb = -2i d(s1) d(s2)"}


@dataclass
class GramSchmidtResult:
    vectors: list
    combinations: np.ndarray
    gram: np.ndarray
    hermitian_defect: float

    def max_offdiag(self) -> float:
        g = self.gram.copy()
        np.fill_diagonal(g, 0)
        return float(np.max(np.abs(g))) if g.size else 0.0


def gram_schmidt(basis, q: QuadratureSpec, env: NumericEnv, rank_tol: float = 1e-10) -> GramSchmidtResult:
    """Modified Gram-Schmidt under the star inner product.

    For imaginary H the form is not Hermitian on a disc (boundary terms of the
    odd orders survive), so only ``<e_i, e_j> = 0`` for ``i < j`` and
    ``|<e_i, e_i>| = 1`` are enforced.  Projections divide by the phase
    ``<e_i, e_i>``; the full Gram matrix is reported.
    """
    basis = [_ns(b).collapse_h(env.h) for b in basis]
    n = len(basis)
    coeffs = np.zeros((n, n), dtype=complex)
    out, diag = [], []
    for j, u in enumerate(basis):
        v = u
        row = np.zeros(n, dtype=complex)
        row[j] = 1.0
        for i, e in enumerate(out):
            # <e, e> is a unit phase, not 1
            p = star_inner_product(e, v, q, env) / diag[i]
            v = v - e.scale(p)
            row -= p * coeffs[i]
        nv = star_inner_product(v, v, q, env)
        ref = abs(star_inner_product(u, u, q, env))
        if abs(nv) <= rank_tol * max(ref, 1e-300):
            raise PreconditionError(f"basis is rank deficient at element {j}")
        s = 1.0 / math.sqrt(abs(nv))
        out.append(v.scale(s))
        diag.append(nv / abs(nv))
        coeffs[j] = row * s
    gram = np.array([[star_inner_product(a, b, q, env) for b in out] for a in out])
    defect = float(np.max(np.abs(gram - gram.conj().T))) if n else 0.0
    return GramSchmidtResult(out, coeffs, gram, defect)


def cauchy_schwarz_search(candidates, q: QuadratureSpec, env: NumericEnv) -> list:
    """Pairs where |<f,g>|^2 exceeds |<f,f>| |<g,g>| (reported, not raised)."""
    found = []
    cands = [_ns(c) for c in candidates]
    norms = [abs(star_inner_product(c, c, q, env)) for c in cands]
    for i, f in enumerate(cands):
        for j, g in enumerate(cands):
            if j <= i:
                continue
            lhs = abs(star_inner_product(f, g, q, env)) ** 2
            if lhs > norms[i] * norms[j] * (1 + 1e-9):
                found.append({"i": i, "j": j, "lhs": lhs, "rhs": norms[i] * norms[j]})
    return found


# ---------------------------------------------------------------- Fredholm

@dataclass
class KernelSpec:
    """Separable kernel K(z, z') = sum_i phi_i(z) psi_i(z')."""

    terms: list

    def __post_init__(self):
        self.terms = [(_sym(p), _sym(s)) for p, s in self.terms]

    @property
    def rank(self) -> int:
        return len(self.terms)

    def check(self, q: QuadratureSpec):
        for p, s in self.terms:
            _check_domain(_ns(p), q)
            _check_domain(_ns(s), q)


def _sym(x):
    if isinstance(x, (Symbol, NumericSymbol)):
        return x
    return Symbol.const(x)


def _slice_matrix(k: KernelSpec, q: QuadratureSpec, env: NumericEnv, z_eval):
    """Coefficient rows C[z, ij] and pair integrands P[ij, z']."""
    zq, _ = nodes_weights(q)
    h = env.h
    phis = [_ns(p).collapse_h(h) for p, _ in k.terms]
    psis = [_ns(s).collapse_h(h) for _, s in k.terms]
    phi_vals = [p.evaluate(z_eval) for p in phis]
    cols, rows = [], []
    for i, si in enumerate(psis):
        for j, sj in enumerate(psis):
            pij = numeric_star(si.conjugate(), sj, h, env.order)
            rows.append(pij.evaluate(zq))
            cols.append(np.conj(phi_vals[i]) * phi_vals[j])
    return np.array(cols).T, np.array(rows)


def _bound_at(k: KernelSpec, q: QuadratureSpec, env: NumericEnv) -> float:
    if not k.terms:
        return 0.0
    z, w = nodes_weights(q)
    coef, pairs = _slice_matrix(k, q, env, z)
    best = 0.0
    step = 512
    for start in range(0, len(z), step):
        block = coef[start:start + step] @ pairs
        best = max(best, float(np.max(np.abs(block) @ w)))
    return math.sqrt(best)


def operator_norm_bound(k: KernelSpec, q: QuadratureSpec, env: NumericEnv) -> dict:
    """Sup over nodes z of (integral of |conj(K) * K| over z')^(1/2) at two refinements.

    Magnitudes of the star integrand are used, since it can be complex.  The
    expression carries no integral over z, so it is a heuristic scale rather
    than a rigorous operator norm.
    """
    k.check(q)
    coarse = _bound_at(k, q, env)
    fine = _bound_at(k, q.refined(), env)
    return {"bound": fine, "coarse": coarse, "refined": fine,
            "levels": [q.nodes, 2 * q.nodes],
            "note": "uses |integrand| of the star form"}


def _integral_plain(s: NumericSymbol, q: QuadratureSpec) -> complex:
    return _integral(s, q)


def neumann_solve(k: KernelSpec, f, lam: complex, q: QuadratureSpec, env: NumericEnv,
                  max_iter: int = 2000, guaranteed: bool = False, tol: float = 1e-10,
                  bound: float | None = None) -> dict:
    """Iterate u <- f + lam * T u with T u(z) = sum_i phi_i(z) * integral psi_i * u.

    Iterates stay in span{f, phi_i}, so the state is the coefficient vector
    of the phi_i; every step is checked on the quadrature nodes.
    """
    k.check(q)
    f = _ns(f).collapse_h(env.h)
    _check_domain(f, q)
    if guaranteed:
        if bound is None:
            bound = operator_norm_bound(k, q, env)["bound"]
        if abs(lam) * bound >= 1:
            raise PreconditionError(f"|lambda| * bound = {abs(lam) * bound:.6g} >= 1")
    z, _ = nodes_weights(q)
    h = env.h
    phis = [_ns(p).collapse_h(h) for p, _ in k.terms]
    psis = [_ns(s).collapse_h(h) for _, s in k.terms]
    b = np.array([_integral_plain(numeric_star(s, f, h, env.order), q) for s in psis], dtype=complex)
    a = np.array([[_integral_plain(numeric_star(s, p, h, env.order), q) for p in phis] for s in psis],
                 dtype=complex).reshape(len(psis), len(phis))
    phi_vals = np.array([p.evaluate(z) for p in phis]).reshape(len(phis), len(z))
    f_vals = f.evaluate(z)
    c = np.zeros(len(phis), dtype=complex)
    history = []
    growth = 0
    for it in range(1, max_iter + 1):
        new = b + lam * (a @ c) if len(c) else c
        delta = float(np.max(np.abs(lam * (new - c) @ phi_vals))) if len(c) else 0.0
        c = new
        history.append(delta)
        if delta < tol:
            u = f_vals + lam * (c @ phi_vals) if len(c) else f_vals
            return {"u": u, "nodes": z, "converged": True, "iterations": it,
                    "coefficients": c, "history": history}
        if len(history) >= 2 and history[-1] > history[-2]:
            growth += 1
            if growth >= 3:
                raise DivergenceError(
                    f"Neumann iterates grew over 3 consecutive steps (step {it}, change {delta:.3g})")
        else:
            growth = 0
    u = f_vals + lam * (c @ phi_vals) if len(c) else f_vals
    return {"u": u, "nodes": z, "converged": False, "iterations": max_iter,
            "coefficients": c, "history": history}


def disc_moment(a, b, radius: float = 1.0) -> float:
    """Closed-form integral of z^a zb^b over a disc (principal branch)."""
    nu = float(a - b)
    s = float(a + b) + 2
    if s <= 0:
        raise PreconditionError("moment diverges at the origin")
    ang = 2 * math.pi if nu == 0 else 2 * math.sin(nu * math.pi) / nu
    return ang * radius ** s / s


def _exact_integral(s: Symbol, h: complex, radius: float) -> complex:
    return sum(complex(c) * h ** hd * disc_moment(a, b, radius) for (hd, a, b), c in s.terms.items())


def dense_solve_oracle(k: KernelSpec, f: Symbol, lam: complex, env: NumericEnv,
                       z, radius: float = 1.0):
    """Solve (I - lam T) u = f in the monomial basis spanning f and the phi_i.

    Star products are exact and integrals use closed-form disc moments, so the
    only numerics are the final dense solve.  Returns u at ``z``.
    """
    basis = sorted({(a, b) for (_, a, b) in f.terms}
                   | {(a, b) for p, _ in k.terms for (_, a, b) in p.terms})
    index = {m: n for n, m in enumerate(basis)}

    def vec(s: Symbol):
        v = np.zeros(len(basis), dtype=complex)
        for (hd, a, b), c in s.terms.items():
            v[index[(a, b)]] += complex(c) * env.h ** hd
        return v

    t = np.zeros((len(basis), len(basis)), dtype=complex)
    for col, (a, b) in enumerate(basis):
        m = Symbol.monomial(a, b)
        for phi, psi in k.terms:
            t[:, col] += vec(phi) * _exact_integral(moyal_star(psi, m, env.order), env.h, radius)
    coeff = np.linalg.solve(np.eye(len(basis)) - lam * t, vec(f))
    z = np.asarray(z)
    return sum(coeff[n] * z ** int(a) * np.conj(z) ** int(b) for n, (a, b) in enumerate(basis))


def closed_form_h0(k: KernelSpec, f: Symbol, lam: complex, z, radius: float = 1.0):
    """Classical separable-kernel solution u = f + lam sum phi_i c_i with (I - lam A) c = b."""
    def mom(s: Symbol, t: Symbol) -> complex:
        return _exact_integral(s * t, 0.0, radius)

    b = np.array([mom(s, f) for _, s in k.terms], dtype=complex)
    a = np.array([[mom(s, p) for p, _ in k.terms] for _, s in k.terms], dtype=complex)
    c = np.linalg.solve(np.eye(len(b)) - lam * a, b)
    f_n = NumericSymbol.from_symbol(f.substitute_h(0))
    out = f_n.evaluate(z)
    for ci, (p, _) in zip(c, k.terms):
        out = out + lam * ci * NumericSymbol.from_symbol(p.substitute_h(0)).evaluate(z)
    return out
