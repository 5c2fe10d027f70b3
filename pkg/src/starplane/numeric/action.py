"""Noncommutative string action functionals and the windowed Fourier check."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import PreconditionError
from ..scalars import GaussianRational
from ..star import Symbol, moyal_star
from .nsymbol import NumericSymbol
from .quadrature import NumericEnv, QuadratureSpec, integrate, nodes_weights

PERIOD_TOL = 1e-12


@dataclass
class TrigSymbol:
    """X = sum_j c_j exp(alpha_j z + beta_j zb)."""

    terms: list  # (c, alpha, beta)

    @classmethod
    def fourier(cls, modes, periods=(2 * math.pi, 2 * math.pi)) -> "TrigSymbol":
        """Build from ``(c, k, l)`` meaning c * exp(2 pi i (k x / L1 + l y / L2))."""
        l1, l2 = periods
        out = []
        for c, k, l in modes:
            alpha = math.pi * (1j * k / l1 + l / l2)
            beta = math.pi * (1j * k / l1 - l / l2)
            out.append((complex(c), alpha, beta))
        return cls(out)

    def derivative(self, nz: int, nzb: int, z):
        z = np.asarray(z, dtype=complex)
        total = np.zeros(z.shape, dtype=complex)
        for c, a, b in self.terms:
            total += c * a ** nz * b ** nzb * np.exp(a * z + b * np.conj(z))
        return total

    def is_periodic(self, periods) -> bool:
        l1, l2 = periods
        for _, a, b in self.terms:
            s1 = (a + b) * l1 / (2j * math.pi)
            s2 = (a - b) * l2 / (2 * math.pi)
            for s in (s1, s2):
                if abs(s.imag) > PERIOD_TOL or abs(s.real - round(s.real)) > PERIOD_TOL:
                    return False
        return True

    def star_coefficient_values(self, n: int, z):
        """Pointwise H^n coefficient of dX * dbX."""
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        total = np.zeros(z.shape, dtype=complex)
        for c1, a1, b1 in self.terms:
            e1 = np.exp(a1 * z + b1 * zb)
            for c2, a2, b2 in self.terms:
                w = (a1 * b2 - b1 * a2) ** n / math.factorial(n)
                if w == 0:
                    continue
                total += c1 * a1 * c2 * b2 * w * e1 * np.exp(a2 * z + b2 * zb)
        return total


def _poly_derivative(x: Symbol, nz: int, nzb: int, z, h: complex):
    return NumericSymbol.from_symbol(x.dz(nz).dzb(nzb)).evaluate(z, h)


def string_action(x, q: QuadratureSpec, env: NumericEnv | None = None) -> dict:
    """Gamma_0, Gamma_1, Gamma_2 and the integrated H^1, H^2 star coefficients.

    Integrals use the area measure; multiply by -2i for dz dzb.
    """
    env = env or NumericEnv()
    z, w = nodes_weights(q)
    if isinstance(x, TrigSymbol):
        if q.domain == "torus" and not x.is_periodic(q.params):
            raise PreconditionError("X is not periodic on the torus")
        d = lambda a, b: x.derivative(a, b, z)  # noqa: E731
        c1 = x.star_coefficient_values(1, z)
        c2 = x.star_coefficient_values(2, z)
    elif isinstance(x, Symbol):
        if q.domain == "torus" and any(a != 0 or b != 0 for (_, a, b) in x.terms):
            raise PreconditionError("a non-constant polynomial X is not periodic on the torus")
        d = lambda a, b: _poly_derivative(x, a, b, z, env.h)  # noqa: E731
        prod = moyal_star(x.dz(), x.dzb(), order=2)
        c1 = NumericSymbol.from_symbol(prod.h_coefficient(1)).evaluate(z, env.h)
        c2 = NumericSymbol.from_symbol(prod.h_coefficient(2)).evaluate(z, env.h)
    else:
        raise PreconditionError("X must be a TrigSymbol or a polynomial Symbol")
    g0 = d(1, 0) * d(0, 1)
    g1 = d(2, 0) * d(0, 2) - d(1, 1) ** 2
    g2 = d(3, 0) * d(0, 3) - d(2, 1) * d(1, 2)
    out = {
        "gamma0": integrate(g0, w),
        "gamma1": integrate(g1, w),
        "gamma2": integrate(g2, w),
        "h1_coefficient": integrate(c1, w),
        "h2_coefficient": integrate(c2, w),
        "pointwise_gamma1_defect": float(np.max(np.abs(g1 - c1))) if len(z) else 0.0,
        "integrand_gamma1": g1,
        "measure": "area; dz dzb = -2i d(s1) d(s2)",
        "quadrature": q.metadata(),
    }
    out["stationary"] = abs(out["gamma1"]) < 1e-8 * max(1.0, abs(out["gamma0"]))
    out["stable"] = out["gamma2"].real > 1e-8 * max(1.0, abs(out["gamma0"]))
    out["report"] = "stationary at H=0" if out["stationary"] else "not stationary at H=0"
    return out


def symbolic_pb_identity(x: Symbol) -> bool:
    """H^1 coefficient of dX * dbX equals d^2X db^2X - (d db X)^2, exactly."""
    lhs = moyal_star(x.dz(), x.dzb(), order=1).h_coefficient(1)
    rhs = x.dz(2) * x.dzb(2) - x.dz().dzb() * x.dz().dzb()
    return (lhs - rhs).terms == {}


def exp_pair_corrections(k, kp, orders=range(1, 7)) -> list:
    """Star corrections of exp(i k z) * exp(-i k' z) at each order, exactly.

    exp(a1 z + b1 zb) * exp(a2 z + b2 zb) carries (a1 b2 - b1 a2)^n / n! at
    order n; here b1 = b2 = 0.
    """
    a1, b1 = GaussianRational(0, Fraction(k)), GaussianRational(0)
    a2, b2 = GaussianRational(0, -Fraction(kp)), GaussianRational(0)
    base = a1 * b2 - b1 * a2
    return [base ** n * GaussianRational(Fraction(1, math.factorial(n))) for n in orders]


def fourier_window_check(k_values, window: float, nodes: int = 64) -> dict:
    """Windowed orthogonality of e^{ikx} on [-L/2, L/2] along the real axis."""
    if nodes < 8:
        raise PreconditionError("quadrature needs at least 8 nodes")
    x, wx = np.polynomial.legendre.leggauss(nodes)
    x = 0.5 * window * x
    wx = 0.5 * window * wx
    rows = []
    for k in k_values:
        for kp in k_values:
            dk = float(k) - float(kp)
            numeric = complex(np.sum(np.exp(1j * dk * x) * wx))
            exact = window if dk == 0 else 2 * math.sin(dk * window / 2) / dk
            rows.append({
                "k": k, "kp": kp, "numeric": numeric, "exact": exact,
                "abs_error": abs(numeric - exact),
                "normalized": exact / window,
                "corrections_zero": all(not c for c in exp_pair_corrections(k, kp)),
            })
    return {"window": window, "rows": rows,
            "convention": "integral -> 2*pi*delta(k-k') as L grows; normalized value -> delta"}
