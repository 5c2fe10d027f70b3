"""Contour integrals of normal-ordered words over circles |z| = r."""

from __future__ import annotations

import numpy as np

from ..scalars import ZERO, GaussianRational
from ..weyl import NCPoly, Z, ZB, commutator, substitute_inverses, _ncpoly
from ..errors import PreconditionError

TWO_I = GaussianRational(0, 2)


def contour_exact(p: NCPoly) -> dict:
    """``{(hdeg, rpow): c}`` with the integral equal to ``pi * sum c H^hdeg r^rpow``.

    Inverses are rewritten through zb = r^2 / z first, so each surviving
    term ``H^h r2^p z^a zb^b`` has ``a - b = -1``.
    """
    q = substitute_inverses(_ncpoly(p))
    out: dict = {}
    for (h, m, w), c in q.terms.items():
        a, b = w.count(Z), w.count(ZB)
        if a - b + 1 != 0:
            continue
        key = (h, 2 * m + 2 * b)
        out[key] = out.get(key, ZERO) + c * TWO_I
    return {k: v for k, v in out.items() if v}


def evaluate_exact(coeffs: dict, r: float, h: complex) -> complex:
    return complex(np.pi * sum(complex(c) * h ** hd * r ** rp for (hd, rp), c in coeffs.items()))


def format_contour(coeffs: dict) -> str:
    """Plain text like ``8*pi*i*H*r^2``."""
    from ..scalars import join_terms
    parts = []
    for (hd, rp), c in sorted(coeffs.items()):
        mono = ["pi"]
        if hd:
            mono.append("H" if hd == 1 else f"H^{hd}")
        if rp:
            mono.append("r" if rp == 1 else f"r^{rp}")
        parts.append((c, "*".join(mono)))
    return join_terms(parts)


def contour_numeric(p: NCPoly, r: float, h: complex, nodes: int = 256) -> complex:
    """Periodic trapezoid on the circle; the canonical word is read commutatively."""
    if r <= 0:
        raise PreconditionError("radius must be positive")
    if nodes < 16 or nodes % 2:
        raise PreconditionError("contour sampling needs an even number of at least 16 nodes")
    theta = 2 * np.pi * np.arange(nodes) / nodes
    z = r * np.exp(1j * theta)
    zb = np.conj(z)
    vals = np.zeros(nodes, dtype=complex)
    for (hd, m, w), c in _ncpoly(p).terms.items():
        a, b = w.count(Z), w.count(ZB)
        ci, cbi = w.count(2), w.count(3)
        vals += complex(c) * h ** hd * r ** (2 * m) * z ** (a - ci) * zb ** (b - cbi)
    dz = 1j * z * (2 * np.pi / nodes)
    return complex(np.sum(vals * dz))


def contour_integral_circle(p: NCPoly, r: float = 1.0, h: complex = 0.1j, nodes: int = 256) -> dict:
    """Exact coefficients, their value at (r, h), and a quadrature check."""
    exact = contour_exact(p)
    value = evaluate_exact(exact, r, h)
    numeric = contour_numeric(substitute_inverses(_ncpoly(p)), r, h, nodes)
    return {"exact": exact, "text": format_contour(exact), "value": value,
            "numeric": numeric, "abs_error": abs(value - numeric)}


def family_commutator(family: str, n: int) -> NCPoly:
    """The six commutator families of the circle-integral table."""
    zp = lambda k: NCPoly.word((Z,) * k)  # noqa: E731
    zbp = lambda k: NCPoly.word((ZB,) * k)  # noqa: E731
    zip_ = lambda k: NCPoly.word((2,) * k)  # noqa: E731
    table = {
        "z,zb": (zp(1), zbp(1)),
        "z,zi": (zp(1), zip_(1)),
        "z,zb^n": (zp(1), zbp(n)),
        "z^n,zb": (zp(n), zbp(1)),
        "z,zi^n": (zp(1), zip_(n)),
        "z^n,zi": (zp(n), zip_(1)),
    }
    if family not in table:
        raise PreconditionError(f"unknown family {family!r}")
    a, b = table[family]
    return commutator(a, b)


def family_expected(family: str, n: int) -> dict:
    """Closed-form table value as ``{(hdeg, rpow): coefficient of pi}``."""
    eight_i = GaussianRational(0, 8)
    if family == "z,zb^n" and n == 2:
        return {(1, 2): eight_i}
    if family == "z,zi^n" and n == 2:
        return {(1, -2): eight_i}
    return {}
