"""Tensor-product quadrature on discs, annuli, rectangles and periodic tori.

Weights integrate against the area element d(s1) d(s2).  The complex
measure dz dzb equals -2i times that; it is reported, never applied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import PreconditionError

DOMAINS = ("disc", "annulus", "rectangle", "torus")
MEASURE_FACTOR = -2j


@dataclass(frozen=True)
class QuadratureSpec:
    """Domain plus nodes per axis.

    ``params``: disc ``(R,)``; annulus ``(r0, r1)``; rectangle
    ``(x0, x1, y0, y1)``; torus ``(L1, L2)`` with the cell [0, L1) x [0, L2).
    """

    domain: str = "disc"
    nodes: int = 32
    params: tuple = field(default=())

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise PreconditionError(f"unknown domain {self.domain!r}")
        if self.nodes < 8:
            raise PreconditionError("quadrature needs at least 8 nodes per axis")
        if not self.params:
            default = {"disc": (1.0,), "annulus": (0.5, 1.0), "rectangle": (-1.0, 1.0, -1.0, 1.0),
                       "torus": (2 * np.pi, 2 * np.pi)}[self.domain]
            object.__setattr__(self, "params", default)
        if self.domain == "annulus" and not 0 < self.params[0] < self.params[1]:
            raise PreconditionError("annulus needs 0 < r0 < r1")

    @property
    def scheme(self) -> str:
        return {"disc": "gauss-legendre(r) x trapezoid(theta)",
                "annulus": "gauss-legendre(r) x trapezoid(theta)",
                "rectangle": "gauss-legendre tensor",
                "torus": "periodic trapezoid tensor"}[self.domain]

    def refined(self, factor: int = 2) -> "QuadratureSpec":
        return QuadratureSpec(self.domain, self.nodes * factor, self.params)

    def contains_origin(self) -> bool:
        if self.domain == "disc":
            return True
        if self.domain == "rectangle":
            x0, x1, y0, y1 = self.params
            return x0 <= 0 <= x1 and y0 <= 0 <= y1
        if self.domain == "torus":
            return True
        return False

    def metadata(self) -> dict:
        return {"domain": self.domain, "nodes": self.nodes, "params": list(self.params),
                "scheme": self.scheme, "measure": "area d(s1)d(s2)",
                "dz_dzb_factor": "-2i"}


def _gl(n: int, a: float, b: float):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def nodes_weights(q: QuadratureSpec):
    """Flat arrays of complex nodes and real area weights."""
    n = q.nodes
    if q.domain in ("disc", "annulus"):
        r0, r1 = (0.0, q.params[0]) if q.domain == "disc" else q.params
        r, wr = _gl(n, r0, r1)
        # theta in (-pi, pi] avoids the principal-branch cut at the nodes
        theta = -np.pi + 2 * np.pi * (np.arange(n) + 0.5) / n
        wt = np.full(n, 2 * np.pi / n)
        rr, tt = np.meshgrid(r, theta, indexing="ij")
        z = rr * np.exp(1j * tt)
        w = np.outer(wr * r, wt)
        return z.ravel(), w.ravel()
    if q.domain == "rectangle":
        x0, x1, y0, y1 = q.params
        x, wx = _gl(n, x0, x1)
        y, wy = _gl(n, y0, y1)
        xx, yy = np.meshgrid(x, y, indexing="ij")
        return (xx + 1j * yy).ravel(), np.outer(wx, wy).ravel()
    l1, l2 = q.params
    x = l1 * np.arange(n) / n
    y = l2 * np.arange(n) / n
    xx, yy = np.meshgrid(x, y, indexing="ij")
    w = np.full(n * n, l1 * l2 / (n * n))
    return (xx + 1j * yy).ravel(), w


def integrate(values, weights) -> complex:
    """Weighted sum; numpy's pairwise summation keeps the order fixed."""
    return complex(np.sum(np.asarray(values) * weights))


def integrate_fn(fn, q: QuadratureSpec) -> complex:
    z, w = nodes_weights(q)
    return integrate(fn(z), w)


def richardson(fn, q: QuadratureSpec, tol: float = 1e-8):
    """Value at ``q`` and at doubled nodes, with the agreement flag."""
    coarse = integrate_fn(fn, q)
    fine = integrate_fn(fn, q.refined())
    ok = abs(fine - coarse) <= tol * max(1.0, abs(fine))
    return fine, coarse, ok


@dataclass(frozen=True)
class NumericEnv:
    """Numeric H (pure imaginary by default) and star truncation order."""

    h: complex = 0.1j
    order: int = 4
    allow_complex_h: bool = False
    branch: str = "principal"

    def __post_init__(self):
        if not np.isfinite(complex(self.h)):
            raise PreconditionError("H must be finite")
        if not 0 <= self.order <= 32:
            raise PreconditionError("star order must lie in [0, 32]")
        h = complex(self.h)
        if h.real != 0 and not self.allow_complex_h:
            raise PreconditionError("H must be pure imaginary unless allow_complex_h is set")
