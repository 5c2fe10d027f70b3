"""Symbols with floating coefficients, evaluated on node arrays."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import numpy as np

from ..star import Symbol, falling, _pair_max_order


class NumericSymbol:
    """``{(hdeg, a, b): complex}``; exponents stay exact Fractions."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (h, a, b), c in (terms or {}).items():
            key = (int(h), Fraction(a), Fraction(b))
            clean[key] = clean.get(key, 0j) + complex(c)
        self.terms = {k: v for k, v in clean.items() if v != 0}

    @classmethod
    def from_symbol(cls, s: Symbol) -> "NumericSymbol":
        return cls({k: complex(c) for k, c in s.terms.items()})

    @classmethod
    def monomial(cls, a=0, b=0, coeff=1.0, hdeg=0):
        return cls({(hdeg, a, b): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in _ns(other).terms.items():
            out[k] = out.get(k, 0j) + c
        return NumericSymbol(out)

    def __sub__(self, other):
        return self + _ns(other).scale(-1)

    def scale(self, c) -> "NumericSymbol":
        return NumericSymbol({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        out = {}
        for (h1, a1, b1), c1 in self.terms.items():
            for (h2, a2, b2), c2 in _ns(other).terms.items():
                k = (h1 + h2, a1 + a2, b1 + b2)
                out[k] = out.get(k, 0j) + c1 * c2
        return NumericSymbol(out)

    __rmul__ = __mul__

    def conjugate(self) -> "NumericSymbol":
        """Pointwise complex conjugate for real H: swap exponents, conj coefficients.

        H is kept symbolic here; :meth:`evaluate` applies conj(H) when asked.
        """
        return NumericSymbol({(h, b, a): c.conjugate() for (h, a, b), c in self.terms.items()})

    def evaluate(self, z, h: complex = 0.0, conj_h: bool = False):
        """Values at the nodes ``z`` (array), principal branch."""
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        hv = np.conj(h) if conj_h else h
        total = np.zeros(z.shape, dtype=complex)
        logz = None
        for (hd, a, b), c in self.terms.items():
            if a.denominator == 1 and b.denominator == 1:
                term = z ** int(a) * zb ** int(b)
            else:
                if logz is None:
                    logz = np.log(z)
                term = np.exp(float(a) * logz + float(b) * np.conj(logz))
            total += c * hv ** hd * term
        return total

    def collapse_h(self, h: complex) -> "NumericSymbol":
        """Fold a numeric H into the coefficients."""
        out = {}
        for (hd, a, b), c in self.terms.items():
            out[(0, a, b)] = out.get((0, a, b), 0j) + c * h ** hd
        return NumericSymbol(out)

    def __repr__(self):
        return f"NumericSymbol({self.terms!r})"


def _ns(x) -> NumericSymbol:
    if isinstance(x, NumericSymbol):
        return x
    if isinstance(x, Symbol):
        return NumericSymbol.from_symbol(x)
    return NumericSymbol({(0, 0, 0): complex(x)})


def numeric_star(f, g, h: complex, order: int = 4) -> NumericSymbol:
    """Star product with H folded in numerically, truncated at ``order``."""
    f, g = _ns(f), _ns(g)
    out = {}
    for (h1, a, b), c1 in f.terms.items():
        for (h2, c, d), c2 in g.terms.items():
            base = c1 * c2 * h ** (h1 + h2)
            top = _pair_max_order(a, b, c, d)
            n_max = order if top is None else min(order, top)
            for n in range(n_max + 1):
                for k in range(n + 1):
                    i = n - k
                    coef = falling(a, i) * falling(b, k) * falling(d, i) * falling(c, k)
                    if not coef:
                        continue
                    w = float(coef) * comb(n, k) * (-1) ** k / factorial(n)
                    key = (0, a - i + c - k, b - k + d - i)
                    out[key] = out.get(key, 0j) + base * w * h ** n
    return NumericSymbol(out)
