"""Exact scalar types: Gaussian rationals and polynomials in the central parameter H."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """A complex number ``re + im*i`` with exact rational parts.

    Instances are immutable and hashable. Arithmetic with ``int`` and
    ``Fraction`` operands is supported; floats are rejected so that exact
    results never silently degrade.
    """

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)
        self._hash = None

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact; build a GaussianRational")
        return cls(x, 0)

    # predicates
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    # arithmetic
    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if o.im == 0:
            return GaussianRational(self.re * o.re, self.im * o.re)
        if self.im == 0:
            return GaussianRational(self.re * o.re, self.re * o.im)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers of a GaussianRational are exact")
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.re, self.im)) if self.im else hash(self.re)
        return self._hash

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_coefficient(self)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def format_coefficient(c: GaussianRational) -> str:
    """Plain-text form parseable by the expression frontend."""
    def rat(q: Fraction) -> str:
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

    if c.im == 0:
        return rat(c.re) if c.re >= 0 else "-" + rat(-c.re)
    if c.re == 0:
        mag = abs(c.im)
        body = "i" if mag == 1 else f"{rat(mag)}*i"
        return body if c.im > 0 else "-" + body
    sign = "+" if c.im > 0 else "-"
    mag = abs(c.im)
    imag = "i" if mag == 1 else f"{rat(mag)}*i"
    real = rat(c.re) if c.re >= 0 else "-" + rat(-c.re)
    return f"({real} {sign} {imag})"


class HPolynomial:
    """Polynomial in H with Gaussian-rational coefficients.

    Stored as ``{degree: coefficient}`` with zero coefficients dropped.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for d, c in coeffs.items():
                if d < 0:
                    raise ValueError("H-degree must be non-negative")
                c = GaussianRational.coerce(c)
                if c:
                    clean[int(d)] = c
        self.coeffs = clean

    @classmethod
    def constant(cls, c) -> "HPolynomial":
        return cls({0: c})

    @classmethod
    def h(cls, degree: int = 1, c=1) -> "HPolynomial":
        return cls({degree: c})

    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, d: int) -> GaussianRational:
        return self.coeffs.get(d, ZERO)

    def __add__(self, other):
        other = _hpoly(other)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, ZERO) + c
        return HPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return HPolynomial({d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_hpoly(other))

    def __rsub__(self, other):
        return _hpoly(other) - self

    def __mul__(self, other):
        other = _hpoly(other)
        out: dict[int, GaussianRational] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, ZERO) + c1 * c2
        return HPolynomial(out)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "HPolynomial":
        return HPolynomial({d: c for d, c in self.coeffs.items() if d <= order})

    def substitute(self, value) -> "HPolynomial":
        """Evaluate at an exact value of H, returning a constant polynomial."""
        value = GaussianRational.coerce(value)
        total = ZERO
        for d, c in self.coeffs.items():
            total = total + c * value ** d
        return HPolynomial.constant(total)

    def evaluate(self, h: complex) -> complex:
        return sum(complex(c) * h ** d for d, c in self.coeffs.items())

    def __eq__(self, other):
        try:
            other = _hpoly(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        return f"HPolynomial({self.coeffs!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs):
            c = self.coeffs[d]
            mono = "" if d == 0 else ("H" if d == 1 else f"H^{d}")
            parts.append((c, mono))
        return join_terms(parts)


def _hpoly(x) -> HPolynomial:
    if isinstance(x, HPolynomial):
        return x
    return HPolynomial.constant(GaussianRational.coerce(x))


def join_terms(parts) -> str:
    """Join ``(coefficient, monomial_text)`` pairs into ``a*m1 - b*m2`` form."""
    if not parts:
        return "0"
    out = []
    for k, (c, mono) in enumerate(parts):
        neg = c.im == 0 and c.re < 0
        mag = -c if neg else c
        if mono:
            body = mono if mag == ONE else f"{format_coefficient(mag)}*{mono}"
        else:
            body = format_coefficient(mag)
        if k == 0:
            out.append("-" + body if neg else body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)
