"""Symbol calculus: commutative Puiseux polynomials in (z, zb) and the Moyal star.

A :class:`Symbol` maps ``(hdeg, a, b)`` to a Gaussian-rational coefficient,
meaning ``c * H^hdeg * z^a * zb^b`` with rational exponents ``a``, ``b``.
The star product of order ``n`` is

    H^n/n! * sum_k C(n,k) (-1)^k (dz^(n-k) dzb^k f) (dzb^(n-k) dz^k g)
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import comb, factorial

from .errors import PreconditionError
from .scalars import ONE, ZERO, GaussianRational, HPolynomial, join_terms, format_coefficient

DEFAULT_ROOT_BOUND = 64
MAX_ORDER = 64


class RootBoundError(PreconditionError):
    pass


def _gr(c) -> GaussianRational:
    return GaussianRational.coerce(c)


def _fmt_exp(e: Fraction) -> str:
    if e.denominator == 1:
        return str(e.numerator)
    return f"({e.numerator}/{e.denominator})"


def falling(a: Fraction, n: int) -> Fraction:
    """a (a-1) ... (a-n+1)."""
    out = Fraction(1)
    for j in range(n):
        out *= a - j
    return out


class Symbol:
    """Finite sum of ``c * H^h * z^a * zb^b`` with commuting z, zb."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict = {}
        for (h, a, b), c in (terms or {}).items():
            if h < 0:
                raise ValueError("negative H-degree")
            c = _gr(c)
            if c:
                key = (int(h), Fraction(a), Fraction(b))
                clean[key] = clean.get(key, ZERO) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def monomial(cls, a=0, b=0, coeff=1, hdeg=0) -> "Symbol":
        return cls({(hdeg, a, b): coeff})

    @classmethod
    def const(cls, c) -> "Symbol":
        return cls({(0, 0, 0): c})

    @classmethod
    def from_map(cls, mono_map: dict) -> "Symbol":
        """Build from ``{(a, b): HPolynomial}``."""
        out = {}
        for (a, b), hp in mono_map.items():
            for d, c in hp.coeffs.items():
                out[(d, a, b)] = c
        return cls(out)

    # arithmetic
    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = _symbol(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return Symbol(out)

    __radd__ = __add__

    def __neg__(self):
        return Symbol({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_symbol(other))

    def __rsub__(self, other):
        return _symbol(other) - self

    def __mul__(self, other):
        if not isinstance(other, Symbol):
            try:
                c = _gr(other)
            except TypeError:
                return NotImplemented
            return Symbol({k: v * c for k, v in self.terms.items()})
        out: dict = {}
        for (h1, a1, b1), c1 in self.terms.items():
            for (h2, a2, b2), c2 in other.terms.items():
                key = (h1 + h2, a1 + a2, b1 + b2)
                out[key] = out.get(key, ZERO) + c1 * c2
        return Symbol(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Symbol.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = _symbol(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # calculus
    def dz(self, n: int = 1) -> "Symbol":
        out = {}
        for (h, a, b), c in self.terms.items():
            f = falling(a, n)
            if f:
                out[(h, a - n, b)] = c * f
        return Symbol(out)

    def dzb(self, n: int = 1) -> "Symbol":
        out = {}
        for (h, a, b), c in self.terms.items():
            f = falling(b, n)
            if f:
                out[(h, a, b - n)] = c * f
        return Symbol(out)

    def h_coefficient(self, k: int) -> "Symbol":
        return Symbol({(0, a, b): c for (h, a, b), c in self.terms.items() if h == k})

    def truncate(self, order: int) -> "Symbol":
        return Symbol({key: c for key, c in self.terms.items() if key[0] <= order})

    def substitute_h(self, value) -> "Symbol":
        value = _gr(value)
        return Symbol({(0, a, b): c * value ** h for (h, a, b), c in self.terms.items()})

    def conjugate(self) -> "Symbol":
        """z <-> zb, conjugate coefficients, H -> -H."""
        return Symbol({(h, b, a): c.conjugate() * (-1) ** h for (h, a, b), c in self.terms.items()})

    def max_denominator(self) -> int:
        return max((max(a.denominator, b.denominator) for (_, a, b) in self.terms), default=1)

    def is_laurent(self) -> bool:
        return self.max_denominator() == 1

    def max_hdeg(self) -> int:
        return max((h for h, _, _ in self.terms), default=-1)

    def monomials(self) -> dict:
        """``{(a, b): HPolynomial}`` view."""
        out: dict = {}
        for (h, a, b), c in self.terms.items():
            out.setdefault((a, b), {})[h] = c
        return {k: HPolynomial(v) for k, v in out.items()}

    def evaluate(self, z: complex, h: complex = 0.0) -> complex:
        """Numeric value at a point, zb taken as conj(z); principal branch."""
        zb = z.conjugate()
        total = 0j
        for (hd, a, b), c in self.terms.items():
            total += complex(c) * h ** hd * _cpow(z, a) * _cpow(zb, b)
        return total

    def at_origin(self) -> "Symbol":
        """Formal value at z = zb = 0; negative exponents are rejected."""
        out = {}
        for (h, a, b), c in self.terms.items():
            if a < 0 or b < 0:
                raise ValueError("symbol is singular at the origin")
            if a == 0 and b == 0:
                out[(h, 0, 0)] = c
        return Symbol(out)

    def __repr__(self):
        return f"Symbol({str(self)!r})"

    def __str__(self):
        return format_symbol(self)


def _cpow(x: complex, e: Fraction) -> complex:
    if e == 0:
        return 1.0 + 0j
    if e.denominator == 1:
        return complex(x) ** int(e)
    return cmath.exp(float(e) * cmath.log(x))


def _symbol(x) -> Symbol:
    if isinstance(x, Symbol):
        return x
    return Symbol.const(_gr(x))


Z_SYM = Symbol.monomial(1, 0)
ZB_SYM = Symbol.monomial(0, 1)
H_SYM = Symbol.monomial(0, 0, 1, 1)


def format_symbol_monomial(h: int, a: Fraction, b: Fraction, latex: bool = False) -> str:
    parts = []
    if h:
        parts.append("H" if h == 1 else (f"H^{{{h}}}" if latex else f"H^{h}"))
    for name, lname, e in (("z", "z", a), ("zb", r"\bar{z}", b)):
        if e == 0:
            continue
        if latex:
            body = str(e) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"
            parts.append(lname if e == 1 else "%s^{%s}" % (lname, body))
        else:
            parts.append(name if e == 1 else f"{name}^{_fmt_exp(e)}")
    return (" " if latex else "*").join(parts)


def symbol_sort_key(key):
    h, a, b = key
    return (h, -(a + b), -a, b)


def format_symbol(s: Symbol, latex: bool = False) -> str:
    parts = [(s.terms[k], format_symbol_monomial(*k, latex=latex))
             for k in sorted(s.terms, key=symbol_sort_key)]
    text = join_terms(parts)
    return text.replace("*", " ") if latex else text


# ---------------------------------------------------------------- star product

def _check_bound(s: Symbol, root_bound: int):
    if s.max_denominator() > root_bound:
        raise RootBoundError(
            f"exponent denominator {s.max_denominator()} exceeds root bound {root_bound}")


def _pair_max_order(a, b, c, d):
    """Largest order with a nonzero term for z^a zb^b * z^c zb^d, or None."""
    def cap(x, y):
        caps = [int(e) for e in (x, y) if e.denominator == 1 and e >= 0]
        return min(caps) if caps else None
    i_max, k_max = cap(a, d), cap(b, c)
    if i_max is None or k_max is None:
        return None
    return i_max + k_max


def star_max_order(f: Symbol, g: Symbol):
    """Order at which the star series of f and g stops, or None if it never does."""
    best = 0
    for (_, a, b) in f.terms:
        for (_, c, d) in g.terms:
            m = _pair_max_order(a, b, c, d)
            if m is None:
                return None
            best = max(best, m)
    return best


def moyal_star(f: Symbol, g: Symbol, order: int = 4, root_bound: int = DEFAULT_ROOT_BOUND) -> Symbol:
    """Star product truncated at H-order ``order`` (counting only new H powers)."""
    f, g = _symbol(f), _symbol(g)
    if order < 0 or order > MAX_ORDER:
        raise ValueError(f"star order must lie in [0, {MAX_ORDER}]")
    _check_bound(f, root_bound)
    _check_bound(g, root_bound)
    out: dict = {}
    for (h1, a, b), c1 in f.terms.items():
        for (h2, c, d), c2 in g.terms.items():
            base = c1 * c2
            top = _pair_max_order(a, b, c, d)
            n_max = order if top is None else min(order, top)
            for n in range(n_max + 1):
                for k in range(n + 1):
                    i = n - k
                    coef = falling(a, i) * falling(b, k) * falling(d, i) * falling(c, k)
                    if not coef:
                        continue
                    coef *= Fraction(comb(n, k) * (-1) ** k, factorial(n))
                    key = (h1 + h2 + n, a - i + c - k, b - k + d - i)
                    out[key] = out.get(key, ZERO) + base * coef
    return Symbol(out)


def moyal_star_report(f: Symbol, g: Symbol, order: int = 4, root_bound: int = DEFAULT_ROOT_BOUND):
    """Star product plus a flag telling whether the series stopped within ``order``."""
    top = star_max_order(_symbol(f), _symbol(g))
    value = moyal_star(f, g, order, root_bound)
    return value, (top is not None and top <= order)


def star_commutator(f: Symbol, g: Symbol, order: int = 4, root_bound: int = DEFAULT_ROOT_BOUND) -> Symbol:
    return moyal_star(f, g, order, root_bound) - moyal_star(g, f, order, root_bound)


def poisson_bracket(f: Symbol, g: Symbol) -> Symbol:
    """{f, g} = df/dz dg/dzb - df/dzb dg/dz."""
    f, g = _symbol(f), _symbol(g)
    return f.dz() * g.dzb() - f.dzb() * g.dz()


def hamilton_field_apply(f: Symbol, g: Symbol) -> Symbol:
    """X_f g = {f, g}."""
    return poisson_bracket(f, g)


def hamilton_on_coordinates(f: Symbol):
    """(X_f z, X_f zb) = (-df/dzb, df/dz)."""
    f = _symbol(f)
    return -f.dzb(), f.dz()


def check_canonical(m) -> bool:
    """Whether the linear map (z', zb') = m (z, zb) keeps {z', zb'} = 1."""
    (p, q), (r, s) = [[_gr(x) for x in row] for row in m]
    zp = Z_SYM * p + ZB_SYM * q
    zbp = Z_SYM * r + ZB_SYM * s
    return (poisson_bracket(zp, zbp) == Symbol.const(1)
            and not poisson_bracket(zp, zp) and not poisson_bracket(zbp, zbp))


def h_derivative_check(f: Symbol, g: Symbol) -> dict:
    lhs = moyal_star(f, g, order=1).h_coefficient(_base_h(f, g) + 1)
    rhs = poisson_bracket(f, g).h_coefficient(_base_h(f, g))
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}


def _base_h(f, g) -> int:
    # inputs are expected H-free; the H^1 term then comes from the star alone
    if _symbol(f).max_hdeg() > 0 or _symbol(g).max_hdeg() > 0:
        raise ValueError("h_derivative_check expects symbols without explicit H")
    return 0


# ---------------------------------------------------------------- several variables

class MultiSymbol:
    """Commutative polynomial in N variables: ``{(hdeg, exps): coeff}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean: dict = {}
        for (h, exps), c in (terms or {}).items():
            exps = tuple(Fraction(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError("exponent tuple length does not match variable count")
            c = _gr(c)
            if c:
                clean[(h, exps)] = clean.get((h, exps), ZERO) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def var(cls, nvars: int, j: int, power=1) -> "MultiSymbol":
        exps = [0] * nvars
        exps[j] = power
        return cls(nvars, {(0, tuple(exps)): 1})

    @classmethod
    def const(cls, nvars: int, c) -> "MultiSymbol":
        return cls(nvars, {(0, (0,) * nvars): c})

    def _same(self, other):
        if isinstance(other, MultiSymbol):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiSymbol.const(self.nvars, _gr(other))

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return MultiSymbol(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiSymbol(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __mul__(self, other):
        if not isinstance(other, MultiSymbol):
            c = _gr(other)
            return MultiSymbol(self.nvars, {k: v * c for k, v in self.terms.items()})
        other = self._same(other)
        out: dict = {}
        for (h1, e1), c1 in self.terms.items():
            for (h2, e2), c2 in other.terms.items():
                key = (h1 + h2, tuple(x + y for x, y in zip(e1, e2)))
                out[key] = out.get(key, ZERO) + c1 * c2
        return MultiSymbol(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MultiSymbol.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiSymbol):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def derive(self, orders) -> "MultiSymbol":
        out = {}
        for (h, exps), c in self.terms.items():
            f = Fraction(1)
            for e, n in zip(exps, orders):
                f *= falling(e, n)
                if not f:
                    break
            if f:
                out[(h, tuple(e - n for e, n in zip(exps, orders)))] = c * f
        return MultiSymbol(self.nvars, out)

    def __repr__(self):
        return f"MultiSymbol({str(self)!r})"

    def __str__(self):
        parts = []
        for (h, exps), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            mono = []
            if h:
                mono.append("H" if h == 1 else f"H^{h}")
            for j, e in enumerate(exps):
                if e:
                    mono.append(f"z{j + 1}" if e == 1 else f"z{j + 1}^{_fmt_exp(e)}")
            parts.append((c, "*".join(mono)))
        return join_terms(parts)


class HMatrix:
    """Antisymmetric matrix of Gaussian rationals scaling the formal H."""

    def __init__(self, rows):
        rows = [[_gr(x) for x in row] for row in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("HMatrix must be square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError("HMatrix must be antisymmetric")
        self.rows = rows
        self.n = n

    @classmethod
    def two(cls, h12=1) -> "HMatrix":
        h12 = _gr(h12)
        return cls([[0, h12], [-h12, 0]])


def moyal_star_multi(f: MultiSymbol, g: MultiSymbol, h: HMatrix, order: int = 4) -> MultiSymbol:
    """Star product for N variables with [z_j, z_j'] set by ``h``.

    The bidifferential exponent is (i/2) H sum_{j<j'} h_jj' (L_j R_j' - L_j' R_j),
    L and R differentiating the left and right factor.
    """
    if f.nvars != h.n or g.nvars != h.n:
        raise ValueError("variable count does not match the HMatrix dimension")
    n = h.n
    half_i = GaussianRational(0, Fraction(1, 2))
    # exponent as {(left multi-index, right multi-index): coeff}
    gen: dict = {}
    for j in range(n):
        for jp in range(j + 1, n):
            c = h.rows[j][jp] * half_i
            if not c:
                continue
            lj = tuple(1 if x == j else 0 for x in range(n))
            ljp = tuple(1 if x == jp else 0 for x in range(n))
            gen[(lj, ljp)] = gen.get((lj, ljp), ZERO) + c
            gen[(ljp, lj)] = gen.get((ljp, lj), ZERO) - c
    zero = (0,) * n
    power = {(zero, zero): ONE}
    out = MultiSymbol(n)
    for k in range(order + 1):
        for (lo, ro), c in power.items():
            term = f.derive(lo) * g.derive(ro) * c
            out = out + MultiSymbol(n, {(hh + k, e): v for (hh, e), v in term.terms.items()})
        nxt: dict = {}
        for (lo, ro), c in power.items():
            for (lg, rg), cg in gen.items():
                key = (tuple(x + y for x, y in zip(lo, lg)), tuple(x + y for x, y in zip(ro, rg)))
                nxt[key] = nxt.get(key, ZERO) + c * cg * GaussianRational(Fraction(1, k + 1))
        power = {k2: v for k2, v in nxt.items() if v}
        if not power:
            break
    return out


# ---------------------------------------------------------------- sigma coordinates

def sigma_to_z(f: MultiSymbol) -> Symbol:
    """Substitute s1 = (z + zb)/2, s2 = (z - zb)/(2i)."""
    if f.nvars != 2:
        raise ValueError("sigma polynomials have two variables")
    s1 = (Z_SYM + ZB_SYM) * GaussianRational(Fraction(1, 2))
    s2 = (Z_SYM - ZB_SYM) * GaussianRational(0, Fraction(-1, 2))
    out = Symbol()
    for (h, (e1, e2)), c in f.terms.items():
        if e1.denominator != 1 or e2.denominator != 1 or e1 < 0 or e2 < 0:
            raise ValueError("sigma_to_z handles polynomials only")
        term = s1 ** int(e1) * s2 ** int(e2) * c
        out = out + Symbol({(hh + h, a, b): v for (hh, a, b), v in term.terms.items()})
    return out


def z_to_sigma(f: Symbol) -> MultiSymbol:
    """Substitute z = s1 + i s2, zb = s1 - i s2."""
    s1 = MultiSymbol.var(2, 0)
    s2 = MultiSymbol.var(2, 1)
    zz = s1 + s2 * GaussianRational(0, 1)
    zzb = s1 - s2 * GaussianRational(0, 1)
    out = MultiSymbol(2)
    for (h, a, b), c in _symbol(f).terms.items():
        if a.denominator != 1 or b.denominator != 1 or a < 0 or b < 0:
            raise ValueError("z_to_sigma handles polynomials only")
        term = zz ** int(a) * zzb ** int(b) * c
        out = out + MultiSymbol(2, {(hh + h, e): v for (hh, e), v in term.terms.items()})
    return out


def sigma_star(f: MultiSymbol, g: MultiSymbol, order: int = 4) -> MultiSymbol:
    """Star product in (s1, s2) with the symplectic unit matrix."""
    return moyal_star_multi(f, g, HMatrix.two(1), order)


# ---------------------------------------------------------------- formal series

class FormalSeries1D:
    """Truncated Laurent series ``{exponent: coefficient}`` in one variable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {int(k): _gr(v) for k, v in (coeffs or {}).items() if _gr(v)}

    def __getitem__(self, n):
        return self.coeffs.get(n, ZERO)

    def __eq__(self, other):
        return isinstance(other, FormalSeries1D) and self.coeffs == other.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return FormalSeries1D(out)

    def __sub__(self, other):
        return self + FormalSeries1D({k: -v for k, v in other.coeffs.items()})

    def mul(self, other, max_exp: int) -> "FormalSeries1D":
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j <= max_exp:
                    out[i + j] = out.get(i + j, ZERO) + a * b
        return FormalSeries1D(out)

    def truncate(self, max_exp: int) -> "FormalSeries1D":
        return FormalSeries1D({k: v for k, v in self.coeffs.items() if k <= max_exp})

    def derivative(self) -> "FormalSeries1D":
        return FormalSeries1D({k - 1: v * k for k, v in self.coeffs.items() if k})

    def compose(self, inner: "FormalSeries1D", max_exp: int) -> "FormalSeries1D":
        """self(inner(t)) up to t^max_exp; inner must have no constant or negative part."""
        if any(k <= 0 for k in inner.coeffs):
            raise ValueError("inner series must start at a positive power")
        if any(k < 0 for k in self.coeffs):
            raise ValueError("outer series must be a power series")
        out = FormalSeries1D()
        power = FormalSeries1D({0: 1})
        for n in range(0, max_exp + 1):
            if n in self.coeffs:
                out = out + FormalSeries1D({k: v * self.coeffs[n] for k, v in power.coeffs.items()})
            power = power.mul(inner, max_exp)
            if not power.coeffs:
                break
        return out.truncate(max_exp)

    def __repr__(self):
        return "FormalSeries1D(" + ", ".join(
            f"{k}: {format_coefficient(v)}" for k, v in sorted(self.coeffs.items())) + ")"


def series_revert(p: FormalSeries1D, terms: int) -> FormalSeries1D:
    """Compositional inverse q with p(q(z)) = z + O(z^(terms+1))."""
    if any(k <= 0 for k in p.coeffs) or not p[1]:
        raise ValueError("series is not invertible: need p = a1 t + a2 t^2 + ..., a1 != 0")
    a1 = p[1]
    q = FormalSeries1D({1: a1.inverse()})
    for n in range(2, terms + 1):
        c = p.compose(q, n)[n]
        if c:
            q = q + FormalSeries1D({n: -c / a1})
    return q


def inverse_derivative_factor(p: FormalSeries1D, terms: int) -> FormalSeries1D:
    """dP^-1/dz evaluated at z = P(t), as a series in t up to t^(terms-1)."""
    q = series_revert(p, terms + 1)
    return q.derivative().compose(p.truncate(terms), terms - 1)


def pullback_star(p: FormalSeries1D, f: Symbol, g: Symbol, order: int = 4, terms: int = 8) -> Symbol:
    """Star product written in the parameter t of z = P(t).

    Symbols are in (t, tb), stored with the z, zb slots.  Each order-n term
    carries (phi(t) phibar(tb))^n with phi = dP^-1/dz at z = P(t), kept as
    an undifferentiated prefactor; phi is truncated after ``terms`` coefficients.
    """
    phi = inverse_derivative_factor(p, terms)
    phi_s = Symbol({(0, k, 0): v for k, v in phi.coeffs.items()})
    phib_s = Symbol({(0, 0, k): v.conjugate() for k, v in phi.coeffs.items()})
    weight = phi_s * phib_s
    f, g = _symbol(f), _symbol(g)
    out = Symbol()
    factor = Symbol.const(1)
    for n in range(order + 1):
        term = Symbol()
        for k in range(n + 1):
            term = term + (f.dz(n - k).dzb(k) * g.dzb(n - k).dz(k)) * GaussianRational(
                Fraction(comb(n, k) * (-1) ** k, factorial(n)))
        term = term * factor
        out = out + Symbol({(h + n, a, b): c for (h, a, b), c in term.terms.items()})
        factor = factor * weight
    return out


def symbol_from_series(s: FormalSeries1D, conj: bool = False) -> Symbol:
    if conj:
        return Symbol({(0, 0, k): v.conjugate() for k, v in s.coeffs.items()})
    return Symbol({(0, k, 0): v for k, v in s.coeffs.items()})


def geometric_check(n: int) -> bool:
    """(1 - z) * S_n = 1 - z^n for the partial geometric sum S_n."""
    s = Symbol()
    for k in range(n):
        s = s + Symbol.monomial(k, 0)
    return (Symbol.const(1) - Z_SYM) * s == Symbol.const(1) - Symbol.monomial(n, 0)


def star_limit_at_origin(f: Symbol, g: Symbol, order: int = 4) -> Symbol:
    """Formal value of f * g at z = zb = 0."""
    return moyal_star(f, g, order).at_origin()
