"""Möbius maps, elementary conformal maps and Virasoro generators on the deformed plane."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .scalars import ONE, ZERO, GaussianRational, HPolynomial
from .star import Symbol
from .weyl import (
    DiffOpPoly, NCPoly, Z, ZB, ZI, ZBI, AlgebraError, commutator, diffop_commutator,
    diffop_compose, multiplication_op, nc_mul, normal_form, substitute_inverses,
)

VIRASORO_BOUND = 6


def _gr(x) -> GaussianRational:
    return GaussianRational.coerce(x)


@dataclass(frozen=True)
class MobiusCoeffs:
    """Unimodular coefficients of (a z + b)/(c z + d)."""

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        exact = all(not isinstance(x, (float, complex)) for x in (self.a, self.b, self.c, self.d))
        if exact:
            for name in "abcd":
                object.__setattr__(self, name, _gr(getattr(self, name)))
            det = self.a * self.d - self.b * self.c
            if det != 1:
                raise ValueError(f"Möbius coefficients must satisfy ad - bc = 1, got {det}")
        else:
            det = complex(self.a) * complex(self.d) - complex(self.b) * complex(self.c)
            if abs(det - 1) > 1e-12:
                raise ValueError(f"Möbius coefficients must satisfy ad - bc = 1, got {det}")

    @property
    def exact(self) -> bool:
        return isinstance(self.a, GaussianRational)

    def evaluate(self, z: complex) -> complex:
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        return (a * z + b) / (c * z + d)


# ---------------------------------------------------------------- S1 / S2

def inverse_linear_series(c, d, terms: int) -> NCPoly:
    """(c z + d)^-1 = (1/c) sum_{n>=1} (-d/c)^(n-1) zi^n, first ``terms`` terms."""
    c, d = _gr(c), _gr(d)
    if not c:
        raise AlgebraError("c = 0: the map is affine, no inverse series needed")
    if terms < 1:
        raise ValueError("terms must be positive")
    ratio = -d / c
    return NCPoly({(0, 0, (ZI,) * n): ratio ** (n - 1) / c for n in range(1, terms + 1)})


def _linear(a, b) -> NCPoly:
    return NCPoly({(0, 0, (Z,)): _gr(a), (0, 0, ()): _gr(b)})


def mobius_s1(m: MobiusCoeffs, terms: int) -> NCPoly:
    """(c z + d)^-1 (a z + b), normal-formed."""
    return nc_mul(inverse_linear_series(m.c, m.d, terms), _linear(m.a, m.b))


def mobius_s2(m: MobiusCoeffs, terms: int) -> NCPoly:
    """(a z + b) (c z + d)^-1, normal-formed."""
    return nc_mul(_linear(m.a, m.b), inverse_linear_series(m.c, m.d, terms))


def mobius_difference(m: MobiusCoeffs, terms: int) -> NCPoly:
    """S1 - S2 with inverse letters substituted away."""
    return substitute_inverses(mobius_s1(m, terms) - mobius_s2(m, terms))


def mobius_difference_closed(m: MobiusCoeffs, terms: int) -> NCPoly:
    """-(2 H a / c) sum_{n=1}^{terms} n (-d/c)^(n-1) r2^-n zb^(n-1)."""
    ratio = -m.d / m.c
    lead = -(m.a * 2) / m.c
    return NCPoly({(1, -n, (ZB,) * (n - 1)): lead * n * ratio ** (n - 1) for n in range(1, terms + 1)})


# ---------------------------------------------------------------- elementary maps

KINDS = ("translate", "rotate", "dilate", "invertStep")


@dataclass(frozen=True)
class ElementaryMap:
    kind: str
    param: object = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown map kind {self.kind!r}")
        if self.kind == "dilate" and abs(complex(self.param)) == 0:
            raise ValueError("dilation needs |lambda| > 0")

    def rotation_factor(self) -> complex:
        p = self.param
        if isinstance(p, (GaussianRational,)):
            return complex(p)
        return cmath.exp(1j * float(p))

    def apply(self, z: complex) -> complex:
        if self.kind == "translate":
            return z + complex(self.param)
        if self.kind == "rotate":
            return self.rotation_factor() * z
        if self.kind == "dilate":
            return complex(self.param) * z
        return 1 / z

    def inverse(self) -> "ElementaryMap":
        if self.kind == "translate":
            p = self.param
            return ElementaryMap("translate", -p if not isinstance(p, float) else -p)
        if self.kind == "rotate":
            p = self.param
            if isinstance(p, GaussianRational):
                return ElementaryMap("rotate", p.conjugate())
            return ElementaryMap("rotate", -float(p))
        if self.kind == "dilate":
            p = self.param
            return ElementaryMap("dilate", _gr(p).inverse() if isinstance(p, GaussianRational) else 1 / complex(p))
        return ElementaryMap("invertStep")


def mobius_decompose(m: MobiusCoeffs) -> list:
    """phi_1: z + d/c, phi_2: 1/z, phi_3: k z with k = (bc - ad)/c^2, phi_4: z + a/c."""
    if (m.exact and not m.c) or (not m.exact and complex(m.c) == 0):
        raise AlgebraError("c = 0: no inversion step, the map is affine")
    if m.exact:
        shift1, k, shift2 = m.d / m.c, (m.b * m.c - m.a * m.d) / (m.c * m.c), m.a / m.c
    else:
        a, b, c, d = (complex(x) for x in (m.a, m.b, m.c, m.d))
        shift1, k, shift2 = d / c, (b * c - a * d) / c ** 2, a / c
    return [ElementaryMap("translate", shift1), ElementaryMap("invertStep"),
            ElementaryMap("dilate", k), ElementaryMap("translate", shift2)]


def compose_maps(maps, z: complex) -> complex:
    for mp in maps:
        z = mp.apply(z)
    return z


def unambiguous_form(m: MobiusCoeffs, z: complex) -> complex:
    """a/c + ((bc - ad)/c^2)/(z + d/c)."""
    a, b, c, d = (complex(x) for x in (m.a, m.b, m.c, m.d))
    return a / c + ((b * c - a * d) / c ** 2) / (z + d / c)


def transport_commutator(mp: ElementaryMap):
    """Factor by which [z, zb] = 2H is rescaled under an elementary map.

    Exact parameters are pushed through the operator algebra: the images
    z' and zb' are built as NCPolys and their commutator divided by 2H.
    Float parameters give a float factor.
    """
    if mp.kind == "invertStep":
        raise AlgebraError("the inversion step has several inequivalent definitions; "
                           "use the inversion forms report instead")
    p = mp.param
    if mp.kind == "rotate" and not isinstance(p, GaussianRational):
        return abs(cmath.exp(1j * float(p))) ** 2
    if isinstance(p, (float, complex)):
        return abs(complex(p)) ** 2 if mp.kind == "dilate" else 1.0
    p = _gr(p)
    if mp.kind == "rotate" and p.norm2() != 1:
        raise ValueError("rotation parameter must have unit modulus")
    if mp.kind == "translate":
        zp = NCPoly({(0, 0, (Z,)): 1, (0, 0, ()): p})
        zbp = NCPoly({(0, 0, (ZB,)): 1, (0, 0, ()): p.conjugate()})
    else:
        zp = NCPoly.word((Z,), p)
        zbp = NCPoly.word((ZB,), p.conjugate())
    comm = commutator(zp, zbp)
    base = commutator(NCPoly.letter(Z), NCPoly.letter(ZB))
    factor = comm.terms.get((1, 0, ()), ZERO) / base.terms[(1, 0, ())]
    if normal_form(comm - base * factor):
        raise AlgebraError("commutator is not a multiple of 2H")
    return HPolynomial.constant(factor)


# ---------------------------------------------------------------- primary fields

@dataclass(frozen=True)
class ConformalWeight:
    h: Fraction
    hbar: Fraction

    def __init__(self, h, hbar):
        object.__setattr__(self, "h", Fraction(h))
        object.__setattr__(self, "hbar", Fraction(hbar))


MEASURE_WEIGHT = ConformalWeight(-1, -1)


def _int_power(x: GaussianRational, e: Fraction) -> GaussianRational:
    if e.denominator != 1:
        raise ValueError("exact transforms need integer exponents")
    return x ** int(e)


def primary_transform(phi: Symbol, w: ConformalWeight, mp: ElementaryMap) -> Symbol:
    """(dz'/dz)^h (dzb'/dzb)^hbar Phi(z', zb') for translate / rotate / dilate."""
    if mp.kind == "invertStep":
        raise AlgebraError("the inversion step has no single-valued weight factor here")
    p = _gr(mp.param)
    if mp.kind == "translate":
        out = Symbol()
        for (hd, a, b), c in phi.terms.items():
            if a.denominator != 1 or b.denominator != 1 or a < 0 or b < 0:
                raise ValueError("translation of non-polynomial symbols is an infinite series")
            a, b = int(a), int(b)
            for i in range(a + 1):
                for j in range(b + 1):
                    coef = c * comb(a, i) * comb(b, j) * p ** (a - i) * p.conjugate() ** (b - j)
                    out = out + Symbol({(hd, i, j): coef})
        return out
    # rotate and dilate: z' = p z, derivative factor p
    pb = p.conjugate()
    scale = _int_power(p, w.h) * _int_power(pb, w.hbar)
    return Symbol({(hd, a, b): c * scale * _int_power(p, a) * _int_power(pb, b)
                   for (hd, a, b), c in phi.terms.items()})


def measure_jacobian(mp: ElementaryMap):
    """dz' dzb' = J dz dzb, the weight (-1, -1) factor."""
    if mp.kind == "translate":
        return ONE
    if mp.kind == "invertStep":
        raise AlgebraError("not defined for the inversion step")
    p = _gr(mp.param)
    return p * p.conjugate()


# ---------------------------------------------------------------- inversion forms

def inversion_forms(cbar, terms: int = 4) -> dict:
    """The four readings of z -> z/(1 + cbar z), expanded in inverse letters.

    ``S1``: (1 + cbar z)^-1 z, ``S2``: z (1 + cbar z)^-1,
    ``printed``: 1/cbar - cbar^3/(cbar z + 1) as printed,
    ``decomposed``: 1/cbar - (1/cbar^2)(z + 1/cbar)^-1 from the four-step chain.
    """
    cbar = _gr(cbar)
    m = MobiusCoeffs(1, 0, cbar, 1)
    inv = inverse_linear_series(cbar, 1, terms)
    inv_shift = inverse_linear_series(1, cbar.inverse(), terms)
    return {
        "S1": mobius_s1(m, terms),
        "S2": mobius_s2(m, terms),
        "printed": normal_form(NCPoly.scalar(cbar.inverse()) - inv * cbar ** 3),
        "decomposed": normal_form(NCPoly.scalar(cbar.inverse()) - inv_shift * cbar.inverse() ** 2),
    }


def inversion_forms_numeric(cbar: complex, z: complex) -> dict:
    """Commutative values of the four readings at a point."""
    return {
        "S1": z / (1 + cbar * z),
        "S2": z / (1 + cbar * z),
        "printed": 1 / cbar - cbar ** 3 / (cbar * z + 1),
        "decomposed": 1 / cbar - (1 / cbar ** 2) / (z + 1 / cbar),
    }


# ---------------------------------------------------------------- Virasoro

def virasoro_generator(n: int) -> DiffOpPoly:
    """L_n = -z^(n+1) dz; for n <= -2 the prefactor is zi^(-n-1)."""
    word = (Z,) * (n + 1) if n >= -1 else (ZI,) * (-n - 1)
    return DiffOpPoly({(1, 0): NCPoly.word(word, -1)})


def _check_bound(*modes, bound=VIRASORO_BOUND):
    for k in modes:
        if abs(k) > bound:
            raise AlgebraError(f"mode {k} exceeds the Virasoro bound {bound}")


def virasoro_bracket(m: int, n: int, bound: int = VIRASORO_BOUND) -> DiffOpPoly:
    _check_bound(m, n, bound=bound)
    return diffop_commutator(virasoro_generator(m), virasoro_generator(n))


def classical_bracket(m: int, n: int) -> DiffOpPoly:
    """(m - n) L_{m+n}."""
    return virasoro_generator(m + n).scale(m - n)


def _mul(word, coeff=1, hdeg=0, modpow=0) -> DiffOpPoly:
    return multiplication_op(NCPoly.word(word, coeff, hdeg, modpow))


def paper_virasoro_forms() -> dict:
    """Right-hand sides of the printed bracket table, built from generators."""
    L = virasoro_generator
    c = diffop_compose
    return {
        (0, 2): L(2).scale(-2),
        (0, 1): L(1).scale(-1),
        (0, -1): L(-1),
        (0, -2): c(_mul((Z, ZI)) + _mul(()), L(-2)) + c(_mul((), 2, 1, -1), c(L(-1), L(-1))),
        (1, 2): L(3).scale(-1),
        (1, -1): L(0).scale(2),
        (1, -2): c(_mul((Z, Z, ZI, ZI)) + _mul((Z, ZI), 2) + _mul((), -4, 1, -1), L(-1))
        + c(_mul((), 4, 1, -1), c(L(0), L(-1))),
        (2, -2): c(_mul((Z, Z, Z, ZI, ZI)) + _mul((ZI, Z, Z), 3), L(-1))
        + c(_mul((), 6, 1, -1), c(L(1), L(-1))),
        (2, -1): L(1).scale(3),
        (-1, -2): L(-3),
    }


def sl2_jacobi() -> DiffOpPoly:
    L = virasoro_generator
    br = diffop_commutator
    return (br(L(1), br(L(0), L(-1))) + br(L(0), br(L(-1), L(1)))
            + br(L(-1), br(L(1), L(0))))


@dataclass
class SimilarityResult:
    """e^{L_n} z^l e^{-L_n} as a scalar tag times a series in z."""

    n: int
    l: int
    scalar_tag: str | None
    series: NCPoly
    exact: bool
    terms: int
    notes: list = field(default_factory=list)

    def render(self) -> str:
        body = str(self.series)
        if self.scalar_tag:
            body = f"{self.scalar_tag}*({body})"
        return body if self.exact else body + f" + O(z^{self.l + self.terms + 1})"


def _mult_z(l: int) -> DiffOpPoly:
    return multiplication_op(NCPoly.word((Z,) * l))


def virasoro_similarity(n: int, l: int, terms: int = 8) -> SimilarityResult:
    """Adjoint series sum_k ad_{L_n}^k(z^l)/k! built from operator brackets.

    n = -1 terminates; n = 0 multiplies z^l by the tagged scalar exp(-l);
    n = 1 is truncated after ``terms`` terms.
    """
    if n not in (-1, 0, 1):
        raise AlgebraError("similarity transform is provided for n in {-1, 0, 1}")
    if l < 0:
        raise ValueError("l must be non-negative")
    gen = virasoro_generator(n)
    term = _mult_z(l)

    def as_poly(op: DiffOpPoly) -> NCPoly:
        if set(op.coeffs) - {(0, 0)}:
            raise AlgebraError("adjoint action left the multiplication operators")
        return op.coeffs.get((0, 0), NCPoly())

    if n == 0:
        step = diffop_commutator(gen, term)
        if l and as_poly(step) != as_poly(term) * (-l):
            raise AlgebraError("z^l is not an eigenvector of ad L_0")
        tag = f"exp({-l})" if l else None
        return SimilarityResult(0, l, tag, as_poly(term), True, 1)
    total = as_poly(term)
    for k in range(1, terms + 1 if n == 1 else l + 2):
        term = diffop_commutator(gen, term).scale(GaussianRational(Fraction(1, k)))
        if not term:
            break
        total = total + as_poly(term)
    exact = n == -1 or l == 0
    return SimilarityResult(n, l, None, normal_form(total), exact, terms)


def similarity_closed_form(n: int, l: int, terms: int = 8) -> NCPoly:
    """(z - 1)^l for n = -1; z^l (1 + z)^-l truncated for n = 1; z^l for n = 0."""
    if n == -1:
        return NCPoly({(0, 0, (Z,) * (l - j)): comb(l, j) * (-1) ** j for j in range(l + 1)})
    if n == 0:
        return NCPoly.word((Z,) * l)
    out = {}
    for k in range(terms + 1 if l else 1):
        # C(-l, k) = (-1)^k C(l + k - 1, k)
        out[(0, 0, (Z,) * (l + k))] = (-1) ** k * comb(l + k - 1, k) if l else 1
    return NCPoly(out)


def similarity_paper_form(n: int, l: int, terms: int = 8) -> NCPoly:
    """Series part of the printed forms: z^l, e^{-lz} z^l, sum (-l)^j/j! z^(l-j)."""
    if n == 0:
        return NCPoly.word((Z,) * l)
    if n == -1:
        return NCPoly({(0, 0, (Z,) * (l - j)): GaussianRational(Fraction((-l) ** j, factorial(j)))
                       for j in range(l + 1)})
    return NCPoly({(0, 0, (Z,) * (l + k)): GaussianRational(Fraction((-l) ** k, factorial(k)))
                   for k in range(terms + 1 if l else 1)})
