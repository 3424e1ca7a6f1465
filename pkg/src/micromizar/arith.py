"""Exact numeric values and polynomials over equivalence classes.

Values are complex numbers with rational parts.  The order used for
deciding ``<=`` atoms is lexicographic on (re, im): it restricts to the
usual order on the reals and is total, which is what the order
requirement's reasoning rules assume.

Polynomials are normal forms over class ids: a sorted tuple of
(monomial, coefficient) pairs, monomials being sorted tuples of
(class id, exponent).  Exponents are plain ints, so repeated squaring
is cheap no matter how large the exponent gets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class ComplexRational:
    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def from_int(n: int) -> "ComplexRational":
        return ComplexRational(Fraction(n))

    def __add__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "ComplexRational":
        return ComplexRational(-self.re, -self.im)

    def __truediv__(self, other: "ComplexRational") -> "ComplexRational":
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError
        return ComplexRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_natural(self) -> bool:
        return self.im == 0 and self.re.denominator == 1 and self.re >= 0

    def lex_le(self, other: "ComplexRational") -> bool:
        if self.re != other.re:
            return self.re < other.re
        return self.im <= other.im

    def sort_key(self) -> tuple:
        return (self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator)


ZERO = ComplexRational.from_int(0)
ONE = ComplexRational.from_int(1)
IMAG_UNIT = ComplexRational(Fraction(0), Fraction(1))


# A monomial maps class ids to positive exponents; a polynomial maps
# monomials to nonzero coefficients.  Both are stored sorted.

Monomial = tuple[tuple[int, int], ...]
Polynomial = tuple[tuple[Monomial, ComplexRational], ...]

MONO_ONE: Monomial = ()


def _freeze(d: dict[Monomial, ComplexRational]) -> Polynomial:
    return tuple(sorted(((m, c) for m, c in d.items() if not c.is_zero())))


def p_const(c: ComplexRational) -> Polynomial:
    return _freeze({MONO_ONE: c})


P_ZERO: Polynomial = ()
P_ONE = p_const(ONE)


def p_atom(cid: int) -> Polynomial:
    return ((((cid, 1),), ONE),)


def p_add(a: Polynomial, b: Polynomial) -> Polynomial:
    d = dict(a)
    for m, c in b:
        d[m] = d[m] + c if m in d else c
    return _freeze(d)


def p_neg(a: Polynomial) -> Polynomial:
    return tuple((m, -c) for m, c in a)


def p_sub(a: Polynomial, b: Polynomial) -> Polynomial:
    return p_add(a, p_neg(b))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for cid, e in b:
        d[cid] = d.get(cid, 0) + e
    return tuple(sorted(d.items()))


def p_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    d: dict[Monomial, ComplexRational] = {}
    for ma, ca in a:
        for mb, cb in b:
            m = _mono_mul(ma, mb)
            c = ca * cb
            d[m] = d[m] + c if m in d else c
    return _freeze(d)


def p_scale(a: Polynomial, c: ComplexRational) -> Polynomial:
    if c.is_zero():
        return P_ZERO
    return _freeze({m: co * c for m, co in a})


def p_is_const(a: Polynomial) -> ComplexRational | None:
    if a == P_ZERO:
        return ZERO
    if len(a) == 1 and a[0][0] == MONO_ONE:
        return a[0][1]
    return None


def p_rename(a: Polynomial, rename) -> Polynomial:
    """Apply a class-id mapping (e.g. union-find canonicalization)."""
    d: dict[Monomial, ComplexRational] = {}
    for m, c in a:
        md: dict[int, int] = {}
        for cid, e in m:
            k = rename(cid)
            md[k] = md.get(k, 0) + e
        mm = tuple(sorted(md.items()))
        d[mm] = d[mm] + c if mm in d else c
    return _freeze(d)


def p_sort_key(a: Polynomial) -> tuple:
    return tuple((m, c.sort_key()) for m, c in a)
