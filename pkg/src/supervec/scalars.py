"""Exact scalars: Gaussian rationals, sparse polynomials, rational functions.

These are the coefficients of everything else in the toolkit.  All values are
immutable and normalized on construction, so structural equality is semantic
equality:

* ``GaussianRational`` stores real and imaginary parts as ``Fraction``
  (always in lowest terms with positive denominator).
* ``Polynomial`` is a sparse exponent -> coefficient map with no stored
  zeros; the zero polynomial has degree ``-inf``.
* ``RationalFunction`` keeps ``gcd(num, den) = 1`` with a monic denominator.

Laurent behaviour (powers of ``1/z``) is obtained by living inside
``RationalFunction`` with a monomial denominator.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf

from .errors import DivisionByZero, UndefinedComposition

NEG_INF = -inf

_ZERO_FRAC = Fraction(0)
_ONE_FRAC = Fraction(1)


class GaussianRational:
    """Element of Q(i) with exact component arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        other = _as_gaussian(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gaussian(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_gaussian(other)
        if other is None:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _as_gaussian(other)
        if other is None:
            return NotImplemented
        # fast path: purely real factors dominate in practice
        if not self.im and not other.im:
            return GaussianRational(self.re * other.re, _ZERO_FRAC)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gaussian(other)
        if other is None:
            return NotImplemented
        if not other:
            raise DivisionByZero("division by zero Gaussian rational")
        if not self.im and not other.im:
            return GaussianRational(self.re / other.re, _ZERO_FRAC)
        norm = other.re * other.re + other.im * other.im
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        other = _as_gaussian(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent):
        if exponent < 0:
            return (GR_ONE / self) ** (-exponent)
        out = GR_ONE
        base = self
        k = exponent
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def sort_key(self):
        """Total order key (lexicographic on components), for determinism only."""
        return (self.re, self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return "%s*i" % self.im
        return "%s%s%s*i" % (self.re, "+" if self.im > 0 else "-", abs(self.im))

    def __repr__(self):
        if not self.im:
            return "GaussianRational(%s)" % self.re
        return "GaussianRational(%s, %s)" % (self.re, self.im)


def _as_gaussian(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return None


def gaussian(re=0, im=0):
    """Convenience constructor accepting ints, Fractions or 'a/b' strings."""
    if isinstance(re, str):
        re = Fraction(re)
    if isinstance(im, str):
        im = Fraction(im)
    return GaussianRational(re, im)


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


class Polynomial:
    """Univariate polynomial over the Gaussian rationals, sparse form."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for exp, c in coeffs.items():
                if not isinstance(c, GaussianRational):
                    c = GaussianRational(c)
                if c:
                    clean[exp] = c
        self.coeffs = clean

    @classmethod
    def zero(cls):
        return _POLY_ZERO

    @classmethod
    def one(cls):
        return _POLY_ONE

    @classmethod
    def x(cls):
        return _POLY_X

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, exp, coeff=1):
        if exp < 0:
            raise ValueError("polynomial exponents are non-negative")
        return cls({exp: coeff})

    @classmethod
    def from_list(cls, coeffs):
        """coeffs[k] is the coefficient of x^k."""
        return cls({k: c for k, c in enumerate(coeffs)})

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def degree(self):
        return max(self.coeffs) if self.coeffs else NEG_INF

    def leading_coeff(self):
        if not self.coeffs:
            return GR_ZERO
        return self.coeffs[max(self.coeffs)]

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            s = out.get(exp, GR_ZERO) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return _raw_poly(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            s = out.get(exp, GR_ZERO) - c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return _raw_poly(out)

    def __neg__(self):
        return _raw_poly({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            return self.scale(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e, GR_ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return _raw_poly(out)

    __rmul__ = __mul__

    def scale(self, c):
        c = c if isinstance(c, GaussianRational) else GaussianRational(c)
        if not c:
            return _POLY_ZERO
        return _raw_poly({e: c0 * c for e, c0 in self.coeffs.items()})

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative polynomial power")
        out = _POLY_ONE
        base = self
        k = exponent
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        q = {}
        r = dict(self.coeffs)
        dlead = other.degree()
        dcoef = other.coeffs[dlead]
        while r:
            e = max(r)
            if e < dlead:
                break
            factor = r[e] / dcoef
            q[e - dlead] = factor
            for oe, oc in other.coeffs.items():
                te = e - dlead + oe
                s = r.get(te, GR_ZERO) - factor * oc
                if s:
                    r[te] = s
                else:
                    r.pop(te, None)
        return _raw_poly(q), _raw_poly(r)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self):
        if not self.coeffs:
            return self
        lead = self.leading_coeff()
        return _raw_poly({e: c / lead for e, c in self.coeffs.items()})

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            r = a % b
            a, b = b, r.monic()
        return a.monic()

    def derivative(self):
        return _raw_poly({e - 1: c * e for e, c in self.coeffs.items() if e > 0})

    def eval(self, point):
        point = point if isinstance(point, GaussianRational) else GaussianRational(point)
        acc = GR_ZERO
        for e, c in self.coeffs.items():
            acc = acc + c * point**e
        return acc

    def compose_poly(self, other):
        """Substitute another polynomial for the variable."""
        acc = _POLY_ZERO
        for e in sorted(self.coeffs, reverse=True):
            acc = acc + _raw_poly({0: self.coeffs[e]}) * other**e
        return acc

    def root_multiplicity(self, point):
        if self.is_zero():
            raise ValueError("every point is a root of the zero polynomial")
        linear = Polynomial({1: GR_ONE, 0: -_as_gaussian(point)})
        mult = 0
        p = self
        while True:
            q, r = divmod(p, linear)
            if r.is_zero():
                mult += 1
                p = q
            else:
                return mult

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            parts.append("%r*x^%d" % (self.coeffs[e], e))
        return "Polynomial(%s)" % " + ".join(parts)


def _raw_poly(coeffs):
    p = Polynomial.__new__(Polynomial)
    p.coeffs = coeffs
    return p


_POLY_ZERO = _raw_poly({})
_POLY_ONE = _raw_poly({0: GR_ONE})
_POLY_X = _raw_poly({1: GR_ONE})


class RationalFunction:
    """Quotient of polynomials in canonical form (reduced, monic denominator)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num)
        if den is None:
            den = _POLY_ONE
        elif not isinstance(den, Polynomial):
            den = Polynomial.constant(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            self.num = _POLY_ZERO
            self.den = _POLY_ONE
            return
        g = num.gcd(den)
        if g.degree() > 0:
            num = num // g
            den = den // g
        lead = den.leading_coeff()
        if not (lead == 1):
            num = num.scale(GR_ONE / lead)
            den = den.scale(GR_ONE / lead)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls):
        return _RF_ZERO

    @classmethod
    def one(cls):
        return _RF_ONE

    @classmethod
    def z(cls):
        return _RF_Z

    @classmethod
    def constant(cls, c):
        return cls(Polynomial.constant(c))

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    @classmethod
    def monomial(cls, exp, coeff=1):
        """c * z^exp for any integer exp (negative exponents give poles at 0)."""
        if exp >= 0:
            return cls(Polynomial.monomial(exp, coeff))
        return cls(Polynomial.constant(coeff), Polynomial.monomial(-exp))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self):
        return self.num == _POLY_ONE and self.den == _POLY_ONE

    def is_polynomial(self):
        return self.den.degree() == 0

    def is_constant(self):
        return self.num.degree() <= 0 and self.den.degree() == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeffs.get(0, GR_ZERO)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __rsub__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        out = RationalFunction.__new__(RationalFunction)
        out.num = -self.num
        out.den = self.den
        return out

    def __mul__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent):
        if exponent < 0:
            if self.is_zero():
                raise DivisionByZero("negative power of zero")
            return RationalFunction(self.den**-exponent, self.num**-exponent)
        return RationalFunction(self.num**exponent, self.den**exponent)

    def derivative(self):
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def compose(self, inner):
        """Substitute ``inner`` (a rational function) for the variable."""
        num = _eval_poly_at_rf(self.num, inner)
        den = _eval_poly_at_rf(self.den, inner)
        if den.is_zero():
            raise UndefinedComposition("substitution lands in a pole")
        return num / den

    def eval(self, point):
        d = self.den.eval(point)
        if not d:
            raise DivisionByZero("evaluation at a pole")
        return self.num.eval(point) / d

    def pole_order_at(self, point):
        den_mult = self.den.root_multiplicity(point)
        if self.num.is_zero():
            return 0
        num_mult = self.num.root_multiplicity(point)
        return max(0, den_mult - num_mult)

    def pole_order_at_infinity(self):
        if self.num.is_zero():
            return 0
        return max(0, int(self.num.degree()) - int(self.den.degree()))

    def __repr__(self):
        if self.den == _POLY_ONE:
            return "RationalFunction(%r)" % self.num
        return "RationalFunction(%r / %r)" % (self.num, self.den)


def _as_rf(value):
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, (GaussianRational, int, Fraction)):
        return RationalFunction.constant(value)
    if isinstance(value, Polynomial):
        return RationalFunction(value)
    return None


def _eval_poly_at_rf(poly, inner):
    acc = _RF_ZERO
    if poly.is_zero():
        return acc
    top = int(poly.degree())
    # Horner evaluation keeps intermediate degrees small
    for e in range(top, -1, -1):
        acc = acc * inner
        c = poly.coeffs.get(e)
        if c is not None:
            acc = acc + RationalFunction.constant(c)
    return acc


_RF_ZERO = RationalFunction(_POLY_ZERO)
_RF_ONE = RationalFunction(_POLY_ONE)
_RF_Z = RationalFunction(_POLY_X)


def mobius_coefficients(rf):
    """Return (alpha, beta, gamma, delta) with rf = (alpha*z+beta)/(gamma*z+delta),
    or None if rf is not an invertible fractional-linear map."""
    if rf.num.degree() > 1 or rf.den.degree() > 1:
        return None
    alpha = rf.num.coeffs.get(1, GR_ZERO)
    beta = rf.num.coeffs.get(0, GR_ZERO)
    gamma = rf.den.coeffs.get(1, GR_ZERO)
    delta = rf.den.coeffs.get(0, GR_ZERO)
    if not (alpha * delta - beta * gamma):
        return None
    return alpha, beta, gamma, delta


def mobius_inverse(rf):
    """Inverse of an invertible fractional-linear map, or None."""
    coeffs = mobius_coefficients(rf)
    if coeffs is None:
        return None
    alpha, beta, gamma, delta = coeffs
    num = Polynomial({1: delta, 0: -beta})
    den = Polynomial({1: -gamma, 0: alpha})
    return RationalFunction(num, den)
