"""Super vector fields on a chart.

A superderivation is determined by its coefficients: one superfunction for
the even-coordinate direction and one per odd direction.  Odd-coordinate
differentiation uses the left-derivative sign convention (the sign is the
parity of the index prefix), matching :meth:`SuperFunction.d_odd`.

This module also factors automorphism pullbacks into a degree-preserving
part composed with the exponential of a nilpotent even derivation, and
inverts pullbacks whose reduced map is fractional linear.
"""

from __future__ import annotations

from math import factorial

from .errors import (
    ChartMismatch,
    MixedParity,
    NotInvertible,
    NotNilpotent,
    UnsupportedReducedMap,
)
from .grassmann import PullbackData, SuperFunction, compose, idx_sort_key, idx_weight
from .linalg import determinant, invert_matrix, solve_square
from .scalars import (
    Fraction,
    GaussianRational,
    RationalFunction,
    mobius_inverse,
)


class SuperDerivation:
    """Super vector field on a single chart."""

    __slots__ = ("chart", "odd_dim", "even_coeff", "odd_coeffs")

    def __init__(self, chart, odd_dim, even_coeff, odd_coeffs):
        odd_coeffs = tuple(odd_coeffs)
        if even_coeff.chart != chart or even_coeff.odd_dim != odd_dim:
            raise ChartMismatch("even coefficient on wrong chart")
        if len(odd_coeffs) != odd_dim:
            raise ValueError("expected %d odd coefficients" % odd_dim)
        for c in odd_coeffs:
            if c.chart != chart or c.odd_dim != odd_dim:
                raise ChartMismatch("odd coefficient on wrong chart")
        self.chart = chart
        self.odd_dim = odd_dim
        self.even_coeff = even_coeff
        self.odd_coeffs = odd_coeffs

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, chart, odd_dim):
        z = SuperFunction.zero(chart, odd_dim)
        return cls(chart, odd_dim, z, [z] * odd_dim)

    @classmethod
    def d_even(cls, chart, odd_dim):
        z = SuperFunction.zero(chart, odd_dim)
        return cls(chart, odd_dim, SuperFunction.one(chart, odd_dim), [z] * odd_dim)

    @classmethod
    def d_odd(cls, chart, odd_dim, j):
        z = SuperFunction.zero(chart, odd_dim)
        coeffs = [z] * odd_dim
        coeffs[j] = SuperFunction.one(chart, odd_dim)
        return cls(chart, odd_dim, z, coeffs)

    # -- structure ----------------------------------------------------------

    def is_zero(self):
        return self.even_coeff.is_zero() and all(c.is_zero() for c in self.odd_coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, SuperDerivation):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.odd_dim == other.odd_dim
            and self.even_coeff == other.even_coeff
            and self.odd_coeffs == other.odd_coeffs
        )

    def __hash__(self):
        return hash((self.chart, self.odd_dim, self.even_coeff, self.odd_coeffs))

    def parity(self):
        """0 (even), 1 (odd), or None for mixed; the zero field counts as even."""
        seen = set()
        p = self.even_coeff.parity()
        if self.even_coeff:
            if p is None:
                return None
            seen.add(p)
        for c in self.odd_coeffs:
            if c:
                p = c.parity()
                if p is None:
                    return None
                seen.add((p + 1) % 2)
        if not seen:
            return 0
        if len(seen) == 1:
            return seen.pop()
        return None

    def __add__(self, other):
        if not isinstance(other, SuperDerivation):
            return NotImplemented
        return SuperDerivation(
            self.chart,
            self.odd_dim,
            self.even_coeff + other.even_coeff,
            [a + b for a, b in zip(self.odd_coeffs, other.odd_coeffs)],
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SuperDerivation(
            self.chart, self.odd_dim, -self.even_coeff, [-c for c in self.odd_coeffs]
        )

    def scale(self, c):
        return SuperDerivation(
            self.chart,
            self.odd_dim,
            self.even_coeff.scale(c),
            [x.scale(c) for x in self.odd_coeffs],
        )

    # -- action -------------------------------------------------------------

    def apply(self, f):
        if f.chart != self.chart or f.odd_dim != self.odd_dim:
            raise ChartMismatch("function on %r, derivation on %r" % (f.chart, self.chart))
        out = SuperFunction.zero(self.chart, self.odd_dim)
        if self.even_coeff:
            d = f.d_even()
            if d:
                out = out + self.even_coeff * d
        for j, c in enumerate(self.odd_coeffs):
            if c:
                d = f.d_odd(j)
                if d:
                    out = out + c * d
        return out

    __call__ = apply

    def bracket(self, other):
        """Super bracket [X, Y] = X Y - (-1)^{|X||Y|} Y X, extracted on coordinates."""
        if other.chart != self.chart or other.odd_dim != self.odd_dim:
            raise ChartMismatch("bracket of derivations on different charts")
        px = self.parity()
        py = other.parity()
        if px is None or py is None:
            raise MixedParity("bracket requires parity-homogeneous derivations")
        sign = -1 if (px and py) else 1
        n = self.odd_dim
        zc = SuperFunction.coordinate(self.chart, n)
        even = self.apply(other.apply(zc)) - other.apply(self.apply(zc)).scale(sign)
        odds = []
        for j in range(n):
            tj = SuperFunction.odd_var(self.chart, n, j)
            odds.append(self.apply(other.apply(tj)) - other.apply(self.apply(tj)).scale(sign))
        return SuperDerivation(self.chart, n, even, odds)

    def filtration_level(self):
        """Largest k such that the field raises Grassmann degree by k.

        The even coefficient must have degree >= k and every odd coefficient
        degree >= k + 1; the zero derivation sits at the top level n + 1.
        """
        if self.parity() is None:
            raise MixedParity("filtration level requires parity-homogeneous derivations")
        top = self.odd_dim + 1
        level = self.even_coeff.min_weight() if self.even_coeff else top + 1
        for c in self.odd_coeffs:
            cur = (c.min_weight() - 1) if c else top + 1
            if cur < level:
                level = cur
        return min(level, top)

    def exp_pullback(self, scale=1):
        """Pullback of exp(scale * X) for a nilpotent even field X.

        Requires filtration level >= 2, which makes every coordinate series
        terminate after at most odd_dim // 2 + 1 terms.
        """
        if self.parity() != 0:
            raise NotNilpotent("exponential requires an even derivation")
        if self and self.filtration_level() < 2:
            raise NotNilpotent("exponential requires filtration level >= 2")
        if not isinstance(scale, GaussianRational):
            scale = GaussianRational(scale)
        n = self.odd_dim
        images = []
        coords = [SuperFunction.coordinate(self.chart, n)]
        coords += [SuperFunction.odd_var(self.chart, n, j) for j in range(n)]
        for u in coords:
            acc = u
            term = u
            k = 0
            while True:
                k += 1
                term = self.apply(term)
                if not term:
                    break
                factor = RationalFunction.constant(
                    GaussianRational(Fraction(1, factorial(k))) * scale**k
                )
                acc = acc + term.scale(factor)
                if k > n + 1:
                    raise NotNilpotent("exponential series did not terminate")
            images.append(acc)
        return PullbackData(self.chart, self.chart, images[0], images[1:])

    def __repr__(self):
        return "SuperDerivation(%r, even=%r, odd=%r)" % (
            self.chart,
            self.even_coeff,
            list(self.odd_coeffs),
        )


def bracket(x, y):
    return x.bracket(y)


class RothsteinParts:
    """Factorization of an automorphism pullback.

    ``degree_zero`` preserves Grassmann degree (reduced even image plus the
    linear part of the odd images); ``nilpotent_generator`` is an even
    derivation on the target chart raising degree by at least 2.  The
    original pullback is recovered by :func:`recombine`.
    """

    __slots__ = ("degree_zero", "nilpotent_generator")

    def __init__(self, degree_zero, nilpotent_generator):
        self.degree_zero = degree_zero
        self.nilpotent_generator = nilpotent_generator

    def __eq__(self, other):
        if not isinstance(other, RothsteinParts):
            return NotImplemented
        return (
            self.degree_zero == other.degree_zero
            and self.nilpotent_generator == other.nilpotent_generator
        )


def recombine(parts):
    """Pullback equal to (degree-zero part) following exp(generator)."""
    return compose(parts.nilpotent_generator.exp_pullback(1), parts.degree_zero)


def degree_zero_part(p):
    """Truncate a pullback to its Grassmann-degree-preserving part."""
    return PullbackData(
        p.source_chart,
        p.target_chart,
        p.even_image.degree_component(0),
        [img.degree_component(1) for img in p.odd_images],
    )


def odd_linear_matrix(p):
    """Matrix m[j][k] with image(theta_j) = sum_k m[j][k] * theta_k + higher terms."""
    n = p.odd_dim
    return [
        [p.odd_images[j].coefficient(1 << k) for k in range(n)] for j in range(n)
    ]


def _reduced_inverse(p):
    rho = p.even_image.reduced_part()
    inv = mobius_inverse(rho)
    if inv is None:
        raise UnsupportedReducedMap(
            "reduced map must be an invertible fractional-linear function"
        )
    return rho, inv


def rothstein_decompose(p):
    """Split a pullback into degree-preserving part and nilpotent generator.

    The generator lives on the target chart and is solved degree by degree;
    after each stage the residual in that degree is checked to vanish.  The
    odd linear part must be invertible over the rational-function field and
    the reduced even map must be non-constant.
    """
    n = p.odd_dim
    phi0 = degree_zero_part(p)
    rho = phi0.even_image.reduced_part()
    if not rho.derivative():
        raise NotInvertible("reduced even map has vanishing differential")
    mat = odd_linear_matrix(phi0)
    rf_zero, rf_one = RationalFunction.zero(), RationalFunction.one()
    if not determinant(mat, rf_zero, rf_one):
        raise NotInvertible("odd linear part is singular over the rational functions")
    target = p.target_chart
    gen = SuperDerivation.zero(target, n)
    if p == recombine(RothsteinParts(phi0, gen)):
        return RothsteinParts(phi0, gen)
    _, rho_inv = _reduced_inverse(p)
    for d in range(2, n + 1, 2):
        cur = recombine(RothsteinParts(phi0, gen))
        delta_even = (p.even_image - cur.even_image).degree_component(d)
        delta_odds = [
            (p.odd_images[j] - cur.odd_images[j]).degree_component(d + 1)
            for j in range(n)
        ]
        if not delta_even and not any(delta_odds):
            continue
        even_add = _solve_degree_slice(phi0, delta_even, d, rho_inv)
        odd_adds = [
            _solve_degree_slice(phi0, delta_odds[j], d + 1, rho_inv) for j in range(n)
        ]
        gen = gen + SuperDerivation(target, n, even_add, odd_adds)
        cur = recombine(RothsteinParts(phi0, gen))
        residual = p.even_image - cur.even_image
        assert all(idx_weight(i) > d for i in residual.terms)
        for j in range(n):
            residual = p.odd_images[j] - cur.odd_images[j]
            assert all(idx_weight(i) > d + 1 for i in residual.terms)
    parts = RothsteinParts(phi0, gen)
    assert recombine(parts) == p
    return parts


def _solve_degree_slice(phi0, delta, weight, rho_inv):
    """Find x of pure Grassmann degree ``weight`` on the target chart with
    phi0.apply(x) = delta."""
    n = phi0.odd_dim
    target = phi0.target_chart
    if not delta:
        return SuperFunction.zero(target, n)
    indices = [i for i in range(1 << n) if idx_weight(i) == weight]
    indices.sort(key=idx_sort_key)
    rf_zero, rf_one = RationalFunction.zero(), RationalFunction.one()
    # column nu: coefficients of phi0*(eta^nu) on the source chart
    columns = []
    for nu in indices:
        image = phi0.odd_product(nu)
        columns.append([image.coefficient(mu) for mu in indices])
    matrix = [[columns[c][r] for c in range(len(indices))] for r in range(len(indices))]
    rhs = [delta.coefficient(mu) for mu in indices]
    composed = solve_square(matrix, rhs, rf_zero, rf_one)
    terms = {}
    for nu, u in zip(indices, composed):
        if u:
            terms[nu] = u.compose(rho_inv)
    return SuperFunction(target, n, terms)


def invert_degree_zero(phi0):
    """Inverse pullback of a degree-preserving automorphism pullback."""
    n = phi0.odd_dim
    rho, rho_inv = _reduced_inverse(phi0)
    mat = odd_linear_matrix(phi0)
    composed = [[entry.compose(rho_inv) for entry in row] for row in mat]
    rf_zero, rf_one = RationalFunction.zero(), RationalFunction.one()
    inv = invert_matrix(composed, rf_zero, rf_one)
    source, target = phi0.source_chart, phi0.target_chart
    even = SuperFunction.from_rf(target, n, rho_inv)
    odds = []
    for k in range(n):
        terms = {}
        for j in range(n):
            if inv[k][j]:
                terms[1 << j] = inv[k][j]
        odds.append(SuperFunction(target, n, terms))
    return PullbackData(target, source, even, odds)


def pullback_invert(p):
    """Exact inverse of an automorphism pullback.

    Factors p through :func:`rothstein_decompose`; the inverse is the inverse
    of the degree-preserving part composed after exp(-generator).  Restricted
    to reduced maps with a closed-form inverse (fractional-linear, which
    includes 1/z).
    """
    parts = rothstein_decompose(p)
    phi0_inv = invert_degree_zero(parts.degree_zero)
    gen = parts.nilpotent_generator
    if not gen:
        return phi0_inv
    return compose(phi0_inv, (-gen).exp_pullback(1))
