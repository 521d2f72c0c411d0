"""Grassmann-valued functions on a chart and morphism pullbacks.

A chart of a (1|n) supermanifold has one even coordinate and n odd
(anticommuting) coordinates.  Functions are finite sums

    f = sum_nu  f_nu(z) theta^nu

indexed by odd multi-indices nu in {0,1}^n, with rational-function
coefficients.  Multi-indices are stored as int bitmasks (bit j set means the
ordered factor theta_{j+1} is present); ``theta^nu`` always means the product
in increasing index order, and all signs are transposition counts relative to
that order.

``PullbackData`` holds the coordinate images of a morphism between charts and
applies it to functions by finite Taylor expansion in the nilpotent part of
the even image (the series terminates because squares of the nilpotent part
eventually vanish).
"""

from __future__ import annotations

from math import factorial

from .errors import ChartMismatch, MixedParity
from .scalars import Fraction, GaussianRational, RationalFunction

# ---------------------------------------------------------------------------
# odd multi-indices as bitmasks


def idx_weight(idx):
    """Number of odd factors in theta^idx."""
    return idx.bit_count()


def idx_parity(idx):
    return idx.bit_count() & 1


def idx_positions(idx):
    """0-based positions of the factors, ascending."""
    out = []
    j = 0
    while idx:
        if idx & 1:
            out.append(j)
        idx >>= 1
        j += 1
    return out


def idx_mul(a, b):
    """Merge two ordered products: (sign, index), sign 0 when they collide."""
    if a & b:
        return 0, 0
    inversions = 0
    rest = b
    j = 0
    while rest:
        if rest & 1:
            inversions += (a >> (j + 1)).bit_count()
        rest >>= 1
        j += 1
    return (-1 if inversions & 1 else 1), a | b


def idx_sort_key(idx):
    return (idx.bit_count(), idx)


# ---------------------------------------------------------------------------


class SuperFunction:
    """Grassmann-valued function on a chart: multi-index -> coefficient map."""

    __slots__ = ("chart", "odd_dim", "terms")

    def __init__(self, chart, odd_dim, terms=None):
        clean = {}
        if terms:
            for idx in sorted(terms, key=idx_sort_key):
                if idx < 0 or idx >= (1 << odd_dim):
                    raise ValueError("multi-index out of range for odd dimension %d" % odd_dim)
                c = terms[idx]
                if not isinstance(c, RationalFunction):
                    c = RationalFunction.constant(c)
                if c:
                    clean[idx] = c
        self.chart = chart
        self.odd_dim = odd_dim
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, chart, odd_dim):
        return cls(chart, odd_dim)

    @classmethod
    def one(cls, chart, odd_dim):
        return cls(chart, odd_dim, {0: RationalFunction.one()})

    @classmethod
    def from_rf(cls, chart, odd_dim, rf):
        return cls(chart, odd_dim, {0: rf})

    @classmethod
    def constant(cls, chart, odd_dim, c):
        return cls(chart, odd_dim, {0: RationalFunction.constant(c)})

    @classmethod
    def coordinate(cls, chart, odd_dim):
        """The even coordinate of the chart."""
        return cls(chart, odd_dim, {0: RationalFunction.z()})

    @classmethod
    def odd_var(cls, chart, odd_dim, j):
        """The j-th odd coordinate (0-based)."""
        if not 0 <= j < odd_dim:
            raise ValueError("odd index out of range")
        return cls(chart, odd_dim, {1 << j: RationalFunction.one()})

    @classmethod
    def monomial(cls, chart, odd_dim, idx, rf):
        return cls(chart, odd_dim, {idx: rf})

    # -- structure ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, idx):
        return self.terms.get(idx, RationalFunction.zero())

    def reduced_part(self):
        """Coefficient of the empty multi-index, as a rational function."""
        return self.terms.get(0, RationalFunction.zero())

    def nilpotent_part(self):
        return self._select(lambda idx: idx != 0)

    def degree_component(self, k):
        """Terms of exact Grassmann degree k."""
        return self._select(lambda idx: idx.bit_count() == k)

    def ideal_part(self, k):
        """Terms of Grassmann degree at least k."""
        return self._select(lambda idx: idx.bit_count() >= k)

    def _select(self, keep):
        return _raw_sf(self.chart, self.odd_dim, {i: c for i, c in self.terms.items() if keep(i)})

    def min_weight(self):
        """Smallest Grassmann degree present; odd_dim + 1 for the zero function."""
        if not self.terms:
            return self.odd_dim + 1
        return min(idx.bit_count() for idx in self.terms)

    def is_pure_even(self):
        return all(idx.bit_count() % 2 == 0 for idx in self.terms)

    def is_pure_odd(self):
        return all(idx.bit_count() % 2 == 1 for idx in self.terms)

    def parity(self):
        """0 or 1 for parity-homogeneous values (zero counts as even), None if mixed."""
        if not self.terms:
            return 0
        parities = {idx.bit_count() & 1 for idx in self.terms}
        if len(parities) == 1:
            return parities.pop()
        return None

    def __eq__(self, other):
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.odd_dim == other.odd_dim
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.chart, self.odd_dim, frozenset(self.terms.items())))

    # -- algebra ------------------------------------------------------------

    def _check_mate(self, other):
        if self.chart != other.chart or self.odd_dim != other.odd_dim:
            raise ChartMismatch(
                "cannot combine functions on %r and %r" % (self.chart, other.chart)
            )

    def __add__(self, other):
        other = self._coerce(other)
        self._check_mate(other)
        out = dict(self.terms)
        for idx, c in other.terms.items():
            s = out.get(idx)
            s = c if s is None else s + c
            if s:
                out[idx] = s
            else:
                out.pop(idx, None)
        return _raw_sf(self.chart, self.odd_dim, _sorted_terms(out))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return _raw_sf(self.chart, self.odd_dim, {i: -c for i, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (RationalFunction, GaussianRational, int, Fraction)):
            return self.scale(other)
        self._check_mate(other)
        out = {}
        for ia, ca in self.terms.items():
            for ib, cb in other.terms.items():
                sign, idx = idx_mul(ia, ib)
                if sign == 0:
                    continue
                term = ca * cb
                if sign < 0:
                    term = -term
                s = out.get(idx)
                s = term if s is None else s + term
                if s:
                    out[idx] = s
                else:
                    out.pop(idx, None)
        return _raw_sf(self.chart, self.odd_dim, _sorted_terms(out))

    def __rmul__(self, other):
        # scalars commute with everything
        return self.scale(other)

    def scale(self, c):
        if not isinstance(c, RationalFunction):
            c = RationalFunction.constant(c)
        if not c:
            return _raw_sf(self.chart, self.odd_dim, {})
        return _raw_sf(self.chart, self.odd_dim, {i: c0 * c for i, c0 in self.terms.items()})

    def _coerce(self, value):
        if isinstance(value, SuperFunction):
            return value
        if isinstance(value, (RationalFunction, GaussianRational, int, Fraction)):
            return SuperFunction.from_rf(
                self.chart,
                self.odd_dim,
                value if isinstance(value, RationalFunction) else RationalFunction.constant(value),
            )
        raise TypeError("cannot combine SuperFunction with %r" % type(value))

    def d_even(self):
        """Derivative along the even coordinate, term by term."""
        return _raw_sf(
            self.chart,
            self.odd_dim,
            _sorted_terms({i: d for i, c in self.terms.items() if (d := c.derivative())}),
        )

    def d_odd(self, j):
        """Left derivative along the j-th odd coordinate (0-based)."""
        bit = 1 << j
        out = {}
        for idx, c in self.terms.items():
            if not idx & bit:
                continue
            before = (idx & (bit - 1)).bit_count()
            out[idx ^ bit] = -c if before & 1 else c
        return _raw_sf(self.chart, self.odd_dim, _sorted_terms(out))

    def __repr__(self):
        if not self.terms:
            return "SuperFunction(%r, 0)" % (self.chart,)
        bits = ", ".join("%d: %r" % (i, c) for i, c in self.terms.items())
        return "SuperFunction(%r, {%s})" % (self.chart, bits)


def _sorted_terms(terms):
    return {i: terms[i] for i in sorted(terms, key=idx_sort_key)}


def _raw_sf(chart, odd_dim, terms):
    sf = SuperFunction.__new__(SuperFunction)
    sf.chart = chart
    sf.odd_dim = odd_dim
    sf.terms = terms
    return sf


class PullbackData:
    """Coordinate images of a morphism between charts.

    A morphism from the ``source`` chart to the ``target`` chart pulls
    functions back the other way: ``apply`` takes a function written in
    target coordinates and returns its expression in source coordinates.
    The data are the images of the target coordinates: one pure-even image
    for the even coordinate and one pure-odd image per odd coordinate, all
    living on the source chart.
    """

    __slots__ = ("source_chart", "target_chart", "odd_dim", "even_image", "odd_images")

    def __init__(self, source_chart, target_chart, even_image, odd_images):
        odd_images = tuple(odd_images)
        n = even_image.odd_dim
        if len(odd_images) != n:
            raise ValueError("expected %d odd coordinate images" % n)
        if even_image.chart != source_chart:
            raise ChartMismatch("even image must live on the source chart")
        if not even_image.is_pure_even():
            raise MixedParity("even coordinate image must be pure even")
        for img in odd_images:
            if img.chart != source_chart or img.odd_dim != n:
                raise ChartMismatch("odd image on wrong chart")
            if not img.is_pure_odd():
                raise MixedParity("odd coordinate image must be pure odd")
        self.source_chart = source_chart
        self.target_chart = target_chart
        self.odd_dim = n
        self.even_image = even_image
        self.odd_images = odd_images

    @classmethod
    def identity(cls, chart, odd_dim):
        return cls(
            chart,
            chart,
            SuperFunction.coordinate(chart, odd_dim),
            [SuperFunction.odd_var(chart, odd_dim, j) for j in range(odd_dim)],
        )

    def is_identity(self):
        return self == PullbackData.identity(self.source_chart, self.odd_dim) and (
            self.source_chart == self.target_chart
        )

    def __eq__(self, other):
        if not isinstance(other, PullbackData):
            return NotImplemented
        return (
            self.source_chart == other.source_chart
            and self.target_chart == other.target_chart
            and self.even_image == other.even_image
            and self.odd_images == other.odd_images
        )

    def __hash__(self):
        return hash(
            (self.source_chart, self.target_chart, self.even_image, self.odd_images)
        )

    def odd_product(self, idx):
        """Image of theta^idx: ordered product of the odd coordinate images."""
        out = SuperFunction.one(self.source_chart, self.odd_dim)
        for j in idx_positions(idx):
            out = out * self.odd_images[j]
            if not out:
                break
        return out

    def apply(self, f):
        """Pull a function on the target chart back to the source chart.

        Each coefficient is Taylor-expanded around the reduced part of the
        even image; the expansion in the nilpotent part is finite.
        """
        if f.chart != self.target_chart or f.odd_dim != self.odd_dim:
            raise ChartMismatch("function lives on %r, pullback expects %r" % (f.chart, self.target_chart))
        g_red = self.even_image.reduced_part()
        g_nil = self.even_image.nilpotent_part()
        nil_powers = [SuperFunction.one(self.source_chart, self.odd_dim)]
        while nil_powers[-1] and len(nil_powers) <= self.odd_dim // 2 + 1:
            nxt = nil_powers[-1] * g_nil
            if not nxt:
                break
            nil_powers.append(nxt)
        out = SuperFunction.zero(self.source_chart, self.odd_dim)
        for idx, coeff in f.terms.items():
            expanded = SuperFunction.zero(self.source_chart, self.odd_dim)
            deriv = coeff
            for k, nil_k in enumerate(nil_powers):
                if k > 0:
                    deriv = deriv.derivative()
                    if not deriv:
                        break
                composed = deriv.compose(g_red)
                if k > 0:
                    composed = composed * RationalFunction.constant(Fraction(1, factorial(k)))
                if composed:
                    expanded = expanded + nil_k.scale(composed)
            if idx:
                expanded = expanded * self.odd_product(idx)
            out = out + expanded
        return out

    def after(self, inner):
        """Pullback of the composed morphism self o inner."""
        return compose(self, inner)

    def __repr__(self):
        return "PullbackData(%r -> %r)" % (self.source_chart, self.target_chart)


def compose(outer, inner):
    """Pullback of the morphism composition ``outer o inner``.

    ``inner`` maps its source chart into ``outer``'s source chart, so the
    composed pullback sends target-chart functions through ``outer``'s
    images and then substitutes via ``inner``.
    """
    if outer.source_chart != inner.target_chart or outer.odd_dim != inner.odd_dim:
        raise ChartMismatch(
            "cannot compose: outer source %r != inner target %r"
            % (outer.source_chart, inner.target_chart)
        )
    return PullbackData(
        inner.source_chart,
        outer.target_chart,
        inner.apply(outer.even_image),
        [inner.apply(img) for img in outer.odd_images],
    )
