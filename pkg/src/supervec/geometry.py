"""Two-chart supermanifolds over the projective line.

The model is fixed: chart 0 with coordinates (z, theta_1..theta_n), chart 1
with (w, eta_1..eta_n), glued over z != 0 by a transition pullback whose
reduced even part is exactly 1/z and whose coefficients are Laurent (poles
only at z = 0).  A second supported kind is the single-chart (0|1) point
with one odd coordinate, where there is no transition at all.

Closed-form morphism families (fractional-linear lifts, traceless-matrix
embeddings, nilpotent flows) are data-driven copies of the displayed
formulas for the three bundled families:

* ``line``     -- (1|1), transition eta = z^-k * theta
* ``split``    -- (1|2), transition eta_j = z^-k_j * theta_j
* ``nonsplit`` -- the (1|2) manifold with w-image 1/z + z^-3 theta_1 theta_2
"""

from __future__ import annotations

from .errors import (
    BadDeterminant,
    BadReducedMap,
    ChartMismatch,
    DegenerateOddPart,
    FamilyShapeMismatch,
    NotGlobal,
    NotLaurent,
    NotNilpotent,
    NotTraceless,
)
from .derivations import (
    SuperDerivation,
    odd_linear_matrix,
    pullback_invert,
)
from .grassmann import PullbackData, SuperFunction, compose
from .linalg import determinant
from .scalars import (
    GR_ZERO,
    GaussianRational,
    Polynomial,
    RationalFunction,
    mobius_coefficients,
)

CHART0 = "chart0"
CHART1 = "chart1"
POINT_CHART = "c01"

KIND_P1 = "p1"
KIND_C01 = "c01"


def _is_laurent(rf):
    """Poles only at z = 0: canonical denominator is a power of z."""
    den = rf.den
    if den.degree() <= 0:
        return True
    return list(den.coeffs.keys()) == [int(den.degree())]


class SuperManifoldData:
    """Validated two-chart transition data (or the single-chart point)."""

    __slots__ = ("name", "odd_dim", "kind", "transition")

    def __init__(self, name, odd_dim, kind, transition):
        self.name = name
        self.odd_dim = odd_dim
        self.kind = kind
        self.transition = transition

    @classmethod
    def from_transition(cls, name, odd_dim, transition):
        if transition.source_chart != CHART0 or transition.target_chart != CHART1:
            raise ChartMismatch("transition must map chart0 into chart1")
        if transition.odd_dim != odd_dim:
            raise ChartMismatch("transition odd dimension does not match")
        if transition.even_image.reduced_part() != RationalFunction.monomial(-1):
            raise BadReducedMap("reduced even transition must be exactly 1/z")
        for img in (transition.even_image, *transition.odd_images):
            for rf in img.terms.values():
                if not _is_laurent(rf):
                    raise NotLaurent("transition coefficients may only have poles at z = 0")
        mat = odd_linear_matrix(transition)
        if not determinant(mat, RationalFunction.zero(), RationalFunction.one()):
            raise DegenerateOddPart("degree-1 odd transition matrix is singular")
        return cls(name, odd_dim, KIND_P1, transition)

    @classmethod
    def point(cls, name="c01"):
        """The (0|1) single-chart supermanifold."""
        return cls(name, 1, KIND_C01, None)

    @property
    def chart0(self):
        return POINT_CHART if self.kind == KIND_C01 else CHART0

    @property
    def chart1(self):
        return POINT_CHART if self.kind == KIND_C01 else CHART1

    def gr(self):
        """Associated split model: keep only the degree-preserving transition part."""
        if self.kind == KIND_C01:
            return self
        truncated = PullbackData(
            CHART0,
            CHART1,
            self.transition.even_image.degree_component(0),
            [img.degree_component(1) for img in self.transition.odd_images],
        )
        if truncated == self.transition:
            return self
        return SuperManifoldData(self.name + "-gr", self.odd_dim, KIND_P1, truncated)

    @property
    def is_split(self):
        return self.kind == KIND_C01 or self.gr() is self

    def __eq__(self, other):
        if not isinstance(other, SuperManifoldData):
            return NotImplemented
        return (
            self.name == other.name
            and self.odd_dim == other.odd_dim
            and self.kind == other.kind
            and self.transition == other.transition
        )

    def __hash__(self):
        return hash((self.name, self.odd_dim, self.kind, self.transition))

    def __repr__(self):
        return "SuperManifoldData(%r, odd_dim=%d, kind=%r)" % (
            self.name,
            self.odd_dim,
            self.kind,
        )


def gr_manifold(manifold):
    return manifold.gr()


class GlobalVectorField:
    """A super vector field defined on the whole manifold.

    Stored as its restrictions to both charts; the constructor verifies the
    coefficients are polynomial and that the two restrictions agree across
    the transition on every coordinate.
    """

    __slots__ = ("manifold", "chart0_der", "chart1_der", "parity")

    def __init__(self, manifold, chart0_der, chart1_der, parity=None):
        if parity is None:
            parity = chart0_der.parity()
        if parity is None:
            raise NotGlobal("global fields must be parity-homogeneous")
        for der in (chart0_der, chart1_der):
            for coeff in (der.even_coeff, *der.odd_coeffs):
                for rf in coeff.terms.values():
                    if not rf.is_polynomial():
                        raise NotGlobal("chart restrictions must have polynomial coefficients")
        if manifold.kind == KIND_P1:
            chi = manifold.transition
            n = manifold.odd_dim
            coords = [SuperFunction.coordinate(CHART1, n)]
            coords += [SuperFunction.odd_var(CHART1, n, j) for j in range(n)]
            images = [chi.even_image, *chi.odd_images]
            for coord, image in zip(coords, images):
                if chi.apply(chart1_der.apply(coord)) != chart0_der.apply(image):
                    raise NotGlobal("chart restrictions disagree across the transition")
        self.manifold = manifold
        self.chart0_der = chart0_der
        self.chart1_der = chart1_der
        self.parity = parity

    def __eq__(self, other):
        if not isinstance(other, GlobalVectorField):
            return NotImplemented
        return (
            self.manifold == other.manifold
            and self.chart0_der == other.chart0_der
            and self.chart1_der == other.chart1_der
        )

    def __repr__(self):
        return "GlobalVectorField(%r, parity=%d)" % (self.manifold.name, self.parity)


def manifold_from_transition(name, odd_dim, transition):
    return SuperManifoldData.from_transition(name, odd_dim, transition)


# ---------------------------------------------------------------------------
# globality check


def _den_root(rf):
    """The unique root of a degree-<=1 denominator, or None."""
    den = rf.den
    if den.degree() <= 0:
        return None
    # canonical monic: z + c  ->  root -c
    return -den.coeffs.get(0, GR_ZERO)


def _coeffs_of(pullback):
    for img in (pullback.even_image, *pullback.odd_images):
        yield from img.terms.values()


def _holomorphic_at(pullback, point):
    return all(rf.pole_order_at(point) == 0 for rf in _coeffs_of(pullback))


def morphism_check_global(manifold, p):
    """Classify a chart-0 self-pullback as "global" or "chart0_only".

    The morphism is global when, around every point of the manifold, some
    chart representation of it has pole-free coefficients: chart 0 away from
    the reduced map's pole, the mixed representations at the pole and at
    infinity.  The chart-1 representation is obtained by conjugating with
    the transition (inverting it in closed form).
    """
    if manifold.kind == KIND_C01:
        if p.source_chart != POINT_CHART or p.target_chart != POINT_CHART:
            raise ChartMismatch("pullback must be a self-map of the point chart")
        if p.even_image != SuperFunction.coordinate(POINT_CHART, 1):
            return "chart0_only"
        coeff = p.odd_images[0].coefficient(1)
        return "global" if coeff and coeff.is_constant() else "chart0_only"
    if p.source_chart != CHART0 or p.target_chart != CHART0:
        raise ChartMismatch("pullback must be a chart-0 self-map")
    mu = p.even_image.reduced_part()
    if mobius_coefficients(mu) is None:
        return "chart0_only"
    chi = manifold.transition
    chi_inv = pullback_invert(chi)
    pole = _den_root(mu)
    # chart-0 coefficients may only blow up where the reduced map leaves chart 0
    for rf in _coeffs_of(p):
        den = rf.den
        if den.degree() > 0:
            if pole is None:
                return "chart0_only"
            root_mult = den.root_multiplicity(pole)
            if root_mult < den.degree():
                return "chart0_only"
    # where the reduced map hits infinity, the into-chart-1 representation must hold
    if pole is not None:
        into1 = compose(chi, p)
        if not _holomorphic_at(into1, pole):
            return "chart0_only"
    # behaviour at infinity: either the reduced map fixes it (conjugate view)
    # or sends it to a finite point (mixed view from chart 1)
    if mu.num.degree() > mu.den.degree():
        conj = compose(compose(chi, p), chi_inv)
        if not _holomorphic_at(conj, GR_ZERO):
            return "chart0_only"
    else:
        from1 = compose(p, chi_inv)
        if not _holomorphic_at(from1, GR_ZERO):
            return "chart0_only"
    return "global"


# ---------------------------------------------------------------------------
# closed-form families

FAMILY_LINE = "line"
FAMILY_SPLIT = "split"
FAMILY_NONSPLIT = "nonsplit"


def _as_matrix2(matrix):
    (a, b), (c, d) = matrix
    return (
        a if isinstance(a, GaussianRational) else GaussianRational(a),
        b if isinstance(b, GaussianRational) else GaussianRational(b),
        c if isinstance(c, GaussianRational) else GaussianRational(c),
        d if isinstance(d, GaussianRational) else GaussianRational(d),
    )


def _monomial_exponent(rf):
    """(coeff, exponent) when rf is c * z^m for integer m, else None."""
    num, den = rf.num, rf.den
    if len(num.coeffs) != 1 or len(den.coeffs) != 1:
        return None
    (ne, nc), (de, dc) = next(iter(num.coeffs.items())), next(iter(den.coeffs.items()))
    return nc / dc, ne - de


def _line_degree(manifold):
    """Bundle parameter k of a (1|1) manifold with transition eta = z^-k theta."""
    if manifold.kind != KIND_P1 or manifold.odd_dim != 1:
        raise FamilyShapeMismatch("family needs a (1|1) two-chart manifold")
    if manifold.transition.even_image.nilpotent_part():
        raise FamilyShapeMismatch("family needs a split transition")
    img = manifold.transition.odd_images[0]
    if list(img.terms.keys()) != [1]:
        raise FamilyShapeMismatch("odd transition must be a multiple of theta")
    mono = _monomial_exponent(img.coefficient(1))
    if mono is None or mono[0] != 1:
        raise FamilyShapeMismatch("odd transition must be exactly z^-k * theta")
    return -mono[1]


def _split_degrees(manifold):
    """Bundle parameters (k_1, k_2) of a split (1|2) manifold with diagonal transition."""
    if manifold.kind != KIND_P1 or manifold.odd_dim != 2:
        raise FamilyShapeMismatch("family needs a (1|2) two-chart manifold")
    if manifold.transition.even_image.nilpotent_part():
        raise FamilyShapeMismatch("family needs a split transition")
    ks = []
    for j, img in enumerate(manifold.transition.odd_images):
        if list(img.terms.keys()) != [1 << j]:
            raise FamilyShapeMismatch("odd transition must be diagonal")
        mono = _monomial_exponent(img.coefficient(1 << j))
        if mono is None or mono[0] != 1:
            raise FamilyShapeMismatch("odd transition must be exactly z^-k_j * theta_j")
        ks.append(-mono[1])
    return tuple(ks)


def nonsplit_transition():
    """The bundled non-split (1|2) transition data."""
    zm = RationalFunction.monomial
    even = SuperFunction(CHART0, 2, {0: zm(-1), 3: zm(-3)})
    odds = [
        SuperFunction(CHART0, 2, {1: zm(-2)}),
        SuperFunction(CHART0, 2, {2: zm(-2)}),
    ]
    return PullbackData(CHART0, CHART1, even, odds)


def _require_nonsplit(manifold):
    if manifold.kind != KIND_P1 or manifold.transition != nonsplit_transition():
        raise FamilyShapeMismatch("family needs the bundled non-split (1|2) manifold")


def _mobius_rf(a, b, c, d):
    """(c + d z) / (a + b z)."""
    num = Polynomial({0: c, 1: d})
    den = Polynomial({0: a, 1: b})
    return RationalFunction(num, den)


def _base_power(a, b, k):
    """(a + b z)^-k as a rational function, any integer k."""
    base = RationalFunction(Polynomial({0: a, 1: b}))
    return base ** (-k)


def mobius_lift(manifold, family, matrix, s=0):
    """Automorphism pullback lifting a unit-determinant 2x2 matrix.

    Pullbacks act on chart-0 coordinates by the displayed closed forms of
    the family; ``s`` is the extra scaling parameter of the ``line`` family
    (image of theta gains ``+ s * theta``).
    """
    a, b, c, d = _as_matrix2(matrix)
    if a * d - b * c != 1:
        raise BadDeterminant("lift requires determinant 1")
    if not isinstance(s, GaussianRational):
        s = GaussianRational(s)
    if family == FAMILY_LINE:
        k = _line_degree(manifold)
        even = SuperFunction.from_rf(CHART0, 1, _mobius_rf(a, b, c, d))
        odd = SuperFunction(CHART0, 1, {1: _base_power(a, b, k) + RationalFunction.constant(s)})
        return PullbackData(CHART0, CHART0, even, [odd])
    if s:
        raise FamilyShapeMismatch("parameter s applies to the line family only")
    if family == FAMILY_SPLIT:
        k1, k2 = _split_degrees(manifold)
        even = SuperFunction.from_rf(CHART0, 2, _mobius_rf(a, b, c, d))
        odds = [
            SuperFunction(CHART0, 2, {1: _base_power(a, b, k1)}),
            SuperFunction(CHART0, 2, {2: _base_power(a, b, k2)}),
        ]
        return PullbackData(CHART0, CHART0, even, odds)
    if family == FAMILY_NONSPLIT:
        _require_nonsplit(manifold)
        correction = _base_power(a, b, 3) * (-b) if b else RationalFunction.zero()
        even = SuperFunction(
            CHART0, 2, {0: _mobius_rf(a, b, c, d), 3: correction}
        )
        sq = _base_power(a, b, 2)
        odds = [
            SuperFunction(CHART0, 2, {1: sq}),
            SuperFunction(CHART0, 2, {2: sq}),
        ]
        return PullbackData(CHART0, CHART0, even, odds)
    raise FamilyShapeMismatch("unknown family %r" % (family,))


def sl2_embedding(manifold, family, matrix, scalar_part=0):
    """Chart-0 vector field attached to a traceless 2x2 matrix.

    For the ``line`` family an extra scalar parameter extends the image by
    the theta-scaling direction.  The map is linear and sends matrix
    commutators to super brackets.
    """
    a, b, c, d = _as_matrix2(matrix)
    if a + d != 0:
        raise NotTraceless("embedding requires a traceless matrix")
    if not isinstance(scalar_part, GaussianRational):
        scalar_part = GaussianRational(scalar_part)
    if family == FAMILY_LINE:
        k = _line_degree(manifold)
        even = SuperFunction.from_rf(
            CHART0, 1, RationalFunction(Polynomial({0: -b, 1: -2 * a, 2: c}))
        )
        odd = SuperFunction(
            CHART0,
            1,
            {1: RationalFunction(Polynomial({0: scalar_part - k * a, 1: k * c}))},
        )
        return SuperDerivation(CHART0, 1, even, [odd])
    if scalar_part:
        raise FamilyShapeMismatch("scalar part applies to the line family only")
    if family == FAMILY_NONSPLIT:
        _require_nonsplit(manifold)
        even = SuperFunction(
            CHART0,
            2,
            {
                0: RationalFunction(Polynomial({0: c, 1: -2 * a, 2: -b})),
                3: RationalFunction.constant(-b),
            },
        )
        scalefun = RationalFunction(Polynomial({0: -2 * a, 1: -2 * b}))
        odds = [
            SuperFunction(CHART0, 2, {1: scalefun}),
            SuperFunction(CHART0, 2, {2: scalefun}),
        ]
        return SuperDerivation(CHART0, 2, even, odds)
    raise FamilyShapeMismatch("unknown family %r" % (family,))


def nilpotent_flow(manifold, field, t):
    """Time-t flow pullback of a nilpotent even field on a chart of the manifold."""
    if field.chart not in (manifold.chart0, manifold.chart1):
        raise ChartMismatch("field does not live on a chart of the manifold")
    if field.odd_dim != manifold.odd_dim:
        raise ChartMismatch("field has the wrong odd dimension")
    if field.parity() != 0 or (field and field.filtration_level() < 2):
        raise NotNilpotent("flow requires an even field of filtration level >= 2")
    return field.exp_pullback(t)
