"""Global super vector fields and their Lie-superalgebra structure.

The solver parametrizes unknown polynomial-coefficient derivations on both
charts up to a degree cap, imposes the transition-compatibility equations
coefficient-wise (clearing denominators by powers of z), and reads a basis
off the exact kernel.  A mandatory saturation re-solve at cap + 2 turns the
cap heuristic into a checked result.

On top of the basis: exact structure constants, the graded-Jacobi check,
adjoint matrices and weight decompositions, the span of odd-odd brackets,
the split-model comparison, and the conjugation action of global
automorphism pullbacks.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    CapNotSaturated,
    NotClosed,
    NotDiagonalizable,
    NotGlobal,
    NotInSpan,
    OddCartan,
)
from .derivations import SuperDerivation, pullback_invert
from .geometry import (
    CHART0,
    CHART1,
    KIND_C01,
    GlobalVectorField,
    morphism_check_global,
)
from .grassmann import PullbackData, SuperFunction, idx_sort_key, idx_weight
from .linalg import kernel_basis, mat_mul, rank, rref, solve_columns
from .scalars import (
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    Polynomial,
    RationalFunction,
)


class SuperalgebraBasis:
    """Ordered basis of the global fields, split by parity."""

    __slots__ = ("manifold", "even_basis", "odd_basis", "cap_used", "clearing_exponent")

    def __init__(self, manifold, even_basis, odd_basis, cap_used, clearing_exponent):
        self.manifold = manifold
        self.even_basis = list(even_basis)
        self.odd_basis = list(odd_basis)
        self.cap_used = cap_used
        self.clearing_exponent = clearing_exponent
        fields = self.fields
        if fields:
            matrix = _coefficient_matrix([f.chart0_der for f in fields])
            if rank(matrix) != len(fields):
                raise NotClosed("solver produced linearly dependent basis fields")

    @property
    def fields(self):
        return self.even_basis + self.odd_basis

    @property
    def dims(self):
        return (len(self.even_basis), len(self.odd_basis))

    def __len__(self):
        return len(self.even_basis) + len(self.odd_basis)


class StructureConstants:
    """Bracket table of a basis: (i, j) -> coefficient tuple of [b_i, b_j]."""

    __slots__ = ("basis", "table")

    def __init__(self, basis, table):
        self.basis = basis
        self.table = table

    def coefficients(self, i, j):
        return self.table[(i, j)]


def default_cap(manifold):
    """Heuristic degree cap: 2 plus the pole budget of the odd transition images.

    Each odd image contributes the largest pole order of its coefficients,
    counting poles both at z = 0 and at infinity (so positive-degree images
    of negative bundle degrees are budgeted too).
    """
    if manifold.kind == KIND_C01:
        return 0
    budget = 0
    for img in manifold.transition.odd_images:
        worst = 0
        for rf in img.terms.values():
            worst = max(
                worst,
                rf.pole_order_at(GR_ZERO),
                rf.pole_order_at_infinity(),
            )
        budget += worst
    return 2 + budget


def _indices_of_parity(n, parity):
    return [i for i in sorted(range(1 << n), key=idx_sort_key) if idx_weight(i) % 2 == parity]


def _point_basis(manifold):
    chart = manifold.chart0
    zero = SuperFunction.zero(chart, 1)
    xi_dxi = SuperDerivation(chart, 1, zero, [SuperFunction.odd_var(chart, 1, 0)])
    dxi = SuperDerivation(chart, 1, zero, [SuperFunction.one(chart, 1)])
    even = GlobalVectorField(manifold, xi_dxi, xi_dxi, 0)
    odd = GlobalVectorField(manifold, dxi, dxi, 1)
    return SuperalgebraBasis(manifold, [even], [odd], 0, 0)


def solve_global_fields(manifold, cap=None):
    """Exact basis of the global fields, with a saturation check at cap + 2."""
    if manifold.kind == KIND_C01:
        return _point_basis(manifold)
    if cap is None:
        cap = default_cap(manifold)
    evens, n_even = _solve_parity(manifold, cap, 0)
    odds, n_odd = _solve_parity(manifold, cap, 1)
    evens2, _ = _solve_parity(manifold, cap + 2, 0)
    odds2, _ = _solve_parity(manifold, cap + 2, 1)
    if (len(evens), len(odds)) != (len(evens2), len(odds2)):
        raise CapNotSaturated(cap, (len(evens), len(odds)), (len(evens2), len(odds2)))
    return SuperalgebraBasis(manifold, evens, odds, cap, max(n_even, n_odd))


def _solve_parity(manifold, cap, parity):
    """Kernel of the compatibility equations for one parity of unknown fields."""
    n = manifold.odd_dim
    chi = manifold.transition
    same = _indices_of_parity(n, parity)
    flip = _indices_of_parity(n, (parity + 1) % 2)

    # unknown layout: (chart, component, multi-index, z-power); component -1
    # is the even-direction coefficient, j >= 0 the odd directions
    columns = []
    for chart in (0, 1):
        for comp in [-1] + list(range(n)):
            for nu in (same if comp == -1 else flip):
                for e in range(cap + 1):
                    columns.append((chart, comp, nu, e))
    col_index = {key: c for c, key in enumerate(columns)}

    # chart-1 monomial images under the transition
    w_powers = [SuperFunction.one(CHART0, n)]
    for _ in range(cap):
        w_powers.append(w_powers[-1] * chi.even_image)
    odd_products = {nu: chi.odd_product(nu) for nu in set(same) | set(flip)}

    coords = [chi.even_image] + list(chi.odd_images)
    d_even = [img.d_even() for img in coords]
    d_odd = [[img.d_odd(j) for j in range(n)] for img in coords]

    # rows[(eq, mu)] maps column -> Laurent coefficient
    rows = {}

    def put(eq, contribution, col):
        for mu, rf in contribution.terms.items():
            rows.setdefault((eq, mu), {}).setdefault(col, RationalFunction.zero())
            rows[(eq, mu)][col] = rows[(eq, mu)][col] + rf

    for (chart, comp, nu, e), col in col_index.items():
        if chart == 1:
            image = w_powers[e] * odd_products[nu]
            eq = 0 if comp == -1 else comp + 1
            put(eq, image, col)
        else:
            mono = SuperFunction.monomial(
                CHART0, n, nu, RationalFunction.monomial(e)
            )
            for eq in range(n + 1):
                target = d_even[eq] if comp == -1 else d_odd[eq][comp]
                if target:
                    put(eq, -(mono * target), col)

    matrix = []
    clearing = 0
    for eq in range(n + 1):
        for mu in sorted({m for (e, m) in rows if e == eq}, key=idx_sort_key):
            entries = rows[(eq, mu)]
            shift = 0
            top = 0
            for rf in entries.values():
                if rf:
                    # transition data is Laurent, so every denominator here
                    # is a plain power of z and clearing by z^N is exact
                    assert len(rf.den.coeffs) == 1
                    shift = max(shift, int(rf.den.degree()))
                    top = max(top, int(rf.num.degree()) if rf.num else 0)
            clearing = max(clearing, shift)
            width = shift + top + 1
            power_rows = [[GR_ZERO] * len(columns) for _ in range(width)]
            for col, rf in entries.items():
                if not rf:
                    continue
                offset = shift - int(rf.den.degree())
                for exp, c in rf.num.coeffs.items():
                    power_rows[exp + offset][col] = c
            matrix.extend(r for r in power_rows if any(r))

    kern = kernel_basis(matrix, len(columns))
    fields = []
    for vec in kern:
        ders = []
        for chart_id, chart_no in ((CHART0, 0), (CHART1, 1)):
            even_terms = {}
            odd_terms = [dict() for _ in range(n)]
            for (chart, comp, nu, e), c in zip(columns, vec):
                if chart != chart_no or not c:
                    continue
                bucket = even_terms if comp == -1 else odd_terms[comp]
                poly = bucket.setdefault(nu, {})
                poly[e] = c
            even = SuperFunction(
                chart_id,
                n,
                {nu: RationalFunction(Polynomial(p)) for nu, p in even_terms.items()},
            )
            odds = [
                SuperFunction(
                    chart_id,
                    n,
                    {nu: RationalFunction(Polynomial(p)) for nu, p in terms.items()},
                )
                for terms in odd_terms
            ]
            ders.append(SuperDerivation(chart_id, n, even, odds))
        fields.append((vec, GlobalVectorField(manifold, ders[0], ders[1], parity)))

    def sort_key(item):
        vec, field = item
        even_coeff = field.chart0_der.even_coeff
        top_weight = max((idx_weight(i) for i in even_coeff.terms), default=0)
        return (top_weight, tuple(c.sort_key() for c in vec))

    fields.sort(key=sort_key)
    return [field for _, field in fields], clearing


# ---------------------------------------------------------------------------
# expansion of chart-0 derivations in a basis


def _derivation_slots(ders):
    slots = set()
    for der in ders:
        for comp, coeff in [(-1, der.even_coeff)] + list(enumerate(der.odd_coeffs)):
            for nu, rf in coeff.terms.items():
                if not rf.is_polynomial():
                    return None
                for e in rf.num.coeffs:
                    slots.add((comp, nu, e))
    return sorted(slots)


def _derivation_vector(der, slots, slot_index):
    vec = [GR_ZERO] * len(slots)
    for comp, coeff in [(-1, der.even_coeff)] + list(enumerate(der.odd_coeffs)):
        for nu, rf in coeff.terms.items():
            lead = rf.den.leading_coeff()
            for e, c in rf.num.coeffs.items():
                vec[slot_index[(comp, nu, e)]] = c / lead
    return vec


def _coefficient_matrix(ders):
    slots = _derivation_slots(ders)
    slot_index = {s: i for i, s in enumerate(slots)}
    vectors = [_derivation_vector(d, slots, slot_index) for d in ders]
    return [[vectors[c][r] for c in range(len(ders))] for r in range(len(slots))]


def expand_in_basis(basis, ders):
    """Coefficients of chart-0 derivations in the basis; NotInSpan on failure."""
    base_ders = [f.chart0_der for f in basis.fields]
    slots = _derivation_slots(base_ders + list(ders))
    if slots is None:
        raise NotInSpan("derivation has non-polynomial coefficients")
    slot_index = {s: i for i, s in enumerate(slots)}
    base_vecs = [_derivation_vector(d, slots, slot_index) for d in base_ders]
    matrix = [
        [base_vecs[c][r] for c in range(len(base_ders))] for r in range(len(slots))
    ]
    targets = [_derivation_vector(d, slots, slot_index) for d in ders]
    solutions = solve_columns(matrix, targets)
    out = []
    for sol in solutions:
        if sol is None:
            raise NotInSpan("derivation does not lie in the span of the basis")
        out.append(tuple(sol))
    return out


def structure_constants(basis):
    """Exact bracket table over the basis; NotClosed if a bracket escapes."""
    fields = basis.fields
    m = len(fields)
    ders = [f.chart0_der for f in fields]
    pairs = [(i, j) for i in range(m) for j in range(m)]
    brackets = [ders[i].bracket(ders[j]) for i, j in pairs]
    try:
        coeffs = expand_in_basis(basis, brackets)
    except NotInSpan as exc:
        raise NotClosed("bracket left the span: %s" % exc.message)
    table = {}
    parities = [f.parity for f in fields]
    for (i, j), vec in zip(pairs, coeffs):
        expected = (parities[i] + parities[j]) % 2
        for k, c in enumerate(vec):
            if c and parities[k] != expected:
                raise NotClosed("bracket violates parity additivity")
        table[(i, j)] = vec
    return StructureConstants(basis, table)


def jacobi_check(structure):
    """Graded antisymmetry and the super Jacobi identity on the table."""
    basis = structure.basis
    fields = basis.fields
    m = len(fields)
    par = [f.parity for f in fields]
    table = structure.table

    def ksign(p, q):
        return -1 if (p and q) else 1

    for i in range(m):
        for j in range(m):
            lhs = table[(i, j)]
            rhs = table[(j, i)]
            s = ksign(par[i], par[j])
            if any(a + GaussianRational(s) * b for a, b in zip(lhs, rhs)):
                return False

    def bracket_vec(vec, j):
        out = [GR_ZERO] * m
        for l, c in enumerate(vec):
            if not c:
                continue
            row = table[(j, l)]
            for k, d in enumerate(row):
                if d:
                    out[k] = out[k] + c * d
        return out

    for i in range(m):
        for j in range(m):
            for k in range(m):
                total = [GR_ZERO] * m
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = table[(b, c)]
                    term = bracket_vec(inner, a)
                    s = ksign(par[a], par[c])
                    for t in range(m):
                        if term[t]:
                            total[t] = total[t] + GaussianRational(s) * term[t]
                if any(total):
                    return False
    return True


def adjoint_matrix(structure, i):
    """Matrix of [b_i, .] on the odd part, in the odd basis; i must be even."""
    basis = structure.basis
    n_even = len(basis.even_basis)
    if i >= n_even:
        raise OddCartan("adjoint matrices are taken for even basis elements")
    n_odd = len(basis.odd_basis)
    mat = [[GR_ZERO] * n_odd for _ in range(n_odd)]
    for s in range(n_odd):
        vec = structure.table[(i, n_even + s)]
        for k, c in enumerate(vec):
            if c and k < n_even:
                raise NotClosed("even-odd bracket has even components")
        for r in range(n_odd):
            mat[r][s] = vec[n_even + r]
    return mat


def _char_poly(matrix):
    """Characteristic polynomial via the trace recursion, monic in the variable."""
    d = len(matrix)
    coeffs = {d: GR_ONE}
    m = [[GR_ONE if i == j else GR_ZERO for j in range(d)] for i in range(d)]
    c = GR_ONE
    for k in range(1, d + 1):
        if k > 1:
            for i in range(d):
                m[i][i] = m[i][i] + c
            m = mat_mul(matrix, m, GR_ZERO)
        else:
            m = [row[:] for row in matrix]
        trace = GR_ZERO
        for i in range(d):
            trace = trace + m[i][i]
        c = -trace / GaussianRational(k)
        coeffs[d - k] = c
    return Polynomial(coeffs)


def _rational_roots(poly):
    """All roots with multiplicity for a rational-coefficient polynomial.

    Returns None when some root is irrational (or the coefficients are not
    all real rational).
    """
    if any(c.im for c in poly.coeffs.values()):
        return None
    roots = []
    p = poly
    while int(p.degree()) > 0:
        const_exp = min(p.coeffs)
        if const_exp > 0:
            for _ in range(const_exp):
                roots.append(GR_ZERO)
            p = Polynomial({e - const_exp: c for e, c in p.coeffs.items()})
            continue
        # clear denominators so the integer rational-root bound applies
        denom_lcm = 1
        for c in p.coeffs.values():
            d = c.re.denominator
            denom_lcm = denom_lcm * d // _gcd(denom_lcm, d)
        const = abs(int(p.coeffs[0].re * denom_lcm))
        lead = abs(int(p.coeffs[max(p.coeffs)].re * denom_lcm))
        found = None
        for pn in _divisors(const):
            for qn in _divisors(lead):
                for sign in (1, -1):
                    cand = GaussianRational(Fraction(sign * pn, qn))
                    if not p.eval(cand):
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        roots.append(found)
        linear = Polynomial({1: GR_ONE, 0: -found})
        p, rem = divmod(p, linear)
        assert rem.is_zero()
    return roots


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(value):
    if value == 0:
        return [1]
    out = []
    d = 1
    while d * d <= value:
        if value % d == 0:
            out.append(d)
            if d != value // d:
                out.append(value // d)
        d += 1
    return sorted(out)


def weight_decomposition(structure, h):
    """Exact eigenvalues (with multiplicity) of sum_i h_i ad(b_i) on the odd part.

    ``h`` is a coefficient vector over the even basis.  The operator must be
    diagonalizable with rational eigenvalues; otherwise NotDiagonalizable.
    """
    basis = structure.basis
    n_even = len(basis.even_basis)
    n_odd = len(basis.odd_basis)
    if len(h) != n_even:
        raise ValueError("expected %d even coefficients" % n_even)
    matrix = [[GR_ZERO] * n_odd for _ in range(n_odd)]
    for i, hi in enumerate(h):
        hi = hi if isinstance(hi, GaussianRational) else GaussianRational(hi)
        if not hi:
            continue
        ad = adjoint_matrix(structure, i)
        for r in range(n_odd):
            for s in range(n_odd):
                if ad[r][s]:
                    matrix[r][s] = matrix[r][s] + hi * ad[r][s]
    if n_odd == 0:
        return []
    charpoly = _char_poly(matrix)
    roots = _rational_roots(charpoly)
    if roots is None:
        raise NotDiagonalizable("characteristic polynomial has irrational roots")
    counts = {}
    for r in roots:
        counts[r] = counts.get(r, 0) + 1
    for value, mult in counts.items():
        shifted = [
            [matrix[r][s] - (value if r == s else GR_ZERO) for s in range(n_odd)]
            for r in range(n_odd)
        ]
        if rank(shifted) != n_odd - mult:
            raise NotDiagonalizable("eigenvalue %s is defective" % value)
    ordered = sorted(counts.items(), key=lambda kv: kv[0].sort_key(), reverse=True)
    return [(value, mult) for value, mult in ordered]


def odd_derived_span(structure):
    """Dimension and basis of span{[odd, odd]} inside the even part."""
    basis = structure.basis
    n_even = len(basis.even_basis)
    n_odd = len(basis.odd_basis)
    vectors = []
    for r in range(n_odd):
        for s in range(r, n_odd):
            vec = structure.table[(n_even + r, n_even + s)]
            vectors.append(list(vec[:n_even]))
    if not vectors:
        return 0, []
    reduced, pivots = rref(vectors)
    span = [tuple(reduced[r]) for r in range(len(pivots))]
    return len(pivots), span


def reduced_trivial_subspace(basis):
    """Even fields whose reduced vector field vanishes (trivial underlying map)."""
    n_even = len(basis.even_basis)
    if n_even == 0:
        return 0, []
    rows = {}
    for c, field in enumerate(basis.even_basis):
        red = field.chart0_der.even_coeff.reduced_part()
        lead = red.den.leading_coeff() if red else GR_ONE
        for e, coeff in red.num.coeffs.items():
            rows.setdefault(e, [GR_ZERO] * n_even)
            rows[e][c] = coeff / lead
    matrix = [rows[e] for e in sorted(rows)]
    kern = kernel_basis(matrix, n_even)
    return len(kern), [tuple(v) for v in kern]


def conjugation_action(basis, pullback):
    """Matrix of X -> (p^-1)* o X o p* over the basis; NotGlobal / NotInSpan."""
    manifold = basis.manifold
    if morphism_check_global(manifold, pullback) != "global":
        raise NotGlobal("conjugation requires a global automorphism pullback")
    inverse = pullback_invert(pullback)
    n = manifold.odd_dim
    chart = manifold.chart0
    coords = [SuperFunction.coordinate(chart, n)]
    coords += [SuperFunction.odd_var(chart, n, j) for j in range(n)]
    conjugated = []
    for field in basis.fields:
        der = field.chart0_der
        images = [inverse.apply(der.apply(pullback.apply(u))) for u in coords]
        conjugated.append(
            SuperDerivation(chart, n, images[0], images[1:])
        )
    columns = expand_in_basis(basis, conjugated)
    m = len(basis.fields)
    return [[columns[c][r] for c in range(m)] for r in range(m)]


# ---------------------------------------------------------------------------
# reports


class GrComparison:
    __slots__ = ("manifold", "gr", "dims", "gr_dims", "split", "cap", "gr_cap")

    def __init__(self, manifold, gr, dims, gr_dims, split, cap, gr_cap):
        self.manifold = manifold
        self.gr = gr
        self.dims = dims
        self.gr_dims = gr_dims
        self.split = split
        self.cap = cap
        self.gr_cap = gr_cap


def gr_comparison(manifold, cap=None):
    """Dimensions of the manifold versus its split model, with the inequality check."""
    basis = solve_global_fields(manifold, cap)
    split_model = manifold.gr()
    if split_model is manifold:
        gr_basis = basis
    else:
        gr_basis = solve_global_fields(split_model, cap)
    dims = basis.dims
    gr_dims = gr_basis.dims
    assert sum(dims) <= sum(gr_dims)
    split = manifold.is_split and dims == gr_dims
    return GrComparison(
        manifold, split_model, dims, gr_dims, split, basis.cap_used, gr_basis.cap_used
    )


class HCReport:
    """Bundled Harish-Chandra data of a manifold: the infinitesimal side plus
    finite witnesses."""

    __slots__ = (
        "manifold",
        "basis",
        "structure",
        "jacobi",
        "derived_dim",
        "derived_basis",
        "kernel_dim",
        "split_supergroup",
        "comparison",
        "conjugation_identity_ok",
    )

    def __init__(self, **kw):
        for key in self.__slots__:
            setattr(self, key, kw[key])


def hc_pair_report(manifold, cap=None):
    basis = solve_global_fields(manifold, cap)
    structure = structure_constants(basis)
    jacobi = jacobi_check(structure)
    derived_dim, derived_basis = odd_derived_span(structure)
    kernel_dim, _ = reduced_trivial_subspace(basis)
    comparison = gr_comparison(manifold, cap)
    identity = PullbackData.identity(manifold.chart0, manifold.odd_dim)
    conj = conjugation_action(basis, identity)
    m = len(basis.fields)
    identity_ok = all(
        conj[r][s] == (GR_ONE if r == s else GR_ZERO) for r in range(m) for s in range(m)
    )
    return HCReport(
        manifold=manifold,
        basis=basis,
        structure=structure,
        jacobi=jacobi,
        derived_dim=derived_dim,
        derived_basis=derived_basis,
        kernel_dim=kernel_dim,
        split_supergroup=(derived_dim == 0),
        comparison=comparison,
        conjugation_identity_ok=identity_ok,
    )
