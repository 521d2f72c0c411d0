"""Command-line interface.

Exit codes: 0 on success, 2 on input errors (expression or file syntax,
invalid transition data), 3 on math-domain errors (singular data,
unsaturated caps, non-global morphisms).  All diagnostics go to stderr;
reports are byte-deterministic for a given invocation.
"""

from __future__ import annotations

import argparse
import sys

from .derivations import SuperDerivation, pullback_invert, rothstein_decompose
from .errors import InputError, MathDomainError, OddCartan
from .expressions import (
    derivation_text,
    max_odd_index,
    parse_rational,
    parse_superfunction,
    scalar_text,
    superfunction_text,
)
from .files import (
    load_pullback,
    manifold_text,
    pullback_text,
    resolve_manifold,
)
from .geometry import CHART0
from .grassmann import SuperFunction, compose
from .liealg import (
    gr_comparison,
    hc_pair_report,
    jacobi_check,
    solve_global_fields,
    structure_constants,
    weight_decomposition,
)


def _vector_text(vec, labels):
    parts = []
    for c, label in zip(vec, labels):
        if c:
            parts.append("%s*%s" % (scalar_text(c), label))
    return " + ".join(parts) if parts else "0"


def _basis_labels(basis):
    return ["b%d" % i for i in range(len(basis.fields))]


def _emit(lines, out):
    out.write("\n".join(lines) + "\n")


def _manifold_header(manifold, machine):
    if machine:
        return ["name=%s" % manifold.name, "odd_dim=%d" % manifold.odd_dim, "kind=%s" % manifold.kind]
    return [
        "manifold: %s" % manifold.name,
        "odd_dim: %d" % manifold.odd_dim,
        "kind: %s" % manifold.kind,
    ]


def _basis_lines(basis, machine):
    lines = []
    labels = _basis_labels(basis)
    if machine:
        lines.append("cap=%d" % basis.cap_used)
        lines.append("clearing_exponent=%d" % basis.clearing_exponent)
        lines.append("dim_even=%d" % len(basis.even_basis))
        lines.append("dim_odd=%d" % len(basis.odd_basis))
        for i, field in enumerate(basis.fields):
            lines.append("basis.%d.parity=%d" % (i, field.parity))
            lines.append("basis.%d.chart0=%s" % (i, derivation_text(field.chart0_der)))
            lines.append("basis.%d.chart1=%s" % (i, derivation_text(field.chart1_der)))
        return lines
    lines.append("cap: %d (clearing exponent %d)" % (basis.cap_used, basis.clearing_exponent))
    lines.append("dim even: %d" % len(basis.even_basis))
    lines.append("dim odd: %d" % len(basis.odd_basis))
    lines.append("even basis:")
    for i, field in enumerate(basis.even_basis):
        lines.append("  %s = %s" % (labels[i], derivation_text(field.chart0_der)))
    lines.append("odd basis:")
    offset = len(basis.even_basis)
    for i, field in enumerate(basis.odd_basis):
        lines.append("  %s = %s" % (labels[offset + i], derivation_text(field.chart0_der)))
    return lines


def _bracket_lines(structure, machine):
    basis = structure.basis
    labels = _basis_labels(basis)
    m = len(basis.fields)
    lines = []
    for i in range(m):
        for j in range(i, m):
            vec = structure.table[(i, j)]
            if not any(vec):
                continue
            text = _vector_text(vec, labels)
            if machine:
                lines.append("bracket.%d.%d=%s" % (i, j, text))
            else:
                lines.append("  [%s,%s] = %s" % (labels[i], labels[j], text))
    return lines


def cmd_vec(args, out):
    manifold = resolve_manifold(args.manifold)
    basis = solve_global_fields(manifold, args.cap)
    lines = _manifold_header(manifold, args.machine) + _basis_lines(basis, args.machine)
    _emit(lines, out)
    return 0


def cmd_brackets(args, out):
    manifold = resolve_manifold(args.manifold)
    basis = solve_global_fields(manifold, args.cap)
    structure = structure_constants(basis)
    ok = jacobi_check(structure)
    lines = _manifold_header(manifold, args.machine) + _basis_lines(basis, args.machine)
    if args.machine:
        lines += _bracket_lines(structure, True)
        lines.append("jacobi=%s" % ("true" if ok else "false"))
    else:
        lines.append("brackets (nonzero, upper triangle):")
        lines += _bracket_lines(structure, False)
        lines.append("jacobi: %s" % ("pass" if ok else "FAIL"))
    _emit(lines, out)
    return 0


def cmd_gr(args, out):
    manifold = resolve_manifold(args.manifold)
    comparison = gr_comparison(manifold, args.cap)
    lines = []
    if args.machine:
        lines += _manifold_header(manifold, True)
        lines.append("dim_even=%d" % comparison.dims[0])
        lines.append("dim_odd=%d" % comparison.dims[1])
        lines.append("gr.dim_even=%d" % comparison.gr_dims[0])
        lines.append("gr.dim_odd=%d" % comparison.gr_dims[1])
        lines.append("split=%s" % ("true" if comparison.split else "false"))
        lines.append("gr.file=%s" % repr(manifold_text(comparison.gr)))
    else:
        lines.append(manifold_text(comparison.gr).rstrip("\n"))
        lines.append("")
        lines.append(
            "dims %s: even %d, odd %d" % (manifold.name, comparison.dims[0], comparison.dims[1])
        )
        lines.append(
            "dims %s: even %d, odd %d"
            % (comparison.gr.name, comparison.gr_dims[0], comparison.gr_dims[1])
        )
        lines.append("split: %s" % ("yes" if comparison.split else "no"))
        lines.append(
            "total %d <= %d: holds" % (sum(comparison.dims), sum(comparison.gr_dims))
        )
    _emit(lines, out)
    return 0


def cmd_weights(args, out):
    manifold = resolve_manifold(args.manifold)
    basis = solve_global_fields(manifold, args.cap)
    structure = structure_constants(basis)
    n_even = len(basis.even_basis)
    h = [0] * n_even
    if not 0 <= args.cartan < n_even:
        raise OddCartan("--cartan must index an even basis element (0..%d)" % (n_even - 1))
    h[args.cartan] = 1
    weights = weight_decomposition(structure, h)
    lines = _manifold_header(manifold, args.machine)
    if args.machine:
        lines.append("cartan=%d" % args.cartan)
        for value, mult in weights:
            lines.append("weight.%s=%d" % (scalar_text(value), mult))
    else:
        lines.append("adjoint weights of b%d on the odd part:" % args.cartan)
        for value, mult in weights:
            lines.append("  weight %s multiplicity %d" % (scalar_text(value), mult))
    _emit(lines, out)
    return 0


def cmd_check(args, out):
    manifold = resolve_manifold(args.manifold)
    if args.machine:
        _emit(["name=%s" % manifold.name, "valid=true"], out)
    else:
        _emit(
            [
                "ok: %s (odd_dim %d, kind %s)"
                % (manifold.name, manifold.odd_dim, manifold.kind)
            ],
            out,
        )
    return 0


def cmd_decompose(args, out):
    pullback = load_pullback(args.pullback)
    parts = rothstein_decompose(pullback)
    lines = [pullback_text(parts.degree_zero).rstrip("\n"), ""]
    gen = parts.nilpotent_generator
    if args.machine:
        lines = ["degree_zero.z=%s" % superfunction_text(parts.degree_zero.even_image)]
        for j, img in enumerate(parts.degree_zero.odd_images):
            lines.append("degree_zero.t%d=%s" % (j + 1, superfunction_text(img)))
        lines.append("generator=%s" % derivation_text(gen))
    else:
        lines.append("generator (target-chart coordinates): %s" % derivation_text(gen))
    _emit(lines, out)
    return 0


def cmd_invert(args, out):
    pullback = load_pullback(args.pullback)
    inverse = pullback_invert(pullback)
    out.write(pullback_text(inverse))
    return 0


def cmd_compose(args, out):
    outer = load_pullback(args.pullbacks[0])
    inner = load_pullback(args.pullbacks[1])
    out.write(pullback_text(compose(outer, inner)))
    return 0


def cmd_flow(args, out):
    odd_dim = args.odd_dim if args.odd_dim else max_odd_index(args.field)
    coeff = parse_superfunction(args.field, odd_dim, CHART0)
    field = SuperDerivation(
        CHART0, odd_dim, coeff, [SuperFunction.zero(CHART0, odd_dim)] * odd_dim
    )
    t = parse_rational(args.time)
    out.write(pullback_text(field.exp_pullback(t)))
    return 0


def cmd_report(args, out):
    manifold = resolve_manifold(args.manifold)
    report = hc_pair_report(manifold, args.cap)
    basis = report.basis
    lines = _manifold_header(manifold, args.machine)
    if args.machine:
        if manifold.kind != "c01":
            lines.append("transition.w=%s" % superfunction_text(manifold.transition.even_image))
            for j, img in enumerate(manifold.transition.odd_images):
                lines.append("transition.eta%d=%s" % (j + 1, superfunction_text(img)))
        lines += _basis_lines(basis, True)
        lines += _bracket_lines(report.structure, True)
        lines.append("jacobi=%s" % ("true" if report.jacobi else "false"))
        lines.append("odd_derived_dim=%d" % report.derived_dim)
        lines.append("kernel_dim=%d" % report.kernel_dim)
        lines.append("split_supergroup=%s" % ("true" if report.split_supergroup else "false"))
        lines.append("gr.dim_even=%d" % report.comparison.gr_dims[0])
        lines.append("gr.dim_odd=%d" % report.comparison.gr_dims[1])
        lines.append("gr.split=%s" % ("true" if report.comparison.split else "false"))
        lines.append(
            "gr.inequality=%s"
            % ("holds" if sum(report.comparison.dims) <= sum(report.comparison.gr_dims) else "violated")
        )
        lines.append(
            "conjugation_identity=%s" % ("true" if report.conjugation_identity_ok else "false")
        )
    else:
        if manifold.kind != "c01":
            lines.append("transition:")
            lines.append("  w = %s" % superfunction_text(manifold.transition.even_image))
            for j, img in enumerate(manifold.transition.odd_images):
                lines.append("  eta%d = %s" % (j + 1, superfunction_text(img)))
        lines += _basis_lines(basis, False)
        lines.append("brackets (nonzero, upper triangle):")
        lines += _bracket_lines(report.structure, False)
        lines.append("jacobi: %s" % ("pass" if report.jacobi else "FAIL"))
        lines.append("odd derived span dimension: %d" % report.derived_dim)
        lines.append("trivial-reduction kernel dimension: %d" % report.kernel_dim)
        lines.append("split supergroup: %s" % ("yes" if report.split_supergroup else "no"))
        lines.append(
            "gr dims: even %d vs %d, odd %d vs %d"
            % (
                report.comparison.dims[0],
                report.comparison.gr_dims[0],
                report.comparison.dims[1],
                report.comparison.gr_dims[1],
            )
        )
        lines.append(
            "gr inequality (total %d <= %d): %s"
            % (
                sum(report.comparison.dims),
                sum(report.comparison.gr_dims),
                "holds" if sum(report.comparison.dims) <= sum(report.comparison.gr_dims) else "VIOLATED",
            )
        )
        lines.append(
            "conjugation identity check: %s"
            % ("pass" if report.conjugation_identity_ok else "FAIL")
        )
    _emit(lines, out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="supervec",
        description="Exact super vector fields on (1|n) supermanifolds over the projective line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_manifold_command(name, func, help_text, cartan=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--manifold", required=True, help="manifold file path or bundled name")
        p.add_argument("--cap", type=int, default=None, help="override the degree cap")
        p.add_argument("--machine", action="store_true", help="line-oriented key=value output")
        if cartan:
            p.add_argument("--cartan", type=int, required=True, help="even basis index")
        p.set_defaults(func=func)
        return p

    add_manifold_command("vec", cmd_vec, "basis and dimensions of the global fields")
    add_manifold_command("brackets", cmd_brackets, "structure constants and Jacobi verdict")
    add_manifold_command("gr", cmd_gr, "split model file and dimension comparison")
    add_manifold_command("weights", cmd_weights, "adjoint eigenvalue table", cartan=True)
    add_manifold_command("check", cmd_check, "validate a manifold file")
    add_manifold_command("report", cmd_report, "full Harish-Chandra report")

    p = sub.add_parser("decompose", help="degree-zero part and nilpotent generator of a pullback")
    p.add_argument("--pullback", required=True, help="pullback file path")
    p.add_argument("--machine", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("invert", help="exact inverse of an automorphism pullback")
    p.add_argument("--pullback", required=True, help="pullback file path")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("compose", help="composition of two pullback files (first after second)")
    p.add_argument("pullbacks", nargs=2, metavar="PULLBACK", help="pullback file paths")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("flow", help="time-t flow pullback of a nilpotent even field")
    p.add_argument("--field", required=True, help="coefficient of d/dz (expression)")
    p.add_argument("--time", required=True, help="rational flow time")
    p.add_argument("--odd-dim", type=int, default=None, dest="odd_dim")
    p.set_defaults(func=cmd_flow)

    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args, out)
    except InputError as exc:
        err.write("error: %s: %s\n" % (exc.code, exc.message))
        return 2
    except MathDomainError as exc:
        err.write("error: %s: %s\n" % (exc.code, exc.message))
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
