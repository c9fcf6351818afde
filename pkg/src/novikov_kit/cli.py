"""Command-line front end: ``novikov-kit <subcommand> ...``.

Exit status: 0 on success, 1 on domain errors (support violations, no
rational form under --require-rational), 2 on I/O and parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import serialize as ser
from .complex import (
    ConeCertificate,
    builtin_example_s3,
    boundary_matrix,
    cone_support_check,
    incidence_series,
    verify_d_squared,
)
from .cones import (
    BoundedIntersection,
    cone_contains,
    cone_intersection_cover,
    growth_transfer_constants,
    integral_hull,
)
from .group_ring import GradingForm, LaurentElement, format_element
from .novikov_series import (
    geometric_series,
    growth_fit,
    growth_profile,
    level_sums,
    theoretical_growth_bound,
    type_L_eval,
)
from .rationality import closed_form_type_L, recognize, theta_polynomial


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _int_vector(text: str) -> tuple:
    try:
        v = json.loads(text)
    except json.JSONDecodeError:
        raise argparse.ArgumentTypeError(f"expected a JSON integer list, got {text!r}")
    if not isinstance(v, list) or not v or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise argparse.ArgumentTypeError(f"expected a nonempty JSON integer list, got {text!r}")
    return tuple(v)


def _form(text: str) -> GradingForm:
    try:
        v = json.loads(text)
        return ser.form_from_json(v, "form")
    except (json.JSONDecodeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected a JSON list of rationals, got {text!r}")


def _vectors(text: str) -> list:
    try:
        v = json.loads(text)
        return [[ser.rational_from_json(x) for x in row] for row in v]
    except (json.JSONDecodeError, ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"expected a JSON list of rational vectors, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="novikov-kit", description="Exact computation in Novikov completions of Z[Z^m].")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--float-digits", type=int, default=12, help="digits for floating report columns")
    p.add_argument("--output", "-o", help="write the report to this file")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("series", help="geometric series of a matrix, or a type-(L) datum, above a cutoff")
    s.add_argument("path")
    s.add_argument("--cutoff", type=_rational, required=True)
    s.add_argument("--xi", type=_form, help="grading form when the matrix file has none")

    g = sub.add_parser("growth", help="N_c profile and exponential-growth constants")
    g.add_argument("path")
    g.add_argument("--depth", type=int, required=True)
    g.add_argument("--xi", type=_form)
    g.add_argument("--tail-from", type=_rational, help="only use log-ratios at grades <= this")

    r = sub.add_parser("rational", help="rational closed forms")
    rsub = r.add_subparsers(dest="action", required=True, parser_class=_Parser)
    rc = rsub.add_parser("closed-form")
    rc.add_argument("path")
    rr = rsub.add_parser("recognize")
    rr.add_argument("path")
    rr.add_argument("--theta", type=_int_vector, required=True)
    rr.add_argument("--max-deg", type=int, required=True)
    rr.add_argument("--depth", type=int, help="use coefficients down to grade -depth only")
    rr.add_argument("--require-rational", action="store_true")

    c = sub.add_parser("cone", help="integral cones")
    csub = c.add_subparsers(dest="action", required=True, parser_class=_Parser)
    cc = csub.add_parser("contains")
    cc.add_argument("path")
    cc.add_argument("--point", type=_int_vector, required=True)
    ch = csub.add_parser("hull")
    ch.add_argument("--generators", type=_vectors, required=True)
    ch.add_argument("--eta1", type=_form, required=True)
    ch.add_argument("--eta2", type=_form, required=True)
    cv = csub.add_parser("cover")
    cv.add_argument("cone1")
    cv.add_argument("cone2")
    cv.add_argument("--a1", type=_int_vector, required=True)
    cv.add_argument("--a2", type=_int_vector, required=True)
    cv.add_argument("--xi", type=_form, required=True)
    cv.add_argument("--eta", type=_form, required=True)
    ct = csub.add_parser("transfer")
    ct.add_argument("path")
    ct.add_argument("--xi", type=_form, required=True)
    ct.add_argument("--eta", type=_form, required=True)
    ct.add_argument("--shift", type=_int_vector, required=True)

    x = sub.add_parser("complex", help="Novikov complexes from boundary data")
    xsub = x.add_subparsers(dest="action", required=True, parser_class=_Parser)
    xi_ = xsub.add_parser("incidence")
    xi_.add_argument("path")
    xi_.add_argument("--from", dest="source", required=True)
    xi_.add_argument("--to", dest="target", required=True)
    xi_.add_argument("--cutoff", type=_rational, required=True)
    xd = xsub.add_parser("d-squared")
    xd.add_argument("path")
    xd.add_argument("--cutoff", type=_rational, required=True)
    xc = xsub.add_parser("cone-check")
    xc.add_argument("path")
    xc.add_argument("--cone", required=True, help="cone file; an optional 'shift' key gives b")
    xc.add_argument("--cutoff", type=_rational, required=True)

    e = sub.add_parser("example-s3", help="the built-in two-critical-point example")
    e.add_argument("--depth", type=int, default=25)
    return p


# -- handlers ----------------------------------------------------------------


def _load_matrix_or_datum(path: str, xi_flag: GradingForm | None):
    obj = ser.load_json(path)
    if isinstance(obj, dict) and "A" in obj:
        return "datum", ser.datum_from_json(obj, xi_flag, where=path)
    rank = ser.matrix_rank(obj, path)
    if isinstance(obj, dict) and "xi" in obj:
        xi = ser.form_from_json(obj["xi"], f"{path}.xi")
    elif xi_flag is not None:
        xi = xi_flag
    elif rank == 1:
        xi = GradingForm((1,))
    else:
        raise ser.FormatError(f"{path}: no grading form; pass --xi")
    if rank is None:
        rank = xi.rank
    return "matrix", (ser.matrix_from_json(obj, rank, path), xi)


def _fmt(x: float, digits: int) -> str:
    return f"{x:.{digits}g}"


def cmd_series(args) -> tuple:
    kind, val = _load_matrix_or_datum(args.path, args.xi)
    if kind == "datum":
        res = type_L_eval(val, args.cutoff)
        if args.json:
            return 0, ser.dumps(ser.truncation_to_json(res))
        return 0, f"valid above grade {res.cutoff}\nkappa = {format_element(res.terms)}\n"
    A, xi = val
    u = geometric_series(A, xi, args.cutoff)
    if args.json:
        return 0, ser.dumps({"cutoff": str(args.cutoff), "entries": [[ser.truncation_to_json(x) for x in row] for row in u]})
    lines = [f"valid above grade {args.cutoff}"]
    for i, row in enumerate(u):
        for j, x in enumerate(row):
            lines.append(f"u[{i}][{j}] = {format_element(x.terms)}")
    return 0, "\n".join(lines) + "\n"


def cmd_growth(args) -> tuple:
    kind, val = _load_matrix_or_datum(args.path, args.xi)
    depth = args.depth
    series = []
    bound = None
    if kind == "datum":
        series.append(("kappa", type_L_eval(val, -depth)))
        xi = val.xi
    else:
        A, xi = val
        u = geometric_series(A, xi, -depth)
        for i, row in enumerate(u):
            for j, x in enumerate(row):
                series.append((f"u[{i}][{j}]", x))
        if xi.is_integral and all(all(xi(g) == -1 for g in x.support()) for r in A for x in r):
            bound = theoretical_growth_bound(A)
    report = []
    out_json = []
    d = args.float_digits
    for name, x in series:
        prof = growth_profile(x, depth)
        fit = growth_fit(prof, args.tail_from)
        entry = {"name": name, "profile": [[c, n] for c, n in prof], "A": fit.A, "B": fit.B}
        report.append(f"{name}: A = {_fmt(fit.A, d)}, B = {_fmt(fit.B, d)}")
        report.append(f"  {'c':>6} {'N_c':>20} {'A*exp(-cB)':>22}")
        for c, n in prof:
            report.append(f"  {c:>6} {n:>20} {_fmt(fit.bound(c), d):>22}")
        if bound is not None:
            sums = level_sums(x.terms, xi)
            ok = all(sums.get(-k, 0) <= bound(k) for k in range(depth + 1))
            entry["level_bound_ok"] = ok
            report.append(f"  level sums <= (size*||A||)^k for k <= {depth}: {'yes' if ok else 'NO'}")
        out_json.append(entry)
    if args.json:
        return 0, ser.dumps(out_json)
    return 0, "\n".join(report) + "\n"


def _theta_poly_str(x: LaurentElement, theta, xi) -> str:
    parts = []
    for k, c in theta_polynomial(x, theta, xi):
        if not c:
            continue
        cs = format_element(c)
        mono = "" if k == 0 else ("theta" if k == 1 else f"theta^{k}")
        if not mono:
            parts.append(f"({cs})" if len(c) > 1 else cs)
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"({cs})*{mono}" if len(c) > 1 else f"{cs}*{mono}")
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


def _presentation_text(rp, theta=None) -> str:
    lines = [f"P = {format_element(rp.P)}", f"Q = {format_element(rp.Q)}", f"shift = {list(rp.shift)}"]
    if theta is not None:
        lines.append(f"P(theta) = {_theta_poly_str(rp.P, theta, rp.xi)}")
        lines.append(f"Q(theta) = {_theta_poly_str(rp.Q, theta, rp.xi)}")
    return "\n".join(lines) + "\n"


def cmd_rational(args) -> tuple:
    if args.action == "closed-form":
        d = ser.datum_from_json(ser.load_json(args.path), where=args.path)
        rp = closed_form_type_L(d)
        if args.json:
            return 0, ser.dumps(ser.presentation_to_json(rp))
        return 0, _presentation_text(rp, d.theta)
    a = ser.truncation_from_json(ser.load_json(args.path), args.path)
    if args.depth is not None:
        if -args.depth < a.cutoff:
            raise DomainError(f"series is only valid above {a.cutoff}; --depth {args.depth} is too deep")
        a = a.retruncate(-args.depth)
    rp = recognize(a, args.theta, args.max_deg)
    if rp is None:
        status = 1 if args.require_rational else 0
        if args.json:
            return status, ser.dumps({"found": False})
        return status, f"no rational form with order <= {args.max_deg}\n"
    if args.json:
        return 0, ser.dumps({"found": True, "presentation": ser.presentation_to_json(rp)})
    return 0, _presentation_text(rp, args.theta)


def cmd_cone(args) -> tuple:
    if args.action == "contains":
        cone = ser.cone_from_json(ser.load_json(args.path), args.path)
        ok, lam = cone_contains(cone, args.point)
        if args.json:
            return 0, ser.dumps({"contained": ok, "witness": [str(x) for x in lam] if ok else None})
        if ok:
            return 0, f"contained: yes\nwitness = [{', '.join(str(x) for x in lam)}]\n"
        return 0, "contained: no\n"
    if args.action == "hull":
        cone = integral_hull(args.generators, args.eta1, args.eta2)
        if args.json:
            return 0, ser.dumps(ser.cone_to_json(cone))
        gens = ", ".join(str(list(g)) for g in cone.generators)
        return 0, f"generators = [{gens}]\n"
    if args.action == "cover":
        c1 = ser.cone_from_json(ser.load_json(args.cone1), args.cone1)
        c2 = ser.cone_from_json(ser.load_json(args.cone2), args.cone2)
        res = cone_intersection_cover(c1, args.a1, c2, args.a2, args.xi, args.eta)
        if isinstance(res, BoundedIntersection):
            if args.json:
                return 0, ser.dumps({"bounded": True})
            return 0, "bounded: the forms are negatively proportional, the intersection is finite\n"
        if args.json:
            return 0, ser.dumps(ser.shifted_cone_to_json(res))
        gens = ", ".join(str(list(g)) for g in res.cone.generators)
        return 0, f"generators = [{gens}]\nshift = {list(res.shift)}\n"
    cone = ser.cone_from_json(ser.load_json(args.path), args.path)
    A, B = growth_transfer_constants(cone, args.xi, args.eta, args.shift)
    if args.json:
        return 0, ser.dumps({"A": str(A), "B": str(B)})
    return 0, f"A = {A}\nB = {B}\n"


def cmd_complex(args) -> tuple:
    sys_ = ser.system_from_json(ser.load_json(args.path), args.path)
    if args.action == "incidence":
        res = incidence_series(sys_, args.source, args.target, args.cutoff)
        if args.json:
            return 0, ser.dumps(ser.truncation_to_json(res))
        return 0, f"valid above grade {res.cutoff}\nn({args.source},{args.target}) = {format_element(res.terms)}\n"
    if args.action == "d-squared":
        results = verify_d_squared(sys_, args.cutoff)
        if args.json:
            return 0, ser.dumps([{"index": r.index, "residual_norm": r.residual_norm,
                                  "valid_above": str(r.valid_above)} for r in results])
        if not results:
            return 0, "no three consecutive populated indices; d^2 = 0 holds vacuously\n"
        lines = [f"d_{r.index - 1} d_{r.index}: residual norm {r.residual_norm} above grade {r.valid_above}"
                 for r in results]
        bad = [r for r in results if not r.ok]
        lines.append("d^2 = 0: " + ("yes" if not bad else "NO"))
        return (0 if not bad else 1), "\n".join(lines) + "\n"
    shifted = ser.shifted_cone_from_json(ser.load_json(args.cone), args.cone)
    cert = ConeCertificate(shifted.cone, shifted.shift)
    lines = []
    out = []
    for p in sys_.indices:
        if not sys_.points_of_index(p - 1):
            continue
        mat = boundary_matrix(sys_, p, args.cutoff)
        xs, ys = sys_.points_of_index(p), sys_.points_of_index(p - 1)
        for i, y in enumerate(ys):
            for j, x in enumerate(xs):
                ok = cone_support_check(mat[i][j], cert)
                out.append({"from": x, "to": y, "in_cone": ok})
                lines.append(f"({x},{y}): {'inside' if ok else 'OUTSIDE'} (verified to grade {args.cutoff})")
    if args.json:
        return 0, ser.dumps(out)
    return 0, "\n".join(lines) + "\n"


def cmd_example_s3(args) -> tuple:
    _, rep = builtin_example_s3(args.depth)
    d = args.float_digits
    if args.json:
        return 0, ser.dumps({
            "rows": [{"k": r.k, "n": r.n, "closed_form": None if r.closed is None else str(r.closed),
                      "rel_error": r.rel_error} for r in rep.rows],
            "recurrence_ok": rep.recurrence_ok,
            "max_rel_error": rep.max_rel_error,
            "closed_form": ser.presentation_to_json(rep.closed_form_presentation),
            "closed_form_matches": rep.closed_form_matches,
            "calibration": rep.calibration,
        })
    lines = [f"{'k':>3} {'n_k':>16} {'closed form':>24} {'rel. error':>12}"]
    for r in rep.rows:
        cf = "-" if r.closed is None else f"{float(r.closed) + 0.0:.{d}g}"
        err = "-" if r.rel_error is None else f"{r.rel_error:.2e}"
        lines.append(f"{r.k:>3} {r.n:>16} {cf:>24} {err:>12}")
    lines.append(f"recurrence n_(k+2) = 3 n_(k+1) - n_k for 1 <= k <= {args.depth - 2}: "
                 + ("yes" if rep.recurrence_ok else "NO"))
    lines.append(f"max relative error against the closed form: {rep.max_rel_error:.2e}")
    rp = rep.closed_form_presentation
    lines.append(f"adjugate closed form: t^{rp.shift[0]} * ({format_element(rp.P)}) / ({format_element(rp.Q)}); "
                 f"expansion matches: {'yes' if rep.closed_form_matches else 'NO'}")
    lines.append(f"conventions: {rep.calibration}")
    return 0, "\n".join(lines) + "\n"


HANDLERS = {
    "series": cmd_series,
    "growth": cmd_growth,
    "rational": cmd_rational,
    "cone": cmd_cone,
    "complex": cmd_complex,
    "example-s3": cmd_example_s3,
}


def run(argv) -> tuple:
    """Returns (exit status, report text)."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return 2, f"{exc}\n"
    try:
        status, text = HANDLERS[args.command](args)
    except (ser.FormatError, OSError) as exc:
        return 2, f"error: {exc}\n"
    except (DomainError, ValueError, KeyError, ArithmeticError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        return 1, f"error: {msg}\n"
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            return 2, f"error: {exc}\n"
        return status, ""
    return status, text


def main(argv=None) -> int:
    status, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if status == 0 else sys.stderr
    if status == 1 and not text.startswith("error:"):
        stream = sys.stdout
    stream.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
