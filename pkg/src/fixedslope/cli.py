"""Command-line front end.

Subcommands: certify, solve, compare, estimate-omega, list-problems.
Structured documents are JSON with a "schema": 1 field; traces and
measures are CSV.  Floats are serialized with their shortest round-trip
decimal representation, so re-reading a document reproduces the values
bit for bit.

Exit codes: 0 success, 1 certification refused (certify only; the
diagnostic document is still written), 2 invalid input, 3 runtime
evaluation failure.
"""

import argparse
import json
import sys

from . import __version__, majorant
from .certificate import ConvergenceCertificate, HoelderParams, certify
from .comparison import compare_report
from .errors import (
    BadParameters,
    ConditionFails,
    FixedSlopeError,
    NuNotContractive,
    RadiusOutOfRange,
    UnknownFixture,
)
from .norms import NORM_KINDS
from .problems import analytic_model, build_fixture, fixture_names, fixture_schema
from .solver import (
    StoppingRule,
    default_radii,
    estimate_majorant,
    estimate_omega,
    eta_at_start,
    fsi_solve,
    nu_at_start,
    verify_majorization,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_NOT_CERTIFIED = 1
EXIT_BAD_INPUT = 2
EXIT_RUNTIME = 3

DEFAULT_SEED = 0


def _fmt(x):
    """Shortest round-trip decimal for floats; None becomes null downstream."""
    if x is None:
        return None
    return float(x)


def _write_json(doc, path):
    text = json.dumps(doc, indent=2) + "\n"
    with open(path, "w") as fh:
        fh.write(text)


def _write_lines(lines, path):
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def certificate_to_doc(cert):
    return {
        "schema": SCHEMA_VERSION,
        "kind": "certificate",
        "status": cert.status,
        "reason": cert.reason,
        "nu": _fmt(cert.nu),
        "eta": _fmt(cert.eta),
        "R": _fmt(cert.R),
        "nu_star": _fmt(cert.nu_star),
        "nu_star_star": _fmt(cert.nu_star_star),
        "gamma_star": _fmt(cert.gamma_star),
        "lambda_star": _fmt(cert.lambda_star),
        "uniqueness_boundary": cert.uniqueness_boundary,
        "scalar_sequence": [_fmt(v) for v in cert.scalar_sequence_preview],
        "nu_star_needed": _fmt(cert.nu_star_needed),
    }


def read_certificate(path):
    """Re-read an emitted certificate document (values only, no model)."""
    with open(path) as fh:
        doc = json.load(fh)
    return ConvergenceCertificate(
        status=doc["status"],
        reason=doc["reason"],
        nu=doc["nu"],
        eta=doc["eta"],
        R=doc["R"],
        nu_star=doc["nu_star"],
        nu_star_star=doc["nu_star_star"],
        gamma_star=doc["gamma_star"],
        lambda_star=doc["lambda_star"],
        uniqueness_boundary=doc["uniqueness_boundary"],
        scalar_sequence_preview=tuple(doc["scalar_sequence"]),
        nu_star_needed=doc.get("nu_star_needed"),
    )


def trace_to_csv_lines(trace):
    lines = ["k,step_norm,residual_norm,v_step,bound_slack,error_bound"]
    for k in range(trace.num_steps):
        if trace.scalar_steps is not None and k < len(trace.scalar_steps):
            scalar = (
                repr(trace.scalar_steps[k]),
                repr(trace.bound_slacks[k]),
                repr(trace.error_bounds[k]),
            )
        else:
            scalar = ("", "", "")
        lines.append(
            f"{k},{trace.step_norms[k]!r},{trace.residual_norms[k]!r},"
            f"{scalar[0]},{scalar[1]},{scalar[2]}"
        )
    return lines


def _parse_value(text):
    parts = text.split(",")
    if len(parts) > 1:
        return tuple(float(p) for p in parts)
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def _parse_params(tokens):
    params = {}
    for token in tokens:
        if "=" not in token:
            raise BadParameters(f"expected key=value, got {token!r}")
        key, value = token.split("=", 1)
        params[key] = _parse_value(value)
    return params


def _load_fixture(args):
    """Fixture from a name plus key=value tokens, or from a spec file."""
    name = args.problem
    params = _parse_params(args.params)
    if name.endswith(".json"):
        with open(name) as fh:
            doc = json.load(fh)
        file_params = dict(doc.get("params", {}))
        if "R" in doc:
            file_params["R"] = doc["R"]
        file_params.update(params)  # command-line tokens win
        norm = doc.get("norm", args.norm)
        return build_fixture(doc["fixture"], norm=norm, **file_params)
    return build_fixture(name, norm=args.norm, **params)


def _obtain_model(fixture, args):
    """Majorant model per --measure: fixture closed form or estimated."""
    measure = args.measure
    if measure == "auto":
        measure = "analytic" if fixture.analytic is not None else "direct"
    if measure == "analytic":
        return analytic_model(fixture)
    radii = default_radii(fixture.problem.R, args.radii)
    return estimate_majorant(
        fixture.problem,
        mode=measure,
        radii=radii,
        samples_per_radius=args.samples,
        seed=args.seed,
    )


def _cmd_certify(args):
    fixture = _load_fixture(args)
    try:
        model = _obtain_model(fixture, args)
    except NuNotContractive:
        # Not certifiable at radius 0; still emit the diagnostic document.
        cert = ConvergenceCertificate(
            status="not_certified",
            reason="nu_too_large",
            nu=nu_at_start(fixture.problem),
            eta=eta_at_start(fixture.problem),
            R=fixture.problem.R,
            nu_star=None,
            nu_star_star=None,
            gamma_star=None,
            lambda_star=None,
            uniqueness_boundary=None,
            scalar_sequence_preview=(),
        )
        _write_json(certificate_to_doc(cert), args.out)
        print(f"not certified ({cert.reason}: nu={cert.nu!r}) -> {args.out}")
        return EXIT_NOT_CERTIFIED
    cert = certify(model, args.root_tol)
    _write_json(certificate_to_doc(cert), args.out)
    if cert.certified:
        print(
            f"certified: nu_star={cert.nu_star!r} lambda_star={cert.lambda_star!r} "
            f"({cert.uniqueness_boundary} ball) -> {args.out}"
        )
        return EXIT_OK
    print(f"not certified ({cert.reason}) -> {args.out}")
    return EXIT_NOT_CERTIFIED


def _cmd_solve(args):
    fixture = _load_fixture(args)
    cert = None
    cert_note = "none requested"
    if not args.no_certificate:
        try:
            cert = certify(_obtain_model(fixture, args), args.root_tol)
        except FixedSlopeError as exc:
            cert, cert_note = None, f"unobtainable: {exc}"
        else:
            if not cert.certified:
                cert_note, cert = f"refused: {cert.reason}", None
            else:
                cert_note = "attached"
    stop = StoppingRule(args.tol_step, args.tol_residual, args.max_iter)
    solution, trace = fsi_solve(fixture.problem, stop, cert)
    _write_lines(trace_to_csv_lines(trace), args.trace)

    doc = {
        "schema": SCHEMA_VERSION,
        "kind": "solve_report",
        "stop_reason": trace.stop_reason,
        "steps": trace.num_steps,
        "final_residual_norm": _fmt(trace.residual_norms[-1]),
        "final_step_norm": _fmt(trace.step_norms[-1]) if trace.step_norms else None,
        "solution": [_fmt(v) for v in solution],
        "certificate": cert_note,
        "nu_star": _fmt(cert.nu_star) if cert else None,
        "trace_path": args.trace,
    }
    if cert is not None and trace.num_steps > 0:
        report = verify_majorization(trace, cert.model, args.slack_tol)
        doc["majorization"] = {
            "passed": report.passed,
            "worst_slack": _fmt(report.worst_slack),
        }
    _write_json(doc, args.report)
    print(
        f"{trace.stop_reason} after {trace.num_steps} steps, "
        f"residual {trace.residual_norms[-1]!r} -> {args.trace}, {args.report}"
    )
    return EXIT_OK


def _format_compare_table(rep):
    def yn(flag):
        return "n/a" if flag is None else ("yes" if flag else "no")

    def num(x):
        return "-" if x is None else repr(float(x))

    rows = [
        ("condition", "holds", "eta_max"),
        ("new", yn(rep.new_holds), num(rep.new_eta_max)),
        ("ahues", yn(rep.ahues_holds), num(rep.ahues_eta_max)),
        ("kantorovich", yn(rep.kantorovich_holds), "-"),
    ]
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    lines = ["  ".join(r[i].ljust(widths[i]) for i in range(3)) for r in rows]
    lines.append("")
    lines.append(f"eta_max ratio new/ahues: {num(rep.eta_max_ratio)}")
    for label, value in [
        ("nu_star", rep.nu_star),
        ("nu_star_star", rep.nu_star_star),
        ("lambda_star", rep.lambda_star),
        ("r_star", rep.r_star),
        ("r_star_star", rep.r_star_star),
    ]:
        lines.append(f"{label:<13} {num(value)}")
    lines.append(f"containment [r*, r**] in [nu*, nu**]: {yn(rep.containment_holds)}")
    lines.append(f"root order as stated elsewhere: {rep.order_stated}")
    lines.append(f"root order computed here:       {rep.order_computed or 'n/a'}")
    return "\n".join(lines)


def _cmd_compare(args):
    params = _parse_params(args.params)
    try:
        p = HoelderParams(
            l0=float(params.pop("l0")),
            alpha=float(params.pop("alpha", 1.0)),
            nu=float(params.pop("nu", 0.0)),
            eta=float(params.pop("eta")),
        )
        R = float(params.pop("R", 10.0))
        delta = params.pop("delta", None)
        delta = None if delta is None else float(delta)
    except KeyError as exc:
        raise BadParameters(f"compare needs l0=... eta=... (missing {exc})") from exc
    except (TypeError, ValueError) as exc:
        raise BadParameters(str(exc)) from exc
    if params:
        raise BadParameters(f"unknown compare parameters: {sorted(params)}")
    rep = compare_report(p, R, args.root_tol, delta)
    doc = {
        "schema": SCHEMA_VERSION,
        "kind": "comparison",
        "l0": _fmt(rep.l0),
        "alpha": _fmt(rep.alpha),
        "nu": _fmt(rep.nu),
        "delta": _fmt(rep.delta),
        "eta": _fmt(rep.eta),
        "R": _fmt(rep.R),
        "new_holds": rep.new_holds,
        "new_eta_max": _fmt(rep.new_eta_max) if rep.new_eta_max != float("inf") else "unbounded",
        "ahues_holds": rep.ahues_holds,
        "ahues_eta_max": _fmt(rep.ahues_eta_max) if rep.ahues_eta_max != float("inf") else "unbounded",
        "kantorovich_holds": rep.kantorovich_holds,
        "nu_star": _fmt(rep.nu_star),
        "nu_star_star": _fmt(rep.nu_star_star),
        "lambda_star": _fmt(rep.lambda_star),
        "r_star": _fmt(rep.r_star),
        "r_star_star": _fmt(rep.r_star_star),
        "eta_max_ratio": _fmt(rep.eta_max_ratio),
        "containment_holds": rep.containment_holds,
        "order_stated": rep.order_stated,
        "order_computed": rep.order_computed,
    }
    _write_json(doc, args.out)
    print(_format_compare_table(rep))
    print(f"-> {args.out}")
    return EXIT_OK


def _cmd_estimate(args):
    fixture = _load_fixture(args)
    radii = default_radii(fixture.problem.R, args.radii)
    omega = estimate_omega(
        fixture.problem,
        mode=args.mode,
        radii=radii,
        samples_per_radius=args.samples,
        seed=args.seed,
    )
    lines = ["radius,value"] + [f"{r!r},{w!r}" for r, w in omega.knots]
    _write_lines(lines, args.out)
    print(f"{len(omega.knots)} knots ({args.mode} mode) -> {args.out}")
    return EXIT_OK


def _cmd_list(args):
    for name in fixture_names():
        print(f"{name}: {fixture_schema(name)}")
    return EXIT_OK


def _add_problem_arguments(sub, with_measure=True):
    sub.add_argument("problem", help="fixture name or path to a problem-spec .json")
    sub.add_argument("params", nargs="*", help="fixture parameters as key=value")
    sub.add_argument("--norm", choices=NORM_KINDS, default="max")
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub.add_argument("--radii", type=int, default=24,
                     help="number of estimation radii (uniform up to R)")
    sub.add_argument("--samples", type=int, default=64,
                     help="sphere samples per radius for estimation")
    if with_measure:
        sub.add_argument("--measure", choices=("auto", "analytic", "direct", "centered"),
                         default="auto",
                         help="where the continuity measure comes from")
    sub.add_argument("--root-tol", type=float, default=majorant.ROOT_TOL)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fixedslope",
        description="Fixed slope iteration solver with a-priori convergence certificates.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    cert = subs.add_parser("certify", help="compute a convergence certificate")
    _add_problem_arguments(cert)
    cert.add_argument("--out", default="certificate.json")
    cert.set_defaults(func=_cmd_certify)

    solve = subs.add_parser("solve", help="run the iteration, record a trace")
    _add_problem_arguments(solve)
    solve.add_argument("--no-certificate", action="store_true",
                       help="do not attach a certificate even if obtainable")
    solve.add_argument("--tol-step", type=float, default=1e-12)
    solve.add_argument("--tol-residual", type=float, default=1e-12)
    solve.add_argument("--max-iter", type=int, default=10000)
    solve.add_argument("--slack-tol", type=float, default=1e-9)
    solve.add_argument("--trace", default="trace.csv")
    solve.add_argument("--report", default="solve_report.json")
    solve.set_defaults(func=_cmd_solve)

    comp = subs.add_parser("compare", help="compare certification conditions")
    comp.add_argument("params", nargs="+",
                      help="l0=... eta=... [alpha=1] [nu=0] [delta=nu] [R=10]")
    comp.add_argument("--root-tol", type=float, default=majorant.ROOT_TOL)
    comp.add_argument("--out", default="comparison.json")
    comp.set_defaults(func=_cmd_compare)

    est = subs.add_parser("estimate-omega", help="tabulate the continuity measure")
    _add_problem_arguments(est, with_measure=False)
    est.add_argument("--mode", choices=("direct", "centered"), default="direct")
    est.add_argument("--out", default="omega.csv")
    est.set_defaults(func=_cmd_estimate)

    lst = subs.add_parser("list-problems", help="show the bundled fixture catalog")
    lst.set_defaults(func=_cmd_list)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 0
        return EXIT_BAD_INPUT if code else EXIT_OK
    try:
        return args.func(args)
    except (UnknownFixture, BadParameters, ConditionFails, RadiusOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FixedSlopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
