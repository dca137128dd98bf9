"""Command-line interface.

State files hold either a matrix, ``{"dim": 4, "re": [[...]], "im": [[...]]}``
(row-major), or coordinates, ``{"s": [...], "p": [...], "beta": [[...]]}``.
A path of ``-`` reads standard input; ``@mixed``, ``@bell`` and
``@werner=W`` name built-in states.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from . import geometry, invariants, molien, qstate, series, verify
from .errors import TwoQubitError


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    return format(x, ".17g")


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if hasattr(obj, "item"):
        return dumps(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def load_state(path: str, strict: bool = False) -> qstate.DensityMatrix:
    if path.startswith("@"):
        name, _, arg = path[1:].partition("=")
        if name == "mixed":
            return qstate.maximally_mixed()
        if name == "bell":
            return qstate.bell_state()
        if name == "werner":
            return qstate.werner_state(float(arg))
        raise ValueError(f"unknown built-in state {path!r}")
    text = sys.stdin.read() if path == "-" else open(path).read()
    obj = json.loads(text)
    if "beta" in obj:
        m = qstate.bloch_compose(qstate.MakhlinCoordinates.from_json(obj))
    else:
        m = qstate.matrix_from_json(obj)
    return qstate.validate_state(m, strict=strict)


def _emit(out, obj):
    out.write(dumps(obj) + "\n")
    out.flush()


def cmd_invariants(args, out):
    rho = load_state(args.state)
    v = invariants.state_invariants(rho)
    record = v.as_dict()
    record["det_pt"] = invariants.det_pt_via_invariants(v)
    record["det_pt_direct"] = invariants.det_pt_direct(rho)
    if args.coords:
        record["coordinates"] = qstate.bloch_decompose(rho).to_json()
    _emit(out, record)
    return 0


def cmd_classify(args, out):
    rho = load_state(args.state)
    cls = geometry.classify(rho, tol=args.tol)
    _emit(out, {"separable": cls.separable, **cls.to_json()})
    return 0


def cmd_boundary_point(args, out):
    rho_out = load_state(args.state, strict=True)
    rho_in = load_state(args.inside, strict=True)
    lam = geometry.boundary_parameter(rho_out, rho_in, tol=args.tol)
    star = geometry.boundary_point(rho_out, rho_in, tol=args.tol)
    cls = geometry.classify(star)
    _emit(out, {"lambda": lam, "tag": cls.tag.value, "det_pt": cls.det_pt,
                "state": star.to_json(),
                "coordinates": qstate.bloch_decompose(star).to_json()})
    return 0


def cmd_verify_det(args, out):
    rows = verify.det_formula_deviations(args.samples, args.rank_samples,
                                         args.separable_samples, args.seed)
    worst = 0.0
    for kind, i, direct, via in rows:
        worst = max(worst, abs(direct - via))
        if args.records:
            _emit(out, {"kind": kind, "index": i, "det_pt_direct": direct,
                        "det_pt_invariants": via, "diff": direct - via})
    ok = worst <= args.tol
    _emit(out, {"check": "det-formula", "passed": ok, "max_abs_diff": worst, "tol": args.tol})
    return 0 if ok else 1


def cmd_audit(args, out):
    report = geometry.smoothness_audit(
        args.samples, args.seed, tol=args.tol, delta=args.delta,
        grad_tol=args.gradient_tol, threads=args.threads, raise_on_failure=False)
    for rec in report.records:
        _emit(out, rec.to_json())
    for rec in report.failures:
        print(f"sample {rec.index}: {rec.failure}", file=sys.stderr)
    ok = report.ok and report.identity_max_deviation <= 1e-12
    _emit(out, {"check": "audit-smoothness", "passed": ok, "samples": len(report.records),
                "failures": len(report.failures), "candidates": report.candidates_drawn,
                "identity_max_deviation": report.identity_max_deviation})
    return 0 if ok else 1


def cmd_series(args, out):
    table = series.poincare_series(args.grading, args.max_degree)
    degrees = list(series.graded_monomials(table.nvars, args.max_degree))
    if args.format == "csv":
        cols = ["degree"] if args.grading == 1 else ["d1", "d2", "d3"]
        out.write(",".join(cols + ["coefficient"]) + "\n")
        for e in degrees:
            out.write(",".join(str(x) for x in e) + f",{table[e]}\n")
    elif args.grading == 1:
        _emit(out, {"grading": 1, "max_degree": args.max_degree,
                    "coefficients": [str(table[e]) for e in degrees]})
    else:
        _emit(out, {"grading": 3, "max_degree": args.max_degree,
                    "coefficients": [{"degree": list(e), "coefficient": str(table[e])}
                                     for e in degrees]})
    return 0


def cmd_molien_dim(args, out):
    d = (args.d1, args.d2, args.d3)
    if min(d) < 0:
        raise ValueError("degrees must be nonnegative")
    value = molien.invariant_dimension(molien.two_qubit_weight_system(), d)
    if args.lie:
        lie = molien.invariant_dimension_lie(d)
        _emit(out, {"degree": list(d), "molien": value, "lie": lie})
        return 0 if lie == value else 1
    out.write(f"{value}\n")
    return 0


def cmd_molien_cross(args, out):
    report = molien.cross_check(args.max_degree, lie_max_degree=args.lie_max_degree,
                                raise_on_mismatch=False)
    for row in report.rows:
        _emit(out, {"degree": list(row.degree), "series": row.series,
                    "molien": row.molien, "lie": row.lie, "ok": row.ok})
    ok = not report.mismatches
    _emit(out, {"check": "molien-cross-check", "passed": ok, "multidegrees": len(report.rows),
                "lie_checked": report.lie_checked, "mismatches": len(report.mismatches)})
    return 0 if ok else 1


def cmd_verify_all(args, out):
    names = list(verify.CHECKS)
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        futures = [pool.submit(_timed, verify.CHECKS[n], args.scale) for n in names]
        results = [f.result() for f in futures]
    for res in results:
        out.write(res.line() + "\n")
    passed = sum(r.passed for r in results)
    out.write(f"{passed}/{len(results)} checks passed\n")
    return 0 if passed == len(results) else 1


def _timed(fn, scale):
    import time

    t0 = time.perf_counter()
    res = fn(scale=scale)
    res.seconds = time.perf_counter() - t0
    return res


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog="twoqubit", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="nine invariants and det(rho^Gamma)", formatter_class=fmt)
    p.add_argument("state")
    p.add_argument("--coords", action="store_true", help="also print (s, p, beta)")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classify", help="separability and boundary piece", formatter_class=fmt)
    p.add_argument("state")
    p.add_argument("--tol", type=float, default=geometry.CLASSIFY_TOL)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("boundary-point", formatter_class=fmt,
                       help="bisect towards a separable state onto det(rho^Gamma) = 0")
    p.add_argument("state", help="entangled state")
    p.add_argument("--inside", default="@mixed", help="separable state with positive margin")
    p.add_argument("--tol", type=float, default=geometry.ROOT_TOL)
    p.set_defaults(func=cmd_boundary_point)

    p = sub.add_parser("verify", help="verification runs")
    vsub = p.add_subparsers(dest="what", required=True)
    v = vsub.add_parser("det-formula", formatter_class=fmt,
                        help="closed form of det(rho^Gamma) against the direct determinant")
    v.add_argument("--samples", type=int, default=10_000, help="Hilbert-Schmidt samples")
    v.add_argument("--rank-samples", type=int, default=1000, help="rank-2 samples")
    v.add_argument("--separable-samples", type=int, default=1000,
                   help="four-term separable mixtures")
    v.add_argument("--seed", type=int, default=2024)
    v.add_argument("--tol", type=float, default=1e-12)
    v.add_argument("--records", action="store_true", help="one JSON line per sample")
    v.set_defaults(func=cmd_verify_det)
    v = vsub.add_parser("all", formatter_class=fmt, help="run every acceptance check")
    v.add_argument("--scale", type=float, default=1.0,
                   help="multiplier on sample counts (values below 1 are smoke runs only)")
    v.add_argument("--threads", type=int, default=1)
    v.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("audit-smoothness", formatter_class=fmt,
                       help="boundary points inside the state space are smooth; "
                            "JSON lines {index, tag, det, det_pt, zero_count}")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--tol", type=float, default=geometry.ROOT_TOL, help="root tolerance")
    p.add_argument("--delta", type=float, default=geometry.INTERIOR_DELTA,
                   help="minimum eigenvalue for interior samples")
    p.add_argument("--gradient-tol", type=float, default=geometry.GRADIENT_TOL)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("series", help="Poincare series")
    ssub = p.add_subparsers(dest="what", required=True)
    s = ssub.add_parser("expand", formatter_class=fmt,
                        help="coefficients as decimal strings; CSV columns are "
                             "degree,coefficient or d1,d2,d3,coefficient")
    s.add_argument("--grading", type=int, choices=(1, 3), default=1)
    s.add_argument("--max-degree", type=int, default=23)
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_series)

    p = sub.add_parser("molien", help="invariant dimensions")
    msub = p.add_subparsers(dest="what", required=True)
    m = msub.add_parser("dim", formatter_class=fmt, help="dimension at multidegree d1 d2 d3")
    for name in ("d1", "d2", "d3"):
        m.add_argument(name, type=int)
    m.add_argument("--lie", action="store_true", help="also run the Lie-kernel oracle")
    m.set_defaults(func=cmd_molien_dim)
    m = msub.add_parser("cross-check", formatter_class=fmt,
                        help="Molien-Weyl vs rational function vs Lie kernel")
    m.add_argument("--max-degree", type=int, default=8)
    m.add_argument("--lie-max-degree", type=int, default=4)
    m.set_defaults(func=cmd_molien_cross)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (TwoQubitError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"twoqubit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
