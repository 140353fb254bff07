"""Command-line front end.

Exit status: 0 on success, 1 if an audited inequality or cross-check
fails, 2 on input errors.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .determinant import BOUND_SLACK, audit_bounds, determinant_oracle, determinant_u, polar_grid
from .inequalities import (
    DEFAULT_EPSILONS,
    family_sweep,
    gauge_family,
    inequality_report,
    random_family,
    single_site_family,
)
from .jost import (
    apriori_bound,
    reconstruct_u,
    recurrence_residual,
    solve_volterra_left,
    solve_volterra_right,
)
from .operator import TOL_EDGE, EdgeProximityError, compute_gauge
from .spectrum import finite_section_eigenvalues, find_zeros

COMMANDS = ("jost", "det-scan", "spectrum", "lt-check", "enclosure", "oracle-compare", "sweep")
ORACLE_TOL = 1e-8


def _float_list(text, n=None):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
    return vals


def _grid(text):
    nr, nt, rmin, rmax = _float_list(text, 4)
    if nr < 1 or nt < 1 or nr != int(nr) or nt != int(nt):
        raise argparse.ArgumentTypeError("grid sizes must be positive integers")
    if not 0 < rmin <= rmax < 1:
        raise argparse.ArgumentTypeError("grid radii must satisfy 0 < RMIN <= RMAX < 1")
    return int(nr), int(nt), rmin, rmax


def _epsilons(text):
    eps = _float_list(text)
    if any(not 0 < e < 1 for e in eps):
        raise argparse.ArgumentTypeError("epsilon values must lie in (0, 1)")
    return eps


def _complex(text):
    vals = _float_list(text)
    if len(vals) not in (1, 2):
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")
    return complex(*vals)


def build_parser():
    p = argparse.ArgumentParser(prog="jacobi-lt", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", required=True, help="operator JSON (family JSON for 'sweep')")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--epsilon", type=_epsilons, default=list(DEFAULT_EPSILONS))
    p.add_argument("--grid", type=_grid, default=(16, 32, 0.05, 0.95), help="NR,NT,RMIN,RMAX")
    p.add_argument("--section-n", type=int, default=None, help="finite-section half width N")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--z", type=_complex, default=0.5 + 0j, help="spectral parameter RE[,IM] for 'jost'")
    return p


def _grid_points(grid):
    z = polar_grid(*grid)
    near = np.minimum(abs(z - 1), abs(z + 1)) <= TOL_EDGE
    return z[~near], z[near]


def _eigen_record(p):
    return {"lambda": p.lam, "z": p.z, "multiplicity": p.multiplicity, "residual": p.residual}


def cmd_jost(op, args):
    z = args.z
    v = solve_volterra_right(op, z)
    w = solve_volterra_left(op, z)
    up, um = reconstruct_u(op, v), reconstruct_u(op, w)
    lhs_v, rhs_v = apriori_bound(op, v)
    lhs_w, rhs_w = apriori_bound(op, w)
    margin = min(np.min(rhs_v * (1 + 1e-12) + 1e-300 - lhs_v), np.min(rhs_w * (1 + 1e-12) + 1e-300 - lhs_w))
    rows = [
        {"n": int(n), "v_plus": v[n], "w_minus": w[n], "u_plus": up[n], "u_minus": um[n],
         "f_r": v.remainder(n), "f_l": w.remainder(n)}
        for n in v.indices
    ]
    report = {
        "command": "jost",
        "z": z,
        "residual_der": recurrence_residual(op, v, z, "der"),
        "residual_del": recurrence_residual(op, w, z, "del"),
        "residual_main_plus": recurrence_residual(op, up, z, "main"),
        "residual_main_minus": recurrence_residual(op, um, z, "main"),
        "bound_margin_min": float(margin),
        "values": rows,
    }
    return report, rows, margin < 0


def cmd_det_scan(op, args):
    z, rejected = _grid_points(args.grid)
    evals = audit_bounds(op, z)
    rows = [{"z": e.z, "U": e.u_value, "x": e.bound_x, **{f"margin_{k}": v for k, v in e.margins.items()}}
            for e in evals]
    bad = any(not e.ok for e in evals)
    report = {"command": "det-scan", "delta": compute_gauge(op).delta_total,
              "min_margin": min((min(e.margins.values()) for e in evals), default=None),
              "rejected": list(rejected), "values": rows}
    return report, rows, bad


def cmd_spectrum(op, args):
    result = find_zeros(op)
    points = list(result)
    records = [_eigen_record(p) for p in points]
    report = {"command": "spectrum", "total_winding": result.total_winding,
              "eigenvalues": records,
              "unresolved": [{"box": list(u.box), "reason": u.reason} for u in result.unresolved]}
    if args.section_n is not None:
        fs = finite_section_eigenvalues(op, args.section_n, points)
        report["finite_section"] = {
            "N": fs.half_width,
            "matched": [{"eigenvalue": ev, "index": j, "distance": d} for ev, j, d in fs.matched],
        }
    bad = result.total_winding is not None and result.total_winding != result.multiplicity_sum
    return report, records, bad


def cmd_lt_check(op, args):
    points = list(find_zeros(op))
    reports = [inequality_report(op, e, points) for e in args.epsilon]
    rows = [r.to_row() for r in reports]
    return {"command": "lt-check", "reports": rows}, rows, False


def cmd_enclosure(op, args):
    points = list(find_zeros(op))
    rep = inequality_report(op, args.epsilon[0], points)
    report = {
        "command": "enclosure",
        "radii": {"determinant": rep.radii.determinant,
                  "birman_schwinger": rep.radii.birman_schwinger,
                  "sharp": rep.radii.sharp},
        "schrodinger": rep.schrodinger,
        "memberships": rep.memberships,
        "violations": rep.violations,
    }
    rows = [{k: v for k, v in m.items()} for m in rep.memberships]
    return report, rows, bool(rep.violations)


def cmd_oracle_compare(op, args):
    z, rejected = _grid_points(args.grid)
    u = determinant_u(op, z)
    o = determinant_oracle(op, z + 1 / z)
    rel = np.abs(u - o) / (1 + np.abs(o))
    rows = [{"z": z[i], "U": u[i], "oracle": o[i], "rel_diff": rel[i]} for i in range(len(z))]
    worst = float(rel.max()) if len(rel) else 0.0
    report = {"command": "oracle-compare", "max_rel_diff": worst, "tolerance": ORACLE_TOL,
              "rejected": list(rejected), "values": rows}
    return report, rows, worst > ORACLE_TOL


def _family_from_json(data, seed):
    if not isinstance(data, dict) or "family" not in data:
        raise io.InputError("field 'family': missing")
    kind = data["family"]
    try:
        if kind == "single_site":
            d = data.get("direction", [1, 0])
            return single_site_family(complex(*d), data["scales"], data.get("site", 0))
        if kind == "random":
            return random_family(int(data["count"]), int(data["support"]), float(data["spread"]),
                                 seed=data.get("seed", 0) if seed is None else seed,
                                 schrodinger=bool(data.get("schrodinger", False)),
                                 potential=data.get("potential"))
        if kind == "gauge":
            base = io.operator_from_dict(data["operator"])
            return gauge_family(base, int(data["count"]), seed=data.get("seed", 0) if seed is None else seed)
        if kind == "list":
            return [(str(i), io.operator_from_dict(d)) for i, d in enumerate(data["operators"])]
    except KeyError as exc:
        raise io.InputError(f"field {exc.args[0]!r}: missing for family {kind!r}") from None
    except (TypeError, ValueError) as exc:
        raise io.InputError(f"family {kind!r}: {exc}") from None
    raise io.InputError(f"field 'family': unknown family {kind!r}")


def cmd_sweep(family, args):
    result = family_sweep(family, args.epsilon)
    rows = [r.to_row() for r in result.reports]
    report = {
        "command": "sweep",
        "reports": rows,
        "max_ratios": [{"epsilon": e, "ratio_main": a, "ratio_hk": b}
                       for e, (a, b) in sorted(result.max_ratios().items())],
        "violations": [list(v) for v in result.violations],
        "errors": [list(e) for e in result.errors],
    }
    return report, rows, bool(result.violations)


HANDLERS = {
    "jost": cmd_jost,
    "det-scan": cmd_det_scan,
    "spectrum": cmd_spectrum,
    "lt-check": cmd_lt_check,
    "enclosure": cmd_enclosure,
    "oracle-compare": cmd_oracle_compare,
    "sweep": cmd_sweep,
}


def run(argv=None):
    """Parse `argv`, run the command and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "sweep":
            subject = _family_from_json(io.load_json(args.config), args.seed)
        else:
            subject = io.load_operator(args.config)
        report, rows, violated = HANDLERS[args.command](subject, args)
    except io.InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except EdgeProximityError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return 2
    text = io.dumps(report) if args.format == "json" else io.rows_to_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if violated else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
