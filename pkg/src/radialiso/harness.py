"""Command-line front end: region queries, inequality sweeps and shape verification.

Exit codes: 0 all checks passed, 1 a violation was found, 2 usage or input
error, 3 quadrature failure.

Defaults: gap sweeps use 200 log-spaced ratios b/a in (1 + 1e-4, 1e4);
hyperbolic sweeps 50 log-spaced lambda in [1e-4, 50]; ``verify`` uses seed 0,
500 shapes per family and five weight pairs in the region
(0.1,0.5) (0.1,0.4) (-1,-0.5) (0.5,1) (-0.5,0.3).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Any, Optional

import numpy as np

from . import angles, closedform, inequalities, params, shapes, special
from .params import Weights
from .quad import QuadratureError

TOLERANCES = {"gap": 1e-12, "deficit": 1e-7, "identity": 1e-8, "angle": 1e-8}
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 500
DEFAULT_WEIGHTS = ((0.1, 0.5), (0.1, 0.4), (-1.0, -0.5), (0.5, 1.0), (-0.5, 0.3))

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class VerificationReport:
    kind: str
    params: dict
    cases_run: int
    worst_gap: float
    worst_location: dict
    passed: bool
    seed: Optional[int] = None
    tolerances: dict = field(default_factory=lambda: dict(TOLERANCES))

    def __post_init__(self):
        if self.cases_run < 1:
            raise ValueError("a report covers at least one case")
        # numpy scalars are not JSON serializable
        self.worst_gap = float(self.worst_gap)
        self.passed = bool(self.passed)

    def to_json(self) -> str:
        doc = asdict(self)
        doc["timestamp"] = datetime.now(timezone.utc).isoformat()
        return json.dumps(doc, sort_keys=True, indent=2)

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.kind}: {status}  cases={self.cases_run}  worst_gap={self.worst_gap:.6g}"]
        for k, v in sorted(self.worst_location.items()):
            lines.append(f"  {k} = {v}")
        return "\n".join(lines)


def _ge_report(kind, prm, gaps, locations, tol, seed=None) -> VerificationReport:
    """Report for a family of checks of the form gap >= -tol."""
    i = int(np.argmin(gaps))
    return VerificationReport(kind, prm, len(gaps), float(gaps[i]), locations[i], bool(gaps[i] >= -tol), seed)


# Argument handling.

def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--eta", type=str, help="boundary signs, e.g. -1,1")
    p.add_argument("--x", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--s", type=float, help="zeta exponent")
    p.add_argument("--lam", type=float, help="hyperbolic-form parameter")
    p.add_argument("--json", action="store_true", default=None)
    p.add_argument("--seed", type=int, help=f"default {DEFAULT_SEED}")
    p.add_argument("--samples", type=int, help=f"shapes per family, default {DEFAULT_SAMPLES}")
    p.add_argument("--grid", type=int, help="grid size for sweeps")
    p.add_argument("--out", type=str)
    p.add_argument("--workers", type=int, help="processes for verify, default 1")
    p.add_argument("--config", type=str, help="file of key=value lines; flags override it")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="radialiso", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common])
    sub.add_parser("gap", parents=[common]).add_argument("which", choices=["main", "hyperbolic", "mhat", "coth"])
    sub.add_parser("angle", parents=[common]).add_argument("which", choices=["linear", "riccati", "origin"])
    sub.add_parser("dist", parents=[common]).add_argument("which", choices=["mu-u", "mu-w", "compare"])
    sub.add_parser("special", parents=[common]).add_argument(
        "which", choices=["W", "w", "phi", "rho", "Y", "zeta-diff"])
    sub.add_parser("competitor", parents=[common])
    sub.add_parser("verify", parents=[common]).add_argument(
        "--family", choices=list(shapes.FAMILIES) + ["all"], default="all")
    sub.add_parser("figure", parents=[common]).add_argument(
        "--kind", choices=["region", "w-graph", "competitor", "hyperbola"], required=True)
    return parser


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip().lstrip("-").replace("-", "_")] = v.strip()
    return out


def _apply_config(args: argparse.Namespace) -> None:
    if not args.config:
        return
    types = {a.dest: a.type for a in _common_parser()._actions if a.dest != "help"}
    for key, raw in read_config(args.config).items():
        if key not in types or key == "config":
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, key) is not None:
            continue
        if key == "json":
            setattr(args, key, raw.lower() in ("1", "true", "yes"))
        else:
            setattr(args, key, types[key](raw))


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


def _weights(args) -> Weights:
    _need(args, "alpha", "beta")
    return Weights(args.alpha, args.beta)


def _eta(args) -> closedform.BoundaryData:
    _need(args, "eta")
    try:
        e1, e2 = (int(v) for v in args.eta.split(","))
    except ValueError as exc:
        raise UsageError(f"--eta expects two comma-separated signs, got {args.eta!r}") from exc
    return closedform.BoundaryData(e1, e2)


def _interval(args) -> closedform.Interval:
    _need(args, "a", "b")
    return closedform.Interval(args.a, args.b)


# Subcommands.

def cmd_classify(args):
    w = _weights(args)
    d = params.derive(w)
    flags = params.classify(w)
    doc = {"alpha": w.alpha, "beta": w.beta, "gamma": d.gamma, "zeta": d.zeta, "x": d.x}
    doc.update(flags._asdict())
    doc.update(params.standing_assumptions(w)._asdict())
    return doc


def cmd_gap(args):
    which = args.which
    if which == "hyperbolic":
        _need(args, "x")
        lams = [args.lam] if args.lam is not None else np.geomspace(1e-4, 50.0, args.grid or 50)
        gaps = [inequalities.hyperbolic_gap(args.x, float(lam)) for lam in lams]
        locs = [{"x": args.x, "lam": float(lam)} for lam in lams]
        # at x = 1 the gap vanishes identically
        return _ge_report("gap-hyperbolic", {"x": args.x}, gaps, locs, TOLERANCES["gap"])
    w = _weights(args)
    if args.a is not None or args.b is not None:
        iv = _interval(args)
        if iv.a == 0:
            raise UsageError("need a > 0")
        ts = [iv.b / iv.a]
    elif args.t is not None:
        ts = [args.t]
    else:
        ts = inequalities.default_t_grid(args.grid or 200)
    gaps, locs = [], []
    for t in ts:
        t = float(t)
        if which == "main":
            g = inequalities.main_gap(w, 1.0, t)
        elif which == "mhat":
            g = inequalities.mhat_gap(w, 1.0, t)
        else:
            g = inequalities.coth_gap_normalized(w, t)
        gaps.append(g)
        locs.append({"t": t})
    return _ge_report(f"gap-{which}", {"alpha": w.alpha, "beta": w.beta}, gaps, locs, TOLERANCES["gap"])


def cmd_angle(args):
    w = _weights(args)
    prm = {"alpha": w.alpha, "beta": w.beta}
    tol = TOLERANCES["angle"]
    if args.which == "origin":
        _need(args, "b")
        value = angles.angle_linear(closedform.solve_linear_origin(w, args.b))
        target = math.pi / (2.0 * w.gamma)
        gap = -abs(value - target)
        loc = {"angle": value, "target": target, "b": args.b}
        return VerificationReport("angle-origin", prm, 1, gap, loc, gap >= -tol)
    iv = _interval(args)
    prm.update(a=iv.a, b=iv.b)
    if args.which == "riccati":
        value = angles.angle_riccati(closedform.solve_riccati(w, iv))
        gap = value - math.pi
        return VerificationReport("angle-riccati", prm, 1, gap, {"angle": value}, gap >= -tol)
    eta = _eta(args)
    value = angles.angle_linear(closedform.solve_linear(w, iv, eta))
    prm["eta"] = [eta.eta1, eta.eta2]
    # only the increasing solution carries a sign claim
    checked = (eta.eta1, eta.eta2) == (-1, 1)
    return VerificationReport("angle-linear", prm, 1, value, {"angle": value, "checked": checked},
                              (value >= -tol) if checked else True)


def _thresholds(lo, hi, n=10):
    return [lo + (hi - lo) * (k + 1) / (n + 1) for k in range(n)]


def cmd_dist(args):
    w = _weights(args)
    iv = _interval(args)
    prm = {"alpha": w.alpha, "beta": w.beta, "a": iv.a, "b": iv.b}
    gaps, locs = [], []
    if args.which in ("mu-u", "compare"):
        sol = closedform.solve_linear(w, iv, closedform.BoundaryData(-1, 1))
        ts = [args.t] if args.which == "mu-u" and args.t is not None else _thresholds(0.0, 1.0)
        for t in ts:
            gaps.append(angles.mu_u(sol, t) - angles.mu_neg_u(sol, t))
            locs.append({"check": "mu_u - mu_neg_u", "t": t})
    if args.which in ("mu-w", "compare"):
        rsol = closedform.solve_riccati(w, iv)
        ts = [args.t] if args.which == "mu-w" and args.t is not None else _thresholds(1.0, rsol.max_value)
        for t in ts:
            gaps.append(angles.mu_w0(iv.a, iv.b, t) - angles.mu_w(rsol, t))
            locs.append({"check": "mu_w0 - mu_w", "t": t})
    return _ge_report(f"dist-{args.which}", prm, gaps, locs, TOLERANCES["gap"])


def cmd_special(args):
    which = args.which
    tol = TOLERANCES["identity"]
    if which == "rho":
        _need(args, "t")
        v = special.rho(args.t)
        return VerificationReport("special-rho", {"t": args.t}, 1, v, {"rho": v, "root": special.rho_root()}, True)
    if which == "zeta-diff":
        _need(args, "x", "s")
        v = special.zeta_diff(args.x, args.s)
        ref = special.hurwitz_zeta(args.x, args.s) - special.hurwitz_zeta(args.x + 0.5, args.s)
        return VerificationReport("special-zeta-diff", {"a": args.x, "s": args.s}, 1, -abs(v - ref),
                                  {"value": v, "direct": ref}, abs(v - ref) <= tol)
    _need(args, "x")
    x = args.x
    if which == "W":
        v = special.cap_W(x)
        gap = v - 2.0 * math.pi
        return VerificationReport("special-W", {"x": x}, 1, gap, {"W": v, "two_pi": 2.0 * math.pi},
                                  gap >= -TOLERANCES["gap"])
    if which == "w":
        v = special.small_w(x)
        checked = 0.5 < x < 1.0
        return VerificationReport("special-w", {"x": x}, 1, v, {"w": v, "checked": checked},
                                  (v > 0) if checked else True)
    if which == "phi":
        v, ref = special.phi(x), special.phi_binet(x)
        return VerificationReport("special-phi", {"x": x}, 1, -abs(v - ref), {"phi": v, "integral": ref},
                                  abs(v - ref) <= tol)
    v = special.Y_of_x(x)
    num, den = special.Y_kernel_integrals(x)
    return VerificationReport("special-Y", {"x": x}, 1, -abs(v - num / den), {"Y": v, "ratio": num / den},
                              abs(v - num / den) <= tol)


def competitor_grid() -> list[Weights]:
    """Twenty weights in the region, off the alpha = 2 beta segment, with gamma in [1/2, 1).

    For fixed gamma the admissible beta range is (gamma - 1, 1/gamma - 1].
    """
    out = []
    for g in np.arange(10) * 0.05 + 0.5:
        lo, hi = g - 1.0, 1.0 / g - 1.0
        for frac in (1.0 / 3.0, 1.0):
            beta = lo + frac * (hi - lo)
            out.append(Weights(float(g + beta - 1.0), float(beta)))
    return out


def cmd_competitor(args):
    grid = [_weights(args)] if args.alpha is not None or args.beta is not None else competitor_grid()
    b = args.b if args.b is not None else 1.0
    gaps, locs = [], []
    for w in grid:
        shape = shapes.CompetitorE(b, w)
        ratio_gap = shapes.iso_ratio(shape, w) - shapes.ball_ratio(w)
        gaps.append(ratio_gap)
        locs.append({"alpha": w.alpha, "beta": w.beta, "ratio_gap": ratio_gap, "desired_gap": shapes.desired_gap(w)})
    rep = _ge_report("competitor", {"b": b, "points": len(grid)}, gaps, locs, 0.0)
    rep.passed = bool(min(gaps) > 0)
    return rep


def _verify_task(task):
    (alpha, beta), family, seed_seq, n = task
    w = Weights(alpha, beta)
    rng = np.random.default_rng(seed_seq)
    worst, where = math.inf, None
    for i in range(n):
        desc = shapes.sample_params(family, rng, i)
        d = shapes.deficit(shapes.build_shape(desc), w)
        if d < worst:
            worst, where = d, {"alpha": alpha, "beta": beta, "family": family, "index": i, "shape": desc}
    return worst, where


def cmd_verify(args):
    seed = DEFAULT_SEED if args.seed is None else args.seed
    n = DEFAULT_SAMPLES if args.samples is None else args.samples
    if n < 1:
        raise UsageError("--samples must be positive")
    weight_list = [(args.alpha, args.beta)] if args.alpha is not None or args.beta is not None else DEFAULT_WEIGHTS
    for ab in weight_list:
        if None in ab:
            raise UsageError("give both --alpha and --beta")
    families = shapes.FAMILIES if args.family == "all" else (args.family,)
    combos = [(ab, fam) for ab in weight_list for fam in families]
    children = np.random.SeedSequence(seed).spawn(len(combos))
    tasks = [(ab, fam, child, n) for (ab, fam), child in zip(combos, children)]
    if (args.workers or 1) > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            results = list(pool.map(_verify_task, tasks))
    else:
        results = [_verify_task(t) for t in tasks]
    # min-reduction in task order, so the result does not depend on scheduling
    worst, where = min(results, key=lambda r: r[0])
    tol = TOLERANCES["deficit"]
    prm = {"families": list(families), "weights": [list(ab) for ab in weight_list], "samples": n}
    return VerificationReport("verify", prm, n * len(tasks), worst, where, worst >= -tol, seed)


def figure_rows(kind: str) -> tuple[list[str], list[list[float]]]:
    if kind == "region":
        rows = []
        for beta in np.linspace(-1.0, 0.0, 101):
            rows.append(["alpha=2beta", beta, 2 * beta])
        for beta in np.linspace(-1.0, 4.0, 101):
            rows.append(["gamma=0", beta, beta - 1.0])
        for beta in np.linspace(0.0, 4.0, 201):
            rows.append(["alpha(beta+1)=beta^2", beta, beta * beta / (beta + 1.0)])
        return ["curve", "beta", "alpha"], rows
    if kind == "w-graph":
        xs = np.linspace(0.5, 20.0, 391)
        return ["x", "w"], [[x, 0.0 if x == 0.5 else special.small_w(x)] for x in xs]
    if kind == "competitor":
        w = Weights(-0.5, 0.0)  # gamma = 1/2
        taus = np.linspace(0.0, 1.0, 201)
        th = shapes.competitor_theta(taus, 1.0, w)
        rows = [[t, p, t * math.cos(p), t * math.sin(p)] for t, p in zip(taus, th)]
        rows += [[t, -p, t * math.cos(p), -t * math.sin(p)] for t, p in zip(taus[::-1], th[::-1])]
        return ["tau", "phi", "X", "Y"], rows
    if kind == "hyperbola":
        s = np.linspace(-3.0, 3.0, 121)
        return ["X", "Y"], [[math.cosh(v), math.sinh(v)] for v in s]
    raise UsageError(f"unknown figure {kind!r}")


def figure(kind: str, out: str) -> int:
    """Write the CSV data for one figure; returns the number of data rows."""
    header, rows = figure_rows(kind)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return len(rows)


def cmd_figure(args):
    _need(args, "out")
    return {"figure": args.kind, "out": args.out, "rows": figure(args.kind, args.out)}


COMMANDS = {
    "classify": cmd_classify,
    "gap": cmd_gap,
    "angle": cmd_angle,
    "dist": cmd_dist,
    "special": cmd_special,
    "competitor": cmd_competitor,
    "verify": cmd_verify,
    "figure": cmd_figure,
}


def _emit(result: Any, as_json: bool) -> int:
    if isinstance(result, VerificationReport):
        print(result.to_json() if as_json else result.to_text())
        return EXIT_OK if result.passed else EXIT_VIOLATION
    if as_json:
        print(json.dumps(result, sort_keys=True, indent=2))
    else:
        for k, v in result.items():
            print(f"{k}: {v}")
    return EXIT_OK


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        _apply_config(args)
        result = COMMANDS[args.command](args)
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return _emit(result, bool(args.json))


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
