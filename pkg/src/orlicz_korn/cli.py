"""Command-line orchestration with reproducible experiment manifests.

Every subcommand writes tidy CSV (one observation per row, witness constants
included, never bare verdicts) plus a manifest JSON capturing the command,
parameters, catalog version, seed, package version and timestamp.  Output
bytes depend only on the manifest parameters and seed, so re-running a
manifest reproduces them exactly; the timestamp lives in the manifest only.

Exit codes: 0 success, 1 verdict failure (an expected-holds check failing),
2 usage errors (including unknown catalog names).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import __version__, balance, bogovskii, fields, hardy, laminate, rearrange, young

__all__ = ["main", "ExperimentManifest"]


@dataclass
class ExperimentManifest:
    command: str
    parameters: dict
    catalog_version: str
    seed: int
    tool_version: str
    timestamp: str

    def write(self, outdir: str):
        path = os.path.join(outdir, "manifest.json")
        with open(path, "w") as fh:
            json.dump(dataclasses.asdict(self), fh, indent=1, sort_keys=True)


def _fmt(x) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return f"{x:.12g}"
    return str(x)


def _write_csv(outdir: str, name: str, header, rows) -> str:
    path = os.path.join(outdir, name)
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    return path


def _emit(args, command: str, params: dict, tables: dict) -> None:
    outdir = args.out
    os.makedirs(outdir, exist_ok=True)
    for name, (header, rows) in tables.items():
        p = _write_csv(outdir, name, header, rows)
        print(f"wrote {p}")
    ExperimentManifest(command, params, young.CATALOG_VERSION,
                       getattr(args, "seed", 0), __version__,
                       time.strftime("%Y-%m-%dT%H:%M:%S")).write(outdir)


def _resolve(name: str, catalog: dict):
    try:
        return young.resolve(name, catalog)
    except KeyError:
        print(f"unknown Young function {name!r}; catalog entries:", file=sys.stderr)
        for key in sorted(catalog):
            print(f"  {key}", file=sys.stderr)
        raise SystemExit(2)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("ORLICZ_KORN_THREADS", "1")))
    except ValueError:
        return 1


def _verdict_row(v):
    return [v.holds, v.witness_constant, v.threshold_t0]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_check_balance(args, catalog) -> int:
    A = _resolve(args.A, catalog)
    B = _resolve(args.B, catalog)
    rep = balance.check_balance(A, B)
    rows = [[args.A, args.B, rep.primal.holds, rep.dual.holds,
             rep.witness_c, rep.threshold_t0]]
    _emit(args, "check-balance", {"A": args.A, "B": args.B},
          {"balance.csv": (["name_A", "name_B", "primal_holds", "dual_holds",
                            "c", "t0"], rows)})
    print(f"primal={rep.primal.holds} dual={rep.dual.holds} "
          f"c={rep.witness_c} t0={rep.threshold_t0}")
    return 0


def _cmd_classify_examples(args, catalog) -> int:
    rows = []
    failures = 0
    for entry in balance.classify_catalog_pairs(catalog):
        rep = entry["report"]
        ok = rep.holds == entry["expected_holds"]
        failures += 0 if ok else 1
        rows.append([entry["name_A"], entry["name_B"], rep.primal.holds,
                     rep.dual.holds, rep.witness_c, rep.threshold_t0,
                     entry["expected_holds"], ok])
        print(f"{entry['name_A']:>16s} {entry['name_B']:>16s} "
              f"holds={rep.holds} expected={entry['expected_holds']}")
    _emit(args, "classify-examples", {},
          {"classify.csv": (["name_A", "name_B", "primal_holds", "dual_holds",
                             "c", "t0", "expected", "as_expected"], rows)})
    return 1 if failures else 0


def _cmd_verify_hardy(args, catalog) -> int:
    A = _resolve(args.A, catalog)
    B = _resolve(args.B, catalog)
    rep = hardy.verify_hardy(A, B, args.L, args.trials, args.seed)
    rows = [[t.label, t.ratio_avg, t.ratio_dual] for t in rep.trials]
    sweep = [[d, r] for d, r in rep.spike_sweep]
    _emit(args, "verify-hardy",
          {"A": args.A, "B": args.B, "L": args.L, "trials": args.trials},
          {"hardy_trials.csv": (["label", "ratio_avg", "ratio_dual"], rows),
           "hardy_sweep.csv": (["delta", "ratio_avg"], sweep)})
    print(f"worst averaging ratio {rep.worst_avg.ratio_avg:.6g} "
          f"({rep.worst_avg.label}); worst dual {rep.worst_dual.ratio_dual:.6g}; "
          f"sweep growing: {rep.sweep_growing}; balance holds: {rep.balance_holds}")
    return 1 if (rep.balance_holds and rep.sweep_growing) else 0


def _cmd_verify_korn(args, catalog) -> int:
    A = _resolve(args.A, catalog)
    B = _resolve(args.B, catalog)
    mode = {"zero_bc": "zero_bc", "full": "full_domain"}[args.mode]
    dim = 2 if (args.suite == "laminate" or args.operator == "E" and args.dim == 2) else 3
    grid = fields.Grid.box(args.grid, dim=max(dim, 2 if args.suite == "laminate" else 3))
    rows = []
    suite_fields = fields._suite_fields(args.suite, A, B, grid, args.trials, args.seed)
    for i, u in enumerate(suite_fields):
        try:
            r = fields.korn_ratio(A, B, u, mode, args.operator)
        except fields.KernelMembership:
            r = float("nan")
        rows.append([f"{args.suite}_{i}", r])
        print(f"{args.suite}_{i}: ratio {r:.6g}")
    _emit(args, "verify-korn",
          {"A": args.A, "B": args.B, "grid": args.grid, "mode": args.mode,
           "operator": args.operator, "suite": args.suite, "trials": args.trials},
          {"korn_ratios.csv": (["trial", "ratio"], rows)})
    return 0


def _cmd_laminate_demo(args, catalog) -> int:
    A = _resolve(args.A, catalog)
    B = _resolve(args.B, catalog)
    rows = []
    for row in laminate.blowup_curve(A, B, args.m_max, args.r):
        rows.append([row["m"], row["t_m"], row["sym_moment"],
                     row["full_moment"], row["ratio"]])
        print(f"m={row['m']:2d} t_m={row['t_m']:.6g} ratio={row['ratio']:.6g}")
    tables = {"blowup.csv": (["m", "t_m", "sym_moment", "full_moment", "ratio"], rows)}
    if args.realize:
        real_rows = []
        for m in range(1, min(args.m_max, 3) + 1):
            L = laminate.build_laminate(m, 1.0)
            real = laminate.realize_field(L, args.r, args.depth)
            phi = lambda M: np.linalg.norm(
                M.array if isinstance(M, laminate.Matrix2) else M, axis=(-2, -1))
            exact = laminate.moment(L, phi) * args.r ** 2
            realized = real.moment(phi)
            real_rows.append([m, exact, realized,
                              abs(realized - exact) / max(abs(exact), 1e-300)])
            u = real.as_grid_field(args.grid)
            fields.save_field(u, os.path.join(args.out, f"laminate_m{m}"))
        tables["realize.csv"] = (["m", "exact_moment", "realized_moment",
                                  "rel_gap"], real_rows)
    os.makedirs(args.out, exist_ok=True)
    _emit(args, "laminate-demo",
          {"A": args.A, "B": args.B, "m_max": args.m_max, "r": args.r,
           "realize": args.realize, "depth": args.depth, "grid": args.grid},
          tables)
    return 0


def _cmd_bogovskii(args, catalog) -> int:
    A = _resolve(args.A, catalog)
    B = _resolve(args.B, catalog)
    cfg = bogovskii.make_config(args.grid)
    suite = (bogovskii.smooth_suite(cfg) if args.suite == "smooth"
             else bogovskii.spike_suite(cfg))
    rows = []
    bad = 0
    for i, f in enumerate(suite):
        bf = bogovskii.apply(cfg, f)
        res = bogovskii.div_residual(cfg, f, bf)
        num = fields.norm_of_tensor(B, fields.gradient(bf))
        w = np.full(f.size, cfg.grid.cell_volume)
        den = rearrange.norm(A, rearrange.SampledFunction(np.abs(f).ravel(), w))
        ratio = num / den if den > 0 else float("nan")
        if args.suite == "smooth" and res > 0.05:
            bad += 1
        rows.append([f"{args.suite}_{i}", res, ratio])
        print(f"{args.suite}_{i}: div residual {res:.4f}, norm ratio {ratio:.6g}")
    _emit(args, "bogovskii",
          {"A": args.A, "B": args.B, "grid": args.grid, "suite": args.suite},
          {"bogovskii.csv": (["trial", "div_residual", "norm_ratio"], rows)})
    return 1 if bad else 0


def _cmd_poincare(args, catalog) -> int:
    A = _resolve(args.A, catalog)
    grid = fields.Grid.box(args.grid, dim=3)
    mode = {"zero_bc": "zero_bc", "full": "full_domain"}[args.mode]
    rows = fields.poincare_suite(A, args.suite, grid, mode, args.trials, args.seed)
    bad = sum(0 if math.isfinite(r) else 1 for _, r in rows)
    for label, r in rows:
        print(f"{label}: ratio {r:.6g}")
    _emit(args, "poincare",
          {"A": args.A, "grid": args.grid, "mode": args.mode,
           "suite": args.suite, "trials": args.trials},
          {"poincare.csv": (["trial", "ratio"], rows)})
    return 1 if bad else 0


def _cmd_negative_norm(args, catalog) -> int:
    A = _resolve(args.A, catalog)
    grid = fields.Grid.box(args.grid, dim=args.dim)
    rng = np.random.default_rng(args.seed)
    Xc = grid.cell_coords()
    rows = []
    bad = 0
    C_triv = 2.0 * math.sqrt(grid.dim)
    for i in range(args.trials):
        c = [rng.uniform(0.3, 0.7) for _ in range(grid.dim)]
        s = rng.uniform(0.1, 0.3)
        u = np.exp(-sum((x - ci) ** 2 for x, ci in zip(Xc, c)) / s ** 2)
        lb = fields.negative_norm_lower_bound(A, u, grid)
        centered = np.abs(u - u.mean()).ravel()
        w = np.full(centered.shape, grid.cell_volume)
        ub = C_triv * rearrange.norm(A, rearrange.SampledFunction(centered, w))
        ok = lb <= ub * (1.0 + 1e-9)
        bad += 0 if ok else 1
        rows.append([f"bump_{i}", lb, ub, ok])
        print(f"bump_{i}: lower {lb:.6g} <= trivial bound {ub:.6g}: {ok}")
    _emit(args, "negative-norm",
          {"A": args.A, "grid": args.grid, "trials": args.trials},
          {"negative_norm.csv": (["trial", "lower_bound", "trivial_upper", "ok"],
                                 rows)})
    return 1 if bad else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="orlicz-korn",
        description="Numerical toolkit for Korn-type inequalities in Orlicz spaces")
    p.add_argument("--config", help="JSON file whose entries replace flag defaults")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--out", default="out", help="output directory")
        if seed:
            sp.add_argument("--seed", type=int, default=20240)

    sp = sub.add_parser("check-balance", help="decide the balance conditions for a pair")
    sp.add_argument("--A", required=True)
    sp.add_argument("--B", required=True)
    sp.add_argument("--global", dest="global_scope", action="store_true",
                    help="kept for interface compatibility; the sweep always "
                         "scans t0 = 0 first")
    common(sp, seed=False)
    sp.set_defaults(seed=0, func=_cmd_check_balance)

    sp = sub.add_parser("classify-examples", help="classify the built-in example pairs")
    common(sp, seed=False)
    sp.set_defaults(seed=0, func=_cmd_classify_examples)

    sp = sub.add_parser("verify-hardy", help="empirical Hardy-operator norm ratios")
    sp.add_argument("--A", required=True)
    sp.add_argument("--B", required=True)
    sp.add_argument("--L", type=float, default=1.0)
    sp.add_argument("--trials", type=int, default=64)
    common(sp)
    sp.set_defaults(func=_cmd_verify_hardy)

    sp = sub.add_parser("verify-korn", help="Korn-ratio harness over a trial suite")
    sp.add_argument("--A", required=True)
    sp.add_argument("--B", required=True)
    sp.add_argument("--grid", type=int, default=16)
    sp.add_argument("--mode", choices=["zero_bc", "full"], default="zero_bc")
    sp.add_argument("--operator", choices=["E", "ED"], default="ED")
    sp.add_argument("--suite", choices=["smooth", "random", "laminate", "radial"],
                    default="smooth")
    sp.add_argument("--trials", type=int, default=8)
    sp.add_argument("--dim", type=int, default=3)
    common(sp)
    sp.set_defaults(func=_cmd_verify_korn)

    sp = sub.add_parser("laminate-demo", help="blow-up table and optional realization")
    sp.add_argument("--m-max", dest="m_max", type=int, default=10)
    sp.add_argument("--A", required=True)
    sp.add_argument("--B", required=True)
    sp.add_argument("--r", type=float, default=1.0)
    sp.add_argument("--realize", action="store_true")
    sp.add_argument("--depth", type=int, default=64)
    sp.add_argument("--grid", type=int, default=512)
    common(sp, seed=False)
    sp.set_defaults(seed=0, func=_cmd_laminate_demo)

    sp = sub.add_parser("bogovskii", help="divergence solver residuals and norm ratios")
    sp.add_argument("--grid", type=int, default=64)
    sp.add_argument("--A", required=True)
    sp.add_argument("--B", required=True)
    sp.add_argument("--suite", choices=["smooth", "spike"], default="smooth")
    common(sp, seed=False)
    sp.set_defaults(seed=0, func=_cmd_bogovskii)

    sp = sub.add_parser("poincare", help="Poincare-ratio harness")
    sp.add_argument("--A", required=True)
    sp.add_argument("--grid", type=int, default=12)
    sp.add_argument("--mode", choices=["zero_bc", "full"], default="zero_bc")
    sp.add_argument("--suite", choices=["smooth", "random", "radial"], default="random")
    sp.add_argument("--trials", type=int, default=6)
    common(sp)
    sp.set_defaults(func=_cmd_poincare)

    sp = sub.add_parser("negative-norm", help="dictionary lower bound vs trivial upper bound")
    sp.add_argument("--A", required=True)
    sp.add_argument("--grid", type=int, default=16)
    sp.add_argument("--dim", type=int, default=3)
    sp.add_argument("--trials", type=int, default=4)
    common(sp)
    sp.set_defaults(func=_cmd_negative_norm)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # a config file replaces flag defaults; explicit flags still win
    config = {}
    if "--config" in argv:
        i = argv.index("--config")
        with open(argv[i + 1]) as fh:
            config = json.load(fh)
    parser = _build_parser()
    if config:
        for sp in parser._subparsers._group_actions[0].choices.values():
            known = {a.dest for a in sp._actions}
            sp.set_defaults(**{k: v for k, v in config.items() if k in known})
            for a in sp._actions:
                if a.dest in config:
                    a.required = False
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    os.environ.setdefault("ORLICZ_KORN_THREADS", "1")
    catalog = young.load_catalog()
    try:
        return args.func(args, catalog)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    raise SystemExit(main())
