"""Command-line driver.

Exit status: 0 on success, 1 when an invariant or tolerance check fails,
2 on bad input.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .annealing import minimize_distance
from .config import FAST_OVERRIDES, ExperimentConfig, coerce, load_config, load_schedule
from .errors import QJSDError
from .experiments import (
    CURVE_HEADER,
    REPORT_HEADER,
    calibration_metadata,
    curve_plot_script,
    curve_rows,
    histogram_plot_script,
    report_rows,
    run_fig1,
    run_fig2_many,
    run_properties,
    run_triangle,
    write_csv,
)
from .families import FAMILIES, family_state
from .fileio import read_density_matrix, write_density_matrix

EXIT_OK, EXIT_FAILED, EXIT_BAD_INPUT = 0, 1, 2


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--out", default="results", help="output directory (default: results)")
    p.add_argument("--config", help="key=value configuration file")
    p.add_argument("--fast", action="store_true", help="reduced grid/restarts/trials for CI")
    p.add_argument("--dump-config", action="store_true", help="print the effective configuration and exit")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="qjsd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("hist-distance", parents=[common], help="distance-to-I/N distributions")
    p.add_argument("--dims", help="comma-separated Hilbert-space dimensions")
    p.add_argument("--samples", type=int)
    p.add_argument("--bins", type=int)

    p = sub.add_parser("entanglement-curve", parents=[common], help="concurrence, E_JS, E_B along a family")
    p.add_argument("--family", choices=FAMILIES + ("all",))
    p.add_argument("--points", type=int)

    p = sub.add_parser("triangle-check", parents=[common], help="Monte Carlo triangle inequality for sqrt(QJSD)")
    p.add_argument("--dim", type=int, help="single run at this dimension (default: N=4 mixed and N=2 pure)")
    p.add_argument("--rank", type=int)
    p.add_argument("--trials", type=int)

    p = sub.add_parser("properties", parents=[common], help="numerical check of QJSD properties i-vii")
    p.add_argument("--trials", type=int)

    p = sub.add_parser("closest-separable", parents=[common], help="closest separable state to a two-qubit state")
    p.add_argument("state", nargs="?", help="density-matrix file")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--param", type=float)
    p.add_argument("--metric", choices=("js", "bures"), default="js")
    p.add_argument("--schedule", help="key=value annealing schedule file")
    return parser


def resolve_config(args) -> ExperimentConfig:
    """Defaults, then --config file, then --fast, then explicit flags."""
    cfg = ExperimentConfig()
    if args.config:
        cfg = cfg.update(load_config(args.config))
    if args.fast:
        cfg = cfg.update(FAST_OVERRIDES)
    flags = {}
    for key in ("seed", "samples", "bins", "points", "trials"):
        value = getattr(args, key, None)
        if value is not None:
            flags[key] = value
    if getattr(args, "dims", None):
        flags["dims"] = coerce("dims", args.dims)
    if getattr(args, "family", None) and args.verb == "entanglement-curve":
        flags["family"] = args.family
    return cfg.update(flags)


def cmd_hist_distance(cfg: ExperimentConfig, out: Path) -> int:
    result = run_fig1(cfg.dims, cfg.samples, cfg.bins, cfg.seed)
    files = {}
    for n, (centers, density) in result.histograms.items():
        name = f"hist_dim{n}.csv"
        write_csv(out / name, ("bin_center", "density"), zip(centers, density), cfg.seed)
        files[n] = name
    write_csv(out / "hist_summary.csv", ("dim", "mean", "stddev"), result.summary, cfg.seed)
    (out / "hist_distance.gp").write_text(histogram_plot_script(files))
    for n, mean, std in result.summary:
        print(f"N={n}: mean d_JS={mean:.6f} std={std:.6f}")
    print(f"means strictly increasing: {result.means_increasing}")
    return EXIT_OK if result.means_increasing else EXIT_FAILED


def cmd_entanglement_curve(cfg: ExperimentConfig, out: Path) -> int:
    families = FAMILIES if cfg.family == "all" else (cfg.family,)
    schedule = cfg.schedule()
    points = run_fig2_many(families, cfg.points, schedule, cfg.seed)
    meta = calibration_metadata(schedule)
    ok = True
    for fam in families:
        rows = [p for p in points if p.family == fam]
        name = f"curve_{fam}.csv"
        write_csv(out / name, CURVE_HEADER, curve_rows(rows), cfg.seed, **meta)
        (out / f"curve_{fam}.gp").write_text(curve_plot_script(name, fam))
        bad = [p for p in rows if not p.in_range()]
        ok &= not bad
        print(f"{fam}: {len(rows)} points written to {out / name}" + (f", {len(bad)} out of range" if bad else ""))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_triangle_check(cfg: ExperimentConfig, out: Path, dim=None, rank=None) -> int:
    runs = [(dim, rank)] if dim is not None else [(4, None), (2, 1)]
    reports = [run_triangle(n, cfg.trials, cfg.seed, r) for n, r in runs]
    write_csv(out / "triangle.csv", REPORT_HEADER, report_rows(reports, out), cfg.seed)
    for rep in reports:
        print(f"{rep.name}: trials={rep.trials} worst_slack={rep.worst_slack:.3e} violations={rep.violations}")
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_FAILED


def cmd_properties(cfg: ExperimentConfig, out: Path) -> int:
    reports = run_properties(cfg.trials, cfg.seed)
    write_csv(out / "properties.csv", REPORT_HEADER, report_rows(reports, out), cfg.seed)
    for rep in reports:
        print(f"({rep.property}) max_violation={rep.max_violation:.3e} {'ok' if rep.passed else 'FAIL'}")
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_FAILED


def cmd_closest_separable(cfg: ExperimentConfig, out: Path, args) -> int:
    if args.state:
        rho = read_density_matrix(args.state)
    elif args.family is not None and args.param is not None:
        rho = family_state(args.family, args.param)
    else:
        raise QJSDError("give a state file or both --family and --param")
    if args.schedule:
        schedule = load_schedule(args.schedule, seed=cfg.seed)
        if args.seed is not None:
            schedule = replace(schedule, seed=args.seed)
    else:
        schedule = cfg.schedule()
    res = minimize_distance(rho, args.metric, schedule)
    write_density_matrix(out / "closest_state.txt", res.closest_state)
    dec = res.decomposition
    rows = [(w, *a, *b) for w, a, b in zip(dec.weights, dec.bloch_a, dec.bloch_b)]
    write_csv(out / "decomposition.csv", ("weight", "ax", "ay", "az", "bx", "by", "bz"), rows, schedule.seed)
    write_csv(
        out / "closest_summary.csv",
        ("metric", "raw_value", "normalized_value", "converged", "evaluations", "calibration"),
        [(res.metric, res.raw_value, res.normalized_value, res.converged, res.evaluations, res.calibration)],
        schedule.seed,
    )
    print(f"metric={res.metric} raw={res.raw_value:.8g} normalized={res.normalized_value:.8g} converged={res.converged}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.dump_config:
            sys.stdout.write(cfg.dump())
            return EXIT_OK
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.verb == "hist-distance":
            return cmd_hist_distance(cfg, out)
        if args.verb == "entanglement-curve":
            return cmd_entanglement_curve(cfg, out)
        if args.verb == "triangle-check":
            return cmd_triangle_check(cfg, out, args.dim, args.rank)
        if args.verb == "properties":
            return cmd_properties(cfg, out)
        return cmd_closest_separable(cfg, out, args)
    except (QJSDError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
