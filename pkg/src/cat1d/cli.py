"""Command-line front end: run experiments (by preset or JSON config),
produce convergence tables, dump coefficient tables and stability curves.

All numeric output is CSV with full double precision (17 significant
digits); plotting lives outside this package.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .driver import (ConfigError, Grid, RunConfig, convergence_study, run)
from .fd_coeffs import offgrid_coeffs, centered_coeffs
from .presets import PRESETS, ConvergencePreset, RunPreset, get_preset
from .stability import h2_samples
from .weno import WenoConfig

_COMPONENT_NAMES = {1: ("u",), 3: ("density", "momentum", "energy")}


def _fmt(v):
    return f"{float(v):.17g}"


# ---------------------------------------------------------------------------
# config (de)serialization

def _check_keys(section, data, allowed):
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) in {section}: {', '.join(unknown)}")


def config_from_dict(data):
    _check_keys("config", data, (
        "grid", "model", "scheme", "boundary", "ic", "t_end",
        "output_times", "label"))
    grid_d = dict(data.get("grid", {}))
    _check_keys("grid", grid_d, ("n", "x_lo", "x_hi"))
    if "n" not in grid_d:
        raise ConfigError("grid.n is required")
    grid = Grid(int(grid_d["n"]), float(grid_d.get("x_lo", 0.0)),
                float(grid_d.get("x_hi", 1.0)))

    model_d = dict(data.get("model", {"name": "advection"}))
    _check_keys("model", model_d, ("name", "a", "gamma"))
    model_name = model_d.pop("name", "advection")

    scheme_d = dict(data.get("scheme", {}))
    _check_keys("scheme", scheme_d, ("name", "p", "cfl", "limiter", "eps", "power"))
    weno = WenoConfig(eps=float(scheme_d.get("eps", 1e-6)),
                      power=int(scheme_d.get("power", 2)))

    ic_d = dict(data.get("ic", {}))
    _check_keys("ic", ic_d, ("name", "lo", "hi", "split", "amplitude", "gamma"))
    ic_name = ic_d.pop("name", None)
    if ic_name is None:
        raise ConfigError("ic.name is required")

    return RunConfig(
        grid=grid,
        model=model_name,
        model_params=model_d,
        scheme=scheme_d.get("name", "CAT"),
        p=int(scheme_d.get("p", 1)),
        cfl=float(scheme_d.get("cfl", 0.5)),
        limiter=scheme_d.get("limiter", "van_albada2"),
        weno=weno,
        boundary=data.get("boundary", "periodic"),
        ic=ic_name,
        ic_params=ic_d,
        t_end=float(data.get("t_end", 1.0)),
        output_times=tuple(data.get("output_times", ())),
        label=data.get("label", ""),
    )


def config_to_dict(config):
    return {
        "grid": {"n": config.grid.n, "x_lo": config.grid.x_lo,
                 "x_hi": config.grid.x_hi},
        "model": {"name": config.model, **dict(config.model_params)},
        "scheme": {"name": config.scheme, "p": config.p, "cfl": config.cfl,
                   "limiter": config.limiter, "eps": config.weno.eps,
                   "power": config.weno.power},
        "boundary": config.boundary,
        "ic": {"name": config.ic, **dict(config.ic_params)},
        "t_end": config.t_end,
        "output_times": list(config.output_times),
        "label": config.label,
    }


def parse_config(source):
    """RunConfig(s) from a preset name or a JSON file path."""
    if source in PRESETS:
        preset = PRESETS[source]
        return list(preset.configs)
    path = Path(source)
    if not path.exists():
        raise ConfigError(f"no preset or config file named '{source}'")
    with open(path) as fh:
        data = json.load(fh)
    return [config_from_dict(data)]


# ---------------------------------------------------------------------------
# CSV emission

def emit_solution_csv(result, outdir, label=None):
    """One CSV per recorded output time, columns x then components."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    label = label or result.config.name() or "run"
    x = result.x
    names = _COMPONENT_NAMES.get(result.final.shape[1])
    if names is None:
        names = tuple(f"u{i}" for i in range(result.final.shape[1]))
    paths = []
    for t, state in zip(result.times[1:], result.states[1:]):
        path = outdir / f"{label}_t{t:g}.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("x",) + names)
            for xi, row in zip(x, state):
                writer.writerow([_fmt(xi)] + [_fmt(v) for v in row])
        paths.append(path)
    return paths


def emit_convergence_table(report, path):
    """CSV with dx, L1 error and empirical order (blank on the first row)."""
    if not report.rows:
        raise ValueError("empty convergence report")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("dx", "l1_error", "order"))
        for row in report.rows:
            writer.writerow((
                _fmt(row.dx),
                f"{row.error:.6e}",
                "" if row.order is None else f"{row.order:.2f}",
            ))
    return path


def emit_stability_csv(p_values, c_values, stream):
    writer = csv.writer(stream)
    writer.writerow(["c"] + [f"h2_p{p}" for p in p_values])
    samples = h2_samples(p_values, c_values)
    for c, row in zip(c_values, samples):
        writer.writerow([_fmt(c)] + [_fmt(v) for v in row])


# ---------------------------------------------------------------------------
# subcommands

def _cmd_run(args):
    configs = parse_config(args.preset or args.config)
    for config in configs:
        cfg = config
        if not cfg.output_times:
            from .driver import replace_config
            cfg = replace_config(cfg, output_times=(cfg.t_end,))
        result = run(cfg)
        paths = emit_solution_csv(result, args.out)
        print(f"{cfg.name()}: {result.steps} steps, "
              f"{result.wall_time:.3f} s "
              f"({1e3 * result.per_step:.3f} ms/step) -> "
              + ", ".join(str(p) for p in paths))
    return 0


def _cmd_convergence(args):
    preset = get_preset(args.preset)
    if not isinstance(preset, ConvergencePreset):
        raise ConfigError(f"preset '{args.preset}' is not a convergence study")
    outdir = Path(args.out)
    for config in preset.configs:
        report = convergence_study(config, list(preset.n_list), preset.reference)
        path = emit_convergence_table(report, outdir / f"{preset.name}_{config.name()}.csv")
        finest = report.rows[-1]
        order = "" if finest.order is None else f", order {finest.order:.2f}"
        print(f"{config.name()}: error {finest.error:.3e} at dx={finest.dx:.4f}"
              f"{order} -> {path}")
    return 0


def _cmd_coeffs(args):
    if args.q is None:
        w = centered_coeffs(args.p, args.k)
    else:
        q = args.q
        try:
            q = float(q)
            q = int(q) if q.is_integer() else q
        except ValueError:
            raise ConfigError(f"offset q must be numeric, got '{args.q}'")
        w = offgrid_coeffs(args.p, args.k, q)
    print(f"# p={args.p} k={args.k}" + ("" if args.q is None else f" q={w.q}"))
    print(f"{'offset':>8} {'weight':>24} {'exact':>16}")
    for j, val, frac in zip(w.offsets, w.values, w.exact):
        print(f"{j:>8} {val:>24.17g} {str(frac):>16}")
    return 0


def _cmd_stability(args):
    c = np.linspace(0.0, args.cmax, args.samples)
    p_values = list(range(1, args.pmax + 1))
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            emit_stability_csv(p_values, c, fh)
        print(f"wrote {path}")
    else:
        emit_stability_csv(p_values, c, sys.stdout)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cat1d",
        description="High-order one-step finite-difference schemes for 1D "
                    "conservation laws",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment and dump solution CSVs")
    group = p_run.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=sorted(
        name for name, p in PRESETS.items() if isinstance(p, RunPreset)))
    group.add_argument("--config", help="path to a JSON run configuration")
    p_run.add_argument("--out", default="out", help="output directory")
    p_run.set_defaults(func=_cmd_run)

    p_conv = sub.add_parser("convergence", help="run a convergence study")
    p_conv.add_argument("--preset", required=True, choices=sorted(
        name for name, p in PRESETS.items() if isinstance(p, ConvergencePreset)))
    p_conv.add_argument("--out", default="out")
    p_conv.set_defaults(func=_cmd_convergence)

    p_coef = sub.add_parser("coeffs", help="print a differentiation-weight table")
    p_coef.add_argument("--p", type=int, required=True)
    p_coef.add_argument("--k", type=int, required=True)
    p_coef.add_argument("--q", default=None,
                        help="stencil offset; omit for the centered weights")
    p_coef.set_defaults(func=_cmd_coeffs)

    p_stab = sub.add_parser("stability", help="dump h2 stability samples as CSV")
    p_stab.add_argument("--pmax", type=int, default=4)
    p_stab.add_argument("--samples", type=int, default=201)
    p_stab.add_argument("--cmax", type=float, default=2.5)
    p_stab.add_argument("--out", default=None)
    p_stab.set_defaults(func=_cmd_stability)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, KeyError, OSError) as err:
        print(f"cat1d: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
