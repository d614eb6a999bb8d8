"""Command-line interface.

Subcommands: ``simulate``, ``coverage``, ``ci`` and ``depth``.  Values are
resolved as command-line flag > ``--config`` file (``key=value`` lines) >
built-in default; ``FDBOOT_SEED`` replaces the built-in default seed.
Each run prints a one-line JSON manifest with the resolved settings.

Exit codes: 0 success, 1 invalid input or parameters, 2 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__, kernels
from .boot import BootstrapMethod, bootstrap_bands
from .core import Grid
from .dataio import DatasetFormatError, dumps_dataset, dumps_table, read_dataset
from .errors import FdError
from .metrics import MetricKind
from .rng import RngStream
from .sim import DEFAULT_LEVELS, ExperimentConfig, GpSpec, KernelKind, run_coverage_experiment, simulate_gp
from .stats import DepthMethod, StatisticKind, depth_scores

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2

DEFAULTS = {
    "n": 100, "T": 101, "kernel": "exponential", "scale": 0.3,
    "statistic": "mean", "depth": "fm", "alpha": 0.5, "gamma": 0.05,
    "metric": "l2", "bootstrap": "plain", "beta": 0.05,
    "B1": 399, "B2": 399, "R": 200, "levels": ",".join(f"{x:.2f}" for x in DEFAULT_LEVELS),
    "level": 0.95, "method": "fm", "workers": 1,
}

TYPES = {"n": int, "T": int, "B1": int, "B2": int, "R": int, "workers": int, "seed": int,
         "scale": float, "alpha": float, "gamma": float, "beta": float, "level": float}


class CliError(Exception):
    def __init__(self, message, code=EXIT_INVALID):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(f"{self.prog}: {message}")


def _read_config(path):
    if path is None:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}", EXIT_IO) from None
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise CliError(f"{path}:{lineno}: expected key=value")
        out[key.strip()] = value.strip()
    return out


def _resolve(args, keys):
    config = _read_config(args.config)
    env_seed = os.environ.get("FDBOOT_SEED")
    resolved = {}
    for key in keys:
        value = getattr(args, key, None)
        if value is None:
            value = config.get(key)
        if value is None and key == "seed":
            value = env_seed if env_seed else 1
        if value is None:
            value = DEFAULTS.get(key)
        if value is not None and key in TYPES:
            try:
                value = TYPES[key](value)
            except ValueError:
                raise CliError(f"invalid value for {key}: {value!r}") from None
        resolved[key] = value
    return resolved


def _statistic(cfg) -> StatisticKind:
    text = str(cfg["statistic"]).lower()
    if text in ("median", "trimmed"):
        text = f"{text}-{cfg['depth']}"
    try:
        return StatisticKind.parse(text, alpha=cfg["alpha"], gamma=cfg["gamma"],
                                   metric=MetricKind.parse(cfg["metric"]))
    except FdError as exc:
        raise CliError(f"invalid {getattr(exc, 'parameter', None) or 'statistic'}: {exc}") from None
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _write(path, text):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None
    return str(path)


def _sibling_svg(out, explicit):
    return explicit if explicit else str(Path(out).with_suffix(".svg"))


def _load(path):
    try:
        return read_dataset(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from None
    except DatasetFormatError as exc:
        raise CliError(f"{path}: {exc}") from None


def _manifest(command, cfg, outputs, started):
    return {
        "command": command,
        "config": cfg,
        "version": __version__,
        "backend": kernels.BACKEND,
        "wall_clock_s": round(time.perf_counter() - started, 3),
        "outputs": outputs,
    }


# -- subcommands -----------------------------------------------------------------

def cmd_simulate(args):
    cfg = _resolve(args, ["n", "T", "kernel", "scale", "seed", "out"])
    try:
        kernel = KernelKind(str(cfg["kernel"]).lower())
    except ValueError:
        raise CliError(f"unknown kernel {cfg['kernel']!r}") from None
    spec = GpSpec(n=cfg["n"], grid=Grid.uniform(cfg["T"]), kernel=kernel, scale=cfg["scale"])
    sample = simulate_gp(spec, RngStream(cfg["seed"], (0,)))
    return cfg, [_write(cfg["out"], dumps_dataset(sample))]


def cmd_coverage(args):
    from .plotting import coverage_svg

    cfg = _resolve(args, ["statistic", "depth", "alpha", "gamma", "metric", "bootstrap", "beta",
                          "n", "T", "kernel", "scale", "B1", "B2", "R", "levels", "seed",
                          "workers", "out"])
    stat = _statistic(cfg)
    try:
        levels = tuple(float(x) for x in str(cfg["levels"]).split(",") if x.strip())
        config = ExperimentConfig(
            gp=GpSpec(n=cfg["n"], grid=Grid.uniform(cfg["T"]),
                      kernel=KernelKind(str(cfg["kernel"]).lower()), scale=cfg["scale"]),
            statistic=stat,
            metric=MetricKind.parse(cfg["metric"]),
            bootstrap=BootstrapMethod.parse(cfg["bootstrap"], cfg["beta"]),
            B1=cfg["B1"], B2=cfg["B2"], R=cfg["R"], nominal_levels=levels, seed=cfg["seed"],
        )
    except (FdError, ValueError) as exc:
        param = getattr(exc, "parameter", None)
        raise CliError(f"invalid {param}: {exc}" if param else str(exc)) from None
    table = run_coverage_experiment(config, workers=cfg["workers"])
    out = cfg["out"]
    svg = _sibling_svg(out, args.svg)
    title = f"{stat.label}, {config.metric.value}, {config.bootstrap.label}, n={config.gp.n}"
    return cfg, [_write(out, dumps_table(table.COLUMNS, table.records())),
                 _write(svg, coverage_svg(table, title))]


def cmd_ci(args):
    from .plotting import band_svg

    cfg = _resolve(args, ["input", "statistic", "depth", "alpha", "gamma", "metric", "bootstrap",
                          "beta", "level", "B1", "B2", "seed", "out"])
    sample, _ = _load(cfg["input"])
    stat = _statistic(cfg)
    try:
        bands = bootstrap_bands(sample, stat, MetricKind.parse(cfg["metric"]),
                                BootstrapMethod.parse(cfg["bootstrap"], cfg["beta"]),
                                cfg["level"], cfg["B1"], cfg["B2"], RngStream(cfg["seed"]))
    except (FdError, ValueError) as exc:
        param = getattr(exc, "parameter", None)
        raise CliError(f"invalid {param}: {exc}" if param else str(exc)) from None
    single, double = bands["single"], bands["double"]
    columns = ["t", "estimate", "lower_single", "upper_single", "lower_double", "upper_double"]
    records = [
        {"t": float(t), "estimate": float(single.estimate.values[j]),
         "lower_single": float(single.lower.values[j]), "upper_single": float(single.upper.values[j]),
         "lower_double": float(double.lower.values[j]), "upper_double": float(double.upper.values[j])}
        for j, t in enumerate(sample.grid.points)
    ]
    cfg["cutoff_single"], cfg["cutoff_double"] = single.cutoff, double.cutoff
    cfg["degenerate"] = [name for name, b in bands.items() if b.degenerate]
    out = cfg["out"]
    svg = _sibling_svg(out, args.svg)
    return cfg, [_write(out, dumps_table(columns, records)),
                 _write(svg, band_svg(sample, bands, title=f"{stat.label}, {cfg['level']:.0%} bands"))]


def cmd_depth(args):
    cfg = _resolve(args, ["input", "method", "alpha", "metric", "out"])
    sample, ids = _load(cfg["input"])
    try:
        if str(cfg["method"]).lower() == "fm":
            depth = DepthMethod.fraiman_muniz()
        elif str(cfg["method"]).lower() == "radius":
            depth = DepthMethod.alpha_radius(cfg["alpha"], MetricKind.parse(cfg["metric"]))
        else:
            raise CliError(f"unknown depth method {cfg['method']!r}; expected 'fm' or 'radius'")
        scores = depth_scores(sample, depth)
    except FdError as exc:
        raise CliError(f"invalid {getattr(exc, 'parameter', None) or 'input'}: {exc}") from None
    ranks = scores.ranks()
    records = [{"curve_id": ids[i], "score": float(scores.scores[i]), "rank": int(ranks[i])}
               for i in scores.order]
    return cfg, [_write(cfg["out"], dumps_table(["curve_id", "score", "rank"], records))]


# -- parser ------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="fdboot", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"fdboot {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config", help="key=value file with default settings")
        sp.add_argument("--manifest", help="also append the JSON manifest line to this file")
        sp.add_argument("--out", "-o", required=True, help="output CSV path")

    def statistic_flags(sp):
        sp.add_argument("--statistic", help="mean, variance, median, trimmed (or median-fm, ...)")
        sp.add_argument("--depth", choices=["fm", "radius"], help="depth for median / trimmed mean")
        sp.add_argument("--alpha", type=float, help="alpha-radius probability (default 0.5)")
        sp.add_argument("--gamma", type=float, help="trimming proportion (default 0.05)")
        sp.add_argument("--metric", help="l2 or linf (default l2)")
        sp.add_argument("--bootstrap", help="plain or smooth (default plain)")
        sp.add_argument("--beta", type=float, help="smooth-bootstrap noise scale (default 0.05)")
        sp.add_argument("--B1", type=int, help="first-level replicates (default 399)")
        sp.add_argument("--B2", type=int, help="second-level replicates (default 399)")
        sp.add_argument("--seed", type=int)

    sp = sub.add_parser("simulate", help="write a Gaussian-process sample as a dataset CSV")
    common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--T", type=int)
    sp.add_argument("--kernel", help="exponential (default) or brownian")
    sp.add_argument("--scale", type=float)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("coverage", help="Monte Carlo coverage of single vs double bootstrap")
    common(sp)
    statistic_flags(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--T", type=int)
    sp.add_argument("--kernel")
    sp.add_argument("--scale", type=float)
    sp.add_argument("--R", type=int, help="Monte Carlo replications (default 200)")
    sp.add_argument("--levels", help="comma-separated nominal levels (default 0.50,...,0.95)")
    sp.add_argument("--workers", type=int, help="worker processes (result is independent of this)")
    sp.add_argument("--svg", help="SVG path (default: next to --out)")
    sp.set_defaults(func=cmd_coverage)

    sp = sub.add_parser("ci", help="single and double bootstrap bands for a dataset")
    common(sp)
    statistic_flags(sp)
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--level", type=float, help="confidence level (default 0.95)")
    sp.add_argument("--svg", help="SVG path (default: next to --out)")
    sp.set_defaults(func=cmd_ci)

    sp = sub.add_parser("depth", help="depth scores and ranks of the curves in a dataset")
    common(sp)
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--method", help="fm (default) or radius")
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--metric")
    sp.set_defaults(func=cmd_depth)
    return p


def main(argv=None) -> int:
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        cfg, outputs = args.func(args)
        line = json.dumps(_manifest(args.command, cfg, outputs, started), sort_keys=True)
        print(line)
        if args.manifest:
            try:
                with open(args.manifest, "a", encoding="utf-8") as fh:
                    fh.write(line + "\n")
            except OSError as exc:
                raise CliError(f"cannot write {args.manifest}: {exc}", EXIT_IO) from None
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except FdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
