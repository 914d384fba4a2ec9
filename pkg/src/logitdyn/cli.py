"""Command-line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 invalid config or
arguments, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bandit import run, sweep_sensitivity
from .config import (
    ConfigError,
    config_from_resolved,
    load_config,
    load_manifest,
    make_manifest,
    manifest_path_for,
    resolved_config,
    write_manifest,
)
from .exceptions import InvalidParameterError
from .output import write_sweep_csv, write_tables, write_trajectory_csv
from .verify import SEED, SUITES, run_suites

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3

DEFAULT_GRID = tuple(i / 10 for i in range(11))


def _err(msg: str) -> None:
    print(f"logitdyn: {msg}", file=sys.stderr)


def cmd_simulate(args) -> int:
    try:
        if args.manifest:
            env, cfg = config_from_resolved(load_manifest(args.manifest)["config"])
        else:
            env, cfg = load_config(args.config)
    except (ConfigError, InvalidParameterError) as exc:
        _err(f"invalid config: {exc}")
        return EXIT_CONFIG
    except OSError as exc:
        _err(f"cannot read config: {exc}")
        return EXIT_IO

    result = run(env, cfg)
    out = Path(args.out)
    manifest_path = manifest_path_for(out)
    manifest = make_manifest("simulate", resolved_config(env, cfg), [out.name, manifest_path.name], seed=cfg.seed)
    try:
        write_trajectory_csv(out, result.records)
        write_manifest(manifest_path, manifest)
    except OSError as exc:
        _err(f"cannot write output: {exc}")
        return EXIT_IO
    last = result.records[-1]
    print(f"{cfg.steps} steps -> {out}; final p(best arm)={result.final_probs[env.best_arm]:.6f} "
          f"final C(P)={result.final_collision:.6f} last update_norm={last.update_norm:.3e}")
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    results = run_suites(args.suite)
    failed = 0
    for r in results:
        print(r.line())
        if not r.passed:
            failed += 1
            if r.instance is not None:
                print("  replay: " + json.dumps({"check": r.name, "seed": SEED, **r.instance}))
    print(f"{len(results) - failed}/{len(results)} checks passed in {time.perf_counter() - t0:.1f}s")
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def cmd_tables(args) -> int:
    out_dir = Path(args.out)
    try:
        paths = write_tables(out_dir)
        manifest_path = out_dir / "tables.manifest.json"
        write_manifest(manifest_path, make_manifest("tables", {}, [p.name for p in paths] + [manifest_path.name]))
    except OSError as exc:
        _err(f"cannot write tables: {exc}")
        return EXIT_IO
    for p in paths:
        print(p)
    return EXIT_OK


def _parse_list(name: str, text: str | None) -> tuple[float, ...]:
    if text is None:
        return DEFAULT_GRID
    try:
        values = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigError(name, f"malformed list {text!r}") from None
    if not values:
        raise ConfigError(name, "empty list")
    if any(not 0.0 <= v <= 1.0 for v in values):
        raise ConfigError(name, "values must lie in [0, 1]")
    return values


def cmd_sweep(args) -> int:
    try:
        pcs = _parse_list("pc", args.pc)
        cs = _parse_list("collision", args.collision)
        if args.n is not None and args.n < 2:
            raise ConfigError("n", "must be >= 2")
    except ConfigError as exc:
        _err(f"invalid grid: {exc}")
        return EXIT_CONFIG
    cells = sweep_sensitivity(pcs, cs, n=args.n)
    out = Path(args.out)
    manifest_path = manifest_path_for(out)
    grid = {"pc": list(pcs), "collision": list(cs), "n": args.n}
    try:
        write_sweep_csv(out, cells)
        write_manifest(manifest_path, make_manifest("sweep", grid, [out.name, manifest_path.name]))
    except OSError as exc:
        _err(f"cannot write output: {exc}")
        return EXIT_IO
    feasible = sum(c.sensitivity is not None for c in cells)
    print(f"{feasible}/{len(cells)} feasible cells -> {out}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _err(message)
        sys.exit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="logitdyn", description="Softmax policy-gradient logit dynamics laboratory.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="run a bandit simulation and write a trajectory CSV")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="key = value config file")
    src.add_argument("--manifest", help="manifest of a previous run to reproduce")
    p.add_argument("--out", required=True, help="trajectory CSV path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run numerical verification suites")
    p.add_argument("suite", choices=[*SUITES, "all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tables", help="write the update-scaler and entropy reference tables")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("sweep", help="tabulate the sensitivity factor over (p_chosen, C) pairs")
    p.add_argument("--pc", help="comma-separated p_chosen values (default 0,0.1,...,1)")
    p.add_argument("--collision", help="comma-separated collision values (default 0,0.1,...,1)")
    p.add_argument("--n", type=int, help="number of actions; tightens the feasible lower bound on C")
    p.add_argument("--out", required=True, help="sweep CSV path")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
