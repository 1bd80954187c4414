"""Command line harness.

    galelab oracle-build --cap 4 --out sizes.tsv
    galelab validate --config gale.json [--depth N] [--precision P] [--out DIR]
    galelab run --config exp.json [--depth N] [--horizon N] [--precision P] [--seed S] [--out DIR]

Exit status: 0 every check passed, 1 some check failed, 2 bad config or
usage, 3 some comparison stayed undecided, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from .experiments import ConfigError, ExperimentConfig, RunReport, run_experiment
from .oracle import ArityError, build_cache
from .strategies import WitnessError

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_INDETERMINATE, EXIT_IO = 0, 1, 2, 3, 4
EXIT_FOR_VERDICT = {"PASS": EXIT_PASS, "FAIL": EXIT_FAIL, "INDETERMINATE": EXIT_INDETERMINATE}

log = logging.getLogger("galelab")


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(path, f"cannot read config: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def write_report(report: RunReport, out: str) -> list[str]:
    os.makedirs(out, exist_ok=True)
    written = []

    def put(name: str, text: str):
        path = os.path.join(out, name)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        written.append(path)

    put("report.txt", report.to_text())
    put("report.json", json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n")
    for name, lines in sorted(report.files.items()):
        put(name, "".join(line + "\n" for line in lines))
    # timing lives apart from the reports so that those stay byte-identical
    if report.wall_clock is not None:
        put("timing.json", json.dumps({"wall_clock_seconds": round(report.wall_clock, 3)}) + "\n")
    return written


def _apply_overrides(raw: dict, args: argparse.Namespace) -> dict:
    raw = dict(raw)
    for key in ("depth", "horizon", "precision", "seed"):
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = value
    return raw


def cmd_oracle_build(cap: int, path: str) -> int:
    """Write the circuit-size cache; returns the record count."""
    return build_cache(cap, path)


def _run(raw: dict, args, expect: tuple[str, ...]) -> int:
    cfg = ExperimentConfig.from_dict(_apply_overrides(raw, args))
    if cfg.kind not in expect:
        raise ConfigError("config.kind", f"{cfg.kind} cannot be used with this subcommand")
    if cfg.kind == "oracle-build":
        path = args.out or cfg.output
        if not path:
            raise ConfigError("config.output", "oracle-build needs an output path")
        count = cmd_oracle_build(cfg.cap, path)
        print(f"wrote {count} records to {path}")
        return EXIT_PASS
    t0 = time.perf_counter()
    report = run_experiment(cfg)
    report.wall_clock = time.perf_counter() - t0
    out = args.out or cfg.output or "galelab-out"
    write_report(report, out)
    print(report.to_text(), end="")
    print(f"wall-clock {report.wall_clock:.2f}s; reports in {out}", file=sys.stderr)
    return EXIT_FOR_VERDICT[report.verdict]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="galelab", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    ob = sub.add_parser("oracle-build", help="write the exact circuit-size cache")
    ob.add_argument("--cap", type=int, default=None, help="arity cap (0..4)")
    ob.add_argument("--config", help="config with kind oracle-build")
    ob.add_argument("--out", help="cache file path")

    for name, helptext in (("validate", "check the (scaled) supergale condition"),
                           ("run", "run an experiment")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--depth", type=int, help="tree depth for validators")
        p.add_argument("--precision", type=int, help="starting interval precision in bits")
        p.add_argument("--out", help="output directory")
        p.add_argument("--seed", type=int, help="seed for the random filler")
        if name == "run":
            p.add_argument("--horizon", type=int, help="trajectory length")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "oracle-build":
            if args.config:
                raw = load_config(args.config)
                if args.cap is not None:
                    raw = {**raw, "cap": args.cap}
                return _run(raw, args, ("oracle-build",))
            if args.cap is None or not args.out:
                raise ConfigError("oracle-build", "give --cap and --out, or --config")
            count = cmd_oracle_build(args.cap, args.out)
            print(f"wrote {count} records to {args.out}")
            return EXIT_PASS
        raw = load_config(args.config)
        expect = ("validate",) if args.command == "validate" else (
            "validate", "thm45", "thm46", "thm48", "thm413", "oracle-build")
        return _run(raw, args, expect)
    except (ConfigError, WitnessError, ArityError) as exc:
        print(f"galelab: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        where = f" ({exc.filename})" if getattr(exc, "filename", None) else ""
        print(f"galelab: I/O error{where}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
