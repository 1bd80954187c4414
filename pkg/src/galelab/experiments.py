"""Finite-depth experiments: configs, the checks each experiment runs, reports.

Every experiment rebuilds its gales from a JSON config, runs exhaustive
validators and witness trajectories, and records each claimed inequality as a
row ``(name, where, lhs, rhs, count, verdict)``.  Reports contain no timing
data, so reruns of one config are byte-identical.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .cantor import all_codes, count_index_set, decode, in_index_set, mask_prefix
from .gales import (
    Trajectory, ValidationReport, _quotient_codes, run_trajectory,
    validate_scaled_supergale, validate_supergale,
)
from .numeric import (
    CMP_CODES, DEFAULT_PREC, MAX_PREC, CapVector, Cmp, ExactCapital, as_fraction, cap_cmp,
    cap_mul, frac_str, pow2, to_interval,
)
from .oracle import ARITY_CAP, ThresholdFunction, make_oracle, threshold_set
from .scales import MAX_SCALE_INDEX, scale_eval
from .strategies import (
    WitnessPlan, block_end, block_start, build_combined, build_scaled_variant,
    _off_index_mask, gale_from_descriptor, io_lowerbound_transform, make_witness_sequence,
)

SCHEMA_VERSION = 1
KINDS = ("validate", "thm45", "thm46", "thm48", "thm413", "oracle-build")
MAX_DEPTH = 24          # full binary tree walks
MAX_HORIZON = 40        # trajectories and quotient-tree checks
NATURALITY_DEPTH = 15   # all-pairs check of the lower-bound transform


class ConfigError(ValueError):
    """Bad config value; ``location`` is a dotted path into the config."""

    def __init__(self, location: str, msg: str):
        super().__init__(f"{location}: {msg}")
        self.location = location


def _fraction(raw, loc: str) -> Fraction:
    try:
        return as_fraction(raw)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigError(loc, f"expected a rational number, got {raw!r}") from None


def _int(raw, loc: str, lo: int | None = None, hi: int | None = None) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ConfigError(loc, f"expected an integer, got {raw!r}")
    if lo is not None and raw < lo or hi is not None and raw > hi:
        raise ConfigError(loc, f"{raw} outside the allowed range {lo}..{hi}")
    return raw


@dataclass
class ExperimentConfig:
    kind: str
    gale: dict | None = None
    s: Fraction = Fraction(1, 2)
    scale: int = 0
    r: Fraction = Fraction(1, 2)
    imax: int = 3
    depth: int = 12
    horizon: int | None = None
    precision: int = DEFAULT_PREC
    seed: int = 0
    threshold: dict = field(default_factory=lambda: {"form": "power", "c": 2})
    oracle: dict = field(default_factory=lambda: {"kind": "circuit_size"})
    plan: dict = field(default_factory=lambda: {2: "0000", 3: "00000000"})
    filler: str = "ones"
    check: list | None = None
    scales: list = field(default_factory=lambda: [1, 2])
    cap: int = ARITY_CAP
    quotient: bool = False
    output: str | None = None

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config", "top level must be a JSON object")
        known = set(cls.__dataclass_fields__) | {"schema"}
        for key in raw:
            if key not in known:
                raise ConfigError(f"config.{key}", "unknown key")
        schema = raw.get("schema", SCHEMA_VERSION)
        if schema != SCHEMA_VERSION:
            raise ConfigError("config.schema", f"unsupported schema {schema!r}")
        kind = raw.get("kind")
        if kind not in KINDS:
            raise ConfigError("config.kind", f"expected one of {', '.join(KINDS)}")
        cfg = cls(kind)
        if raw.get("gale") is not None:
            if not isinstance(raw["gale"], dict) or "kind" not in raw["gale"]:
                raise ConfigError("config.gale", "expected a gale descriptor object")
            cfg.gale = raw["gale"]
        for key in ("s", "r"):
            if key in raw:
                v = _fraction(raw[key], f"config.{key}")
                if v < 0 or (key == "r" and not 0 < v <= 1):
                    raise ConfigError(f"config.{key}", f"{frac_str(v)} is out of range")
                setattr(cfg, key, v)
        limits = {"scale": (0, MAX_SCALE_INDEX), "imax": (1, ARITY_CAP), "depth": (0, MAX_DEPTH),
                  "horizon": (0, MAX_HORIZON), "precision": (16, MAX_PREC), "seed": (0, None),
                  "cap": (0, ARITY_CAP)}
        for key, (lo, hi) in limits.items():
            if key in raw and raw[key] is not None:
                setattr(cfg, key, _int(raw[key], f"config.{key}", lo, hi))
        if "threshold" in raw:
            try:
                ThresholdFunction.from_descriptor(raw["threshold"])
            except (ValueError, KeyError, TypeError, AttributeError) as exc:
                raise ConfigError("config.threshold", str(exc)) from None
            cfg.threshold = raw["threshold"]
        if "oracle" in raw:
            o = raw["oracle"]
            if not isinstance(o, dict) or o.get("kind") not in ("circuit_size", "toy_kt"):
                raise ConfigError("config.oracle.kind", "expected circuit_size or toy_kt")
            cfg.oracle = o
        if "plan" in raw:
            cfg.plan = cls._parse_plan(raw["plan"])
        if "filler" in raw:
            if raw["filler"] not in ("ones", "zeros", "random"):
                raise ConfigError("config.filler", "expected ones, zeros or random")
            cfg.filler = raw["filler"]
        for key in ("check", "scales"):
            if key in raw and raw[key] is not None:
                if not isinstance(raw[key], list):
                    raise ConfigError(f"config.{key}", "expected a list of integers")
                setattr(cfg, key, [_int(v, f"config.{key}[{k}]", 0, MAX_SCALE_INDEX
                                        if key == "scales" else ARITY_CAP)
                                   for k, v in enumerate(raw[key])])
        if "quotient" in raw:
            if not isinstance(raw["quotient"], bool):
                raise ConfigError("config.quotient", "expected true or false")
            cfg.quotient = raw["quotient"]
        if "output" in raw:
            if raw["output"] is not None and not isinstance(raw["output"], str):
                raise ConfigError("config.output", "expected a path string")
            cfg.output = raw["output"]
        return cfg

    @staticmethod
    def _parse_plan(raw) -> dict:
        if not isinstance(raw, dict):
            raise ConfigError("config.plan", "expected an object mapping n to a block")
        plan = {}
        for key, block in raw.items():
            loc = f"config.plan.{key}"
            try:
                n = int(key)
            except ValueError:
                raise ConfigError(loc, "block index must be an integer") from None
            if not 0 <= n <= ARITY_CAP:
                raise ConfigError(loc, f"block index outside 0..{ARITY_CAP}")
            if block == "zeros":
                block = "0" * (1 << n)
            if not isinstance(block, str) or len(block) != 1 << n or block.strip("01"):
                raise ConfigError(loc, f"expected {1 << n} bits or \"zeros\"")
            plan[n] = block
        return plan

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"schema": SCHEMA_VERSION}
        for key, value in asdict(self).items():
            if isinstance(value, Fraction):
                value = frac_str(value)
            if key == "plan":
                value = {str(n): b for n, b in sorted(value.items())}
            out[key] = value
        return out

    def witness_plan(self) -> WitnessPlan:
        return WitnessPlan(dict(self.plan), self.filler, self.seed)

    def checked_blocks(self) -> list[int]:
        return sorted(self.check if self.check is not None else self.plan)


# ---------------------------------------------------------------------------
# reports

@dataclass
class CheckRow:
    name: str
    where: str
    lhs: str
    rhs: str
    count: int
    verdict: str

    def line(self) -> str:
        return "\t".join([self.name, self.where, self.lhs, self.rhs, str(self.count), self.verdict])


@dataclass
class RunReport:
    kind: str
    config: dict
    checks: list[CheckRow] = field(default_factory=list)
    validations: list[tuple[str, ValidationReport]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    files: dict[str, list[str]] = field(default_factory=dict)
    wall_clock: float | None = None

    @property
    def verdict(self) -> str:
        verdicts = [c.verdict for c in self.checks] + [v.verdict for _, v in self.validations]
        if "FAIL" in verdicts:
            return "FAIL"
        if "INDETERMINATE" in verdicts:
            return "INDETERMINATE"
        return "PASS"

    def check(self, name: str) -> list[CheckRow]:
        return [c for c in self.checks if c.name == name]

    def to_json(self) -> dict:
        vals = []
        for label, rep in self.validations:
            entry = {"name": label, **rep.summary()}
            bad = rep.violations[:1] or rep.indeterminate[:1]
            entry["witness"] = _show(bad[0]) if bad else None
            vals.append(entry)
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "config": self.config,
            "validations": vals,
            "checks": [asdict(c) for c in self.checks],
            "notes": self.notes,
            "files": sorted(self.files),
        }

    def to_text(self) -> str:
        data = self.to_json()
        lines = [f"kind\t{self.kind}", f"verdict\t{self.verdict}",
                 f"config\t{json.dumps(self.config, sort_keys=True)}", "", "# validations",
                 "name\tcondition\ts\tscale\tdepth\tquotient\tchecked\tequalities\tstrict"
                 "\tviolations\tindeterminate\tverdict\twitness"]
        for v in data["validations"]:
            lines.append("\t".join(str(v[k]) if v[k] is not None else "-" for k in (
                "name", "condition", "s", "scale", "depth", "quotient", "checked", "equalities",
                "strict", "violations", "indeterminate", "verdict", "witness")))
        lines += ["", "# checks", "name\twhere\tlhs\trhs\tcount\tverdict"]
        lines += [c.line() for c in self.checks]
        if self.notes:
            lines += ["", "# notes"] + self.notes
        if self.files:
            lines += ["", "# files"] + sorted(self.files)
        return "\n".join(lines) + "\n"


def _ge(c: Cmp) -> str:
    return {Cmp.GT: "PASS", Cmp.EQ: "PASS", Cmp.LT: "FAIL"}.get(c, "INDETERMINATE")


def _eq(c: Cmp) -> str:
    return {Cmp.EQ: "PASS", Cmp.INDETERMINATE: "INDETERMINATE"}.get(c, "FAIL")


def _show(prefix: str) -> str:
    return prefix or "λ"


class Checker:
    """Accumulates check rows on a report."""

    def __init__(self, report: RunReport, prec: int):
        self.report = report
        self.prec = prec

    def scalar(self, name: str, where: str, lhs, rhs, relation: str = ">=") -> str:
        c = cap_cmp(lhs, rhs, self.prec, MAX_PREC)
        verdict = _ge(c) if relation == ">=" else _eq(c)
        self.report.checks.append(CheckRow(name, where, str(lhs), str(rhs), 1, verdict))
        return verdict

    def vector(self, name: str, where: str, lhs: CapVector, rhs: CapVector, codes, n: int,
               relation: str = ">=") -> str:
        """One row for a whole level; on failure it names the first bad prefix."""
        cmp = lhs.compare(rhs, self.prec, MAX_PREC)
        if relation == ">=":
            bad, undecided = cmp == CMP_CODES[Cmp.LT], cmp == CMP_CODES[Cmp.INDETERMINATE]
        else:
            bad = (cmp == CMP_CODES[Cmp.LT]) | (cmp == CMP_CODES[Cmp.GT])
            undecided = cmp == CMP_CODES[Cmp.INDETERMINATE]
        if bad.any():
            k, verdict = int(np.argmax(bad)), "FAIL"
        elif undecided.any():
            k, verdict = int(np.argmax(undecided)), "INDETERMINATE"
        else:
            k, verdict = 0, "PASS"
        if len(codes):
            where = f"{where} at {_show(decode(codes[k], n))}" if verdict != "PASS" else where
            lv, rv = str(lhs[k]), str(rhs[k])
        else:
            lv = rv = "-"
        self.report.checks.append(CheckRow(name, where, lv, rv, len(codes), verdict))
        return verdict


def _save_trajectory(report: RunReport, name: str, t: Trajectory):
    report.files[name] = list(t.to_lines())


def _save_validation(report: RunReport, name: str, v: ValidationReport):
    report.files[name] = list(v.to_lines())


# ---------------------------------------------------------------------------
# experiments

def _setup(cfg: ExperimentConfig):
    oracle = make_oracle(cfg.oracle)
    f = ThresholdFunction.from_descriptor(cfg.threshold)
    return oracle, f


def _witness(cfg: ExperimentConfig, oracle, f):
    plan = cfg.witness_plan()
    seq = make_witness_sequence(plan, oracle, f)
    blocks = cfg.checked_blocks()
    for n in blocks:
        if n < 1 or n > cfg.imax:
            raise ConfigError("config.check", f"block {n} is outside 1..imax = {cfg.imax}")
    top = max(blocks + list(plan.blocks), default=1)
    horizon = cfg.horizon if cfg.horizon is not None else block_end(top)
    for n in blocks:
        if block_end(n) > horizon:
            raise ConfigError("config.horizon", f"horizon {horizon} ends before block {n}")
    return seq, blocks, horizon


def run_validate(cfg: ExperimentConfig) -> RunReport:
    report = RunReport("validate", cfg.to_dict())
    d = gale_from_descriptor(cfg.gale or {"kind": "neutral", "s": frac_str(cfg.s)},
                             make_oracle)
    # the full tree unless the config opts into the gale's quotient walk
    pinned = True if cfg.quotient else None
    if cfg.scale == 0:
        v = validate_supergale(d, cfg.s, cfg.depth, pinned=pinned, prec=cfg.precision)
    else:
        v = validate_scaled_supergale(d, cfg.scale, cfg.s, cfg.depth, pinned=pinned,
                                      prec=cfg.precision)
    report.validations.append(("gale", v))
    _save_validation(report, "validation.tsv", v)
    return report


def run_thm45(cfg: ExperimentConfig) -> RunReport:
    """Block-boundary growth of the combined i.o. gale on a witness."""
    report = RunReport("thm45", cfg.to_dict())
    chk = Checker(report, cfg.precision)
    oracle, f = _setup(cfg)
    seq, blocks, horizon = _witness(cfg, oracle, f)
    r = cfg.r
    d = build_combined("io", r, cfg.imax, f, oracle)
    report.validations.append(("combined", validate_supergale(d, r, cfg.depth, prec=cfg.precision)))
    traj = run_trajectory(d, seq, horizon)
    _save_trajectory(report, "trajectory.tsv", traj)
    for n in blocks:
        m = block_end(n)
        where = f"n={n} len={m}"
        value = traj.value(m)
        size = threshold_set(n, f, oracle).count
        if size == 0:
            report.checks.append(CheckRow("growth", where, str(value), "C_n empty", 1, "FAIL"))
            continue
        exact = ExactCapital(Fraction(1, n * n * size), (r - 1) * ((1 << n) - 1) + r * (1 << n))
        chk.scalar("growth", where, value, exact)
        if f.form == "power":
            c = f.c
            loose = ExactCapital(Fraction(1, n * n * 2 ** (n**c)), (2 * r - 1) * (1 << n) - r + 1)
            chk.scalar("growth-loose", where, value, loose)
            chk.scalar("set-size-bound", f"n={n}", ExactCapital(2 ** (n**c)), ExactCapital(size))
    return report


def _ae_sizes(n: int, f, oracle) -> int:
    size = 2
    for k in range(1, n + 1):
        size *= threshold_set(k, f, oracle).count
    return size


def run_thm46(cfg: ExperimentConfig) -> RunReport:
    """Growth of the combined a.e. gale at every step of each checked block."""
    report = RunReport("thm46", cfg.to_dict())
    chk = Checker(report, cfg.precision)
    oracle, f = _setup(cfg)
    seq, blocks, horizon = _witness(cfg, oracle, f)
    r = cfg.r
    d = build_combined("ae", r, cfg.imax, f, oracle)
    report.validations.append(("combined", validate_supergale(d, r, cfg.depth, prec=cfg.precision)))
    traj = run_trajectory(d, seq, horizon)
    _save_trajectory(report, "trajectory.tsv", traj)
    for n in blocks:
        _strong_growth(chk, report, traj, n, _ae_sizes(n, f, oracle), r, lambda m: r * m,
                       "strong-growth")
    return report


def _strong_growth(chk: Checker, report: RunReport, traj: Trajectory, n: int, size: int, r,
                   exponent, name: str):
    """``traj(2^n - 1 + k) >= 2**exponent(m) / (n^2 |C_<=n|)`` for ``0 < k <= 2^n``."""
    lo, hi = block_start(n) + 1, block_end(n)
    if size == 0:
        report.checks.append(CheckRow(name, f"n={n}", "-", "C_<=n empty", 0, "FAIL"))
        return
    first_bad = None
    first_undecided = None
    bounds = {}
    for m in range(lo, hi + 1):
        bounds[m] = ExactCapital(Fraction(1, n * n * size), exponent(m))
        c = cap_cmp(traj.value(m), bounds[m], chk.prec, MAX_PREC)
        if c is Cmp.LT and first_bad is None:
            first_bad = m
        if c is Cmp.INDETERMINATE and first_undecided is None:
            first_undecided = m
    at = first_bad or first_undecided or hi
    verdict = "FAIL" if first_bad else "INDETERMINATE" if first_undecided else "PASS"
    where = f"n={n} len={lo}..{hi}" + (f" first bad len={at}" if verdict != "PASS" else "")
    report.checks.append(CheckRow(name, where, str(traj.value(at)), str(bounds[at]),
                                  hi - lo + 1, verdict))


def run_thm48(cfg: ExperimentConfig) -> RunReport:
    """Scaled versions of the a.e. gale: validity, growth, and the block-end value."""
    report = RunReport("thm48", cfg.to_dict())
    chk = Checker(report, cfg.precision)
    oracle, f = _setup(cfg)
    seq, blocks, horizon = _witness(cfg, oracle, f)
    r, s = cfg.r, cfg.s
    base = build_combined("ae", r, cfg.imax, f, oracle)
    base_traj = run_trajectory(base, seq, horizon)
    _save_trajectory(report, "trajectory.tsv", base_traj)
    for j in cfg.scales:
        dj = build_scaled_variant(base, j, s, r)
        v = validate_scaled_supergale(dj, j, s, cfg.depth, prec=cfg.precision)
        report.validations.append((f"scaled j={j}", v))
        # prefixes shorter than the scale's domain are recorded as errors
        traj = run_trajectory(dj, seq, horizon)
        _save_trajectory(report, f"trajectory_j{j}.tsv", traj)
        for n in blocks:
            size = _ae_sizes(n, f, oracle)
            _strong_growth(chk, report, traj, n, size, r,
                           lambda m, j=j: scale_eval(j, m, s), f"scaled-growth j={j}")
            m = block_end(n)
            chain = cap_mul(base_traj.value(m), pow2(scale_eval(j, m, s) - r * m))
            chk.scalar(f"block-end j={j}", f"n={n} len={m}", traj.value(m), chain, "==")
            lo1, hi1 = to_interval(traj.value(m), cfg.precision).bounds()
            lo2, hi2 = to_interval(chain, cfg.precision).bounds()
            ok = lo1 <= hi2 and lo2 <= hi1
            report.checks.append(CheckRow(f"block-end-interval j={j}", f"n={n} len={m}",
                                          f"[{float(lo1):.12g},{float(hi1):.12g}]",
                                          f"[{float(lo2):.12g},{float(hi2):.12g}]", 1,
                                          "PASS" if ok else "FAIL"))
    return report


def run_thm413(cfg: ExperimentConfig) -> RunReport:
    """The lower-bound transform of an s-supergale, checked along every S inside L."""
    report = RunReport("thm413", cfg.to_dict())
    chk = Checker(report, cfg.precision)
    s = cfg.s
    d = gale_from_descriptor(cfg.gale or {"kind": "neutral", "s": frac_str(s)}, make_oracle)
    lb = io_lowerbound_transform(d, s)
    horizon = cfg.horizon if cfg.horizon is not None else 31
    prec = cfg.precision
    report.validations.append(("input", validate_supergale(d, s, min(cfg.depth, horizon),
                                                           prec=prec)))
    report.validations.append(("input on L", validate_supergale(d, s, horizon,
                                                                pinned=in_index_set, prec=prec)))
    report.validations.append(("transform", validate_supergale(lb, 1, horizon, prec=prec)))
    two_s = pow2(s)
    for n in range(1, horizon + 1):
        codes = _quotient_codes(n, in_index_set)
        parents = codes >> 1
        dp_n, dp_p = lb.level(n, codes), lb.level(n - 1, parents)
        d_n, d_p = d.level(n, codes), d.level(n - 1, parents)
        where = f"n={n}"
        if in_index_set(n - 1):
            chk.vector("index-step", where, dp_n, dp_p, codes, n, "==")
            chk.vector("index-bound", where, d_p.scale(two_s), d_n, codes, n)
        else:
            chk.vector("off-index-step", where, dp_n * d_p.scale(two_s), (d_n * dp_p).scale(2), codes, n, "==")
        cnt = count_index_set(n)
        chk.vector("product", where, dp_n, d_n.scale(pow2(n - 1 - cnt - s * (n - 1))), codes, n)
        chk.vector("product-sharp", where, dp_n, d_n.scale(pow2(n - cnt - s * n)), codes, n)
        over = 2 * cnt - n
        ok = over <= 0 or over * over <= 8 * n
        report.checks.append(CheckRow("count-bound", where, str(cnt), f"{n}/2+2*sqrt({n}/2)", 1,
                                      "PASS" if ok else "FAIL"))
    for n in range(0, min(NATURALITY_DEPTH, horizon) + 1):
        codes = all_codes(n)
        masked = codes & _off_index_mask(n) if n else codes
        chk.vector("naturality", f"n={n}", lb.level(n, codes), lb.level(n, masked), codes, n, "==")
    # a sequence inside L: the filler with every I position cleared
    source = mask_prefix(make_witness_sequence(WitnessPlan({}, cfg.filler, cfg.seed))(horizon))
    _save_trajectory(report, "trajectory.tsv", run_trajectory(lb, source, horizon))
    _save_trajectory(report, "trajectory_input.tsv", run_trajectory(d, source, horizon))
    return report


RUNNERS = {
    "validate": run_validate,
    "thm45": run_thm45,
    "thm46": run_thm46,
    "thm48": run_thm48,
    "thm413": run_thm413,
}


def run_experiment(cfg: ExperimentConfig) -> RunReport:
    if cfg.kind not in RUNNERS:
        raise ConfigError("config.kind", f"{cfg.kind} is not an experiment")
    return RUNNERS[cfg.kind](cfg)


__all__ = [
    "CheckRow", "ConfigError", "ExperimentConfig", "KINDS", "RunReport", "SCHEMA_VERSION",
    "run_experiment", "run_thm413", "run_thm45", "run_thm46", "run_thm48", "run_validate",
]
