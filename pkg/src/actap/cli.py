"""
Command-line front end.

    actap evolve --num-sites 5 --omega-max 10 --t-max 70 --out evolve.csv
    actap spectrum --config run.yaml

Every run writes one CSV (header row, floats with 17 significant digits) and
a JSON summary next to it with the same stem.  Exit status: 0 success,
2 bad configuration, 3 numerical failure.

Config files are YAML with optional sections; flags override file values::

    experiment: evolve
    chain: {num_sites: 5}
    pulses: {omega_max: 10, odd_min: 0, even_min: 0, t_max: 70, a_target: 0.01}
    integration: {steps: 14000, samples: 1001, points: 1001}
    sweep: {t_max_grid: [10, 70, 100], ratio_grid: [0.05, 0.3]}
    disorder: {ratio: 2, samples: 100, workers: 1}
    output: evolve.csv
    seed: 0
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np
import yaml

from .adiabaticity import adiabaticity_general, adiabaticity_peak_closed_form, adiabaticity_trace, required_tmax
from .chain import ChainSpec, half_length, tridiagonal
from .contrast import ContrastSpec, contrast_fidelity, endpoint_overlap_final, endpoint_overlap_initial
from .darkstate import dark_state
from .errors import ActapError
from .evolution import MAX_SAMPLES, default_steps, propagate
from .pulses import PulseSchedule, evaluate
from .robustness import DISORDER_MODEL, DisorderSpec, sample_disordered_run
from .spectrum import diagonalize

log = logging.getLogger("actap")

KINDS = ("spectrum", "evolve", "sweep-tmax", "adiabaticity", "contrast", "disorder")
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
DEFAULT_PRODUCTS = (10.0, 30.0, 100.0, 300.0, 700.0, 1000.0)
DEFAULT_RATIOS = (0.01, 0.05, 0.1, 0.2, 0.3, 0.5)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    kind: str
    num_sites: int = 5
    omega_max: float = 10.0
    odd_min: float = 0.0
    even_min: float = 0.0
    t_max: float | None = None
    a_target: float = 0.01
    steps: int | None = None
    samples: int = 1001
    points: int = 1001
    t_max_grid: list[float] = field(default_factory=list)
    ratio_grid: list[float] = field(default_factory=list)
    disorder_ratio: float = 2.0
    disorder_samples: int = 100
    workers: int = 1
    seed: int = 0
    out: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment {self.kind!r}; choose from {', '.join(KINDS)}")
        try:
            half_length(self.num_sites)
        except ActapError as exc:
            raise ConfigError(str(exc)) from None
        if not self.omega_max > 0:
            raise ConfigError(f"omega_max must be positive, got {self.omega_max}")
        for name in ("odd_min", "even_min"):
            value = getattr(self, name)
            if not 0 <= value <= self.omega_max:
                raise ConfigError(f"{name} must lie in [0, omega_max], got {value}")
        if not 0 < self.a_target < 1:
            raise ConfigError(f"a_target must be in (0, 1), got {self.a_target}")
        if self.t_max is None:
            self.t_max = required_tmax(self.omega_max, self.a_target)
        if not self.t_max > 0:
            raise ConfigError(f"t_max must be positive, got {self.t_max}")
        if self.steps is not None and self.steps < 100:
            raise ConfigError(f"steps must be >= 100, got {self.steps}")
        if not 2 <= self.samples <= MAX_SAMPLES:
            raise ConfigError(f"samples must be in [2, {MAX_SAMPLES}], got {self.samples}")
        if self.points < 2:
            raise ConfigError(f"points must be >= 2, got {self.points}")
        if not self.t_max_grid:
            self.t_max_grid = [p / self.omega_max for p in DEFAULT_PRODUCTS]
        if not self.ratio_grid:
            self.ratio_grid = list(DEFAULT_RATIOS)
        if any(not t > 0 for t in self.t_max_grid):
            raise ConfigError("t_max_grid entries must be positive")
        if any(not 0 <= r <= 1 for r in self.ratio_grid):
            raise ConfigError("ratio_grid entries must lie in [0, 1]")
        if not self.disorder_ratio >= 1:
            raise ConfigError(f"disorder ratio must be >= 1, got {self.disorder_ratio}")
        if self.disorder_samples < 1 or self.workers < 1:
            raise ConfigError("disorder samples and workers must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def out_path(self) -> Path:
        return Path(self.out or f"{self.kind}.csv")

    def schedule(self, t_max: float | None = None) -> PulseSchedule:
        return PulseSchedule.floored(
            self.num_sites,
            self.t_max if t_max is None else t_max,
            (self.odd_min, self.omega_max),
            (self.even_min, self.omega_max),
        )

    def chain(self) -> ChainSpec:
        return ChainSpec.alternating(
            self.num_sites, self.omega_max, self.odd_min, even_min=self.even_min
        )


# (section, key) in the YAML file -> RunConfig field
_CONFIG_KEYS = {
    ("chain", "num_sites"): "num_sites",
    ("pulses", "omega_max"): "omega_max",
    ("pulses", "odd_min"): "odd_min",
    ("pulses", "even_min"): "even_min",
    ("pulses", "t_max"): "t_max",
    ("pulses", "a_target"): "a_target",
    ("integration", "steps"): "steps",
    ("integration", "samples"): "samples",
    ("integration", "points"): "points",
    ("sweep", "t_max_grid"): "t_max_grid",
    ("sweep", "ratio_grid"): "ratio_grid",
    ("disorder", "ratio"): "disorder_ratio",
    ("disorder", "samples"): "disorder_samples",
    ("disorder", "workers"): "workers",
}


def _coerce(name: str, value: Any) -> Any:
    kinds = {f.name: f.type for f in fields(RunConfig)}
    spec = kinds[name]
    try:
        if name in ("t_max_grid", "ratio_grid"):
            if isinstance(value, str):
                value = [v for v in value.split(",") if v.strip()]
            return [float(v) for v in value]
        if value is None:
            return None
        if "int" in spec:
            if float(value) != int(float(value)):
                raise ValueError
            return int(float(value))
        if "float" in spec:
            return float(value)
        return str(value)
    except (TypeError, ValueError):
        raise ConfigError(f"bad value for {name}: {value!r}") from None


def load_config_file(path: str | Path) -> dict[str, Any]:
    """Flatten a YAML config file into RunConfig field names."""
    try:
        raw = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping")
    flat: dict[str, Any] = {}
    for key, value in raw.items():
        if key == "experiment":
            flat["kind"] = value
        elif key in ("output", "out"):
            flat["out"] = value
        elif key == "seed":
            flat["seed"] = value
        elif isinstance(value, dict):
            for sub, subval in value.items():
                if sub == "omega_min" and key == "pulses":
                    flat["odd_min"] = flat["even_min"] = subval
                    continue
                target = _CONFIG_KEYS.get((key, sub))
                if target is None:
                    raise ConfigError(f"unknown config key {key}.{sub}")
                flat[target] = subval
        else:
            raise ConfigError(f"unknown config key {key}")
    return flat


def build_config(kind: str | None, file_values: dict[str, Any], overrides: dict[str, Any]) -> RunConfig:
    values = {**file_values, **{k: v for k, v in overrides.items() if v is not None}}
    if kind is not None:
        if values.get("kind") not in (None, kind):
            log.info("command line experiment %s overrides config %s", kind, values["kind"])
        values["kind"] = kind
    if "kind" not in values:
        raise ConfigError("no experiment given")
    known = {f.name for f in fields(RunConfig)}
    typed = {k: (v if k == "kind" else _coerce(k, v)) for k, v in values.items() if k in known}
    return RunConfig(**typed)


# ---------------------------------------------------------------------------
# output


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def csv_columns(kind: str, num_sites: int) -> list[str]:
    """Declared header for each experiment's CSV."""
    energies = [f"E{k}" for k in range(1, num_sites + 1)]
    if kind == "spectrum":
        return ["t_ns", *energies, "Omega_odd", "Omega_even"]
    if kind == "evolve":
        return ["t_ns", *[f"P{k}" for k in range(1, num_sites + 1)], "A_t", "D0_fidelity"]
    if kind == "sweep-tmax":
        return ["t_max_ns", "omega_max", "omega_t_product", "steps", "transfer_fidelity", "a_peak_closed_form"]
    if kind == "adiabaticity":
        return ["t_max_ns", "omega_max", "a_peak", "t_peak_ns", "a_peak_closed_form", "a_peak_times_t_max"]
    if kind == "contrast":
        return [
            "ratio", "omega_min", "omega_max", "overlap_initial", "overlap_final",
            "fidelity_exact", "fidelity_first_order", "error_rate_exact", "error_rate_first_order",
        ]
    if kind == "disorder":
        return ["sample", *[f"factor{k}" for k in range(1, num_sites)], "transfer_fidelity", "a_peak", "error"]
    raise ConfigError(f"unknown experiment {kind!r}")


def _write_outputs(cfg: RunConfig, rows: list[list[Any]], summary: dict[str, Any]) -> None:
    path = cfg.out_path
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(csv_columns(cfg.kind, cfg.num_sites))
        for row in rows:
            writer.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    summary = {"experiment": cfg.kind, "config": asdict(cfg), **summary}
    path.with_suffix(".json").write_text(
        json.dumps(summary, indent=2, sort_keys=True, default=float) + "\n", encoding="utf-8"
    )


def _spectrum(cfg: RunConfig) -> tuple[list, dict]:
    schedule = cfg.schedule()
    times = np.linspace(0.0, cfg.t_max, cfg.points)
    times[-1] = cfg.t_max
    couplings = evaluate(schedule, times)
    rows, zero_branch = [], []
    for t, omegas in zip(times, couplings):
        energies = diagonalize(tridiagonal(omegas)).eigenvalues
        zero_branch.append(energies[cfg.num_sites // 2])
        rows.append([t, *energies, omegas[0], omegas[1]])
    return rows, {"zero_branch_max_abs": float(np.max(np.abs(zero_branch)))}


def _evolve(cfg: RunConfig) -> tuple[list, dict]:
    chain, schedule = cfg.chain(), cfg.schedule()
    steps = cfg.steps or default_steps(schedule)
    trace = propagate(chain, schedule, steps=steps, samples=cfg.samples)
    a_t = np.array([adiabaticity_general(chain, schedule, t) for t in trace.times])
    k = int(np.argmax(a_t))
    rows = [
        [t, *pops, a, d0]
        for t, pops, a, d0 in zip(trace.times, trace.populations, a_t, trace.dark_state_fidelity)
    ]
    summary = {
        "transfer_fidelity": trace.transfer_fidelity,
        "a_peak": float(a_t[k]),
        "t_peak": float(trace.times[k]),
        "max_norm_drift": trace.max_norm_drift,
        "steps": steps,
    }
    return rows, summary


def _sweep_tmax(cfg: RunConfig) -> tuple[list, dict]:
    chain = cfg.chain()
    rows = []
    for t_max in cfg.t_max_grid:
        schedule = cfg.schedule(t_max)
        steps = cfg.steps or default_steps(schedule)
        fid = propagate(chain, schedule, steps=steps, samples=2).transfer_fidelity
        rows.append([t_max, cfg.omega_max, cfg.omega_max * t_max, steps, fid,
                     adiabaticity_peak_closed_form(cfg.omega_max, t_max)])
    return rows, {"fidelities": [r[4] for r in rows]}


def _adiabaticity(cfg: RunConfig) -> tuple[list, dict]:
    chain = cfg.chain()
    rows = []
    for t_max in cfg.t_max_grid:
        trace = adiabaticity_trace(chain, cfg.schedule(t_max), cfg.points)
        rows.append([t_max, cfg.omega_max, trace.a_peak, trace.t_peak,
                     adiabaticity_peak_closed_form(cfg.omega_max, t_max), trace.a_peak * t_max])
    products = np.array([r[5] for r in rows])
    return rows, {
        "a_peak_t_max_spread": float(np.ptp(products) / np.mean(products)),
        "required_t_max": required_tmax(cfg.omega_max, cfg.a_target),
    }


def _contrast(cfg: RunConfig) -> tuple[list, dict]:
    rows = []
    for ratio in cfg.ratio_grid:
        c = ContrastSpec.symmetric(ratio * cfg.omega_max, cfg.omega_max)
        fid = contrast_fidelity(c)
        rows.append([ratio, c.omega1_min, c.omega1_max, endpoint_overlap_initial(c),
                     endpoint_overlap_final(c), fid.exact, fid.first_order,
                     fid.error_rate, fid.first_order_error_rate])
    configured = contrast_fidelity(ContrastSpec(cfg.odd_min, cfg.omega_max, cfg.even_min, cfg.omega_max))
    return rows, {"fidelity_exact": configured.exact, "fidelity_first_order": configured.first_order}


def _disorder(cfg: RunConfig) -> tuple[list, dict]:
    chain, schedule = cfg.chain(), cfg.schedule()
    d = DisorderSpec(cfg.disorder_ratio, cfg.disorder_samples, cfg.seed)
    results = sample_disordered_run(chain, schedule, d, workers=cfg.workers)
    rows, dark_ok = [], True
    for res in results:
        rows.append([res.index, *res.factors, res.transfer_fidelity, res.a_peak, res.error or ""])
        start = dark_state(evaluate(schedule.with_scales(res.factors), 0.0))
        dark_ok &= bool(abs(start[0]) == 1.0)
    fids = np.array([r.transfer_fidelity for r in results if r.error is None])
    summary = {
        "disorder_model": DISORDER_MODEL,
        "failures": sum(r.error is not None for r in results),
        "min_fidelity": float(fids.min()) if fids.size else None,
        "mean_fidelity": float(fids.mean()) if fids.size else None,
        "dark_state_starts_on_site_1": dark_ok,
    }
    return rows, summary


_RUNNERS: dict[str, Callable[[RunConfig], tuple[list, dict]]] = {
    "spectrum": _spectrum,
    "evolve": _evolve,
    "sweep-tmax": _sweep_tmax,
    "adiabaticity": _adiabaticity,
    "contrast": _contrast,
    "disorder": _disorder,
}


def run(cfg: RunConfig) -> int:
    """Execute one experiment and write its files; returns the exit status."""
    try:
        rows, summary = _RUNNERS[cfg.kind](cfg)
    except ActapError as exc:
        print(f"actap: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _write_outputs(cfg, rows, summary)
    log.info("wrote %s", cfg.out_path)
    return 0


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML config file")
    common.add_argument("--out", help="CSV path; the JSON summary uses the same stem")
    common.add_argument("--seed", type=int)
    common.add_argument("--steps", type=int, help="integration steps (default 20 per unit Omega*t)")
    common.add_argument("--num-sites", type=int)
    common.add_argument("--omega-max", type=float, help="peak TME in ns^-1 (default 10)")
    common.add_argument("--omega-min", type=float, help="floor for both coupling groups")
    common.add_argument("--odd-min", type=float)
    common.add_argument("--even-min", type=float)
    common.add_argument("--t-max", type=float, help="protocol time in ns (default from --a-target)")
    common.add_argument("--a-target", type=float)
    common.add_argument("--samples", type=int, help="output rows for evolve (<= 2000)")
    common.add_argument("--points", type=int, help="time grid for spectrum/adiabaticity")
    common.add_argument("--tmax-grid", help="comma-separated t_max values (ns)")
    common.add_argument("--ratio-grid", help="comma-separated Omega_min/Omega_max values")
    common.add_argument("--disorder-ratio", type=float)
    common.add_argument("--disorder-samples", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="actap", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="kind", metavar="EXPERIMENT")
    for kind in KINDS:
        sub.add_parser(kind, parents=[common])
    sub.add_parser("run", parents=[common], help="experiment named in the config file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    if args.kind is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    overrides = {
        "out": args.out,
        "seed": args.seed,
        "steps": args.steps,
        "num_sites": args.num_sites,
        "omega_max": args.omega_max,
        "odd_min": args.omega_min if args.odd_min is None else args.odd_min,
        "even_min": args.omega_min if args.even_min is None else args.even_min,
        "t_max": args.t_max,
        "a_target": args.a_target,
        "samples": args.samples,
        "points": args.points,
        "t_max_grid": args.tmax_grid,
        "ratio_grid": args.ratio_grid,
        "disorder_ratio": args.disorder_ratio,
        "disorder_samples": args.disorder_samples,
        "workers": args.workers,
    }
    try:
        file_values = load_config_file(args.config) if args.config else {}
        cfg = build_config(None if args.kind == "run" else args.kind, file_values, overrides)
    except ConfigError as exc:
        print(f"actap: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
