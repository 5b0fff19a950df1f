"""
``cpt-shift`` command line: spectra, shift maps and intensity sweeps as CSV.

    cpt-shift spectrum   --preset fig2 --out fig2.csv
    cpt-shift shift-map  --config my.cfg --path adiabatic
    cpt-shift validate   --out report.csv

Config files are ``key = value`` lines (``#`` starts a comment). Numbers may
be given as a single value, a comma list, ``linspace(a, b, n)`` or
``geomspace(a, b, n)``. Exit codes: 0 ok, 1 failed check, 2 bad config or
I/O, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__
from .errors import (ConfigError, CptShiftError, NoExtremum, NoRealRootInWindow, NumericalError,
                     ResonanceAbsent)
from .model import ModelParams, validate
from .observables import PATHS, spectrum
from .presets import PRESETS
from .shift import DEFAULT_X_GRID, headline_shift, series_coefficients, shift_vs_intensity
from .validation import CHECKS, FAIL, run_suite, suite_failed
from .weak_coupling import distortion_shift, gamma_d, rho12_weak, stark_shift

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

MODEL_KEYS = ("omega_34", "rabi_1", "rabi_2", "p_1", "p_2",
              "gamma_opt", "gamma_exc", "gamma_12", "gamma_34")
OTHER_KEYS = ("intensity", "ratio", "delta", "delta_unit", "delta_common", "weak_columns",
              "x_grid", "path")
SWEEPS = {
    "spectrum": ("omega_34", "delta"),
    "shift-map": ("p_1", "p_2"),
    "ratio-map": ("p_1", "p_2", "x_grid"),
    "shift-vs-x": ("ratio", "x_grid"),
}
DEFAULT_PATH = {"spectrum": "exact", "shift-map": "rational",
                "ratio-map": "rational", "shift-vs-x": "rational"}
_RANGE = re.compile(r"^(linspace|geomspace)\(\s*([^,]+),\s*([^,]+),\s*([^,)]+)\)$")


# ---------------------------------------------------------------------------
# config

def parse_config_text(text: str) -> dict[str, str]:
    out = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {n}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in MODEL_KEYS + OTHER_KEYS:
            raise ConfigError(f"line {n}: unknown key {key!r}")
        out[key] = value
    return out


def parse_numbers(key: str, value: str) -> list[float]:
    m = _RANGE.match(value.replace(" ", "") if "(" in value else value)
    try:
        if m:
            a, b, k = float(m.group(2)), float(m.group(3)), int(m.group(4))
            if k < 1:
                raise ConfigError(f"{key}: a range needs at least one point")
            fn = np.linspace if m.group(1) == "linspace" else np.geomspace
            return [float(v) for v in fn(a, b, k)]
        vals = [float(v) for v in value.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"{key}: cannot read {value!r} ({exc})") from None
    if not vals:
        raise ConfigError(f"{key}: empty value")
    if not all(math.isfinite(v) for v in vals):
        raise ConfigError(f"{key}: values must be finite")
    return vals


def _parse_bool(key: str, value: str) -> bool:
    v = value.lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected true or false, got {value!r}")


@dataclass
class RunConfig:
    """Parsed configuration for one subcommand run."""

    command: str
    raw: dict
    path: str
    preset: Optional[str] = None
    numbers: dict = field(default_factory=dict)

    def scalar(self, key: str, default: Optional[float] = None) -> Optional[float]:
        if key not in self.numbers:
            return default
        vals = self.numbers[key]
        if len(vals) != 1:
            raise ConfigError(f"{key} must be a single value for {self.command}")
        return vals[0]

    def values(self, key: str, default=None) -> list[float]:
        if key not in self.numbers:
            if default is None:
                raise ConfigError(f"{key} is required for {self.command}")
            return list(default)
        return self.numbers[key]

    def shape(self) -> ModelParams:
        """Model parameters with sweep keys at their first value."""
        kw = {}
        for key in MODEL_KEYS:
            if key in self.numbers:
                kw[key] = self.numbers[key][0]
        if "omega_34" not in kw:
            raise ConfigError("omega_34 is required")
        kw.setdefault("rabi_1", 1.0)
        kw.setdefault("rabi_2", 1.0)
        return ModelParams(**kw)

    def driven(self, params: ModelParams) -> ModelParams:
        intensity = self.scalar("intensity")
        if intensity is None:
            if "rabi_1" not in self.numbers or "rabi_2" not in self.numbers:
                raise ConfigError("give either intensity (and ratio) or rabi_1 and rabi_2")
            return params
        return params.with_drive(intensity, self.scalar("ratio", 1.0))


def load_config(command: str, texts: Sequence[str], path: Optional[str] = None,
                preset: Optional[str] = None) -> RunConfig:
    """Merge config blocks (later ones win) and check them against ``command``."""
    raw: dict[str, str] = {}
    for t in texts:
        raw.update(parse_config_text(t))
    chosen = path or raw.get("path") or DEFAULT_PATH[command]
    if chosen not in PATHS:
        raise ConfigError(f"path must be one of {', '.join(PATHS)}")
    numbers = {}
    for key, value in raw.items():
        if key in ("path", "delta_unit", "weak_columns"):
            continue
        numbers[key] = parse_numbers(key, value)
        if len(numbers[key]) > 1 and key not in SWEEPS[command]:
            raise ConfigError(f"{key} cannot be swept in {command}")
    for key in ("delta", "x_grid"):
        if key in numbers and len(numbers[key]) > 1:
            d = np.diff(numbers[key])
            if not (np.all(d > 0) or np.all(d < 0)):
                raise ConfigError(f"{key} must be strictly monotone")
    if raw.get("delta_unit", "gamma") not in ("gamma", "gamma_d"):
        raise ConfigError("delta_unit must be 'gamma' or 'gamma_d'")
    if "weak_columns" in raw:
        _parse_bool("weak_columns", raw["weak_columns"])
    return RunConfig(command, raw, chosen, preset, numbers)


# ---------------------------------------------------------------------------
# output

def fmt(v) -> str:
    if isinstance(v, str):
        return v
    v = float(v)
    return "nan" if math.isnan(v) else "%.17g" % v


def write_csv(stream, cfg: RunConfig, header: Sequence[str], units: Sequence[str],
              rows: Sequence[Sequence]) -> None:
    """Provenance comment block, header row, units row, then one record per grid point."""
    stream.write(f"# cpt-shift {__version__} {cfg.command}\n")
    stream.write(f"# path = {cfg.path}\n")
    if cfg.preset:
        stream.write(f"# preset = {cfg.preset}\n")
    for key in sorted(k for k in cfg.raw if k != "path"):
        stream.write(f"# {key} = {cfg.raw[key]}\n")
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    w.writerow(units)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def thread_count() -> int:
    cap = os.environ.get("CPT_SHIFT_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ConfigError("CPT_SHIFT_THREADS must be an integer") from None
    return n


def _map(fn: Callable, items: list, workers: int) -> list:
    # results come back in input order whatever the pool size
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def _checked(params: ModelParams) -> ModelParams:
    validate(params).raise_for_errors()
    return params


# ---------------------------------------------------------------------------
# subcommands

def cmd_spectrum(cfg: RunConfig, workers: int = 1):
    shape = cfg.shape()
    weak = _parse_bool("weak_columns", cfg.raw.get("weak_columns", "false"))
    in_gd = cfg.raw.get("delta_unit", "gamma") == "gamma_d"
    grid0 = np.asarray(cfg.values("delta"))
    dc = cfg.scalar("delta_common", 0.0)
    header = ["omega_34", "delta", "rho12_re", "rho12_im", "chi1_im", "chi2_im", "rho_exc"]
    units = ["Gamma", "Gamma", "1", "1", "1/Gamma", "1/Gamma", "1"]
    if weak:
        header += ["rho12_weak_re", "rho12_weak_im"]
        units += ["1", "1"]
    rows = []
    for w in cfg.values("omega_34"):
        p = _checked(cfg.driven(shape.replace(omega_34=w)))
        grid = grid0 * gamma_d(p) if in_gd else grid0
        sp = spectrum(p, grid, cfg.path, dc, workers)
        cols = [sp.column(c) for c in ("rho12_re", "rho12_im", "chi1_im", "chi2_im", "rho_exc")]
        for i, d in enumerate(sp.delta):
            row = [w, d] + [c[i] for c in cols]
            if weak:
                r = rho12_weak(p, d)
                row += [r.real, r.imag]
            rows.append(row)
    return header, units, rows


def _shift_cell(cfg: RunConfig, shape: ModelParams):
    def run(cell):
        p1, p2 = cell
        p = _checked(cfg.driven(shape.replace(p_1=p1, p_2=p2)))
        gd = gamma_d(p)
        weak = (stark_shift(p) + distortion_shift(p)) / gd
        try:
            d0 = headline_shift(p, cfg.path).delta0 / gd
            status = "ok"
        except (NoRealRootInWindow, NoExtremum):
            d0, status = math.nan, "resonance-absent"
        return [p1, p2, d0, weak, status]
    return run


def cmd_shift_map(cfg: RunConfig, workers: int = 1):
    shape = cfg.shape()
    cells = [(a, b) for a in cfg.values("p_1") for b in cfg.values("p_2")]
    rows = _map(_shift_cell(cfg, shape), cells, workers)
    header = ["p_1", "p_2", "delta0_over_gamma_d", "weak_formula_over_gamma_d", "status"]
    return header, ["1", "1", "1", "1", "-"], rows


def cmd_ratio_map(cfg: RunConfig, workers: int = 1):
    shape = cfg.shape()
    ratio = cfg.scalar("ratio", 1.0)
    xg = cfg.values("x_grid", DEFAULT_X_GRID)

    def run(cell):
        p1, p2 = cell
        p = _checked(shape.replace(p_1=p1, p_2=p2))
        try:
            s = series_coefficients(p, ratio, xg, path=cfg.path)
        except (ResonanceAbsent, NoRealRootInWindow, NoExtremum):
            return [p1, p2, math.nan, math.nan, math.nan, "resonance-absent"]
        return [p1, p2, s.alpha1, s.alpha2, s.ratio, "ok"]

    cells = [(a, b) for a in cfg.values("p_1") for b in cfg.values("p_2")]
    rows = _map(run, cells, workers)
    header = ["p_1", "p_2", "alpha1", "alpha2", "alpha2_over_alpha1", "status"]
    return header, ["1", "1", "Gamma", "Gamma", "1", "-"], rows


def cmd_shift_vs_x(cfg: RunConfig, workers: int = 1):
    shape = _checked(cfg.shape())
    xg = cfg.values("x_grid", DEFAULT_X_GRID)
    curves = _map(lambda r: shift_vs_intensity(shape, r, xg, cfg.path), cfg.values("ratio", [1.0]),
                  workers)
    rows = []
    for r, c in zip(cfg.values("ratio", [1.0]), curves):
        for i, (x, s, d0) in enumerate(zip(c.x, c.S, c.delta0)):
            rows.append([r, x, s, d0, int(i == c.extremum_index)])
    return ["ratio", "x", "S", "delta0", "extremum"], ["1", "1", "Gamma", "Gamma", "-"], rows


COMMANDS = {"spectrum": cmd_spectrum, "shift-map": cmd_shift_map,
            "ratio-map": cmd_ratio_map, "shift-vs-x": cmd_shift_vs_x}


# ---------------------------------------------------------------------------

def _report_validate(args) -> int:
    if args.list:
        for c in CHECKS:
            print(f"{c.key:16s} {c.title}")
        return EXIT_OK
    keys = args.only.split(",") if args.only else None
    try:
        results = run_suite(keys, mutate=args.mutate)
    except KeyError as exc:
        print(f"cpt-shift: {exc.args[0]}", file=sys.stderr)
        return EXIT_CONFIG
    for r in results:
        print(f"{r.status.upper():18s} {r.key:16s} {r.seconds:6.2f}s  {r.detail}")
    failed = suite_failed(results)
    print(f"{sum(r.status == FAIL for r in results)} failed, {len(results)} checks")
    if args.out:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "status", "value", "limit", "seconds", "detail"])
        for r in results:
            w.writerow([r.key, r.status, fmt(r.value), fmt(r.limit), "%.3f" % r.seconds, r.detail])
        try:
            with open(args.out, "w") as fh:
                fh.write(buf.getvalue())
        except OSError as exc:
            print(f"cpt-shift: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    return EXIT_CHECK if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cpt-shift", description=__doc__.split("\n\n")[0].strip())
    ap.add_argument("--version", action="version", version=f"cpt-shift {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="key = value file")
        sp.add_argument("--preset", choices=sorted(PRESETS))
        sp.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override one config key (repeatable)")
        sp.add_argument("--out", help="output CSV (default: stdout)")
        sp.add_argument("--path", choices=PATHS)
    vp = sub.add_parser("validate")
    vp.add_argument("--out", help="machine-readable CSV report")
    vp.add_argument("--list", action="store_true", help="list the checks without running them")
    vp.add_argument("--only", help="comma-separated check keys")
    vp.add_argument("--mutate", action="store_true",
                    help="flip the distortion-shift sign; the suite must then fail")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return _report_validate(args)
    try:
        texts = []
        if args.preset:
            cmd, text = PRESETS[args.preset]
            if cmd != args.command:
                raise ConfigError(f"preset {args.preset} belongs to {cmd}")
            texts.append(text)
        if args.config:
            with open(args.config) as fh:
                texts.append(fh.read())
        texts.extend(args.set)
        if not texts:
            raise ConfigError("nothing to run: give --config, --preset or --set")
        cfg = load_config(args.command, texts, args.path, args.preset)
        header, units, rows = COMMANDS[args.command](cfg, thread_count())
        buf = io.StringIO()
        write_csv(buf, cfg, header, units, rows)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(buf.getvalue())
        else:
            sys.stdout.write(buf.getvalue())
    except NumericalError as exc:
        print(f"cpt-shift: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (CptShiftError, ValueError, OSError) as exc:
        print(f"cpt-shift: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
