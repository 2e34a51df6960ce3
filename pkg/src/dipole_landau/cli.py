"""Command-line front end.

Commands: ``spectrum``, ``frequencies``, ``wavefunction``, ``validate``,
``sweep``.  A single JSON config document supplies the physical parameters;
flags override config fields (precedence: flags > file > defaults).

Config schema (all keys optional)::

    {
      "params": {"m": 1.0, "alpha": 1.0, "lambda": 1.0, "B0": 1.0,
                 "b": 0.0, "D": 0.0, "a": 0.0, "k": 0.0, "Omega": 0.0,
                 "omega": null},
      "frame": "static",
      "n": [1, 1],
      "l": [0, 0],
      "format": "csv",
      "out": "-",
      "root_index": 0,
      "grid_points": null,
      "y_max": 10.0,
      "normalize": false,
      "omega_bracket": null,
      "scan_points": 8192,
      "seed": 20240801,
      "checks": {},
      "tolerances": {},
      "sweep": {"param": "Omega", "values": [0.0, 0.5, 1.0]}
    }

``params.omega`` retunes B0 so the cyclotron frequency takes that value.
Output is deterministic: fixed column order, rows sorted by (n, l, omega),
floats rendered with 17 significant digits in CSV and full round-trip
fidelity in JSON.

Exit codes: 0 success; 1 usage or config error; 2 degenerate constraint or
no admissible root; 3 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys

import numpy as np

from .errors import (
    ConfigError,
    DegenerateConstraint,
    DipoleLandauError,
    EmptyBracket,
    NoPositiveRoot,
)
from .heun import radial_wavefunction, truncated_solution, truncation_residual
from .params import Frame, SystemParams, effective_frequency_at
from .quantize import (
    DEFAULT_SCAN_POINTS,
    allowed_frequencies,
    allowed_frequencies_n1,
    spectrum,
)
from .validation import DEFAULT_TOLERANCES, run_checks

_PARAM_KEYS = {
    "m": "m",
    "alpha": "alpha",
    "lambda": "lam",
    "lam": "lam",
    "B0": "B0",
    "b": "b",
    "D": "D",
    "a": "a",
    "k": "k",
    "Omega": "Omega",
}

_SWEEPABLE = ("m", "alpha", "lam", "B0", "b", "D", "a", "k", "Omega", "omega")


@dataclasses.dataclass
class RunConfig:
    """Resolved run configuration (config file merged with flag overrides)."""

    params: SystemParams = dataclasses.field(default_factory=SystemParams)
    omega: float | None = None
    frame: Frame = Frame.STATIC
    n_range: tuple[int, int] = (1, 1)
    l_range: tuple[int, int] = (0, 0)
    fmt: str = "csv"
    out: str = "-"
    root_index: int = 0
    grid_points: int | None = None
    y_max: float = 10.0
    normalize: bool = False
    omega_bracket: tuple[float, float] | None = None
    scan_points: int = DEFAULT_SCAN_POINTS
    seed: int = 20240801
    checks: dict = dataclasses.field(default_factory=dict)
    tolerances: dict = dataclasses.field(default_factory=dict)
    sweep: dict | None = None

    def resolved_params(self) -> SystemParams:
        if self.omega is not None:
            return self.params.with_omega(self.omega)
        return self.params

    def to_dict(self) -> dict:
        p = self.params
        return {
            "params": {
                "m": p.m,
                "alpha": p.alpha,
                "lambda": p.lam,
                "B0": p.B0,
                "b": p.b,
                "D": p.D,
                "a": p.a,
                "k": p.k,
                "Omega": p.Omega,
                "omega": self.omega,
            },
            "frame": self.frame.value,
            "n": list(self.n_range),
            "l": list(self.l_range),
            "format": self.fmt,
            "out": self.out,
            "root_index": self.root_index,
            "grid_points": self.grid_points,
            "y_max": self.y_max,
            "normalize": self.normalize,
            "omega_bracket": list(self.omega_bracket) if self.omega_bracket else None,
            "scan_points": self.scan_points,
            "seed": self.seed,
            "checks": dict(self.checks),
            "tolerances": dict(self.tolerances),
            "sweep": dict(self.sweep) if self.sweep else None,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        if not isinstance(doc, dict):
            raise ConfigError("config document must be a JSON object")
        known = {
            "params", "frame", "n", "l", "format", "out", "root_index", "grid_points",
            "y_max", "normalize", "omega_bracket", "scan_points", "seed", "checks",
            "tolerances", "sweep",
        }
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls()
        raw_params = doc.get("params", {})
        if not isinstance(raw_params, dict):
            raise ConfigError("'params' must be an object")
        fields = {}
        omega = None
        for key, value in raw_params.items():
            if key == "omega":
                omega = None if value is None else _as_float(value, "params.omega")
                continue
            if key not in _PARAM_KEYS:
                raise ConfigError(f"unknown parameter {key!r}")
            fields[_PARAM_KEYS[key]] = _as_float(value, f"params.{key}")
        try:
            cfg.params = SystemParams(**fields)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        cfg.omega = omega
        if "frame" in doc:
            try:
                cfg.frame = Frame.from_string(str(doc["frame"]))
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if "n" in doc:
            cfg.n_range = _as_span(doc["n"], "n")
        if "l" in doc:
            cfg.l_range = _as_span(doc["l"], "l")
        if "format" in doc:
            cfg.fmt = _as_format(doc["format"])
        if "out" in doc:
            cfg.out = str(doc["out"])
        if "root_index" in doc:
            cfg.root_index = int(doc["root_index"])
        if "grid_points" in doc and doc["grid_points"] is not None:
            cfg.grid_points = int(doc["grid_points"])
        if "y_max" in doc:
            cfg.y_max = _as_float(doc["y_max"], "y_max")
        if "normalize" in doc:
            cfg.normalize = bool(doc["normalize"])
        if "omega_bracket" in doc and doc["omega_bracket"] is not None:
            pair = doc["omega_bracket"]
            if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
                raise ConfigError("'omega_bracket' must be a [lo, hi] pair")
            cfg.omega_bracket = (_as_float(pair[0], "omega_bracket[0]"),
                                 _as_float(pair[1], "omega_bracket[1]"))
        if "scan_points" in doc:
            cfg.scan_points = int(doc["scan_points"])
        if "seed" in doc:
            cfg.seed = int(doc["seed"])
        if "checks" in doc:
            if not isinstance(doc["checks"], dict):
                raise ConfigError("'checks' must be an object of booleans")
            cfg.checks = {str(k): bool(v) for k, v in doc["checks"].items()}
        if "tolerances" in doc:
            if not isinstance(doc["tolerances"], dict):
                raise ConfigError("'tolerances' must be an object of numbers")
            cfg.tolerances = _check_tolerances(
                {str(k): _as_float(v, f"tolerances.{k}") for k, v in doc["tolerances"].items()}
            )
        if "sweep" in doc and doc["sweep"] is not None:
            sw = doc["sweep"]
            if not (isinstance(sw, dict) and "param" in sw and "values" in sw):
                raise ConfigError("'sweep' must be an object with 'param' and 'values'")
            if sw["param"] not in _SWEEPABLE:
                raise ConfigError(f"sweep param must be one of {_SWEEPABLE}")
            cfg.sweep = {
                "param": str(sw["param"]),
                "values": [_as_float(v, "sweep.values[]") for v in sw["values"]],
            }
        return cfg


def _as_float(value, where: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: expected a number, got {value!r}") from None


def _as_span(value, where: str) -> tuple[int, int]:
    if isinstance(value, int):
        return (value, value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        lo, hi = int(value[0]), int(value[1])
        if lo > hi:
            raise ConfigError(f"{where}: empty range [{lo}, {hi}]")
        return (lo, hi)
    raise ConfigError(f"{where}: expected an integer or [lo, hi] pair, got {value!r}")


def _as_format(value) -> str:
    fmt = str(value).strip().lower()
    if fmt not in ("csv", "json"):
        raise ConfigError(f"format must be 'csv' or 'json', got {value!r}")
    return fmt


def _check_tolerances(tol: dict) -> dict:
    unknown = set(tol) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise ConfigError(
            f"unknown tolerance names: {sorted(unknown)}; known: {sorted(DEFAULT_TOLERANCES)}"
        )
    return tol


def _parse_span_flag(text: str, where: str) -> tuple[int, int]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = int(parts[0])
            return (v, v)
        if len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
            if lo > hi:
                raise ValueError
            return (lo, hi)
    except ValueError:
        pass
    raise ConfigError(f"{where}: expected N or LO:HI, got {text!r}")


# ---------------------------------------------------------------------------
# rendering

def _fmt_float(x) -> str:
    if x is None:
        return ""
    return format(float(x), ".17g")


def _render_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt_float(v) if isinstance(v, float) or v is None else str(v) for v in row])
    return buf.getvalue()


def _render_json(header: list[str], rows: list[list]) -> str:
    payload = [dict(zip(header, row)) for row in rows]
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _render_table(header: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "json":
        return _render_json(header, rows)
    return _render_csv(header, rows)


def _write_output(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# commands

_SPECTRUM_HEADER = ["n", "l", "frame", "omega", "varpi", "tau", "energy", "status"]


def render_spectrum(cfg: RunConfig) -> tuple[str, int]:
    """Spectrum table text and exit code (shared by spectrum/validate/sweep)."""
    p = cfg.resolved_params()
    entries = spectrum(p, cfg.n_range, cfg.l_range, cfg.frame, cfg.omega_bracket)
    rows = [
        [e.n, e.l, e.frame.value, e.omega, e.varpi, e.tau, e.energy, e.status]
        for e in entries
    ]
    code = 0 if all(e.status == "ok" for e in entries) else 2
    return _render_table(_SPECTRUM_HEADER, rows, cfg.fmt), code


def cmd_spectrum(cfg: RunConfig) -> int:
    text, code = render_spectrum(cfg)
    _write_output(text, cfg.out)
    return code


def cmd_frequencies(cfg: RunConfig) -> int:
    p = cfg.resolved_params()
    header = ["n", "l", "frame", "root_index", "method", "omega", "varpi", "residual", "status"]
    rows: list[list] = []
    any_bad = False
    for n in range(cfg.n_range[0], cfg.n_range[1] + 1):
        for l in range(cfg.l_range[0], cfg.l_range[1] + 1):
            try:
                if n == 1:
                    omegas = allowed_frequencies_n1(p, l, cfg.frame)
                    method = "cubic"
                else:
                    omegas = allowed_frequencies(
                        p, n, l, cfg.frame, cfg.omega_bracket, cfg.scan_points
                    )
                    method = "bisection"
            except DegenerateConstraint:
                rows.append([n, l, cfg.frame.value, None, "", None, None, None, "degenerate"])
                any_bad = True
                continue
            except (NoPositiveRoot, EmptyBracket):
                rows.append([n, l, cfg.frame.value, None, "", None, None, None, "no_root"])
                any_bad = True
                continue
            for idx, w in enumerate(omegas):
                rows.append(
                    [
                        n,
                        l,
                        cfg.frame.value,
                        idx,
                        method,
                        w,
                        effective_frequency_at(p, cfg.frame, w),
                        abs(truncation_residual(p, l, cfg.frame, n, w)),
                        "ok",
                    ]
                )
    _write_output(_render_table(header, rows, cfg.fmt), cfg.out)
    return 2 if any_bad else 0


def cmd_wavefunction(cfg: RunConfig) -> int:
    p = cfg.resolved_params()
    n = cfg.n_range[0]
    l = cfg.l_range[0]
    try:
        if n == 1:
            omegas = allowed_frequencies_n1(p, l, cfg.frame)
        else:
            omegas = allowed_frequencies(p, n, l, cfg.frame, cfg.omega_bracket, cfg.scan_points)
    except (DegenerateConstraint, NoPositiveRoot, EmptyBracket) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not 0 <= cfg.root_index < len(omegas):
        print(
            f"error: root index {cfg.root_index} out of range; "
            f"{len(omegas)} admissible frequencies",
            file=sys.stderr,
        )
        return 2
    w = omegas[cfg.root_index]
    sol = truncated_solution(p, l, cfg.frame, n, w)
    points = cfg.grid_points if cfg.grid_points is not None else 501
    ys = np.linspace(0.0, cfg.y_max, points)
    f = radial_wavefunction(sol, ys)
    scale = np.sqrt(0.5 * p.m * sol.scales.varpi)  # y = scale * r
    rs = ys / scale
    header = ["y", "r", "F"]
    columns = [ys, rs, f]
    if cfg.normalize:
        norm_sq = np.trapezoid(f * f * rs, rs)
        columns.append(f / np.sqrt(norm_sq))
        header.append("F_normalized")
    rows = [[float(c[i]) for c in columns] for i in range(points)]
    _write_output(_render_table(header, rows, cfg.fmt), cfg.out)
    return 0


def cmd_validate(cfg: RunConfig) -> int:
    p = cfg.resolved_params()
    grid_points = cfg.grid_points if cfg.grid_points is not None else 4000
    results = run_checks(
        p,
        cfg.n_range,
        cfg.l_range,
        cfg.omega_bracket,
        grid_points,
        cfg.tolerances,
        cfg.checks,
        cfg.seed,
    )
    # byte-level determinism of the spectrum renderer doubles as the last check
    if cfg.checks.get("determinism", True):
        first, _ = render_spectrum(cfg)
        second, _ = render_spectrum(cfg)
        from .validation import CheckResult

        results.append(
            CheckResult(
                "determinism",
                "pass" if first == second else "fail",
                detail="two spectrum renders compared byte-for-byte",
            )
        )
    failed = [r.name for r in results if r.status == "fail"]
    report = {
        "config": cfg.to_dict(),
        "checks": [r.to_dict() for r in results],
        "all_passed": not failed,
        "failed": failed,
    }
    _write_output(json.dumps(report, indent=2, sort_keys=True) + "\n", cfg.out)
    return 3 if failed else 0


def cmd_sweep(cfg: RunConfig) -> int:
    if not cfg.sweep:
        print("error: sweep requires --param/--values or a config 'sweep' entry", file=sys.stderr)
        return 1
    name = cfg.sweep["param"]
    values = cfg.sweep["values"]
    header = [name] + _SPECTRUM_HEADER
    rows: list[list] = []
    any_bad = False
    for value in values:
        if name == "omega":
            p = cfg.params.with_omega(value)
        else:
            try:
                p = dataclasses.replace(cfg.params, **{name: value})
            except ValueError as exc:
                raise ConfigError(f"sweep value {value!r} rejected: {exc}") from None
        entries = spectrum(p, cfg.n_range, cfg.l_range, cfg.frame, cfg.omega_bracket)
        for e in entries:
            if e.status != "ok":
                any_bad = True
            rows.append(
                [float(value), e.n, e.l, e.frame.value, e.omega, e.varpi, e.tau, e.energy, e.status]
            )
    _write_output(_render_table(header, rows, cfg.fmt), cfg.out)
    return 2 if any_bad else 0


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dipole-landau",
        description="Bound states of an induced electric dipole moment in crossed "
        "fields with Kratzer and linear confinement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--config", metavar="PATH", help="JSON config document")
        sp.add_argument("--frame", choices=["static", "rotating"], help="reference frame")
        sp.add_argument("--format", choices=["csv", "json"], help="output format")
        sp.add_argument("--out", metavar="PATH", help="output path ('-' for stdout)")
        sp.add_argument("--n", metavar="N|LO:HI", help="level range")
        sp.add_argument("--l", metavar="L|LO:HI", help="angular quantum number range")
        sp.add_argument(
            "--omega-cap",
            type=float,
            metavar="W",
            help="upper end of the frequency scan bracket",
        )
        sp.add_argument("--grid-points", type=int, metavar="N", help="grid resolution")
        sp.add_argument(
            "--tolerance",
            action="append",
            default=[],
            metavar="NAME=VALUE",
            help="override a named validation tolerance (repeatable)",
        )

    for name, doc in (
        ("spectrum", "constrained frequencies and energies over (n, l) ranges"),
        ("frequencies", "admissible cyclotron frequencies with residuals"),
        ("wavefunction", "sampled radial wavefunction at one constrained frequency"),
        ("validate", "run the self-validation suite and emit a JSON report"),
        ("sweep", "spectrum table swept over one parameter"),
    ):
        sp = sub.add_parser(name, help=doc)
        add_common(sp)
        if name == "wavefunction":
            sp.add_argument("--root-index", type=int, help="which admissible frequency (0 = smallest)")
            sp.add_argument("--normalize", action="store_true", help="append an L2-normalized column")
        if name == "sweep":
            sp.add_argument("--param", help=f"parameter to sweep, one of {_SWEEPABLE}")
            sp.add_argument("--values", help="comma-separated numeric values")
    return parser


def _merge_flags(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    if args.frame:
        cfg.frame = Frame.from_string(args.frame)
    if args.format:
        cfg.fmt = _as_format(args.format)
    if args.out:
        cfg.out = args.out
    if args.n:
        cfg.n_range = _parse_span_flag(args.n, "--n")
    if args.l:
        cfg.l_range = _parse_span_flag(args.l, "--l")
    if args.omega_cap is not None:
        if args.omega_cap <= 0:
            raise ConfigError("--omega-cap must be positive")
        lo = cfg.omega_bracket[0] if cfg.omega_bracket else args.omega_cap * 1e-6
        cfg.omega_bracket = (lo, args.omega_cap)
    if args.grid_points is not None:
        if args.grid_points < 8:
            raise ConfigError("--grid-points must be at least 8")
        cfg.grid_points = args.grid_points
    overrides = {}
    for item in args.tolerance:
        name, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--tolerance expects NAME=VALUE, got {item!r}")
        overrides[name.strip()] = _as_float(value, f"--tolerance {name}")
    if overrides:
        merged = dict(cfg.tolerances)
        merged.update(_check_tolerances(overrides))
        cfg.tolerances = merged
    if getattr(args, "root_index", None) is not None:
        cfg.root_index = args.root_index
    if getattr(args, "normalize", False):
        cfg.normalize = True
    if getattr(args, "param", None) or getattr(args, "values", None):
        if not (getattr(args, "param", None) and getattr(args, "values", None)):
            raise ConfigError("sweep needs both --param and --values")
        if args.param not in _SWEEPABLE:
            raise ConfigError(f"sweep param must be one of {_SWEEPABLE}")
        try:
            values = [float(v) for v in args.values.split(",") if v.strip()]
        except ValueError:
            raise ConfigError(f"--values: expected comma-separated numbers, got {args.values!r}") from None
        if not values:
            raise ConfigError("--values is empty")
        cfg.sweep = {"param": args.param, "values": values}
    return cfg


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "frequencies": cmd_frequencies,
    "wavefunction": cmd_wavefunction,
    "validate": cmd_validate,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            try:
                with open(args.config, encoding="utf-8") as fh:
                    doc = json.load(fh)
            except OSError as exc:
                raise ConfigError(f"cannot read config: {exc}") from None
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config is not valid JSON: {exc}") from None
            cfg = RunConfig.from_dict(doc)
        else:
            cfg = RunConfig()
        cfg = _merge_flags(cfg, args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except DipoleLandauError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
