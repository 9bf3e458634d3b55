"""Command-line front end.

    freeconv density  --config model.json --out DIR
    freeconv diagnose --config model.json --out DIR
    freeconv sweep    --config model.json --out DIR --t 0.5,1,2

Exit codes: 0 success, 2 parse error, 3 validation error, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from ._numerics import FreeConvError, fmt_ext
from .inversion import ConvolutionModel, Tolerances
from .measure import AtomComponent, MeasureRep, Monomial, PowerTail, Table, Uniform, total_mass
from .regularity import (
    Diagnosis,
    atoms_of_convolution,
    density_curve,
    density_profile,
    diagnose,
)
from .transform import Cauchy, LevyHincin, Stable, scale_semigroup

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_NUMERIC = 0, 2, 3, 4


class ConfigParseError(Exception):
    pass


class ConfigValidationError(Exception):
    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


@dataclass
class RunConfig:
    mu: object
    nu: MeasureRep | None
    t: list[float] = field(default_factory=lambda: [1.0])
    window: tuple[float, float] = (-5.0, 5.0)
    grid_n: int = 512
    tolerances: Tolerances = field(default_factory=Tolerances)
    outputs: dict[str, str] = field(default_factory=dict)
    # per-t replacements for nu, for families where nu moves with t
    nu_by_t: dict[float, MeasureRep] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _ext(v, path: str, problems: list[str]) -> float:
    if v in ("inf", "+inf"):
        return math.inf
    if v == "-inf":
        return -math.inf
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        problems.append(f"{path}: expected a number or an infinity sentinel")
        return math.nan
    return float(v)


def _num(d: dict, key: str, path: str, problems: list[str], default=None) -> float:
    if key not in d:
        if default is not None:
            return default
        problems.append(f"{path}.{key}: missing")
        return math.nan
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        problems.append(f"{path}.{key}: expected a finite number")
        return math.nan
    return float(v)


def parse_measure(desc, path: str, problems: list[str]) -> MeasureRep | None:
    if not isinstance(desc, dict):
        problems.append(f"{path}: expected an object")
        return None
    atoms, pieces = [], []
    for i, a in enumerate(desc.get("atoms", [])):
        p = f"{path}.atoms[{i}]"
        if not isinstance(a, dict):
            problems.append(f"{p}: expected an object")
            continue
        at, mass = _num(a, "at", p, problems), _num(a, "mass", p, problems)
        if math.isnan(at) or math.isnan(mass):
            continue
        try:
            atoms.append(AtomComponent(at, mass))
        except ValueError as exc:
            problems.append(f"{p}: {exc}")
    for i, pc in enumerate(desc.get("pieces", [])):
        p = f"{path}.pieces[{i}]"
        if not isinstance(pc, dict):
            problems.append(f"{p}: expected an object")
            continue
        before = len(problems)
        try:
            piece = _parse_piece(pc, p, problems)
        except ValueError as exc:
            problems.append(f"{p}: {exc}")
            continue
        if len(problems) == before and piece is not None:
            pieces.append(piece)
    unknown = set(desc) - {"atoms", "pieces"}
    if unknown:
        problems.append(f"{path}: unknown keys {sorted(unknown)}")
    try:
        return MeasureRep(tuple(atoms), tuple(pieces))
    except ValueError as exc:
        problems.append(f"{path}: {exc}")
        return None


def _interval(pc: dict, p: str, problems: list[str]) -> tuple[float, float]:
    iv = pc.get("interval")
    if not isinstance(iv, list) or len(iv) != 2:
        problems.append(f"{p}.interval: expected [lo, hi]")
        return math.nan, math.nan
    return _ext(iv[0], f"{p}.interval[0]", problems), _ext(iv[1], f"{p}.interval[1]", problems)


def _parse_piece(pc: dict, p: str, problems: list[str]):
    family = pc.get("family")
    analytic = pc.get("analytic")
    if family == "uniform":
        lo, hi = _interval(pc, p, problems)
        return Uniform(_num(pc, "c", p, problems), lo, hi, True if analytic is None else bool(analytic))
    if family == "monomial":
        lo, hi = _interval(pc, p, problems)
        k = pc.get("k")
        if not isinstance(k, int) or isinstance(k, bool):
            problems.append(f"{p}.k: expected a nonnegative integer")
            return None
        center = _num(pc, "center", p, problems, default=0.0)
        return Monomial(_num(pc, "c", p, problems), k, center, lo, hi, True if analytic is None else bool(analytic))
    if family == "power_tail":
        lo, hi = _interval(pc, p, problems)
        pexp = _num(pc, "p", p, problems)
        if pexp <= 1:
            problems.append(f"{p}.p: piece mass infinite (need p > 1)")
            return None
        side = pc.get("side")
        if side is not None and side not in ("+", "-", "right", "left"):
            problems.append(f"{p}.side: expected '+' or '-'")
        return PowerTail(_num(pc, "c", p, problems), pexp, lo, hi, True if analytic is None else bool(analytic))
    if family == "table":
        pts, vals = pc.get("points"), pc.get("values")
        if not isinstance(pts, list) or not isinstance(vals, list):
            problems.append(f"{p}: table needs 'points' and 'values' lists")
            return None
        table = Table(tuple(float(x) for x in pts), tuple(float(v) for v in vals), bool(analytic))
        if "interval" in pc:
            lo, hi = _interval(pc, p, problems)
            if (lo, hi) != table.interval:
                problems.append(f"{p}.interval: must match the first and last sample points")
        return table
    problems.append(f"{p}.family: unknown family {family!r}")
    return None


def parse_phi(desc, path: str, problems: list[str]):
    if not isinstance(desc, dict):
        problems.append(f"{path}: expected an object")
        return None
    kind = desc.get("kind")
    try:
        if kind == "levy_hincin":
            gamma = _num(desc, "gamma", path, problems)
            sigma = parse_measure(desc.get("sigma"), f"{path}.sigma", problems)
            return None if sigma is None else LevyHincin(gamma, sigma)
        if kind == "stable":
            return Stable(_num(desc, "a", path, problems), _num(desc, "theta", path, problems, default=0.0))
        if kind == "cauchy":
            return Cauchy(
                _num(desc, "location", path, problems, default=0.0),
                _num(desc, "scale", path, problems, default=1.0),
            )
    except ValueError as exc:
        problems.append(f"{path}: {exc}")
        return None
    problems.append(f"{path}.kind: unknown kind {kind!r}")
    return None


def _check_probability(m: MeasureRep, path: str, problems: list[str]) -> None:
    mass = total_mass(m)
    if abs(mass - 1) > 1e-9:
        problems.append(f"{path}: total mass {mass} is not 1")


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON run configuration."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigParseError("config must be a JSON object")
    problems: list[str] = []
    mu = parse_phi(raw.get("mu"), "mu", problems)
    nu_by_t: dict[float, MeasureRep] = {}
    overrides = raw.get("nu_by_t", [])
    if not isinstance(overrides, list):
        problems.append("nu_by_t: expected a list of {t, nu} objects")
        overrides = []
    for i, entry in enumerate(overrides):
        path = f"nu_by_t[{i}]"
        if not isinstance(entry, dict):
            problems.append(f"{path}: expected an object")
            continue
        tv = _num(entry, "t", path, problems)
        m = parse_measure(entry.get("nu"), f"{path}.nu", problems)
        if m is not None and math.isfinite(tv):
            _check_probability(m, f"{path}.nu", problems)
            nu_by_t[tv] = m
    nu = None
    if "nu" in raw or not nu_by_t:
        nu = parse_measure(raw.get("nu"), "nu", problems)
        if nu is not None:
            _check_probability(nu, "nu", problems)
    t = raw.get("t", 1.0)
    ts = t if isinstance(t, list) else [t]
    tvals = []
    for i, v in enumerate(ts):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0:
            problems.append(f"t[{i}]: must be a positive number")
        else:
            tvals.append(float(v))
    if not tvals and not problems:
        problems.append("t: at least one value required")
    if nu is None and not problems:
        missing = [v for v in tvals if v not in nu_by_t]
        if missing:
            problems.append(f"nu: missing, and nu_by_t does not cover t = {missing}")
    window = raw.get("window", [-5.0, 5.0])
    if not (isinstance(window, list) and len(window) == 2 and all(isinstance(v, (int, float)) for v in window) and window[0] < window[1]):
        problems.append("window: expected [lo, hi] with lo < hi")
        window = [-5.0, 5.0]
    grid_n = raw.get("grid_n", 512)
    if not isinstance(grid_n, int) or isinstance(grid_n, bool) or grid_n < 32:
        problems.append("grid_n: must be an integer >= 32")
    tol_desc = raw.get("tolerances", {})
    tol = Tolerances()
    if not isinstance(tol_desc, dict):
        problems.append("tolerances: expected an object")
    else:
        for key, val in tol_desc.items():
            if key not in ("y_floor", "root_tol", "quad_tol"):
                problems.append(f"tolerances.{key}: unknown tolerance")
            elif isinstance(val, bool) or not isinstance(val, (int, float)) or not val > 0:
                problems.append(f"tolerances.{key}: must be positive")
            else:
                tol = replace(tol, **{key: float(val)})
    outputs = raw.get("outputs", {})
    if not isinstance(outputs, dict):
        problems.append("outputs: expected an object")
        outputs = {}
    if problems:
        raise ConfigValidationError(problems)
    return RunConfig(mu, nu, tvals, (float(window[0]), float(window[1])), grid_n, tol, dict(outputs), nu_by_t)


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _fmt(v: float) -> str:
    if isinstance(v, float) and (math.isinf(v) or math.isnan(v)):
        return fmt_ext(v)
    out = format(float(v), ".12g")
    return "0" if out == "-0" else out


def _interval_text(iv) -> str:
    return f"[{_fmt(iv[0])}, {_fmt(iv[1])}]"


def _write(path: Path, lines: list[str]) -> None:
    path.write_text("\n".join(lines) + "\n")


def _model(config: RunConfig, t: float) -> ConvolutionModel:
    nu = config.nu_by_t.get(t, config.nu)
    if nu is None:
        raise ValueError(f"no nu given for t = {_fmt(t)}")
    return ConvolutionModel(scale_semigroup(config.mu, t), nu, config.tolerances)


def _density_section(config: RunConfig, model: ConvolutionModel, out: Path) -> tuple[list[str], list]:
    names = {"density": "density.csv", "atoms": "atoms.csv", **config.outputs}
    s_grid = np.linspace(config.window[0], config.window[1], config.grid_n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        dens = density_curve(model, s_grid)
        profile = density_profile(model, config.window, 64)
    rows = ["s,p"] + [f"{_fmt(s)},{_fmt(p)}" for s, p in zip(s_grid, dens)]
    _write(out / names["density"], rows)
    atoms = atoms_of_convolution(model)
    _write(out / names["atoms"], ["location,mass"] + [f"{_fmt(a.location)},{_fmt(a.mass)}" for a in atoms])
    lines = [f"window: {_interval_text(config.window)}", f"grid_n: {config.grid_n}"]
    lines.append(f"support_components: {len(profile.components)}")
    for i, iv in enumerate(profile.components):
        lines.append(f"support_component[{i}]: {_interval_text(iv)}")
    for i, a in enumerate(atoms):
        flag = " boundary-equality" if a.boundary_equality else ""
        lines.append(f"atom[{i}]: location={_fmt(a.location)} mass={_fmt(a.mass)}{flag}")
    lines.append(f"zero_points: {len(profile.zero_points)}")
    for i, (s, bp) in enumerate(profile.zero_points):
        lines.extend(_boundary_lines(f"zero_point[{i}]", bp))
    lines.append(f"ac_mass_in_window: {_fmt(profile.ac_mass)}")
    warn = list(profile.warnings)
    if not np.any(dens > 0):
        warn.append("density vanishes on the whole window")
    for i, w in enumerate(warn):
        lines.append(f"warning[{i}]: {w}")
    if not np.any(dens > 0):
        print("warning: density vanishes on the whole window", file=sys.stderr)
    return lines, atoms


def _boundary_lines(prefix: str, bp) -> list[str]:
    lines = [
        f"{prefix}.alpha: {_fmt(bp.alpha)}",
        f"{prefix}.kind: {bp.kind}",
        f"{prefix}.omega_prime: {_fmt(bp.omega_prime)}",
        f"{prefix}.image: {_fmt(bp.image)}",
        f"{prefix}.margin: {_fmt(bp.margin)}",
    ]
    if bp.tie:
        lines.append(f"{prefix}.note: equality within tolerance")
    for key in sorted(bp.certificates):
        lines.append(f"{prefix}.certificate.{key}: {_fmt(bp.certificates[key])}")
    return lines


def _diagnosis_lines(diag: Diagnosis) -> list[str]:
    ph = diag.property_H
    lines = [f"property_H: {ph}"]
    if ph.reason:
        lines.append(f"property_H.reason: {ph.reason}")
    lines.append(f"variance_mu: {_fmt(diag.variance_mu)}")
    if diag.s_mu is None:
        lines.append("s_mu: none")
    else:
        lines.append(f"s_mu: location={_fmt(diag.s_mu[0])} atom_mass={_fmt(diag.s_mu[1])}")
    lines.append(f"component_count: {diag.component_count}")
    lines.append(f"component_bound: {diag.component_bound if diag.component_bound is not None else 'n/a'}")
    if diag.component_bound is not None:
        lines.append(f"component_bound_satisfied: {str(diag.component_count <= diag.component_bound).lower()}")
    lines.append(f"boundary_points: {len(diag.boundary_points)}")
    for i, bp in enumerate(diag.boundary_points):
        lines.extend(_boundary_lines(f"boundary_point[{i}]", bp))
    for i, (s, rep) in enumerate(diag.analyticity_reports):
        verdict = rep.analytic if isinstance(rep.analytic, str) else str(rep.analytic).lower()
        lines.append(f"analyticity[{i}]: s={_fmt(s)} analytic={verdict} reason={rep.reason}")
    for i, n in enumerate(diag.notes):
        lines.append(f"note[{i}]: {n}")
    return lines


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_density(config: RunConfig, out: Path, t: float | None = None) -> list:
    out.mkdir(parents=True, exist_ok=True)
    t = config.t[0] if t is None else t
    model = _model(config, t)
    lines, atoms = _density_section(config, model, out)
    _write(out / config.outputs.get("report", "report.txt"), [f"t: {_fmt(t)}"] + lines)
    return atoms


def cmd_diagnose(config: RunConfig, out: Path, t: float | None = None) -> Diagnosis:
    out.mkdir(parents=True, exist_ok=True)
    t = config.t[0] if t is None else t
    model = _model(config, t)
    diag = diagnose(model, config.window)
    _write(out / config.outputs.get("report", "report.txt"), [f"t: {_fmt(t)}"] + _diagnosis_lines(diag))
    return diag


def cmd_sweep(config: RunConfig, out: Path) -> list[str]:
    out.mkdir(parents=True, exist_ok=True)
    index = ["t,status,component_count,atom_masses,property_H"]
    for t in config.t:
        sub = out / f"t={_fmt(t)}"
        sub.mkdir(exist_ok=True)
        try:
            model = _model(config, t)
            lines, atoms = _density_section(config, model, sub)
            diag = diagnose(model, config.window)
            _write(sub / "report.txt", [f"t: {_fmt(t)}"] + lines + _diagnosis_lines(diag))
            masses = ";".join(_fmt(a.mass) for a in atoms) or "0"
            index.append(f"{_fmt(t)},ok,{diag.component_count},{masses},{diag.property_H}")
        except (FreeConvError, ValueError, ArithmeticError) as exc:
            msg = str(exc).replace(",", ";").replace("\n", " ")
            index.append(f"{_fmt(t)},failed: {msg},,,")
    _write(out / "index.csv", index)
    return index


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freeconv", description="Free additive convolution with an infinitely divisible law.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("density", "density, atoms and support of the convolution"),
        ("diagnose", "property (H), boundary points and analyticity"),
        ("sweep", "density and diagnosis along the semigroup"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, type=Path, help="JSON model description")
        p.add_argument("--out", required=True, type=Path, help="output directory")
        p.add_argument("--window", nargs=2, type=float, metavar=("LO", "HI"))
        p.add_argument("--grid", type=int, metavar="N")
        p.add_argument("--t", type=str, metavar="LIST", help="comma-separated semigroup times")
        p.add_argument("--tol", type=float, metavar="X", help="root tolerance")
    return parser


def _apply_overrides(config: RunConfig, args) -> RunConfig:
    problems = []
    if args.window is not None:
        if not args.window[0] < args.window[1]:
            problems.append("--window: need LO < HI")
        config.window = (args.window[0], args.window[1])
    if args.grid is not None:
        if args.grid < 32:
            problems.append("--grid: must be >= 32")
        config.grid_n = args.grid
    if args.t is not None:
        try:
            ts = [float(v) for v in args.t.split(",") if v.strip()]
        except ValueError:
            problems.append("--t: expected comma-separated numbers")
            ts = []
        if not ts or any(not v > 0 for v in ts):
            problems.append("--t: values must be positive")
        config.t = ts
    if args.tol is not None:
        if not args.tol > 0:
            problems.append("--tol: must be positive")
        config.tolerances = replace(config.tolerances, root_tol=args.tol)
    if problems:
        raise ConfigValidationError(problems)
    return config


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.config.read_text()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        config = _apply_overrides(parse_config(text), args)
    except ConfigParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConfigValidationError as exc:
        for p in exc.problems:
            print(f"validation error: {p}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        if args.command == "density":
            cmd_density(config, args.out)
        elif args.command == "diagnose":
            cmd_diagnose(config, args.out)
        else:
            cmd_sweep(config, args.out)
    except (FreeConvError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
