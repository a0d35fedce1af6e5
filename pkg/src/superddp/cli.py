"""Command-line front end: parameter sweeps, point tables, CI comparisons.

Subcommands:

  sweep    evaluate the requested probability estimates over a grid of the
           swept parameter and write one CSV row per grid point
  points   locate complex transition points for one model and print a table
           with closed forms (where available), Gamma factors, phase
           integrals, and the Stokes-line check
  compare  run the built-in numeric cross-checks and exit nonzero if any
           deviation exceeds its tolerance

All model parameters are dimensionless products (the width T is the time
unit): omega0T is the coupling scale, deltaT the splitting scale for the
gaussian model and the sweep slope for landau-zener, muT the erf-family
deviation.  Configuration comes from an optional flat "key = value" file
with CLI flags taking precedence; every effective value is echoed into the
output header as '#' comments.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import sys
import warnings
from typing import Callable

from . import ddp, families, gaussian
from .propagator import PropagationConfig, transition_probability, WindowWarning

__all__ = ["main"]

_FAMILIES = ("gaussian", "landau-zener", "erf", "erf-mu")
_METHODS = ("ode", "ddp-generic", "ddp-two-point", "ddp-sech", "series")

_COLUMNS = (
    "sweep_value",
    "p_adiabatic_ode",
    "p_diabatic_ode",
    "p_ddp_sech",
    "p_ddp_two_point",
    "p_ddp_generic",
    "ln_one_minus_p",
    "norm_drift",
    "n_points",
    "error",
)

_DEFAULTS: dict[str, object] = {
    "family": "gaussian",
    "omega0T": 1.0,
    "deltaT": 1.0,
    "muT": 0.0,
    "grid": "0:10:200",
    "methods": None,  # None -> family default, echoed after resolution
    "out": None,
    "json": False,
    "rel_tol": 1e-10,
    "abs_tol": 1e-12,
    "max_k": 1,
    "series_n_max": 20,
    "workers": 8,
}

_DEFAULT_METHODS = {
    "gaussian": ("ode", "ddp-generic", "ddp-two-point", "ddp-sech"),
    "erf": ("ode", "ddp-generic", "ddp-two-point", "ddp-sech"),
    "erf-mu": ("ode", "ddp-generic"),
    "landau-zener": ("ode", "ddp-generic"),
}


class ConfigError(ValueError):
    """The configuration file or flag set cannot specify a run."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_value(text: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_config_text(text: str) -> dict[str, object]:
    """Parse the flat config format: 'key = value' lines, '#' comments."""
    out: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        out[key.strip()] = _parse_value(value.strip())
    return out


def serialize_config(cfg: dict[str, object]) -> str:
    """Inverse of parse_config_text for round-trip provenance."""
    lines = []
    for key in sorted(cfg):
        value = cfg[key]
        text = value if isinstance(value, str) else json.dumps(value)
        lines.append(f"{key} = {text}")
    return "\n".join(lines) + "\n"


def _normalize_methods(value: object) -> tuple[str, ...]:
    if isinstance(value, str):
        value = [m for m in value.split(",") if m]
    methods = tuple(value)  # type: ignore[arg-type]
    for m in methods:
        if m not in _METHODS:
            raise ConfigError(f"unknown method {m!r}; choose from {_METHODS}")
    if "ddp-two-point" in methods and "series" in methods:
        raise ConfigError(
            "'series' and 'ddp-two-point' both fill the two-point column; "
            "request one of them"
        )
    return methods


def _parse_grid(spec: str) -> list[float]:
    parts = str(spec).split(":")
    if len(parts) not in (3, 4):
        raise ConfigError(f"grid must be 'start:stop:count[:log]', got {spec!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad grid {spec!r}: {exc}") from None
    if count < 2:
        raise ConfigError("grid count must be at least 2")
    scale = parts[3] if len(parts) == 4 else "lin"
    if scale == "log":
        if start <= 0 or stop <= 0:
            raise ConfigError("log grid needs positive endpoints")
        la, lb = math.log(start), math.log(stop)
        return [math.exp(la + (lb - la) * i / (count - 1)) for i in range(count)]
    if scale != "lin":
        raise ConfigError(f"grid scale must be 'lin' or 'log', got {scale!r}")
    return [start + (stop - start) * i / (count - 1) for i in range(count)]


def load_config(args: argparse.Namespace) -> dict[str, object]:
    """Merge defaults, config file, and CLI overrides (highest wins)."""
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_cfg = parse_config_text(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        for key, value in file_cfg.items():
            if key not in _DEFAULTS:
                raise ConfigError(f"unknown config key {key!r}")
            cfg[key] = value
    for key in ("family", "omega0T", "deltaT", "muT", "grid", "out", "methods"):
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            cfg[key] = value
    if getattr(args, "json", False):
        cfg["json"] = True

    if cfg["family"] not in _FAMILIES:
        raise ConfigError(f"unknown family {cfg['family']!r}; choose from {_FAMILIES}")
    for key in ("omega0T", "deltaT", "muT", "rel_tol", "abs_tol"):
        try:
            cfg[key] = float(cfg[key])  # type: ignore[arg-type]
        except (TypeError, ValueError):
            raise ConfigError(f"{key} must be a number, got {cfg[key]!r}") from None
    cfg["max_k"] = int(cfg["max_k"])  # type: ignore[arg-type]
    cfg["series_n_max"] = int(cfg["series_n_max"])  # type: ignore[arg-type]
    cfg["workers"] = max(1, int(cfg["workers"]))  # type: ignore[arg-type]
    if cfg["methods"] is None:
        cfg["methods"] = list(_DEFAULT_METHODS[cfg["family"]])  # type: ignore[index]
    cfg["methods"] = list(_normalize_methods(cfg["methods"]))
    _parse_grid(str(cfg["grid"]))  # validate early
    return cfg


def _build_model(cfg: dict, value: float) -> families.PulseModel:
    family = cfg["family"]
    if family == "gaussian":
        return families.make_gaussian(value, float(cfg["deltaT"]), 1.0)
    if family == "landau-zener":
        return families.make_landau_zener(value, float(cfg["deltaT"]))
    if family == "erf":
        return families.make_erf(value, 1.0)
    return families.make_erf_deviated(value, 1.0, float(cfg["muT"]))


def _closed_form_params(cfg: dict, value: float) -> gaussian.GaussianParams | None:
    """GaussianParams for the closed-form columns, when the family has them."""
    family = cfg["family"]
    if family == "gaussian":
        return gaussian.GaussianParams(value, float(cfg["deltaT"]), 1.0)
    if family == "erf" or (family == "erf-mu" and float(cfg["muT"]) == 0.0):
        return gaussian.superadiabatic_image(value, 1.0)
    return None


def _clip(p: float) -> float:
    return min(1.0, max(0.0, p))


def compute_row(cfg: dict, value: float) -> dict[str, object]:
    """One sweep record; failures land in the 'error' field, not exceptions."""
    row: dict[str, object] = {c: "" for c in _COLUMNS}
    row["sweep_value"] = value
    errors: list[str] = []
    methods = cfg["methods"]

    if cfg["family"] == "gaussian" and value == 0.0:
        # zero coupling: constant diagonal Hamiltonian, so the initial
        # adiabatic state only accumulates phase; every estimate is exact
        if "ode" in methods:
            row["p_adiabatic_ode"] = 0.0
            row["p_diabatic_ode"] = 1.0
            row["norm_drift"] = 0.0
            row["ln_one_minus_p"] = 0.0
        if "ddp-generic" in methods:
            row["p_ddp_generic"] = 0.0
            row["n_points"] = 0
        if "ddp-two-point" in methods or "series" in methods:
            row["p_ddp_two_point"] = 0.0
        if "ddp-sech" in methods:
            row["p_ddp_sech"] = 0.0
        row["error"] = ""
        return row

    model = None
    try:
        model = _build_model(cfg, value)
    except Exception as exc:
        errors.append(f"model: {exc}")

    if model is not None and "ode" in methods:
        try:
            pc = PropagationConfig(
                rel_tol=float(cfg["rel_tol"]), abs_tol=float(cfg["abs_tol"])
            )
            res = transition_probability(model, pc)
            row["p_adiabatic_ode"] = res.p_adiabatic
            row["p_diabatic_ode"] = res.p_diabatic
            row["norm_drift"] = res.norm_drift
            row["ln_one_minus_p"] = math.log1p(-res.p_adiabatic)
        except Exception as exc:
            errors.append(f"ode: {exc}")

    if model is not None and "ddp-generic" in methods:
        try:
            res = ddp.analyze(model, max_k=int(cfg["max_k"]), check_stokes=False)
            row["raw_p_ddp_generic"] = res.p_multi
            row["p_ddp_generic"] = _clip(res.p_multi)
            row["n_points"] = len(res.points)
        except Exception as exc:
            errors.append(f"ddp-generic: {exc}")

    wants_two_point = "ddp-two-point" in methods or "series" in methods
    wants_sech = "ddp-sech" in methods
    if wants_two_point or wants_sech:
        try:
            params = _closed_form_params(cfg, value)
            if params is None:
                raise gaussian.DomainError(
                    f"no closed-form image for family {cfg['family']!r}"
                )
            if "series" in methods:
                d = gaussian.ddp_series_small_alpha(params, int(cfg["series_n_max"]))
                re_d, im_d = d.real, d.imag
            else:
                re_d = gaussian.re_d_uniform(params)
                im_d = gaussian.im_d_uniform(params)
            if wants_two_point:
                raw = gaussian.probability_two_point(re_d, im_d)
                row["raw_p_ddp_two_point"] = raw
                row["p_ddp_two_point"] = _clip(raw)
            if wants_sech:
                row["p_ddp_sech"] = gaussian.probability_all_points(re_d, im_d)
        except Exception as exc:
            errors.append(f"closed-form: {exc}")

    row["error"] = "; ".join(errors).replace(",", ";").replace("\n", " ")
    return row


def _csv_field(value: object) -> str:
    if value == "":
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return _fmt(value)  # type: ignore[arg-type]


def _header_comments(cfg: dict) -> list[str]:
    from ._backend import HAVE_COMPILED

    lines = ["# superddp sweep"]
    for key in sorted(cfg):
        value = cfg[key]
        text = value if isinstance(value, str) else json.dumps(value)
        lines.append(f"# {key} = {text}")
    lines.append(f"# backend_compiled_available = {json.dumps(HAVE_COMPILED)}")
    return lines


def cmd_sweep(cfg: dict) -> int:
    grid = _parse_grid(str(cfg["grid"]))
    with concurrent.futures.ThreadPoolExecutor(
        max_workers=int(cfg["workers"])
    ) as pool:
        rows = list(pool.map(lambda v: compute_row(cfg, v), grid))

    lines = _header_comments(cfg)
    lines.append(",".join(_COLUMNS))
    for row in rows:
        lines.append(",".join(_csv_field(row[c]) for c in _COLUMNS))
    text = "\n".join(lines) + "\n"

    out = cfg.get("out")
    if out:
        with open(str(out), "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    if cfg.get("json"):
        payload = {
            "config": {k: cfg[k] for k in sorted(cfg)},
            "rows": [
                {k: (None if v == "" else v) for k, v in row.items()}
                for row in rows
            ],
        }
        json_text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
        if out:
            with open(str(out) + ".json", "w", encoding="utf-8") as fh:
                fh.write(json_text)
        else:
            sys.stdout.write(json_text)

    n_failed = sum(1 for row in rows if row["error"])
    if n_failed == len(rows):
        print(f"sweep: all {n_failed} rows failed", file=sys.stderr)
        return 3
    return 0


def cmd_points(cfg: dict) -> int:
    model = _build_model(cfg, float(cfg["omega0T"]))
    result = ddp.analyze(model, max_k=int(cfg["max_k"]))
    closed: dict[tuple[int, str], complex] = {}
    if cfg["family"] == "gaussian":
        params = gaussian.GaussianParams(
            float(cfg["omega0T"]), float(cfg["deltaT"]), 1.0
        )
        for k in range(int(cfg["max_k"]) + 1):
            tm, tp = gaussian.transition_points_closed(params, k)
            closed[(k, "minus")], closed[(k, "plus")] = tm, tp

    lines = [f"family={cfg['family']}  no_points={result.no_points}"]
    if result.no_points:
        lines.append("no transition points (optimized pulse regime)")
    else:
        lines.append("k sign t0 t0_closed gamma D residual")
        for data in result.points:
            p = data.point
            ref = closed.get((p.index_k, p.sign))
            lines.append(
                f"{p.index_k} {p.sign} {p.t0:.12g} "
                f"{ref if ref is not None else '-'} "
                f"{data.gamma:.6g} {data.d:.12g} {p.residual:.3e}"
            )
        lines.append(
            f"p_single={_fmt(result.p_single)} p_multi={_fmt(result.p_multi)} "
            f"stokes_ok={result.stokes_ok}"
        )
    text = "\n".join(lines) + "\n"
    if cfg.get("json"):
        payload = {
            "family": cfg["family"],
            "no_points": result.no_points,
            "stokes_ok": result.stokes_ok,
            "p_single": result.p_single,
            "p_multi": result.p_multi,
            "points": [
                {
                    "k": d.point.index_k,
                    "sign": d.point.sign,
                    "t0": [d.point.t0.real, d.point.t0.imag],
                    "gamma": [d.gamma.real, d.gamma.imag],
                    "d": [d.d.real, d.d.imag],
                    "residual": d.point.residual,
                }
                for d in result.points
            ],
        }
        text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    out = cfg.get("out")
    if out:
        with open(str(out), "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _check_lz_exactness() -> tuple[float, float]:
    worst = 0.0
    for ratio in (0.1, 0.5, 1.0, 2.0, 5.0):
        model = families.make_landau_zener(math.sqrt(ratio), 1.0)
        with warnings.catch_warnings():
            # the window truncates an infinite sweep; the boundary-angle
            # warning is expected and priced into the 1e-2 tolerance
            warnings.simplefilter("ignore", WindowWarning)
            ode = transition_probability(model).p_adiabatic
        point = ddp.find_transition_points(model)[0]
        single = ddp.ddp_probability_single(model, point)
        worst = max(worst, abs(single - ode))
    return worst, 1e-2


def _check_gaussian_points() -> tuple[float, float]:
    worst = 0.0
    for alpha in (0.25, 0.5, 1.0, 2.0):
        params = gaussian.GaussianParams(alpha, 1.0, 1.0)
        pts = ddp.find_transition_points(gaussian.to_pulse_model(params))
        for k in (0, 1, 2):
            tm, tp = gaussian.transition_points_closed(params, k)
            for sign, ref in (("minus", tm), ("plus", tp)):
                found = next(
                    p.t0 for p in pts if p.index_k == k and p.sign == sign
                )
                worst = max(
                    worst, abs(found.real - ref.real), abs(found.imag - ref.imag)
                )
    return worst, 1e-8


def _check_d_symmetry() -> tuple[float, float]:
    worst = 0.0
    for alpha in (0.25, 1.0, 2.0):
        model = gaussian.to_pulse_model(gaussian.GaussianParams(alpha, 1.0, 1.0))
        pts = [p for p in ddp.find_transition_points(model) if p.index_k == 0]
        dm = ddp.ddp_integral(model, next(p for p in pts if p.sign == "minus"))
        dp = ddp.ddp_integral(model, next(p for p in pts if p.sign == "plus"))
        worst = max(worst, abs(dm + dp.conjugate()) / abs(dp))
    return worst, 1e-8


def _local_minima(xs: list[float], ys: list[float]) -> list[float]:
    found = []
    for i in range(1, len(ys) - 1):
        if ys[i] < ys[i - 1] and ys[i] < ys[i + 1]:
            found.append(xs[i])
    return found


def _check_gaussian_nodes() -> tuple[float, float]:
    """Node positions of the sech form vs ODE minima at deltaT = 3 (5%).

    Known red: the first node carries an asymptotic phase offset of ~8%
    that later nodes do not (they sit within ~2.5%), so this check reports
    FAIL at the stated 5% rather than excluding the first node.
    """
    delta_t = 3.0
    grid = [10.0 * i / 199 for i in range(200)]
    ode, sech = [], []
    for v in grid:
        if v == 0.0:
            ode.append(0.0)
            sech.append(0.0)
            continue
        model = families.make_gaussian(v, delta_t, 1.0)
        ode.append(transition_probability(model).p_adiabatic)
        params = gaussian.GaussianParams(v, delta_t, 1.0)
        sech.append(
            gaussian.probability_all_points(
                gaussian.re_d_uniform(params), gaussian.im_d_uniform(params)
            )
        )
    ode_nodes = _local_minima(grid, ode)
    sech_nodes = _local_minima(grid, sech)
    worst = 0.0
    for node in sech_nodes:
        nearest = min(ode_nodes, key=lambda x: abs(x - node), default=None)
        if nearest is None:
            return math.inf, 0.05
        worst = max(worst, abs(nearest - node) / nearest)
    return worst, 0.05


def _check_norm_drift() -> tuple[float, float]:
    worst = 0.0
    for v in (0.5, 2.0, 5.0, 8.0):
        model = families.make_gaussian(v, 3.0, 1.0)
        worst = max(worst, transition_probability(model).norm_drift)
    return worst, 1e-9


_CHECKS: dict[str, Callable[[], tuple[float, float]]] = {
    "lz-exactness": _check_lz_exactness,
    "gaussian-points": _check_gaussian_points,
    "d-symmetry": _check_d_symmetry,
    "gaussian-nodes": _check_gaussian_nodes,
    "norm-drift": _check_norm_drift,
}


def cmd_compare(checks: list[str]) -> int:
    failed = False
    for name in checks:
        try:
            deviation, tol = _CHECKS[name]()
        except Exception as exc:
            print(f"{name}: ERROR {exc}")
            failed = True
            continue
        ok = deviation <= tol
        failed = failed or not ok
        print(
            f"{name}: max deviation {deviation:.3e} "
            f"(tol {tol:.0e}) {'PASS' if ok else 'FAIL'}"
        )
    return 1 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superddp",
        description="Two-state transition probabilities: exact ODE vs "
        "complex-asymptotic (DDP) estimates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("sweep", "sweep omega0T over a grid and write a CSV of estimates"),
        ("points", "locate complex transition points for one model"),
        ("compare", "run numeric cross-checks (CI gate)"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat 'key = value' config file")
        p.add_argument("--family", choices=_FAMILIES)
        p.add_argument("--omega0T", type=float, help="coupling scale (swept in sweep)")
        p.add_argument("--deltaT", type=float, help="splitting scale / LZ slope")
        p.add_argument("--muT", type=float, help="erf-mu deviation")
        p.add_argument("--grid", help="start:stop:count[:log]")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--methods", help="comma-separated subset of " + ",".join(_METHODS))
        p.add_argument("--json", action="store_true", help="also emit JSON")
        if name == "compare":
            p.add_argument(
                "--checks",
                help="comma-separated subset of " + ",".join(_CHECKS),
            )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "sweep":
            return cmd_sweep(cfg)
        if args.command == "points":
            return cmd_points(cfg)
        checks = list(_CHECKS)
        if getattr(args, "checks", None):
            checks = [c for c in args.checks.split(",") if c]
            unknown = [c for c in checks if c not in _CHECKS]
            if unknown:
                print(f"config error: unknown checks {unknown}", file=sys.stderr)
                return 2
        return cmd_compare(checks)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # numeric failure: root search, quadrature, ODE
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
