"""Command-line entry point emitting figure-ready JSON/CSV data files.

Every emitted file embeds the fully resolved run configuration and a schema
version string, and is byte-identical across runs with the same config: all
floats are written with repr (shortest round-trip form) and JSON keys are
sorted.  2D fields go to JSON (nested arrays, row-major over x), 1D curves to
CSV with the config carried in # comment lines.

Exit codes: 0 success, 1 usage error, 2 regime violation, 3 oracle failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .errors import (
    ConfigError,
    DomainError,
    GridTooNarrow,
    InvalidProbe,
    InvalidWidth,
    IoError,
    NotWeak,
    OutOfGrid,
    RegimeViolation,
)
from .grids import GaussianSpec, Grid1D, sample_gaussian
from .measurement import PointerConfig, ProbeConfig, pointer_weight
from .oracle import gaussian_overlap, run_suite, write_report
from .phase_space import (
    averaged_variances,
    jwm_wigner_closed,
    marginals_closed,
    mean_pointer_shift,
    single_trial_variances,
)
from .predictability import average_predictability, predictability_exact

__all__ = [
    "RunConfig",
    "SCHEMA_VERSION",
    "cmd_figure1",
    "cmd_figure2",
    "cmd_variances",
    "cmd_dirac_scan",
    "cmd_verify",
    "main",
]

SCHEMA_VERSION = "1"

# gamma/sigma grid for the average-certainty curve; dense at the weak end for
# the origin slope, reaching 10 for the saturation point.
AVG_RATIO_LIST = (0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0, 7.0, 10.0)


@dataclass(frozen=True)
class RunConfig:
    """Resolved parameters for one CLI invocation; defaults are the headline figure set."""

    gamma: float = 0.2
    sigma: float = 1.0
    sigma_x: float = 0.2
    sigma_p: float = 0.2
    x_probe: float = 0.0
    p_probe: float = 0.0
    q_reading: float = 2.0
    grid_n: int = 512
    grid_span: float = 32.0
    output_path: str = "."

    def __post_init__(self) -> None:
        for name in ("gamma", "sigma", "sigma_x", "sigma_p", "x_probe", "p_probe", "q_reading", "grid_span"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not np.isfinite(v):
                raise ConfigError(f"{name} must be a finite number, got {v!r}")
        if self.gamma < 0.0:
            raise ConfigError(f"gamma must be >= 0, got {self.gamma}")
        for name in ("sigma", "sigma_x", "sigma_p", "grid_span"):
            if getattr(self, name) <= 0.0:
                raise ConfigError(f"{name} must be > 0, got {getattr(self, name)}")
        if isinstance(self.grid_n, bool) or not isinstance(self.grid_n, int):
            raise ConfigError(f"grid_n must be an integer, got {self.grid_n!r}")
        if self.grid_n < 16:
            raise ConfigError(f"grid_n must be >= 16, got {self.grid_n}")
        if not isinstance(self.output_path, str):
            raise ConfigError(f"out must be a string path, got {self.output_path!r}")

    def pointer(self) -> PointerConfig:
        return PointerConfig(gamma=self.gamma, sigma=self.sigma)

    def probe(self) -> ProbeConfig:
        return ProbeConfig(
            x_probe=self.x_probe, p_probe=self.p_probe, sigma_x=self.sigma_x, sigma_p=self.sigma_p
        )

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _fnum(x: float) -> str:
    return repr(float(x))


def _out_dir(cfg: RunConfig) -> Path:
    path = Path(cfg.output_path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create output directory {path}: {exc}") from exc
    return path


def _write_json(path: Path, payload: dict) -> None:
    try:
        path.write_text(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _write_csv(path: Path, cfg: RunConfig, header: list[str], rows: list[list[float]]) -> None:
    lines = [
        f"# schema_version: {SCHEMA_VERSION}",
        "# config: " + json.dumps(cfg.as_dict(), sort_keys=True),
        ",".join(header),
    ]
    lines.extend(",".join(_fnum(v) for v in row) for row in rows)
    try:
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def cmd_figure1(cfg: RunConfig) -> list[Path]:
    """Conditional Wigner field and its marginals at the configured reading.

    The field values carry the reading weight (the rare-event scale of the
    chosen q'), matching the headline figure's normalization.
    """
    pointer, probe = cfg.pointer(), cfg.probe()
    gx = Grid1D.centered(cfg.grid_n, cfg.grid_span)
    gp = Grid1D.centered(cfg.grid_n, cfg.grid_span)
    field = jwm_wigner_closed(pointer, probe, cfg.q_reading, gx, gp)
    px, pp = marginals_closed(pointer, probe, cfg.q_reading, gx, gp)
    w = pointer_weight(pointer, cfg.q_reading)
    out = _out_dir(cfg)
    wigner = out / "wigner.json"
    _write_json(
        wigner,
        {
            "schema_version": SCHEMA_VERSION,
            "config": cfg.as_dict(),
            "x_grid": gx.points.tolist(),
            "p_grid": gp.points.tolist(),
            "values": field.values.tolist(),
            "min_value": float(field.values.min()),
            "max_value": float(field.values.max()),
        },
    )
    marginals = out / "marginals.csv"
    rows = [
        [gx.points[i], w * px[i], w * pp[i]]
        for i in range(cfg.grid_n)
    ]
    _write_csv(marginals, cfg, ["u", "Px", "Pp"], rows)
    return [wigner, marginals]


def cmd_figure2(cfg: RunConfig, gamma_over_sigma_list=AVG_RATIO_LIST) -> list[Path]:
    """Certainty-vs-reading curve with its readout densities, and the averaged curve.

    P_exact is emitted signed; a plot of the magnitude is the renderer's
    business.  The averaged curve covers the configured gamma/sigma ratios.
    """
    pointer = cfg.pointer()
    out = _out_dir(cfg)
    q = np.linspace(-4.0 * cfg.sigma, 4.0 * cfg.sigma, 321)
    p_exact = predictability_exact(pointer, q)
    hit = np.exp(-((q - 0.5 * cfg.gamma) ** 2) / cfg.sigma**2) / (cfg.sigma * np.sqrt(np.pi))
    miss = np.exp(-((q + 0.5 * cfg.gamma) ** 2) / cfg.sigma**2) / (cfg.sigma * np.sqrt(np.pi))
    pred = out / "predictability.csv"
    rows = [[q[i], p_exact[i], hit[i], miss[i]] for i in range(q.size)]
    _write_csv(pred, cfg, ["q_reading", "P_exact", "density_hit", "density_miss"], rows)

    avg = out / "avg_predictability.csv"
    avg_rows = []
    for ratio in gamma_over_sigma_list:
        p_bar = average_predictability(PointerConfig(gamma=ratio * cfg.sigma, sigma=cfg.sigma))
        avg_rows.append([ratio, p_bar])
    _write_csv(avg, cfg, ["gamma_over_sigma", "avg_P"], avg_rows)
    return [pred, avg]


def cmd_variances(cfg: RunConfig, sweep=None) -> list[Path]:
    """Single-trial and reading-averaged variances over a momentum-width sweep.

    Rows scan sigma_p in [0.05, 0.5] against target certainty P in [0, 1];
    the reading realizing each P is q' = P sigma^2 / gamma.
    """
    if cfg.gamma == 0.0:
        raise ConfigError("gamma must be > 0 for the variance sweep (readings realize P = gamma q'/sigma^2)")
    pointer = cfg.pointer()
    if sweep is None:
        sweep = [
            (sp, p)
            for sp in np.linspace(0.05, 0.5, 10)
            for p in np.linspace(0.0, 1.0, 10)
        ]
    out = _out_dir(cfg)
    rows = []
    for sp, p_target in sweep:
        probe = ProbeConfig(
            x_probe=cfg.x_probe, p_probe=cfg.p_probe, sigma_x=cfg.sigma_x, sigma_p=float(sp)
        )
        q = p_target * cfg.sigma**2 / cfg.gamma
        v = single_trial_variances(pointer, probe, q)
        av = averaged_variances(pointer, probe)
        rows.append(
            [cfg.sigma_x, sp, p_target, v.var_x, v.var_p, v.product, av.var_x, av.var_p, av.product]
        )
    path = out / "variances.csv"
    _write_csv(
        path,
        cfg,
        ["sigma_x", "sigma_p", "P", "var_x", "var_p", "product", "avg_var_x", "avg_var_p", "avg_product"],
        rows,
    )
    return [path]


def cmd_dirac_scan(cfg: RunConfig, lattice_half: float = 1.0, lattice_n: int = 5) -> list[Path]:
    """Phase-point readings of a unit Gaussian on a probe lattice, vs the analytic value.

    Both value columns estimate the same smeared phase-point quantity: the
    mean pointer shift from the full simulation divided by gamma and by the
    slot-area factor 2 sqrt(2 pi) sigma_x sigma_p, and the closed Gaussian
    overlap triple product under the same normalization.  The lattice is
    centered on (x_probe, p_probe) so a far-tail scan needs only a flag.
    """
    pointer = cfg.pointer()
    grid = Grid1D.centered(cfg.grid_n, cfg.grid_span)
    spec = GaussianSpec()
    psi = sample_gaussian(spec, grid)
    scale = 2.0 * np.sqrt(2.0 * np.pi) * cfg.sigma_x * cfg.sigma_p
    xs = cfg.x_probe + np.linspace(-lattice_half, lattice_half, lattice_n)
    ps = cfg.p_probe + np.linspace(-lattice_half, lattice_half, lattice_n)
    lattice = []
    for xp in xs:
        for pp_ in ps:
            probe = ProbeConfig(
                x_probe=float(xp), p_probe=float(pp_), sigma_x=cfg.sigma_x, sigma_p=cfg.sigma_p
            )
            shift = mean_pointer_shift(psi, pointer, probe)
            chi_s = GaussianSpec(center=float(xp), width=cfg.sigma_x)
            gam_s = GaussianSpec(width=1.0 / cfg.sigma_p, momentum=float(pp_))
            triple = (
                gaussian_overlap(spec, gam_s)
                * gaussian_overlap(gam_s, chi_s)
                * gaussian_overlap(chi_s, spec)
            ).real
            lattice.append(
                {
                    "x_probe": float(xp),
                    "p_probe": float(pp_),
                    "re_d_analytic": float(triple / scale),
                    "q_shift_over_gamma": float(shift / (cfg.gamma * scale)),
                }
            )
    out = _out_dir(cfg)
    path = out / "dirac.json"
    _write_json(
        path,
        {
            "schema_version": SCHEMA_VERSION,
            "config": cfg.as_dict(),
            "metadata": {
                "sigma_x": cfg.sigma_x,
                "sigma_p": cfg.sigma_p,
                "slot_area_scale": scale,
                "state": "unit-width Gaussian at the origin",
                "lattice_half": lattice_half,
                "lattice_n": lattice_n,
            },
            "lattice": lattice,
        },
    )
    return [path]


def cmd_verify(config_path: str | None, output_path: str = ".") -> int:
    """Run the oracle suite, print a summary table, write the report.

    Returns 0 iff every check passed, 3 otherwise.
    """
    results = run_suite(config_path)
    out = Path(output_path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create output directory {out}: {exc}") from exc
    write_report(results, out / "oracle_report.json")
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  observed={r.observed:.6g}  tol={r.tolerance:.2g}")
    n_fail = sum(1 for r in results if not r.passed)
    print(f"{len(results) - n_fail}/{len(results)} checks passed")
    return 0 if n_fail == 0 else 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract reserves 2 for regime
    # violations, so remap to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_run_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--gamma", type=float, default=None)
    sp.add_argument("--sigma", type=float, default=None)
    sp.add_argument("--sigma-x", type=float, default=None)
    sp.add_argument("--sigma-p", type=float, default=None)
    sp.add_argument("--x-probe", type=float, default=None)
    sp.add_argument("--p-probe", type=float, default=None)
    sp.add_argument("--q-reading", type=float, default=None)
    sp.add_argument("--grid-n", type=int, default=None)
    sp.add_argument("--grid-span", type=float, default=None)
    sp.add_argument("--out", type=str, default=None)
    sp.add_argument("--config", type=str, default=None, help="JSON file with the same keys as the flags")


# per-command base values layered under config file and flags
_COMMAND_DEFAULTS: dict[str, dict] = {
    "figure1": {},
    "figure2": {},
    "variances": {},
    # phase-point readout is first order in gamma and needs narrow slots plus
    # a grid wide enough for the momentum-slot envelope
    "dirac-scan": {"gamma": 0.05, "sigma_x": 0.1, "sigma_p": 0.1, "grid_n": 2048, "grid_span": 48.0},
}

_FIELD_FOR_KEY = {
    "gamma": "gamma",
    "sigma": "sigma",
    "sigma_x": "sigma_x",
    "sigma_p": "sigma_p",
    "x_probe": "x_probe",
    "p_probe": "p_probe",
    "q_reading": "q_reading",
    "grid_n": "grid_n",
    "grid_span": "grid_span",
    "out": "output_path",
}


def _resolve_config(args: argparse.Namespace, command: str) -> RunConfig:
    merged = dict(_COMMAND_DEFAULTS[command])
    if args.config is not None:
        try:
            raw = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {args.config} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"config {args.config} must be a JSON object")
        unknown = set(raw) - set(_FIELD_FOR_KEY)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for key, value in raw.items():
            merged[_FIELD_FOR_KEY[key]] = value
    for key, field in _FIELD_FOR_KEY.items():
        value = getattr(args, "out" if key == "out" else key, None)
        if value is not None:
            merged[field] = value
    try:
        return RunConfig(**merged)
    except (InvalidProbe, InvalidWidth) as exc:
        raise ConfigError(str(exc)) from exc


def main(argv=None) -> int:
    parser = _Parser(prog="jwmsim", description="joint weak-measurement data generator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("figure1", "figure2", "variances", "dirac-scan"):
        _add_run_flags(sub.add_parser(name, add_help=True))
    verify = sub.add_parser("verify")
    verify.add_argument("--config", type=str, default=None, help="oracle suite config JSON")
    verify.add_argument("--out", type=str, default=None)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "verify":
            return cmd_verify(args.config, args.out if args.out is not None else ".")
        cfg = _resolve_config(args, args.command)
        if args.command == "figure1":
            paths = cmd_figure1(cfg)
        elif args.command == "figure2":
            paths = cmd_figure2(cfg)
        elif args.command == "variances":
            paths = cmd_variances(cfg)
        else:
            paths = cmd_dirac_scan(cfg)
        for p in paths:
            print(p)
        return 0
    except (ConfigError, DomainError, IoError) as exc:
        print(f"jwmsim: error: {exc}", file=sys.stderr)
        return 1
    except (RegimeViolation, NotWeak, GridTooNarrow, InvalidProbe, OutOfGrid) as exc:
        print(f"jwmsim: regime violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
