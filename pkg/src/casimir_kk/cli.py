"""Command-line front end: ``casimir-kk <synth|epsilon|pressure|mc|fit> --config run.toml``.

Every subcommand reads one TOML run file, writes CSV tables into ``--out``
and exits with 0 (success), 2 (configuration error), 3 (input-data error)
or 4 (computation error).  See README.md for the run-file format.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import math
import sys
import warnings
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .constants import ideal_casimir_pressure
from .core import OpticalDataError, OpticalDataset, make_log_grid
from .dispersion import (
    DEFAULT_ZERO_THRESHOLD,
    Identity,
    OldRational,
    SqrtWindow,
    WindowZeroError,
    cut_fraction,
    kk_windowed,
    window_label,
    window_zero_ratio,
)
from .fitting import (
    DEFAULT_FIT_UPPER,
    DEFAULT_GAMMA_FACTOR,
    FitError,
    PlasmaFit,
    consistency_report,
    fit_plasma_frequency,
    interband_constant,
)
from .ingest import FileSchema, IngestError, emit_synthetic, load_dataset, merge_datasets
from .lifshitz import (
    GENERALIZED_PLASMA,
    CasimirConfig,
    constant_provider,
    pressure,
    provider_from_result,
)
from .models import (
    DrudeParams,
    GeneralizedPlasmaSpec,
    LorentzOscillator,
    drude_eps_real_axis,
    gp_provider,
    preset as get_preset,
    synthetic_dataset,
)
from .quadrature import QuadratureConfig
from .uncertainty import NoiseSpec, cover_grid, mc_uncertainty

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INPUT = 3
EXIT_COMPUTE = 4


class ConfigError(Exception):
    pass


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# run file


@dataclass(frozen=True)
class FileEntry:
    path: Path
    schema: FileSchema
    label: str
    eps_inter: Optional[float] = None


@dataclass
class RunConfig:
    """Validated contents of a run file.  Paths are resolved against its directory."""

    source: Path
    sha256: str
    raw: dict
    files: list = field(default_factory=list)
    synthetic: Optional[dict] = None
    exclude: list = field(default_factory=list)
    drude: Optional[DrudeParams] = None
    windows: list = field(default_factory=list)
    xi: Optional[np.ndarray] = None
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    zero_threshold: float = DEFAULT_ZERO_THRESHOLD
    noise: Optional[NoiseSpec] = None

    def section(self, name) -> dict:
        sec = self.raw.get(name, {})
        if not isinstance(sec, dict):
            raise ConfigError(f"[{name}] must be a table")
        return sec


def _num(sec, key, default=None, required=False, where=""):
    if key not in sec:
        if required:
            raise ConfigError(f"missing key {where}{key}")
        return default
    val = sec[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{where}{key} must be a number, got {val!r}")
    return float(val)


def _parse_window(spec, i):
    where = f"window[{i}]."
    if not isinstance(spec, dict):
        raise ConfigError(f"window[{i}] must be a table")
    kind = spec.get("kind", "sqrt")
    if kind == "kk":
        return Identity()
    if kind == "sqrt":
        return SqrtWindow(_num(spec, "b", required=True, where=where))
    if kind == "old":
        w = spec.get("w")
        if not (isinstance(w, list) and len(w) == 2):
            raise ConfigError(f"{where}w must be [re, im]")
        return OldRational(int(spec.get("p", 1)), int(spec.get("q", 3)), complex(float(w[0]), float(w[1])))
    raise ConfigError(f"{where}kind must be 'kk', 'sqrt' or 'old', got {kind!r}")


def _parse_xi(sec):
    if "values" in sec:
        vals = np.asarray(sec["values"], dtype=float)
        if vals.ndim != 1 or vals.size == 0 or np.any(vals <= 0) or np.any(np.diff(vals) <= 0):
            raise ConfigError("xi.values must be positive and strictly increasing")
        return vals
    start = _num(sec, "start", required=True, where="xi.")
    stop = _num(sec, "stop", required=True, where="xi.")
    ppd = int(_num(sec, "points_per_decade", 10, where="xi."))
    return make_log_grid(start, stop, ppd)


def load_config(path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file {path} not found")
    blob = path.read_bytes()
    try:
        raw = tomllib.loads(blob.decode("utf-8"))
    except (tomllib.TOMLDecodeError, UnicodeDecodeError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    cfg = RunConfig(source=path, sha256=hashlib.sha256(blob).hexdigest(), raw=raw)
    base = path.parent
    try:
        data = cfg.section("data")
        default_schema = data.get("schema", "NK")
        for i, entry in enumerate(data.get("files", [])):
            if not isinstance(entry, dict) or "path" not in entry:
                raise ConfigError(f"data.files[{i}] needs a path")
            p = Path(entry["path"])
            p = p if p.is_absolute() else base / p
            if not p.is_file():
                raise ConfigError(f"data.files[{i}]: {p} does not exist")
            cfg.files.append(
                FileEntry(
                    p,
                    FileSchema.parse(entry.get("schema", default_schema)),
                    entry.get("label", p.stem),
                    _num(entry, "eps_inter", where=f"data.files[{i}]."),
                )
            )
        if "synthetic" in data:
            cfg.synthetic = dict(data["synthetic"])
            _synthetic_params(cfg.synthetic)
        if cfg.files and cfg.synthetic:
            raise ConfigError("give either data.files or data.synthetic, not both")
        for lo_hi in data.get("exclude", []):
            if not (isinstance(lo_hi, list) and len(lo_hi) == 2 and lo_hi[0] < lo_hi[1]):
                raise ConfigError(f"data.exclude entries must be [lo, hi) with lo < hi, got {lo_hi!r}")
            cfg.exclude.append((float(lo_hi[0]), float(lo_hi[1])))

        drude = cfg.section("drude")
        if drude and drude.get("extrapolate", True):
            cfg.drude = DrudeParams(
                _num(drude, "omega_p", required=True, where="drude."),
                _num(drude, "gamma", required=True, where="drude."),
            )

        windows = raw.get("window", [])
        if not isinstance(windows, list):
            raise ConfigError("window must be an array of tables ([[window]])")
        cfg.windows = [_parse_window(w, i) for i, w in enumerate(windows)]
        labels = [window_label(w) for w in cfg.windows]
        if len(set(labels)) != len(labels):
            raise ConfigError("duplicate window entries")

        q = cfg.section("quadrature")
        cfg.quad = QuadratureConfig(
            rel_tol=_num(q, "rel_tol", 1e-6, where="quadrature."),
            subdiv_limit=int(_num(q, "subdiv_limit", 50, where="quadrature.")),
            tail_exponent=_num(q, "tail_exponent", 3.0, where="quadrature."),
        )
        cfg.zero_threshold = _num(q, "zero_threshold", DEFAULT_ZERO_THRESHOLD, where="quadrature.")

        if "xi" in raw:
            cfg.xi = _parse_xi(cfg.section("xi"))
            for w in cfg.windows:
                if isinstance(w, OldRational):
                    bad = cfg.xi[window_zero_ratio(w, cfg.xi) < cfg.zero_threshold]
                    if bad.size:
                        print(
                            f"warning: {window_label(w)} vanishes near xi = "
                            + ", ".join(f"{x:g}" for x in bad)
                            + "; these points are reported as errors",
                            file=sys.stderr,
                        )

        noise = cfg.section("noise")
        if noise:
            cfg.noise = NoiseSpec(
                _num(noise, "delta_exp", required=True, where="noise."),
                int(_num(noise, "n_resamples", 1000, where="noise.")),
                int(_num(noise, "seed", 0, where="noise.")),
            )
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def _synthetic_params(sec):
    name = sec.get("preset", "drude-gold")
    if name == "custom":
        params = DrudeParams(_num(sec, "omega_p", required=True), _num(sec, "gamma", required=True))
        oscs = ()
    else:
        params, oscs = get_preset(name)
    if "omega_p" in sec or "gamma" in sec:
        params = DrudeParams(_num(sec, "omega_p", params.omega_p), _num(sec, "gamma", params.gamma))
    if "oscillators" in sec:
        oscs = tuple(
            LorentzOscillator(float(o["strength"]), float(o["omega_0"]), float(o["width"]))
            for o in sec["oscillators"]
        )
    grid = make_log_grid(
        _num(sec, "omega_min", 1e-3), _num(sec, "omega_max", 1e4), int(_num(sec, "points_per_decade", 50))
    )
    return name, params, oscs, grid


# ---------------------------------------------------------------------------
# data


def _load_each(cfg: RunConfig):
    if cfg.synthetic is not None:
        name, params, oscs, grid = _synthetic_params(cfg.synthetic)
        return [synthetic_dataset(params, oscs, grid, label=name)]
    if not cfg.files:
        raise ConfigError("no input data: add [data] files or [data.synthetic]")
    out = []
    for f in cfg.files:
        try:
            out.append(load_dataset(f.path, f.schema, label=f.label))
        except (IngestError, OpticalDataError) as exc:
            raise InputError(str(exc)) from None
    return out


def load_data(cfg: RunConfig) -> OpticalDataset:
    sets = _load_each(cfg)
    try:
        if len(sets) == 1 and not cfg.exclude:
            data = sets[0]
        else:
            data = merge_datasets(sets, cfg.exclude)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for w in cfg.windows:
        if isinstance(w, SqrtWindow) and w.b >= data.omega_max:
            raise ConfigError(f"window b={w.b:g} is not below the last data point {data.omega_max:g}")
    return data


# ---------------------------------------------------------------------------
# output


def _fmt(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    return "nan" if math.isnan(v) else f"{v:.12g}"


class Output:
    def __init__(self, cfg: RunConfig, out_dir, command, timestamp=True, plot=False):
        self.cfg = cfg
        self.dir = Path(out_dir)
        self.command = command
        self.timestamp = timestamp
        self.plot = plot
        self.dir.mkdir(parents=True, exist_ok=True)
        self.written = []

    def header(self):
        lines = [
            f"# casimir_kk {__version__}",
            f"# command: {self.command}",
            f"# config: {self.cfg.source.name} sha256={self.cfg.sha256}",
        ]
        for f in self.cfg.files:
            lines.append(f"# input: {f.path.name} sha256={hashlib.sha256(f.path.read_bytes()).hexdigest()}")
        if self.timestamp:
            lines.append(f"# timestamp: {datetime.now(timezone.utc).isoformat(timespec='seconds')}")
        return lines

    def table(self, name, columns, rows, notes=(), footer=()):
        path = self.dir / name
        with open(path, "w", newline="", encoding="utf-8") as fh:
            for line in self.header():
                fh.write(line + "\n")
            for line in notes:
                fh.write(f"# {line}\n")
            fh.write(",".join(columns) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
            for line in footer:
                fh.write(f"# {line}\n")
        self.written.append(path)
        return path

    def figure(self, func, name, *args):
        if self.plot:
            self.written.append(func(self.dir / name, *args))


def _require_xi(cfg):
    if cfg.xi is None:
        raise ConfigError("missing [xi] section")
    return cfg.xi


def _windows_with_kk(cfg):
    windows = [Identity()] + [w for w in cfg.windows if not isinstance(w, Identity)]
    return windows


# ---------------------------------------------------------------------------
# subcommands


def cmd_synth(cfg: RunConfig, out: Output, threads=1):
    sec = cfg.section("synth")
    if not sec:
        raise ConfigError("missing [synth] section")
    name, params, oscs, grid = _synthetic_params(sec)
    target = out.dir / sec.get("output", f"{name}.csv")
    emit_synthetic(
        "custom", grid, target, omega_p=params.omega_p, gamma=params.gamma, oscillators=oscs
    )
    out.written.append(target)


def cmd_epsilon(cfg: RunConfig, out: Output, threads=1):
    from . import plotting

    xi = _require_xi(cfg)
    data = load_data(cfg)
    results = {}
    for w in _windows_with_kk(cfg):
        label = window_label(w)
        res = kk_windowed(data, cfg.drude, w, xi, cfg.quad, cfg.zero_threshold, on_error="record")
        results[label] = res
        frac = cut_fraction(res)
        rows = zip(res.xi_grid, res.eps_total, res.eps_cut, res.eps_expt, frac, res.flags)
        out.table(
            f"epsilon_{label}.csv",
            ["xi_eV", "eps_total", "eps_cut", "eps_expt", "cut_fraction", "error"],
            rows,
            notes=[f"data: {data.label} [{data.omega_min:g}, {data.omega_max:g}] eV, {len(data)} samples"],
        )
    ref = results["kk"].eps_total
    others = [k for k in results if k != "kk"]
    diffs = {k: 100.0 * (results[k].eps_total - ref) / ref for k in others}
    if others:
        out.table(
            "epsilon_comparison.csv",
            ["xi_eV"] + [f"diff_{k}_vs_kk_pct" for k in others],
            zip(xi, *(diffs[k] for k in others)),
        )
        out.figure(plotting.plot_epsilon_diff, "epsilon_comparison.png", xi, diffs)
    out.figure(
        plotting.plot_cut_fraction, "cut_fraction.png", xi, {k: cut_fraction(r) for k, r in results.items()}
    )


def _casimir(cfg: RunConfig):
    sec = cfg.section("casimir")
    if not sec:
        raise ConfigError("missing [casimir] section")
    if "separations_nm" in sec:
        seps = np.asarray(sec["separations_nm"], dtype=float) * 1e-9
    elif "separation_range_nm" in sec:
        lo, hi, npts = sec["separation_range_nm"]
        seps = np.geomspace(float(lo), float(hi), int(npts)) * 1e-9
    else:
        raise ConfigError("casimir needs separations_nm or separation_range_nm")
    if seps.size == 0 or np.any(seps <= 0):
        raise ConfigError("separations must be positive")
    try:
        base = CasimirConfig(
            separation=float(seps[0]),
            temperature=_num(sec, "temperature", 300.0, where="casimir."),
            n_max_factor=_num(sec, "n_max_factor", 10.0, where="casimir."),
            kperp_quad=cfg.quad,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return sec, seps, base


def _gp_spec(cfg, data):
    sec = cfg.section("generalized_plasma")
    wp = _num(sec, "omega_p", required=True, where="generalized_plasma.")
    w_inter = _num(sec, "omega_inter", required=True, where="generalized_plasma.")
    core = None
    if data is not None and data.omega_max > w_inter:
        # core response: measured eps minus the Drude conduction term
        part = data.restricted(w_inter)
        cond = cfg.drude or DrudeParams(wp, 0.0)
        if cond.gamma > 0:
            eps_c = drude_eps_real_axis(cond, part.omega) - 1.0
        else:
            eps_c = -(cond.omega_p**2) / part.omega**2 + 0j
        eps = part.eps - eps_c
        eps = eps.real + 1j * np.maximum(eps.imag, 1e-12)
        core = OpticalDataset.from_eps(part.omega, eps, label="core")
    bar = _num(sec, "eps_core_bar", where="generalized_plasma.")
    spec = GeneralizedPlasmaSpec(wp, w_inter, core_data=core, eps_core_bar=bar, quad=cfg.quad)
    bs = sec.get("b", [])
    bs = [float(b) for b in (bs if isinstance(bs, list) else [bs])]
    for b in bs:
        if not 0 < b < w_inter:
            raise ConfigError(f"generalized_plasma.b={b:g} must lie in (0, omega_inter)")
    return spec, bs


def cmd_pressure(cfg: RunConfig, out: Output, threads=1):
    from . import plotting

    sec, seps, base = _casimir(cfg)
    material = sec.get("material", "data")
    variants = {}
    if material == "ideal":
        eps = _num(sec, "ideal_eps", 1e12, where="casimir.")
        variants["ideal"] = (constant_provider(eps), base)
        analytic = {"ideal_analytic": np.array([ideal_casimir_pressure(a) for a in seps])}
    elif material == "data":
        analytic = {}
        data = load_data(cfg)
        xi = cover_grid(base, seps)
        drop_cut = bool(sec.get("drop_cut", False))
        for w in _windows_with_kk(cfg):
            label = window_label(w)
            res = kk_windowed(data, cfg.drude, w, xi, cfg.quad, cfg.zero_threshold, on_error="record")
            variants[label] = (provider_from_result(res), base)
            if drop_cut:
                variants[f"{label}_nocut"] = (provider_from_result(res, use_cut=False), base)
        if "generalized_plasma" in cfg.raw:
            spec, bs = _gp_spec(cfg, data)
            gp_cfg = replace(base, prescription=GENERALIZED_PLASMA, plasma_frequency=spec.omega_p)
            variants["gp"] = (gp_provider(spec), gp_cfg)
            for b in bs:
                variants[f"gp_sqrt_b{b:g}"] = (gp_provider(spec, b), gp_cfg)
    else:
        raise ConfigError(f"casimir.material must be 'data' or 'ideal', got {material!r}")

    pressures = {}
    for label, (prov, c) in variants.items():
        pressures[label] = np.array([pressure(prov, replace(c, separation=float(a))) for a in seps])
    pressures.update(analytic)
    labels = list(pressures)
    pairs = list(itertools.combinations(labels, 2))
    diffs = {f"{i}_vs_{j}": 100.0 * (pressures[i] - pressures[j]) / pressures[j] for i, j in pairs}
    cols = ["a_m"] + [f"P_{k}_Pa" for k in labels] + [f"diff_{k}_pct" for k in diffs]
    rows = zip(seps, *(pressures[k] for k in labels), *diffs.values())
    notes = [f"temperature_K: {base.temperature:g}", f"n_max_factor: {base.n_max_factor:g}"]
    out.table("pressure.csv", cols, rows, notes=notes)
    out.figure(plotting.plot_pressure, "pressure.png", seps, pressures)
    if diffs:
        out.figure(plotting.plot_pressure_diff, "pressure_diff.png", seps, diffs)


def cmd_mc(cfg: RunConfig, out: Output, threads=1):
    from . import plotting

    if cfg.noise is None:
        raise ConfigError("missing [noise] section")
    xi = _require_xi(cfg)
    data = load_data(cfg)
    windows = cfg.windows or [Identity()]
    spreads, negatives, clamped = {}, {}, {}
    for w in windows:
        label = window_label(w)
        res = mc_uncertainty(
            data, cfg.drude, w, xi, cfg.noise, cfg.quad, threads, cfg.zero_threshold, on_error="record"
        )
        spreads[label] = 100.0 * res.delta_eps_rel
        negatives[label] = int(res.n_negative.sum())
        clamped[label] = res.n_clamped
    labels = list(spreads)
    notes = [
        f"delta_exp: {cfg.noise.delta_exp:g}",
        f"n_resamples: {cfg.noise.n_resamples}",
        f"seed: {cfg.noise.seed}",
    ]
    footer = [
        "negative_eps_resamples," + ",".join(f"{k}={negatives[k]}" for k in labels),
        "clamped_draws," + ",".join(f"{k}={clamped[k]}" for k in labels),
    ]
    out.table(
        "mc.csv",
        ["xi_eV"] + [f"delta_eps_rel_percent_{k}" for k in labels],
        zip(xi, *(spreads[k] for k in labels)),
        notes=notes,
        footer=footer,
    )
    out.figure(plotting.plot_mc, "mc.png", xi, spreads)


def cmd_fit(cfg: RunConfig, out: Output, threads=1):
    from . import plotting

    sec = cfg.section("fit")
    sets = _load_each(cfg)
    gamma = _num(sec, "gamma", 0.035, where="fit.")
    upper = _num(sec, "upper_eV", DEFAULT_FIT_UPPER, where="fit.")
    lower = _num(sec, "lower_eV", DEFAULT_GAMMA_FACTOR * gamma, where="fit.")
    w_inter = _num(sec, "omega_inter", where="fit.")
    fixed = [f.eps_inter for f in cfg.files] if cfg.files else [None] * len(sets)
    rows, fits = [], []
    for data, eps_inter in zip(sets, fixed):
        rng = (max(lower, data.omega_min), min(upper, data.omega_max))
        if eps_inter is None and w_inter is not None and data.omega_max > w_inter:
            eps_inter = interband_constant(data, w_inter, cfg.quad)
        try:
            fit = fit_plasma_frequency(data, rng, eps_inter)
        except FitError as exc:
            fits.append(str(exc))
            rows.append([data.label] + [math.nan] * 7 + [str(exc).replace(",", ";")])
            continue
        fits.append(fit)
        rows.append([
            data.label, fit.omega_p, fit.eps_inter, int(fit.eps_inter_was_fitted), fit.residual_rms,
            fit.fit_range[0], fit.fit_range[1], fit.n_points, "",
        ])
    out.table(
        "fit.csv",
        ["label", "omega_p_eV", "eps_inter", "eps_inter_fitted", "residual_rms",
         "lambda2_min_um2", "lambda2_max_um2", "n_points", "error"],
        rows,
    )
    out.figure(plotting.plot_fit, "fit.png", sets, fits)
    if len(sets) >= 2:
        probes = sec.get("probes_eV", [0.6, 0.7, 0.8, 0.9])
        rep = consistency_report(sets, probes)
        cols = ["probe_eV"]
        for lab in rep.labels:
            cols += [f"eps1_{lab}", f"eps2_{lab}"]
        cols += [f"diff_{rep.labels[i]}_vs_{rep.labels[j]}_pct" for i, j in rep.pair_diff_pct]
        body = []
        for p, probe in enumerate(rep.probes):
            row = [probe]
            for s in range(len(rep.labels)):
                row += [rep.eps[p, s].real, rep.eps[p, s].imag]
            row += [d[p] for d in rep.pair_diff_pct.values()]
            body.append(row)
        notes = []
        for lab, fit in zip(rep.labels, rep.fits):
            notes.append(f"omega_p_free_fit {lab}: " + (_fmt(fit.omega_p) if isinstance(fit, PlasmaFit) else fit))
        for i, j in rep.flagged:
            notes.append(f"FLAG omega_p of {rep.labels[i]} and {rep.labels[j]} differ by more than 5%")
        out.table("consistency.csv", cols, body, notes=notes)


COMMANDS = {
    "synth": cmd_synth,
    "epsilon": cmd_epsilon,
    "pressure": cmd_pressure,
    "mc": cmd_mc,
    "fit": cmd_fit,
}


HELP = {
    "synth": "tabulate a model preset as an n,k CSV file",
    "epsilon": "eps(i xi) per window with cut fractions and a comparison table",
    "pressure": "Casimir pressure per variant with pairwise percent differences",
    "mc": "Monte Carlo uncertainty of eps(i xi) per window",
    "fit": "plasma-frequency fits and dataset consistency table",
}


def build_parser():
    parser = argparse.ArgumentParser(prog="casimir-kk", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func in COMMANDS.items():
        p = sub.add_parser(name, help=HELP[name])
        p.add_argument("--config", required=True, help="TOML run file")
        p.add_argument("--out", default="out", help="output directory (default: ./out)")
        p.add_argument("--threads", type=int, default=1, help="worker threads for Monte Carlo loops")
        p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp line (byte-stable output)")
        p.add_argument("--plot", action="store_true", help="also write PNG figures next to the CSV files")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = load_config(args.config)
        out = Output(cfg, args.out, args.command, timestamp=not args.no_timestamp, plot=args.plot)
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            COMMANDS[args.command](cfg, out, threads=args.threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ArithmeticError, WindowZeroError, FitError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    for path in out.written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
