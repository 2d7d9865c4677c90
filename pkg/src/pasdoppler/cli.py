"""Command line front end.

Usage::

    pasdoppler transform pas.csv --speed-kmh 30 --carrier-ghz 3.5 --movement-deg 90 --tx-dir-deg -25
    pasdoppler simulate pas.csv --speed-kmh 30 --duration 20 --seed 1 -o rec.iq
    pasdoppler estimate rec.iq --speed-kmh 30 --carrier-ghz 3.5
    pasdoppler compare a.csv b.csv
    pasdoppler run manifest.json

Every command exits 0 on success and prints a single ``error:`` line to
stderr (exit status 2) otherwise. Outputs are only written once the whole
computation has succeeded.
"""

from __future__ import annotations

import argparse
import io as _stringio
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .core import MotionConfig, alpha_from_directions
from .fading import SimConfig, simulate
from .iq import EstimatorOptions, estimate_ds, noise_floor_trim
from .metrics import Comparison, angular_spread, compare_ds, dispersion_report
from .pas_models import tabulated_pas
from .transform import DEFAULT_BIN_COUNT, TransformOptions, transform

logger = logging.getLogger("pasdoppler")

SPATIAL_AVERAGING_NOTE = (
    "spectra estimated along a route are spatially averaged, while a PAS describes one point")

TABLE_COLUMNS = (
    "movement_deg", "alpha_deg",
    "mean_doppler_meas_hz", "mean_doppler_pas_hz",
    "rms_spread_meas_hz", "rms_spread_pas_hz",
    "delta_mean_hz", "delta_spread_hz", "rmse", "correlation",
)


class CliError(Exception):
    pass


def _motion(args) -> MotionConfig:
    return MotionConfig.from_scenario(args.speed_kmh, args.carrier_ghz, args.movement_deg, args.tx_dir_deg)


def _ds_metrics(ds, source: str, motion: Optional[MotionConfig] = None, args=None, pas=None) -> dict:
    rep = dispersion_report(ds, pas)
    out = {
        "source": source,
        "f_d_max_hz": ds.f_d_max,
        "bins": len(ds),
        "mean_doppler_hz": rep.mean_doppler,
        "rms_doppler_spread_hz": rep.rms_doppler_spread,
        "total_power_w": rep.total_power,
    }
    if rep.angular_spread is not None:
        out["angular_spread_rad"] = rep.angular_spread
    if args is not None and getattr(args, "speed_kmh", None) is not None:
        out.update(speed_kmh=float(args.speed_kmh), carrier_ghz=float(args.carrier_ghz),
                   movement_deg=float(args.movement_deg), tx_dir_deg=float(args.tx_dir_deg))
    if motion is not None:
        out["alpha_deg"] = motion.alpha
    return out


def _outputs(args, default_name: str) -> tuple[Path, Path]:
    out_dir = Path(args.out_dir)
    if not out_dir.is_dir():
        raise CliError(f"output directory {out_dir} does not exist")
    name = args.name or default_name
    return out_dir / f"{name}.csv", out_dir / f"{name}.metrics.json"


def _load_pas(path, grid_step: float):
    return tabulated_pas(io.read_pas_csv(path), grid_step)


def _transform(pas, motion: MotionConfig, bins: int, span: float):
    if not motion.f_d_max() > 0:
        raise CliError("fd_max is 0 Hz (speed 0); a Doppler spectrum needs a moving receiver")
    return transform(pas, motion, TransformOptions(bins, span=span))


def cmd_transform(args) -> int:
    motion = _motion(args)
    pas = _load_pas(args.pas_csv, args.grid_step)
    ds = _transform(pas, motion, args.bins, args.span)
    metrics = _ds_metrics(ds, "pas", motion, args, pas)
    csv_path, json_path = _outputs(args, f"{Path(args.pas_csv).stem}_mov{args.movement_deg:g}_pas")
    io.write_ds_csv(csv_path, ds)
    io.write_metrics(json_path, metrics)
    print(f"mean {metrics['mean_doppler_hz']:.2f} Hz, spread {metrics['rms_doppler_spread_hz']:.2f} Hz "
          f"(alpha {motion.alpha:g} deg) -> {csv_path}")
    return 0


def _estimate(rec, hint: Optional[float], bins: int, segment_length: int, floor_db: Optional[float]):
    ds = estimate_ds(rec, EstimatorOptions(segment_length=segment_length, f_d_max_hint=hint, bin_count=bins))
    if floor_db is not None:
        ds = noise_floor_trim(ds, floor_db)
    return ds


def cmd_estimate(args) -> int:
    rec = io.read_iq(args.iq_file, args.sample_rate)
    motion = None
    hint = None
    if args.speed_kmh is not None:
        motion = _motion(args)
        hint = motion.f_d_max() or None
    else:
        meta = io.read_meta(args.iq_file)
        if "f_d_max" in meta:
            hint = float(meta["f_d_max"])
    ds = _estimate(rec, hint, args.bins, args.segment_length, args.floor_db)
    metrics = _ds_metrics(ds, "measurement", motion, args)
    metrics["note"] = SPATIAL_AVERAGING_NOTE
    csv_path, json_path = _outputs(args, f"{Path(args.iq_file).stem}_meas")
    io.write_ds_csv(csv_path, ds)
    io.write_metrics(json_path, metrics)
    print(f"mean {metrics['mean_doppler_hz']:.2f} Hz, spread {metrics['rms_doppler_spread_hz']:.2f} Hz -> {csv_path}")
    return 0


def cmd_simulate(args) -> int:
    motion = _motion(args)
    pas = _load_pas(args.pas_csv, args.grid_step)
    cfg = SimConfig(motion, duration=args.duration, sample_rate=args.sample_rate or 1000.0,
                    n_paths=args.paths, seed=args.seed)
    rec = simulate(pas, cfg)
    io.write_iq(args.output, rec, {"f_d_max": motion.f_d_max(), "alpha_deg": motion.alpha,
                                   "seed": args.seed, "n_paths": args.paths})
    print(f"{len(rec)} samples at {rec.sample_rate:g} Hz -> {args.output}")
    return 0


def format_comparison(cmp: Comparison) -> str:
    return (f"delta mean Doppler  {cmp.delta_mean_doppler:+10.3f} Hz\n"
            f"delta RMS spread    {cmp.delta_rms_spread:+10.3f} Hz\n"
            f"RMSE (unit area)    {cmp.rmse:10.3e}\n"
            f"correlation         {cmp.correlation:10.4f}\n")


def cmd_compare(args) -> int:
    a = io.read_ds_csv(args.ds_a_csv)
    b = io.read_ds_csv(args.ds_b_csv)
    if not a.same_grid(b):
        logger.warning("bin grids differ; resampling %s onto the grid of %s", args.ds_b_csv, args.ds_a_csv)
    cmp = compare_ds(a, b, resample_b=True)
    text = format_comparison(cmp)
    if args.out_dir is not None:
        out_dir = Path(args.out_dir)
        if not out_dir.is_dir():
            raise CliError(f"output directory {out_dir} does not exist")
        name = args.name or "compare"
        io.atomic_write(out_dir / f"{name}.csv", _csv([list(cmp.as_dict())], [list(cmp.as_dict().values())]))
        io.atomic_write(out_dir / f"{name}.txt", text)
    sys.stdout.write(text)
    return 0


def _csv(header_rows, rows) -> str:
    buf = _stringio.StringIO()
    for row in [*header_rows, *rows]:
        buf.write(",".join(v if isinstance(v, str) else repr(float(v)) for v in row) + "\n")
    return buf.getvalue()


@dataclass
class RunManifest:
    """A multi-direction drive test: one PAS, several headings.

    Headings without a recording in ``iq_files`` are synthesized from the
    PAS with the fading simulator.
    """

    scenario: str
    pas_csv: Path
    out_dir: Path
    speed_kmh: float = 30.0
    carrier_ghz: float = 3.5
    tx_dir_deg: float = -25.0
    movements_deg: list = field(default_factory=lambda: [0.0, 90.0, 180.0, 270.0])
    iq_files: dict = field(default_factory=dict)
    bins: int = DEFAULT_BIN_COUNT
    seed: int = 0
    duration: float = 20.0
    sample_rate: float = 1000.0
    n_paths: int = 256
    segment_length: int = 1024
    floor_db: Optional[float] = None
    grid_step: float = 1.0

    @classmethod
    def load(cls, path) -> "RunManifest":
        path = Path(path)
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise CliError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(raw) - known)
        if unknown:
            raise CliError(f"{path}: unknown manifest keys {unknown}")
        for key in ("scenario", "pas_csv", "out_dir"):
            if key not in raw:
                raise CliError(f"{path}: manifest is missing '{key}'")
        base = path.parent
        raw["pas_csv"] = base / raw["pas_csv"]
        raw["out_dir"] = base / raw["out_dir"]
        raw["iq_files"] = {float(k): base / v for k, v in raw.get("iq_files", {}).items()}
        m = cls(**raw)
        m.validate()
        return m

    def validate(self) -> None:
        if not self.pas_csv.is_file():
            raise CliError(f"PAS file {self.pas_csv} does not exist")
        for heading, p in self.iq_files.items():
            if not Path(p).is_file():
                raise CliError(f"IQ file {p} for heading {heading:g} does not exist")
        if not self.speed_kmh > 0:
            raise CliError("speed_kmh must be > 0")
        if not self.carrier_ghz > 0:
            raise CliError("carrier_ghz must be > 0")
        if not self.movements_deg:
            raise CliError("movements_deg is empty")


def run_workflow(m: RunManifest) -> tuple[list[dict], dict[str, str | bytes]]:
    """Compute every heading and return table rows plus the files to write."""
    pas = _load_pas(m.pas_csv, m.grid_step)
    files: dict[str, str | bytes] = {}
    rows = []
    for k, heading in enumerate(m.movements_deg):
        motion = MotionConfig.from_scenario(m.speed_kmh, m.carrier_ghz, heading, m.tx_dir_deg)
        fdm = motion.f_d_max()
        tag = f"mov{heading:03g}"
        ds_pas = _transform(pas, motion, m.bins, 1.1)

        if float(heading) in m.iq_files:
            rec = io.read_iq(m.iq_files[float(heading)])
        else:
            rec = simulate(pas, SimConfig(motion, m.duration, m.sample_rate, m.n_paths, m.seed + k))
        ds_meas = _estimate(rec, fdm, m.bins, m.segment_length, m.floor_db)
        cmp = compare_ds(ds_meas, ds_pas)
        rep_meas, rep_pas = dispersion_report(ds_meas), dispersion_report(ds_pas)

        files[f"{tag}_pas.csv"] = io.format_ds_csv(ds_pas)
        files[f"{tag}_meas.csv"] = io.format_ds_csv(ds_meas)
        meta = {"scenario": m.scenario, "movement_deg": float(heading), "alpha_deg": motion.alpha}
        files[f"{tag}_pas.metrics.json"] = io.format_json(
            {**_ds_metrics(ds_pas, "pas", motion, pas=pas), **meta})
        files[f"{tag}_meas.metrics.json"] = io.format_json(
            {**_ds_metrics(ds_meas, "measurement", motion), **meta, "note": SPATIAL_AVERAGING_NOTE})
        rows.append({
            "movement_deg": float(heading),
            "alpha_deg": motion.alpha,
            "mean_doppler_meas_hz": rep_meas.mean_doppler,
            "mean_doppler_pas_hz": rep_pas.mean_doppler,
            "rms_spread_meas_hz": rep_meas.rms_doppler_spread,
            "rms_spread_pas_hz": rep_pas.rms_doppler_spread,
            "delta_mean_hz": cmp.delta_mean_doppler,
            "delta_spread_hz": cmp.delta_rms_spread,
            "rmse": cmp.rmse,
            "correlation": cmp.correlation,
        })

    files["table.csv"] = _csv([list(TABLE_COLUMNS)], [[r[c] for c in TABLE_COLUMNS] for r in rows])
    files["table.txt"] = format_table(m, pas, rows)
    return rows, files


def format_table(m: RunManifest, pas, rows: Sequence[dict]) -> str:
    lines = [
        f"scenario: {m.scenario}",
        f"speed {m.speed_kmh:g} km/h, carrier {m.carrier_ghz:g} GHz, TX direction {m.tx_dir_deg:g} deg, "
        f"angular spread {angular_spread(pas):.3f} rad",
        "",
        "                          average Doppler shift (Hz)   RMS Doppler spread (Hz)",
        "movement (deg)  alpha (deg)   measured    from PAS      measured    from PAS   corr",
    ]
    for r in rows:
        lines.append(
            f"{r['movement_deg']:14g} {r['alpha_deg']:12g} {r['mean_doppler_meas_hz']:10.1f} "
            f"{r['mean_doppler_pas_hz']:11.1f} {r['rms_spread_meas_hz']:13.1f} {r['rms_spread_pas_hz']:11.1f} "
            f"{r['correlation']:6.3f}")
    lines += ["", f"note: {SPATIAL_AVERAGING_NOTE}", ""]
    return "\n".join(lines)


def cmd_run(args) -> int:
    m = RunManifest.load(args.manifest)
    rows, files = run_workflow(m)
    m.out_dir.mkdir(parents=True, exist_ok=True)
    for name, content in files.items():
        io.atomic_write(m.out_dir / name, content)
    sys.stdout.write(files["table.txt"])
    return 0


def _add_motion(p, required: bool = True):
    p.add_argument("--speed-kmh", type=float, required=required, default=None, help="receiver speed in km/h")
    p.add_argument("--carrier-ghz", type=float, default=3.5, help="carrier frequency in GHz (default 3.5)")
    p.add_argument("--movement-deg", type=float, default=0.0, help="receiver heading in degrees")
    p.add_argument("--tx-dir-deg", type=float, default=0.0, help="direction to the transmitter in degrees")


def _add_output(p):
    p.add_argument("--out-dir", default=".", help="directory for output files (must exist)")
    p.add_argument("--name", default=None, help="base name for output files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pasdoppler", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="Doppler spectrum implied by a PAS table")
    p.add_argument("pas_csv")
    _add_motion(p)
    p.add_argument("--bins", type=int, default=DEFAULT_BIN_COUNT)
    p.add_argument("--span", type=float, default=1.0, help="output band as a multiple of fd_max")
    p.add_argument("--grid-step", type=float, default=1.0)
    _add_output(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("estimate", help="Doppler spectrum of an IQ recording")
    p.add_argument("iq_file")
    _add_motion(p, required=False)
    p.add_argument("--sample-rate", type=float, default=None, help="override the sidecar sample rate (Hz)")
    p.add_argument("--segment-length", type=int, default=1024)
    p.add_argument("--bins", type=int, default=DEFAULT_BIN_COUNT)
    p.add_argument("--floor-db", type=float, default=None, help="zero bins this far below the peak")
    _add_output(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("simulate", help="synthesize an IQ recording from a PAS table")
    p.add_argument("pas_csv")
    _add_motion(p)
    p.add_argument("--duration", type=float, default=20.0, help="seconds")
    p.add_argument("--sample-rate", type=float, default=1000.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--paths", type=int, default=256)
    p.add_argument("--grid-step", type=float, default=1.0)
    p.add_argument("-o", "--output", required=True, help="IQ file to write")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="compare two Doppler spectrum CSVs")
    p.add_argument("ds_a_csv")
    p.add_argument("ds_b_csv")
    p.add_argument("--out-dir", default=None)
    p.add_argument("--name", default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("run", help="multi-heading workflow from a JSON manifest")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_run)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
