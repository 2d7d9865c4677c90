"""File formats.

* PAS table: CSV with header ``angle_deg,power_db``; ``#`` starts a comment.
* Doppler spectrum: CSV with header ``f_hz,mass_w,norm`` (bin centre, bin
  power, power relative to the strongest bin).
* IQ recording: raw little-endian float32 interleaved I, Q. Metadata lives
  next to it in ``<stem>.meta`` as ``key=value`` lines.
* Metrics sidecar: JSON next to a spectrum CSV, ``<stem>.metrics.json``.
"""

from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path
from typing import Mapping, Optional, Union

import numpy as np

from .core import DopplerSpectrum
from .iq import IqRecording
from .pas_models import TabulatedPasInput

PathLike = Union[str, os.PathLike]

PAS_HEADER = ("angle_deg", "power_db")
DS_HEADER = ("f_hz", "mass_w", "norm")
IQ_DTYPE = np.dtype("<f4")


class FormatError(ValueError):
    """Malformed input file; the message names the file and row."""


def _fmt(x: float) -> str:
    return repr(float(x))


def atomic_write(path: PathLike, data: Union[str, bytes]) -> None:
    """Write via a temporary file so a failed run leaves nothing half-written."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(tmp, mode, **({} if isinstance(data, bytes) else {"newline": ""})) as fh:
        fh.write(data)
    os.replace(tmp, path)


def _data_rows(path: Path, header: tuple[str, ...]):
    """Yield ``(line_number, fields)`` for the non-comment rows after the header."""
    seen_header = False
    with open(path, newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            fields = [f.strip() for f in next(csv.reader([text]))]
            if not seen_header:
                if tuple(f.lower() for f in fields) != header:
                    raise FormatError(f"{path}: line {lineno}: expected header {','.join(header)}")
                seen_header = True
                continue
            if len(fields) != len(header):
                raise FormatError(f"{path}: line {lineno}: expected {len(header)} fields, got {len(fields)}")
            yield lineno, fields
    if not seen_header:
        raise FormatError(f"{path}: empty file")


def _floats(path: Path, lineno: int, fields: list[str]) -> list[float]:
    try:
        values = [float(f) for f in fields]
    except ValueError:
        raise FormatError(f"{path}: line {lineno}: non-numeric value in {fields}") from None
    if not all(np.isfinite(values)):
        raise FormatError(f"{path}: line {lineno}: non-finite value in {fields}")
    return values


def read_pas_csv(path: PathLike) -> TabulatedPasInput:
    path = Path(path)
    angles, levels = [], []
    for lineno, fields in _data_rows(path, PAS_HEADER):
        a, p = _floats(path, lineno, fields)
        angles.append(a)
        levels.append(p)
    if len(angles) < 2:
        raise FormatError(f"{path}: need at least two data rows")
    return TabulatedPasInput(angles, levels)


def format_pas_csv(angles, power_db) -> str:
    buf = io.StringIO()
    buf.write(",".join(PAS_HEADER) + "\n")
    for a, p in zip(angles, power_db):
        buf.write(f"{_fmt(a)},{_fmt(p)}\n")
    return buf.getvalue()


def write_pas_csv(path: PathLike, angles, power_db) -> None:
    atomic_write(path, format_pas_csv(angles, power_db))


def format_ds_csv(ds: DopplerSpectrum) -> str:
    peak = float(np.max(ds.bin_mass))
    norm = ds.bin_mass / peak if peak > 0 else np.zeros_like(ds.bin_mass)
    buf = io.StringIO()
    buf.write(",".join(DS_HEADER) + "\n")
    for f, m, n in zip(ds.centers, ds.bin_mass, norm):
        buf.write(f"{_fmt(f)},{_fmt(m)},{_fmt(n)}\n")
    return buf.getvalue()


def write_ds_csv(path: PathLike, ds: DopplerSpectrum) -> None:
    atomic_write(path, format_ds_csv(ds))


def read_ds_csv(path: PathLike, f_d_max: Optional[float] = None) -> DopplerSpectrum:
    """Read a Doppler spectrum CSV.

    Bin edges are rebuilt halfway between centres, extending the outer bins
    symmetrically; this is exact (up to rounding) for the uniform grids
    written by this package. The stored centres are kept as bin locations.
    ``f_d_max`` defaults to the outer edge magnitude.
    """
    path = Path(path)
    centers, mass = [], []
    for lineno, fields in _data_rows(path, DS_HEADER):
        f, m, _ = _floats(path, lineno, fields)
        if m < 0:
            raise FormatError(f"{path}: line {lineno}: negative mass")
        centers.append(f)
        mass.append(m)
    if len(centers) < 2:
        raise FormatError(f"{path}: need at least two bins")
    c = np.asarray(centers)
    if np.any(np.diff(c) <= 0):
        raise FormatError(f"{path}: bin centres are not strictly increasing")
    mid = 0.5 * (c[:-1] + c[1:])
    edges = np.concatenate([[c[0] - (mid[0] - c[0])], mid, [c[-1] + (c[-1] - mid[-1])]])
    if f_d_max is None:
        f_d_max = float(max(abs(edges[0]), abs(edges[-1])))
    return DopplerSpectrum(edges, mass, f_d_max, locations=c)


def write_iq(path: PathLike, rec: IqRecording, extra: Optional[Mapping[str, object]] = None) -> None:
    """Write samples as float32 I/Q pairs plus the ``.meta`` sidecar."""
    path = Path(path)
    inter = np.empty(2 * len(rec), dtype=IQ_DTYPE)
    inter[0::2] = rec.samples.real
    inter[1::2] = rec.samples.imag
    meta = {"sample_rate": rec.sample_rate}
    if rec.carrier_frequency is not None:
        meta["carrier_frequency"] = rec.carrier_frequency
    meta.update(extra or {})
    lines = "".join(f"{k}={_fmt(v) if isinstance(v, float) else v}\n" for k, v in meta.items())
    atomic_write(path, inter.tobytes())
    atomic_write(meta_path(path), lines)


def meta_path(path: PathLike) -> Path:
    return Path(path).with_suffix(".meta")


def read_meta(path: PathLike) -> dict[str, str]:
    meta = {}
    mp = meta_path(path)
    if not mp.exists():
        return meta
    for lineno, line in enumerate(mp.read_text().splitlines(), start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise FormatError(f"{mp}: line {lineno}: expected key=value")
        key, value = text.split("=", 1)
        meta[key.strip()] = value.strip()
    return meta


def read_iq(path: PathLike, sample_rate: Optional[float] = None) -> IqRecording:
    """Load a raw IQ file; ``sample_rate`` overrides the sidecar."""
    path = Path(path)
    raw = path.read_bytes()
    if len(raw) % (2 * IQ_DTYPE.itemsize):
        raise FormatError(f"{path}: size {len(raw)} bytes is not a whole number of float32 I/Q pairs")
    meta = read_meta(path)
    if sample_rate is None:
        if "sample_rate" not in meta:
            raise FormatError(f"{path}: no sample rate in {meta_path(path).name}; pass one explicitly")
        sample_rate = float(meta["sample_rate"])
    carrier = float(meta["carrier_frequency"]) if "carrier_frequency" in meta else None
    inter = np.frombuffer(raw, dtype=IQ_DTYPE).astype(float)
    return IqRecording(inter[0::2] + 1j * inter[1::2], sample_rate, carrier)


def format_json(obj: Mapping[str, object]) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_metrics(path: PathLike, metrics: Mapping[str, object]) -> None:
    atomic_write(path, format_json(metrics))


def read_metrics(path: PathLike) -> dict:
    return json.loads(Path(path).read_text())
