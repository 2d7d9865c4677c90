"""Doppler spectrum estimation from complex baseband recordings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import signal

from .core import DopplerSpectrum
from .transform import DEFAULT_BIN_COUNT, doppler_edges

CROP_MARGIN = 1.1
MIN_SEGMENTS = 4


@dataclass(frozen=True, eq=False)
class IqRecording:
    """Uniformly sampled complex envelope.

    ``sample_rate`` in Hz; ``carrier_frequency`` (Hz) is informational.
    """

    samples: np.ndarray
    sample_rate: float
    carrier_frequency: Optional[float] = None

    def __post_init__(self):
        x = np.asarray(self.samples)
        if not np.iscomplexobj(x):
            x = x.astype(complex)
        x = np.array(x, dtype=complex, copy=True).ravel()
        if not np.all(np.isfinite(x)):
            raise ValueError("IQ samples must be finite")
        fs = float(self.sample_rate)
        if not (np.isfinite(fs) and fs > 0):
            raise ValueError(f"sample_rate must be > 0, got {self.sample_rate!r}")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)
        object.__setattr__(self, "sample_rate", fs)
        if self.carrier_frequency is not None:
            object.__setattr__(self, "carrier_frequency", float(self.carrier_frequency))

    def __len__(self):
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate

    @property
    def mean_power(self) -> float:
        return float(np.mean(np.abs(self.samples) ** 2))


@dataclass(frozen=True)
class EstimatorOptions:
    """Averaged-periodogram settings.

    Parameters
    ----------
    segment_length : int
        Samples per segment, a power of two >= 64.
    overlap_fraction : float
        Fraction of a segment shared with the next one, in [0, 1).
    window : str
        Any window name understood by :func:`scipy.signal.get_window`.
    f_d_max_hint : float, optional
        Expected maximum Doppler shift in Hz. When given, the estimate is
        cropped to ``+-1.1 * hint`` and re-binned onto ``bin_count`` equal bins.
    bin_count : int
        Number of output bins used together with ``f_d_max_hint``.
    """

    segment_length: int = 1024
    overlap_fraction: float = 0.5
    window: str = "hann"
    f_d_max_hint: Optional[float] = None
    bin_count: int = DEFAULT_BIN_COUNT

    def __post_init__(self):
        n = self.segment_length
        if int(n) != n or n < 64 or (int(n) & (int(n) - 1)):
            raise ValueError(f"segment_length must be a power of two >= 64, got {n!r}")
        if not 0.0 <= self.overlap_fraction < 1.0:
            raise ValueError("overlap_fraction must lie in [0, 1)")
        if self.f_d_max_hint is not None and not self.f_d_max_hint > 0:
            raise ValueError("f_d_max_hint must be > 0")
        if int(self.bin_count) != self.bin_count or self.bin_count < 8:
            raise ValueError("bin_count must be an integer >= 8")
        object.__setattr__(self, "segment_length", int(n))

    @property
    def overlap(self) -> int:
        return int(self.segment_length * self.overlap_fraction)

    def n_segments(self, n_samples: int) -> int:
        step = self.segment_length - self.overlap
        if n_samples < self.segment_length:
            return 0
        return 1 + (n_samples - self.segment_length) // step


def rebin(src_edges: np.ndarray, src_mass: np.ndarray, dst_edges: np.ndarray) -> np.ndarray:
    """Redistribute bin masses onto new edges by overlap length.

    Mass is assumed uniform inside each source bin; mass falling outside
    the destination range is dropped.
    """
    cum = np.concatenate([[0.0], np.cumsum(src_mass)])
    out = np.diff(np.interp(dst_edges, src_edges, cum))
    return np.clip(out, 0.0, None)


def estimate_ds(rec: IqRecording, opts: Optional[EstimatorOptions] = None) -> DopplerSpectrum:
    """Two-sided averaged periodogram of ``rec`` as bin masses in watts.

    Without a hint the bins are the FFT cells over ``[-fs/2, fs/2)``. The
    masses add up to the window-weighted mean power of the recording.
    """
    opts = opts or EstimatorOptions()
    n_seg = opts.n_segments(len(rec))
    if n_seg < MIN_SEGMENTS:
        raise ValueError(
            f"recording of {len(rec)} samples yields {n_seg} segments of "
            f"{opts.segment_length}; at least {MIN_SEGMENTS} are required")

    fs = rec.sample_rate
    freqs, psd = signal.welch(
        rec.samples, fs=fs, window=opts.window, nperseg=opts.segment_length,
        noverlap=opts.overlap, detrend=False, return_onesided=False, scaling="density")
    freqs = np.fft.fftshift(freqs)
    df = fs / opts.segment_length
    mass = np.fft.fftshift(psd).real * df
    edges = np.append(freqs - 0.5 * df, freqs[-1] + 0.5 * df)

    if opts.f_d_max_hint is None:
        return DopplerSpectrum(edges, np.clip(mass, 0.0, None), fs / 2)

    hint = float(opts.f_d_max_hint)
    dst = doppler_edges(hint, opts.bin_count, CROP_MARGIN)
    return DopplerSpectrum(dst, rebin(edges, mass, dst), hint)


def noise_floor_trim(ds: DopplerSpectrum, threshold_db: float = 30.0) -> DopplerSpectrum:
    """Zero every bin more than ``threshold_db`` below the strongest one."""
    peak = float(np.max(ds.bin_mass))
    if not peak > 0:
        raise ValueError("cannot trim a spectrum without power")
    keep = ds.bin_mass >= peak * 10.0 ** (-float(threshold_db) / 10.0)
    mass = np.where(keep, ds.bin_mass, 0.0)
    dens = None if ds.density is None else np.where(keep, ds.density, 0.0)
    return DopplerSpectrum(ds.bin_edges, mass, ds.f_d_max, dens, ds.locations)
