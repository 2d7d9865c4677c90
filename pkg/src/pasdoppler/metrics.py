"""Dispersion metrics of Doppler and angular spectra."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .core import AngularSpectrum, DopplerSpectrum
from .iq import rebin


@dataclass(frozen=True)
class DispersionReport:
    mean_doppler: float
    rms_doppler_spread: float
    total_power: float
    angular_spread: Optional[float] = None

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Comparison:
    """Differences ``a - b`` between two Doppler spectra on one grid."""

    delta_mean_doppler: float
    delta_rms_spread: float
    rmse: float
    correlation: float

    def as_dict(self) -> dict:
        return asdict(self)


def _weights(ds: DopplerSpectrum) -> tuple[np.ndarray, float]:
    p = ds.total_power
    if not p > 0:
        raise ValueError("spectrum carries no power")
    return ds.bin_mass, p


def mean_doppler(ds: DopplerSpectrum) -> float:
    """Power-weighted mean of the bin centres, in Hz."""
    m, p = _weights(ds)
    return float(np.dot(ds.centers, m) / p)


def rms_doppler_spread(ds: DopplerSpectrum) -> float:
    """Power-weighted standard deviation of the bin centres, in Hz."""
    m, p = _weights(ds)
    c = ds.centers
    mu = np.dot(c, m) / p
    return float(np.sqrt(np.dot((c - mu) ** 2, m) / p))


def angular_spread(pas: AngularSpectrum) -> float:
    """Circular RMS spread ``sqrt(1 - |R|^2)`` in radians.

    ``R`` is the first trigonometric moment of the arrival-angle density,
    so the value is 0 for a single direction and 1 for isotropic arrival.
    """
    w = pas.cell_power / pas.total_power
    z = np.exp(1j * pas.angles_rad)
    r = np.dot(w, z)
    return float(np.sqrt(max(np.dot(w, np.abs(z - r) ** 2), 0.0)))


def dispersion_report(ds: DopplerSpectrum, pas: Optional[AngularSpectrum] = None) -> DispersionReport:
    return DispersionReport(
        mean_doppler=mean_doppler(ds),
        rms_doppler_spread=rms_doppler_spread(ds),
        total_power=ds.total_power,
        angular_spread=None if pas is None else angular_spread(pas),
    )


def resample(ds: DopplerSpectrum, edges: np.ndarray) -> DopplerSpectrum:
    """Move ``ds`` onto ``edges`` conserving mass inside the overlap."""
    return DopplerSpectrum(edges, rebin(ds.bin_edges, ds.bin_mass, np.asarray(edges, dtype=float)),
                           ds.f_d_max)


def compare_ds(a: DopplerSpectrum, b: DopplerSpectrum, resample_b: bool = False) -> Comparison:
    """Compare two spectra bin by bin.

    The RMSE and correlation use unit-area masses, so a global power scale
    does not register. With ``resample_b`` a mismatched ``b`` is first moved
    onto ``a``'s grid; otherwise a mismatch is an error.
    """
    if not a.same_grid(b):
        if not resample_b:
            raise ValueError("spectra are on different bin grids; resample first")
        b = resample(b, a.bin_edges)
    pa = a.bin_mass / _weights(a)[1]
    pb = b.bin_mass / _weights(b)[1]
    rmse = float(np.sqrt(np.mean((pa - pb) ** 2)))
    if np.ptp(pa) == 0 or np.ptp(pb) == 0:
        corr = 1.0 if np.allclose(pa, pb) else 0.0
    else:
        corr = float(np.corrcoef(pa, pb)[0, 1])
    return Comparison(
        delta_mean_doppler=mean_doppler(a) - mean_doppler(b),
        delta_rms_spread=rms_doppler_spread(a) - rms_doppler_spread(b),
        rmse=rmse,
        correlation=corr,
    )
