"""Constructors for parametric and measured angular spectra."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import AngularSpectrum, wrap_angle

DEFAULT_GRID_STEP = 1.0


def angle_grid(step: float = DEFAULT_GRID_STEP) -> np.ndarray:
    """Uniform azimuth grid ``(-180, 180]`` with spacing ``step`` degrees.

    ``360 / step`` must be an integer (to within rounding).
    """
    step = float(step)
    if not (np.isfinite(step) and 0 < step <= 1.0):
        raise ValueError(f"grid step must be in (0, 1] degrees, got {step!r}")
    n = 360.0 / step
    n_int = int(round(n))
    if abs(n - n_int) > 1e-9 * n:
        raise ValueError(f"grid step {step} does not divide 360 degrees")
    return -180.0 + step * np.arange(1, n_int + 1)


def _check_power(total_power: float) -> float:
    total_power = float(total_power)
    if not (np.isfinite(total_power) and total_power > 0):
        raise ValueError(f"total power must be finite and > 0, got {total_power!r}")
    return total_power


def _scaled(angles: np.ndarray, shape: np.ndarray, total_power: float) -> AngularSpectrum:
    unit = AngularSpectrum(angles, shape)
    return unit.with_power(shape * (total_power / unit.total_power))


def uniform_pas(total_power: float = 1.0, grid_step: float = DEFAULT_GRID_STEP) -> AngularSpectrum:
    """Isotropic scattering: constant density ``total_power / 2pi`` W/rad."""
    total_power = _check_power(total_power)
    angles = angle_grid(grid_step)
    return AngularSpectrum(angles, np.full(angles.shape, total_power / (2 * np.pi)))


@dataclass(frozen=True)
class LaplacianPasParams:
    """Location ``mu`` and scale ``b`` in degrees, power in watts."""

    mu: float = 0.0
    b: float = 25.7
    total_power: float = 1.0

    def __post_init__(self):
        b = float(self.b)
        if not (np.isfinite(b) and b > 0):
            raise ValueError(f"Laplacian scale b must be > 0, got {self.b!r}")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "mu", wrap_angle(self.mu))
        object.__setattr__(self, "total_power", _check_power(self.total_power))


def laplacian_constant(b: float) -> float:
    """Normalization of the Laplacian truncated to one turn, per degree."""
    return 1.0 / (2.0 * b * (1.0 - np.exp(-180.0 / b)))


def laplacian_pdf(phi, mu: float = 0.0, b: float = 25.7):
    """Truncated Laplacian arrival-angle density in 1/degree."""
    dist = np.abs(wrap_angle(np.asarray(phi, dtype=float) - mu))
    return laplacian_constant(b) * np.exp(-dist / b)


def laplacian_pas(params: LaplacianPasParams = LaplacianPasParams(),
                  grid_step: float = DEFAULT_GRID_STEP) -> AngularSpectrum:
    """Laplacian spectrum peaked at ``params.mu`` sampled on a uniform grid.

    The samples follow ``exp(-|phi - mu| / b)`` with the distance taken the
    short way round; the scale is fixed numerically so the grid quadrature
    returns ``params.total_power`` exactly. The grid is offset so that one
    sample falls on ``mu``.
    """
    base = angle_grid(grid_step)
    angles = np.sort(wrap_angle(base + _grid_offset(params.mu, grid_step)))
    shape = laplacian_pdf(angles, params.mu, params.b)
    return _scaled(angles, shape, params.total_power)


def _grid_offset(phi0: float, step: float) -> float:
    return float(phi0) - step * np.round(float(phi0) / step)


def delta_pas(phi0: float, total_power: float = 1.0,
              grid_step: float = DEFAULT_GRID_STEP) -> AngularSpectrum:
    """Single-path spectrum: all power in the grid cell nearest ``phi0``."""
    total_power = _check_power(total_power)
    angles = angle_grid(grid_step)
    dist = np.abs(wrap_angle(angles - float(phi0)))
    k = int(np.argmin(dist))
    power = np.zeros_like(angles)
    power[k] = 1.0
    return _scaled(angles, power, total_power)


@dataclass(frozen=True)
class TabulatedPasInput:
    """One turntable sweep: azimuths in degrees and received levels in dB."""

    angles: Sequence[float]
    power_db: Sequence[float]

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[float, float]]) -> "TabulatedPasInput":
        rows = list(rows)
        return cls([r[0] for r in rows], [r[1] for r in rows])


def _check_sweep(angles: np.ndarray) -> None:
    """Reject sweeps that are not monotone over a single turn (in either sense)."""
    a = np.mod(angles, 360.0)
    if np.unique(a).size != a.size:
        raise ValueError("duplicate angles in PAS table")
    if a.size < 3:
        return
    steps = np.roll(a, -1) - a
    # a single sweep, started anywhere, wraps around exactly once
    descents = np.count_nonzero(steps < 0)
    ascents = np.count_nonzero(steps > 0)
    if descents != 1 and ascents != 1:
        raise ValueError("PAS table angles are not monotone within one sweep")


def tabulated_pas(table: TabulatedPasInput, grid_step: float = DEFAULT_GRID_STEP) -> AngularSpectrum:
    """Measured spectrum from dB readings.

    Levels go to linear power first, then are interpolated linearly (with
    periodic closure) onto the uniform grid.
    """
    angles = np.asarray(table.angles, dtype=float).ravel()
    level = np.asarray(table.power_db, dtype=float).ravel()
    if angles.shape != level.shape:
        raise ValueError("angle and power columns differ in length")
    if angles.size < 2:
        raise ValueError("PAS table needs at least two rows")
    if not np.all(np.isfinite(angles)):
        raise ValueError("PAS table angles must be finite")
    if not np.all(np.isfinite(level)):
        raise ValueError("PAS table powers must be finite")
    _check_sweep(angles)

    linear = 10.0 ** (level / 10.0)
    grid = angle_grid(grid_step)
    power = np.interp(grid, np.mod(angles, 360.0), linear, period=360.0)
    return AngularSpectrum(grid, power)


def average_pas(spectra: Sequence[AngularSpectrum]) -> AngularSpectrum:
    """Pointwise mean of several spectra tabulated on the same grid."""
    spectra = list(spectra)
    if not spectra:
        raise ValueError("need at least one spectrum to average")
    ref = spectra[0].angles
    for s in spectra[1:]:
        if s.angles.shape != ref.shape or not np.allclose(s.angles, ref, rtol=0, atol=1e-9):
            raise ValueError("spectra must share an identical angular grid")
    return AngularSpectrum(ref, np.mean([s.power for s in spectra], axis=0))
