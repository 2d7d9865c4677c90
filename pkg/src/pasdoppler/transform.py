"""Mapping of an angular power spectrum onto the Doppler axis of a moving receiver.

A path arriving from azimuth ``phi`` is shifted by ``fd_max * cos(phi + alpha)``.
The power of the angular spectrum is pushed through that mapping cell by
cell, so every Doppler bin receives exactly the power of the arrival
directions that land in it. The endpoint singularity of the pointwise
density at ``+-fd_max`` is never evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import AngularSpectrum, DopplerSpectrum, MotionConfig, f_d_max, wrap_angle

DEFAULT_BIN_COUNT = 201


@dataclass(frozen=True)
class TransformOptions:
    """Discretization of the output Doppler axis.

    ``span`` widens the bin grid to ``[-span * fd_max, span * fd_max]``;
    bins beyond ``fd_max`` then hold no power. Use it to line the output up
    with estimates computed over a wider analysis band.
    """

    bin_count: int = DEFAULT_BIN_COUNT
    density_output: bool = False
    span: float = 1.0

    def __post_init__(self):
        if int(self.bin_count) != self.bin_count or self.bin_count < 8:
            raise ValueError(f"bin_count must be an integer >= 8, got {self.bin_count!r}")
        if not (np.isfinite(self.span) and self.span >= 1.0):
            raise ValueError(f"span must be >= 1, got {self.span!r}")
        object.__setattr__(self, "bin_count", int(self.bin_count))
        object.__setattr__(self, "span", float(self.span))


def doppler_shift_of_aoa(phi, config: MotionConfig):
    """Doppler shift in Hz of a path arriving from azimuth ``phi`` (degrees)."""
    u = np.deg2rad(np.asarray(phi, dtype=float) + config.alpha)
    shift = f_d_max(config) * np.cos(u)
    return float(shift) if shift.ndim == 0 else shift


def aoa_branches_of_doppler(f_d: float, config: MotionConfig) -> tuple[float, float]:
    """Both arrival azimuths (degrees) whose paths see Doppler shift ``f_d``.

    Returned as ``(arccos branch - alpha, -arccos branch - alpha)``; the two
    coincide at ``|f_d| == fd_max``.
    """
    fdm = f_d_max(config)
    if fdm <= 0:
        raise ValueError("maximum Doppler shift is zero; no arrival angle is defined")
    f_d = float(f_d)
    if not np.isfinite(f_d) or abs(f_d) > fdm:
        raise ValueError(f"|f_d| = {abs(f_d)} Hz exceeds fd_max = {fdm} Hz")
    theta = np.rad2deg(np.arccos(f_d / fdm))
    return wrap_angle(theta - config.alpha), wrap_angle(-theta - config.alpha)


def jacobian(f_d, f_d_max: float):
    """``|d phi / d f_D|`` in rad/Hz, defined strictly inside ``(-fd_max, fd_max)``."""
    f = np.asarray(f_d, dtype=float)
    if not (f_d_max > 0) or np.any(~np.isfinite(f)) or np.any(np.abs(f) >= f_d_max):
        raise ValueError("jacobian is singular at and beyond |f_d| = fd_max")
    out = 1.0 / np.sqrt(f_d_max**2 - f**2)
    return float(out) if out.ndim == 0 else out


def doppler_edges(fdm: float, bin_count: int = DEFAULT_BIN_COUNT, span: float = 1.0) -> np.ndarray:
    edges = np.linspace(-span * fdm, span * fdm, bin_count + 1)
    # pin the endpoints so the grid spans the band exactly
    edges[0], edges[-1] = -span * fdm, span * fdm
    return edges


def _power_below(pas: AngularSpectrum, alpha_rad: float, f: np.ndarray, fdm: float) -> np.ndarray:
    """Power carried by directions whose Doppler shift is below each of ``f``.

    ``fd_max * cos(u) < f`` holds on the arc ``u in (a, 2pi - a)`` with
    ``a = arccos(f / fd_max)``; the cell-wise cumulative power integrates the
    spectrum over that arc, splitting cells proportionally at its ends.
    """
    a = np.arccos(np.clip(f / fdm, -1.0, 1.0))
    return (pas.cumulative_power(2 * np.pi - a, offset=alpha_rad)
            - pas.cumulative_power(a, offset=alpha_rad))


def pointwise_density(pas: AngularSpectrum, config: MotionConfig, f) -> np.ndarray:
    """Doppler power density in W/Hz at frequencies strictly inside the band.

    Both arrival directions mapping onto each frequency contribute.
    """
    fdm = f_d_max(config)
    f = np.asarray(f, dtype=float)
    jac = jacobian(f, fdm)
    theta = np.rad2deg(np.arccos(f / fdm))
    both = pas.density_at(theta - config.alpha) + pas.density_at(-theta - config.alpha)
    return both * jac


def transform(pas: AngularSpectrum, config: MotionConfig,
              opts: Optional[TransformOptions] = None) -> DopplerSpectrum:
    """Doppler spectrum seen by a receiver moving per ``config``.

    Raises
    ------
    ValueError
        If the receiver is stationary. The Doppler spectrum then collapses to
        a point mass at 0 Hz, which callers must handle explicitly.
    """
    opts = opts or TransformOptions()
    fdm = f_d_max(config)
    if not fdm > 0:
        raise ValueError("fd_max is zero (stationary receiver); the Doppler spectrum is a point mass at 0 Hz")

    edges = doppler_edges(fdm, opts.bin_count, opts.span)
    below = _power_below(pas, np.deg2rad(config.alpha), edges, fdm)
    below[0] = 0.0
    below[-1] = pas.total_power
    mass = np.clip(np.diff(below), 0.0, None)

    density = None
    if opts.density_output:
        centers = 0.5 * (edges[:-1] + edges[1:])
        density = np.zeros_like(centers)
        inside = np.abs(centers) < fdm
        density[inside] = pointwise_density(pas, config, centers[inside])
    return DopplerSpectrum(edges, mass, fdm, density)


def mc_oracle_ds(pas: AngularSpectrum, config: MotionConfig, n_rays: int = 1_000_000,
                 bins: int = 64, seed: int = 0) -> DopplerSpectrum:
    """Brute-force Doppler histogram of rays drawn from the angular spectrum.

    Each ray picks a grid cell with probability proportional to its power,
    then a uniform azimuth inside the cell, and carries ``P0 / n_rays``.
    """
    n_rays = int(n_rays)
    if n_rays < 10_000:
        raise ValueError("n_rays must be >= 1e4")
    if int(bins) < 1:
        raise ValueError("bins must be positive")
    fdm = f_d_max(config)
    if not fdm > 0:
        raise ValueError("fd_max is zero (stationary receiver)")

    rng = np.random.default_rng(seed)
    cum = np.cumsum(pas.cell_power)
    cell = np.searchsorted(cum, rng.random(n_rays) * cum[-1], side="right")
    cell = np.minimum(cell, cum.size - 1)
    lo, hi = pas.cell_edges
    phi = lo[cell] + (hi[cell] - lo[cell]) * rng.random(n_rays)
    shifts = fdm * np.cos(phi + np.deg2rad(config.alpha))

    edges = doppler_edges(fdm, int(bins))
    counts, _ = np.histogram(np.clip(shifts, -fdm, fdm), bins=edges)
    return DopplerSpectrum(edges, counts * (pas.total_power / n_rays), fdm)


def total_variation(a: DopplerSpectrum, b: DopplerSpectrum) -> float:
    """Half the L1 distance between the power-normalized bin masses."""
    if not a.same_grid(b):
        raise ValueError("spectra must share a bin grid")
    p = a.bin_mass / a.total_power
    q = b.bin_mass / b.total_power
    return 0.5 * float(np.sum(np.abs(p - q)))
