"""Shared domain types: angles, motion geometry and the two spectrum containers.

Angles cross the public API in degrees and are wrapped to (-180, 180].
Powers are linear watts everywhere; decibels only appear in file I/O.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional, TypeVar, Union

import numpy as np
from scipy.constants import speed_of_light

SPEED_OF_LIGHT = speed_of_light  # m/s, exact

NormalizeMode = Literal["unit-max", "unit-area"]


def wrap_angle(theta):
    """Wrap an angle (or array of angles) in degrees into (-180, 180].

    Raises
    ------
    ValueError
        If any input is not finite.
    """
    arr = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"angle must be finite, got {theta!r}")
    wrapped = -np.mod(180.0 - arr, 360.0) + 180.0
    if arr.ndim == 0:
        return float(wrapped)
    return wrapped


def alpha_from_directions(tx_direction: float, movement_direction: float) -> float:
    """Direction of the transmitter measured from the receiver's heading, in degrees."""
    return wrap_angle(float(tx_direction) - float(movement_direction))


def kmh_to_ms(speed_kmh: float) -> float:
    return float(speed_kmh) / 3.6


@dataclass(frozen=True)
class MotionConfig:
    """Receiver motion relative to the azimuth frame of the angular spectrum.

    Parameters
    ----------
    speed : float
        Receiver speed in m/s.
    carrier_frequency : float
        Carrier frequency in Hz.
    alpha : float
        Angle added to every arrival azimuth before the cosine mapping, in
        degrees. Wrapped on construction.
    """

    speed: float
    carrier_frequency: float
    alpha: float = 0.0

    def __post_init__(self):
        speed = float(self.speed)
        fc = float(self.carrier_frequency)
        if not np.isfinite(speed) or speed < 0:
            raise ValueError(f"speed must be finite and >= 0, got {self.speed!r}")
        if not np.isfinite(fc) or fc <= 0:
            raise ValueError(f"carrier_frequency must be finite and > 0, got {self.carrier_frequency!r}")
        object.__setattr__(self, "speed", speed)
        object.__setattr__(self, "carrier_frequency", fc)
        object.__setattr__(self, "alpha", wrap_angle(self.alpha))

    @classmethod
    def from_scenario(cls, speed_kmh: float, carrier_ghz: float,
                      movement_deg: float = 0.0, tx_dir_deg: float = 0.0) -> "MotionConfig":
        """Build from the units used in drive-test logs (km/h, GHz, headings)."""
        return cls(
            speed=kmh_to_ms(speed_kmh),
            carrier_frequency=float(carrier_ghz) * 1e9,
            alpha=alpha_from_directions(tx_dir_deg, movement_deg),
        )

    def f_d_max(self) -> float:
        return f_d_max(self)


def f_d_max(config: MotionConfig) -> float:
    """Maximum Doppler shift ``v * fc / c`` in Hz."""
    return config.speed * config.carrier_frequency / SPEED_OF_LIGHT


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AngularSpectrum:
    """Power density over arrival azimuth, tabulated on a periodic grid.

    ``angles`` are degrees, strictly increasing inside (-180, 180].
    ``power`` is a density in W/rad. Each sample owns the cell reaching
    halfway to its neighbours (periodic closure), so the power in the
    spectrum is the periodic trapezoidal integral of ``power``.
    """

    angles: np.ndarray
    power: np.ndarray

    def __post_init__(self):
        angles = np.asarray(self.angles, dtype=float).ravel()
        power = np.asarray(self.power, dtype=float).ravel()
        if angles.shape != power.shape:
            raise ValueError("angles and power must have the same length")
        if angles.size < 2:
            raise ValueError("an angular spectrum needs at least two samples")
        if not (np.all(np.isfinite(angles)) and np.all(np.isfinite(power))):
            raise ValueError("angles and power must be finite")
        if np.any(angles <= -180.0) or np.any(angles > 180.0):
            raise ValueError("angles must lie in (-180, 180]")
        if np.any(np.diff(angles) <= 0):
            raise ValueError("angles must be strictly increasing")
        if np.any(power < 0):
            raise ValueError("power values must be >= 0")
        if not np.any(power > 0):
            raise ValueError("at least one power value must be positive")
        object.__setattr__(self, "angles", _frozen(angles))
        object.__setattr__(self, "power", _frozen(power))

    def __len__(self):
        return self.angles.size

    @property
    def angles_rad(self) -> np.ndarray:
        return np.deg2rad(self.angles)

    @property
    def spacing(self) -> np.ndarray:
        """Gap in radians from each sample to the next, wrapping at the end."""
        a = self.angles_rad
        return np.diff(np.append(a, a[0] + 2 * np.pi))

    @property
    def weights(self) -> np.ndarray:
        """Periodic trapezoidal quadrature weights (cell widths) in radians."""
        d = self.spacing
        return 0.5 * (d + np.roll(d, 1))

    @property
    def cell_edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Lower and upper cell boundaries in radians (not wrapped)."""
        a = self.angles_rad
        d = self.spacing
        return a - 0.5 * np.roll(d, 1), a + 0.5 * d

    @property
    def cell_power(self) -> np.ndarray:
        """Power in watts carried by each sample's cell."""
        return self.power * self.weights

    @property
    def total_power(self) -> float:
        return float(np.sum(self.cell_power))

    @property
    def pdf(self) -> np.ndarray:
        """Arrival-angle density in 1/rad."""
        return self.power / self.total_power

    def _cumulative_table(self) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.cell_edges
        edges = np.concatenate([lo[:1], hi])
        cum = np.concatenate([[0.0], np.cumsum(self.cell_power)])
        return edges, cum

    def cumulative_power(self, x, offset: float = 0.0) -> np.ndarray:
        """Power in cells between the first cell's lower edge and ``x``.

        ``x`` is in radians and may lie anywhere on the real line; the
        function grows by ``total_power`` per turn. ``offset`` (radians) is
        added to every arrival angle first, i.e. the result is evaluated in
        the frame ``u = phi + offset``. Power is spread uniformly over each
        cell, so this is piecewise linear.
        """
        edges, cum = self._cumulative_table()
        edges = edges + offset
        turns, r = np.divmod(np.asarray(x, dtype=float) - edges[0], 2 * np.pi)
        return turns * cum[-1] + np.interp(edges[0] + r, edges, cum)

    def inverse_cumulative(self, level, offset: float = 0.0) -> np.ndarray:
        """Inverse of :meth:`cumulative_power` (radians, same frame)."""
        edges, cum = self._cumulative_table()
        edges = edges + offset
        turns, r = np.divmod(np.asarray(level, dtype=float), cum[-1])
        return 2 * np.pi * turns + np.interp(r, cum, edges)

    def sector_power(self, start: float, stop: float) -> float:
        """Power arriving from the counter-clockwise sector ``[start, stop]`` (degrees)."""
        a = np.deg2rad(float(start))
        b = np.deg2rad(float(stop))
        if b < a:
            b += 2 * np.pi * np.ceil((a - b) / (2 * np.pi))
        return float(self.cumulative_power(b) - self.cumulative_power(a))

    def density_at(self, angle) -> np.ndarray:
        """Piecewise-linear periodic interpolation of the density (W/rad)."""
        return np.interp(np.asarray(angle, dtype=float), self.angles, self.power, period=360.0)

    def with_power(self, power) -> "AngularSpectrum":
        return AngularSpectrum(self.angles, power)

    def rotate(self, delta: float) -> "AngularSpectrum":
        """Shift every arrival angle by ``+delta`` degrees."""
        shifted = wrap_angle(self.angles + float(delta))
        order = np.argsort(shifted, kind="stable")
        return AngularSpectrum(shifted[order], self.power[order])

    def reflect(self, axis: float = 0.0) -> "AngularSpectrum":
        """Mirror the spectrum about the azimuth ``axis`` (degrees)."""
        mirrored = wrap_angle(2.0 * float(axis) - self.angles)
        order = np.argsort(mirrored, kind="stable")
        return AngularSpectrum(mirrored[order], self.power[order])


@dataclass(frozen=True, eq=False)
class DopplerSpectrum:
    """Power per Doppler-frequency bin.

    Parameters
    ----------
    bin_edges : array, shape (n + 1,)
        Strictly increasing bin edges in Hz.
    bin_mass : array, shape (n,)
        Power in watts falling inside each bin.
    f_d_max : float
        Maximum Doppler shift of the generating motion in Hz. Spectra built
        from a motion model span exactly ``[-f_d_max, f_d_max]``; estimates
        from recordings may span a wider analysis band.
    density : array, shape (n,), optional
        Pointwise spectral density at the bin centres in W/Hz.
    locations : array, shape (n,), optional
        Frequency at which each bin's mass sits; defaults to the bin
        midpoints. Set when reading files that store centres rather than
        edges, so moments are reproduced bit for bit.
    """

    bin_edges: np.ndarray
    bin_mass: np.ndarray
    f_d_max: float
    density: Optional[np.ndarray] = field(default=None)
    locations: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        edges = np.asarray(self.bin_edges, dtype=float).ravel()
        mass = np.asarray(self.bin_mass, dtype=float).ravel()
        if edges.size != mass.size + 1:
            raise ValueError("bin_edges must have exactly one more entry than bin_mass")
        if mass.size < 1:
            raise ValueError("a Doppler spectrum needs at least one bin")
        if not (np.all(np.isfinite(edges)) and np.all(np.isfinite(mass))):
            raise ValueError("bin edges and masses must be finite")
        if np.any(np.diff(edges) <= 0):
            raise ValueError("bin_edges must be strictly increasing")
        if np.any(mass < 0):
            raise ValueError("bin masses must be >= 0")
        fdm = float(self.f_d_max)
        if not np.isfinite(fdm) or fdm < 0:
            raise ValueError("f_d_max must be finite and >= 0")
        object.__setattr__(self, "bin_edges", _frozen(edges))
        object.__setattr__(self, "bin_mass", _frozen(mass))
        object.__setattr__(self, "f_d_max", fdm)
        if self.density is not None:
            dens = np.asarray(self.density, dtype=float).ravel()
            if dens.shape != mass.shape:
                raise ValueError("density must have one value per bin")
            object.__setattr__(self, "density", _frozen(dens))
        if self.locations is not None:
            loc = np.asarray(self.locations, dtype=float).ravel()
            if loc.shape != mass.shape:
                raise ValueError("locations must have one value per bin")
            if np.any(loc < edges[:-1]) or np.any(loc > edges[1:]):
                raise ValueError("each location must lie inside its bin")
            object.__setattr__(self, "locations", _frozen(loc))

    def __len__(self):
        return self.bin_mass.size

    @property
    def centers(self) -> np.ndarray:
        if self.locations is not None:
            return self.locations
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    @property
    def total_power(self) -> float:
        return float(np.sum(self.bin_mass))

    def same_grid(self, other: "DopplerSpectrum", rtol: float = 1e-9) -> bool:
        if self.bin_edges.shape != other.bin_edges.shape:
            return False
        scale = max(np.max(np.abs(self.bin_edges)), 1e-300)
        return bool(np.all(np.abs(self.bin_edges - other.bin_edges) <= rtol * scale))

    def scaled(self, factor: float) -> "DopplerSpectrum":
        dens = None if self.density is None else self.density * factor
        return DopplerSpectrum(self.bin_edges, self.bin_mass * factor, self.f_d_max, dens,
                               self.locations)


Spectrum = TypeVar("Spectrum", AngularSpectrum, DopplerSpectrum)


def normalize(spectrum: Spectrum, mode: NormalizeMode = "unit-area") -> Spectrum:
    """Rescale a spectrum to unit peak (``"unit-max"``) or unit power (``"unit-area"``).

    Only the overall scale changes; ratios between samples are kept.
    """
    if isinstance(spectrum, AngularSpectrum):
        values = spectrum.power
        total = spectrum.total_power
    elif isinstance(spectrum, DopplerSpectrum):
        values = spectrum.bin_mass
        total = spectrum.total_power
    else:
        raise TypeError(f"cannot normalize {type(spectrum).__name__}")

    if mode == "unit-max":
        ref = float(np.max(values))
    elif mode == "unit-area":
        ref = total
    else:
        raise ValueError(f"unknown normalization mode {mode!r}")
    if not ref > 0:
        raise ValueError("cannot normalize an all-zero spectrum")

    if isinstance(spectrum, AngularSpectrum):
        return spectrum.with_power(spectrum.power / ref)
    return spectrum.scaled(1.0 / ref)


AnySpectrum = Union[AngularSpectrum, DopplerSpectrum]
