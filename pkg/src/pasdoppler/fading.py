"""Sum-of-sinusoids complex envelope for a receiver moving through a scattered field."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import AngularSpectrum, MotionConfig, f_d_max
from .iq import IqRecording


@dataclass(frozen=True)
class SimConfig:
    """Synthesis settings.

    ``duration`` in seconds and ``sample_rate`` in Hz; the sample rate must
    exceed four times the maximum Doppler shift of ``motion``.
    """

    motion: MotionConfig
    duration: float = 20.0
    sample_rate: float = 1000.0
    n_paths: int = 256
    seed: int = 0
    block_size: int = field(default=4096, repr=False)

    def __post_init__(self):
        if int(self.n_paths) != self.n_paths or self.n_paths < 8:
            raise ValueError("n_paths must be an integer >= 8")
        if not (np.isfinite(self.duration) and self.duration > 0):
            raise ValueError(f"duration must be > 0 s, got {self.duration!r}")
        if not (np.isfinite(self.sample_rate) and self.sample_rate > 0):
            raise ValueError("sample_rate must be > 0")
        fdm = f_d_max(self.motion)
        if not self.sample_rate > 4 * fdm:
            raise ValueError(
                f"sample rate {self.sample_rate} Hz is below 4 x fd_max = {4 * fdm:.3f} Hz")
        if self.n_samples < 1:
            raise ValueError("duration is shorter than one sample period")

    @property
    def n_samples(self) -> int:
        return int(round(self.duration * self.sample_rate))


def draw_paths(pas: AngularSpectrum, cfg: SimConfig) -> tuple[np.ndarray, np.ndarray]:
    """Path directions ``phi + alpha`` (radians) and initial phases.

    Directions come from the inverse CDF of the angular spectrum taken in
    the motion frame, with one jittered draw per equal-probability stratum.
    Working in the motion frame makes the paths depend on ``phi + alpha``
    only, so rotating the spectrum and the heading together leaves them
    unchanged.
    """
    n = int(cfg.n_paths)
    rng = np.random.default_rng(cfg.seed)
    levels = (np.arange(n) + rng.random(n)) / n
    phases = rng.uniform(0.0, 2 * np.pi, n)
    alpha = np.deg2rad(cfg.motion.alpha)
    start = pas.cumulative_power(0.0, offset=alpha)
    u = pas.inverse_cumulative(start + levels * pas.total_power, offset=alpha)
    return np.mod(u, 2 * np.pi), phases


def sum_of_sinusoids(doppler, phases, amplitude: float, sample_rate: float, n_samples: int,
                     block_size: int = 4096) -> np.ndarray:
    """``amplitude * sum_n exp(j(2pi doppler_n t + phases_n))`` at ``t = k / sample_rate``."""
    w = 2 * np.pi * np.asarray(doppler, dtype=float)
    phases = np.asarray(phases, dtype=float)
    out = np.empty(n_samples, dtype=complex)
    for start in range(0, n_samples, block_size):
        t = np.arange(start, min(start + block_size, n_samples)) / sample_rate
        out[start:start + t.size] = amplitude * np.exp(1j * (np.outer(t, w) + phases)).sum(axis=1)
    return out


def simulate(pas: AngularSpectrum, cfg: SimConfig) -> IqRecording:
    """Complex envelope seen by a receiver moving through the field described by ``pas``.

    Each path's Doppler shift is ``fd_max * cos(phi_n + alpha)`` and every
    path carries ``P0 / n_paths``. Output is deterministic for a given seed
    and is synthesized block by block, so memory stays bounded for long
    recordings.
    """
    u, phases = draw_paths(pas, cfg)
    fd = f_d_max(cfg.motion) * np.cos(u)
    amp = np.sqrt(pas.total_power / cfg.n_paths)
    x = sum_of_sinusoids(fd, phases, amp, cfg.sample_rate, cfg.n_samples, cfg.block_size)
    return IqRecording(x, cfg.sample_rate, cfg.motion.carrier_frequency)
