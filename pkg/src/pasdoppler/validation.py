"""Input coercion shared by the estimator classes and the CLI."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .core import AngularSpectrum
from .iq import IqRecording
from .pas_models import TabulatedPasInput, tabulated_pas


def check_angular_spectrum(X, grid_step: float = 1.0) -> AngularSpectrum:
    """Accept an :class:`AngularSpectrum`, a dB table, or an ``(n, 2)`` array.

    Arrays are read as ``angle_deg, power_db`` rows, i.e. the layout of a
    turntable measurement, and go through :func:`tabulated_pas`.
    """
    if isinstance(X, AngularSpectrum):
        return X
    if isinstance(X, TabulatedPasInput):
        return tabulated_pas(X, grid_step)
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(
            f"expected an AngularSpectrum or an (n, 2) array of angle_deg, power_db; got shape {arr.shape}")
    return tabulated_pas(TabulatedPasInput(arr[:, 0], arr[:, 1]), grid_step)


def check_recording(X, sample_rate: Optional[float] = None) -> IqRecording:
    """Accept an :class:`IqRecording` or a 1-D complex array plus its sample rate.

    A real ``(n, 2)`` array is taken as interleaved I/Q columns.
    """
    if isinstance(X, IqRecording):
        if sample_rate is not None and float(sample_rate) != X.sample_rate:
            return IqRecording(X.samples, sample_rate, X.carrier_frequency)
        return X
    if sample_rate is None:
        raise ValueError("sample_rate is required when passing raw samples")
    arr = np.asarray(X)
    if not np.iscomplexobj(arr) and arr.ndim == 2 and arr.shape[1] == 2:
        arr = arr[:, 0] + 1j * arr[:, 1]
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D sample array, got shape {arr.shape}")
    return IqRecording(arr, sample_rate)


def check_angles(alpha) -> tuple[np.ndarray, bool]:
    """Return ``alpha`` as a 1-D float array and whether it was a scalar."""
    arr = np.asarray(alpha, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr).ravel()
    if not np.all(np.isfinite(arr)):
        raise ValueError("angles must be finite")
    return arr, scalar
