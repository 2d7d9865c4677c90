"""scikit-learn style front ends.

``PasDopplerModel`` is fitted on one angular spectrum and then predicts the
Doppler spectrum for any movement direction. ``WelchDopplerEstimator`` is
fitted on an IQ recording. Both expose ``get_params``/``set_params`` and
clone cleanly, so they can sit in parameter sweeps.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .core import MotionConfig
from .iq import EstimatorOptions, estimate_ds, noise_floor_trim
from .metrics import angular_spread, dispersion_report
from .transform import TransformOptions, transform
from .validation import check_angles, check_angular_spectrum, check_recording


class PasDopplerModel(BaseEstimator):
    """Doppler spectra derived from a single angular power spectrum.

    Parameters
    ----------
    speed : float
        Receiver speed in m/s.
    carrier_frequency : float
        Carrier frequency in Hz.
    bin_count : int
        Doppler bins across the output band.
    span : float
        Output band as a multiple of the maximum Doppler shift.
    density_output : bool
        Also attach the pointwise density at bin centres.
    grid_step : float
        Grid used when fitting on a dB table.

    Attributes
    ----------
    pas_ : AngularSpectrum
    f_d_max_ : float
    angular_spread_ : float
    """

    def __init__(self, speed=30 / 3.6, carrier_frequency=3.5e9, bin_count=201, span=1.0,
                 density_output=False, grid_step=1.0):
        self.speed = speed
        self.carrier_frequency = carrier_frequency
        self.bin_count = bin_count
        self.span = span
        self.density_output = density_output
        self.grid_step = grid_step

    def fit(self, X, y=None):
        self.pas_ = check_angular_spectrum(X, self.grid_step)
        self.f_d_max_ = MotionConfig(self.speed, self.carrier_frequency).f_d_max()
        if not self.f_d_max_ > 0:
            raise ValueError("speed must be > 0 to derive a Doppler spectrum")
        self._opts = TransformOptions(self.bin_count, self.density_output, self.span)
        self.angular_spread_ = angular_spread(self.pas_)
        return self

    def _motion(self, alpha):
        return MotionConfig(self.speed, self.carrier_frequency, alpha)

    def predict(self, alpha=0.0):
        """Doppler spectrum for ``alpha`` (degrees); a list for array input."""
        check_is_fitted(self, "pas_")
        angles, scalar = check_angles(alpha)
        out = [transform(self.pas_, self._motion(a), self._opts) for a in angles]
        return out[0] if scalar else out

    def dispersion(self, alpha=0.0) -> np.ndarray:
        """``(n, 2)`` array of mean Doppler shift and RMS Doppler spread in Hz."""
        spectra = self.predict(np.atleast_1d(alpha))
        reports = [dispersion_report(ds) for ds in spectra]
        return np.array([[r.mean_doppler, r.rms_doppler_spread] for r in reports])


class WelchDopplerEstimator(BaseEstimator):
    """Averaged-periodogram Doppler spectrum of a recording.

    ``floor_db`` (if set) zeroes bins further than that below the peak.
    """

    def __init__(self, segment_length=1024, overlap_fraction=0.5, window="hann",
                 f_d_max_hint=None, bin_count=201, floor_db=None):
        self.segment_length = segment_length
        self.overlap_fraction = overlap_fraction
        self.window = window
        self.f_d_max_hint = f_d_max_hint
        self.bin_count = bin_count
        self.floor_db = floor_db

    def _estimate(self, X, sample_rate):
        rec = check_recording(X, sample_rate)
        opts = EstimatorOptions(self.segment_length, self.overlap_fraction, self.window,
                                self.f_d_max_hint, self.bin_count)
        ds = estimate_ds(rec, opts)
        if self.floor_db is not None:
            ds = noise_floor_trim(ds, self.floor_db)
        return ds

    def fit(self, X, y=None, sample_rate=None):
        self.spectrum_ = self._estimate(X, sample_rate)
        self.report_ = dispersion_report(self.spectrum_)
        return self

    def transform(self, X, sample_rate=None):
        """Estimate for another recording with the fitted settings."""
        check_is_fitted(self, "spectrum_")
        return self._estimate(X, sample_rate)

    def fit_transform(self, X, y=None, sample_rate=None):
        return self.fit(X, sample_rate=sample_rate).spectrum_
