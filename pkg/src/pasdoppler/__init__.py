"""Doppler spectra from power angular spectra.

The core path is :func:`transform` (angular spectrum + receiver motion to
Doppler spectrum). :func:`simulate` and :func:`estimate_ds` provide an
independent route through synthetic IQ data, and :mod:`pasdoppler.metrics`
reduces either result to mean Doppler shift and RMS Doppler spread.
"""

from .core import (
    AngularSpectrum,
    DopplerSpectrum,
    MotionConfig,
    alpha_from_directions,
    f_d_max,
    normalize,
    wrap_angle,
)
from .estimators import PasDopplerModel, WelchDopplerEstimator
from .fading import SimConfig, simulate
from .iq import EstimatorOptions, IqRecording, estimate_ds, noise_floor_trim
from .metrics import (
    Comparison,
    DispersionReport,
    angular_spread,
    compare_ds,
    dispersion_report,
    mean_doppler,
    rms_doppler_spread,
)
from .pas_models import (
    LaplacianPasParams,
    TabulatedPasInput,
    average_pas,
    delta_pas,
    laplacian_pas,
    tabulated_pas,
    uniform_pas,
)
from .transform import (
    TransformOptions,
    aoa_branches_of_doppler,
    doppler_shift_of_aoa,
    jacobian,
    mc_oracle_ds,
    total_variation,
    transform,
)

__version__ = "0.1.0"
