"""Angular spectrum fixtures shared by several test modules."""

import numpy as np

from pasdoppler import AngularSpectrum, LaplacianPasParams, laplacian_pas


def bimodal_pas(grid_step=1.0):
    """Main lobe near 48 deg plus a weaker, wider lobe behind the receiver."""
    a = laplacian_pas(LaplacianPasParams(48.0, 20.0, 1.0), grid_step)
    b = laplacian_pas(LaplacianPasParams(-140.0, 40.0, 0.5), grid_step)
    return AngularSpectrum(a.angles, a.power + b.power)


def random_pas(rng, n_min=8, n_max=720):
    """Irregular grid with random non-negative powers, sometimes sparse."""
    n = int(rng.integers(n_min, n_max))
    angles = np.sort(rng.choice(np.arange(-1799, 1801) / 10.0, size=n, replace=False))
    power = rng.exponential(1.0, n) * (rng.random(n) < rng.uniform(0.2, 1.0))
    if not np.any(power > 0):
        power[0] = 1.0
    return AngularSpectrum(angles, power * rng.uniform(0.01, 100.0))
