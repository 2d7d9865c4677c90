import numpy as np
import pytest

from pasdoppler import MotionConfig, SimConfig, simulate, uniform_pas
from pasdoppler.fading import draw_paths, sum_of_sinusoids

from fixtures import bimodal_pas


def test_single_path_is_a_rotating_phasor(campaign_motion):
    fs = 1000.0
    phi0 = 37.0
    f = campaign_motion.f_d_max() * np.cos(np.deg2rad(phi0 + campaign_motion.alpha))
    x = sum_of_sinusoids([f], [1.2], 1.0, fs, 4000)
    assert np.allclose(np.abs(x), 1.0, atol=1e-12)
    inst = np.angle(x[1:] * np.conj(x[:-1])) * fs / (2 * np.pi)
    assert np.allclose(inst, f, atol=1e-9)


def test_path_directions_follow_the_spectrum(campaign_motion):
    pas = bimodal_pas()
    cfg = SimConfig(campaign_motion, duration=1.0, n_paths=4096, seed=2)
    u, phases = draw_paths(pas, cfg)
    assert np.all((u >= 0) & (u < 2 * np.pi))
    assert np.all((phases >= 0) & (phases < 2 * np.pi))
    # each equal-probability stratum holds exactly one path
    alpha = np.deg2rad(campaign_motion.alpha)
    start = pas.cumulative_power(0.0, offset=alpha)
    levels = np.mod(pas.cumulative_power(u, offset=alpha) - start, pas.total_power) / pas.total_power
    counts = np.bincount(np.floor(levels * 4096).astype(int), minlength=4096)
    assert np.all(counts == 1)


def test_mean_power_over_seeds(campaign_motion):
    pas = uniform_pas(2.0)
    powers = [simulate(pas, SimConfig(campaign_motion, seed=s)).mean_power for s in range(16)]
    assert np.mean(powers) == pytest.approx(2.0, rel=0.03)


def test_deterministic_per_seed(campaign_motion, laplacian):
    a = simulate(laplacian, SimConfig(campaign_motion, duration=2.0, seed=5))
    b = simulate(laplacian, SimConfig(campaign_motion, duration=2.0, seed=5))
    c = simulate(laplacian, SimConfig(campaign_motion, duration=2.0, seed=6))
    assert np.array_equal(a.samples, b.samples)
    assert not np.allclose(a.samples, c.samples)


def test_block_size_does_not_matter(campaign_motion, laplacian):
    a = simulate(laplacian, SimConfig(campaign_motion, duration=3.0, seed=1))
    b = simulate(laplacian, SimConfig(campaign_motion, duration=3.0, seed=1, block_size=333))
    assert np.allclose(a.samples, b.samples, rtol=0, atol=1e-12)


@pytest.mark.parametrize("delta", [25.0, -140.0, 300.0])
def test_rotation_of_field_and_heading(delta):
    pas = bimodal_pas()
    base = MotionConfig(8.33, 3.5e9, 10.0)
    turned = MotionConfig(8.33, 3.5e9, 10.0 - delta)
    a = simulate(pas, SimConfig(base, duration=5.0, seed=3))
    b = simulate(pas.rotate(delta), SimConfig(turned, duration=5.0, seed=3))
    assert np.max(np.abs(a.samples - b.samples)) < 1e-9


def test_config_validation(campaign_motion):
    with pytest.raises(ValueError, match="4 x fd_max"):
        SimConfig(campaign_motion, sample_rate=300.0)
    with pytest.raises(ValueError):
        SimConfig(campaign_motion, duration=0.0)
    with pytest.raises(ValueError):
        SimConfig(campaign_motion, n_paths=4)
