import numpy as np
import pytest

from quasiorbits import cardioid, circle


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def cardioid_512():
    return cardioid(512)


@pytest.fixture(scope="session")
def circle_1024():
    return circle(0, 1.0, 1024)


def wiggly_curve(n, rng, amplitude=0.25):
    """Random star-shaped (hence simple) closed curve for property tests."""
    from quasiorbits.curves import SampledCurve

    th = 2.0 * np.pi * np.arange(n) / n
    r = np.ones(n)
    for k in range(2, 6):
        a, b = amplitude * rng.uniform(-1, 1) / k, amplitude * rng.uniform(-1, 1) / k
        r += a * np.cos(k * th) + b * np.sin(k * th)
    z = r * np.exp(1j * th)
    return SampledCurve(z, np.zeros(n, bool), th, label=f"wiggly(n={n})")
