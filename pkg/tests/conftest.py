import mpmath as mp
import numpy as np
import pytest

from mtf_spectra import get_scenario


@pytest.fixture(scope="session")
def teflon_lf():
    return get_scenario("teflon-lf")


@pytest.fixture(scope="session")
def ferrite_lf():
    return get_scenario("ferrite-lf")


@pytest.fixture(scope="session")
def equal_media():
    """Identical media on both sides (degenerate transmission problem)."""
    from mtf_spectra import MediaPair, Medium

    med = Medium(epsilon=1.0, mu=1.0, omega=1.05, kappa=1.05)
    return MediaPair(outer=med, inner=med)


def mp_riccati(n, z, dps=50):
    """High-precision Riccati-Bessel reference (test-side oracle)."""
    with mp.workdps(dps):
        z = mp.mpc(z)
        half = mp.mpf(1) / 2
        f = mp.sqrt(mp.pi * z / 2)
        j = f * mp.besselj(n + half, z)
        h = f * (mp.besselj(n + half, z) + 1j * mp.bessely(n + half, z))
        jm1 = f * mp.besselj(n - half, z)
        hm1 = f * (mp.besselj(n - half, z) + 1j * mp.bessely(n - half, z))
        jp = jm1 - n / z * j
        hp = hm1 - n / z * h
        return j, jp, h, hp


def mp_products(n, z, dps=50):
    """Oracle for the three scaled products, safe at any order."""
    j, jp, h, hp = mp_riccati(n, z, dps)
    with mp.workdps(dps):
        return (
            complex(2j * j * h),
            complex(-2j * jp * hp),
            complex(1j * (j * hp + jp * h)),
        )


def random_unit(dim, seed):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)
