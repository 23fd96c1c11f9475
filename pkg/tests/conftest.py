import pathlib

import pytest
from hypothesis import HealthCheck, settings

from rydladder.params import SchemeParams, mhz

settings.register_profile(
    "default", max_examples=30, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CONFIG_DIR = pathlib.Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture(scope="session")
def configs_dir() -> pathlib.Path:
    return CONFIG_DIR


@pytest.fixture(scope="session")
def cs_params() -> SchemeParams:
    """Cold-Cs ladder driving parameters (non-interacting baseline)."""
    return SchemeParams(
        omega1=mhz(0.1), omega2=mhz(8.0), omega3=mhz(1.0),
        delta1=0.0, delta2=0.0, delta3=mhz(-4.0),
        gamma1=mhz(5.39), gamma2=mhz(3.31), gamma3=0.0)


@pytest.fixture(scope="session")
def rb_params() -> SchemeParams:
    """Cold-Rb ladder driving parameters."""
    return SchemeParams(
        omega1=mhz(10.0), omega2=mhz(25.0), omega3=mhz(18.0),
        delta1=0.0, delta2=0.0, delta3=0.0,
        gamma1=mhz(6.0), gamma2=mhz(0.66), gamma3=0.0)
