import pytest

from swipt_relay.channel import FadingParams
from swipt_relay.params import SystemParams, dbm_to_linear


@pytest.fixture
def ref_params():
    """The headline operating point: P_s=40 dBm, noise -20/-20/-17 dBm, R=3."""
    return SystemParams(
        p_s=dbm_to_linear(40.0),
        sigma_r_sq=dbm_to_linear(-20.0),
        sigma_p_sq=dbm_to_linear(-20.0),
        sigma_d_sq=dbm_to_linear(-17.0),
        rate=3.0,
    )


@pytest.fixture
def ref_fading():
    return FadingParams(lambda_h=1.5, lambda_g=1.5)
