import numpy as np
import pytest

from hybrid_polar.codec import CodeSpec, construct_frozen_set, encode, insert_info_bits
from hybrid_polar.channel import modulate_bpsk, llr_from_observation


@pytest.fixture()
def spec8() -> CodeSpec:
    """(8, 4) code, frozen = {0, 1, 2, 4}"""
    return construct_frozen_set(8, 4, 0.5)


@pytest.fixture(scope="session")
def spec1024() -> CodeSpec:
    return construct_frozen_set(1024, 512, 0.5)


@pytest.fixture()
def rng():
    return np.random.default_rng(20141104)


def noiseless_llrs(x, sigma2=0.5):
    """LLRs of the noiseless BPSK image of x; magnitude 2 / sigma2."""
    return llr_from_observation(modulate_bpsk(x), sigma2)


def random_codeword(spec, rng):
    info = rng.integers(0, 2, size=spec.k, dtype=np.uint8)
    u = insert_info_bits(info, spec)
    return info, u, encode(u, spec)
