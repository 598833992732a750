import numpy as np
import pytest

from hybrid_polar.channel import (
    ChannelParams,
    ebn0_to_sigma2,
    modulate_bpsk,
    demodulate_hard,
    add_awgn,
    llr_from_observation,
)
from hybrid_polar.errors import ChannelError


def test_modulate_bpsk():
    assert modulate_bpsk([0, 1, 0]).tolist() == [1.0, -1.0, 1.0]
    assert np.all(modulate_bpsk(np.zeros(16, dtype=np.uint8)) == 1.0)


def test_demodulate_recovers_bits(rng):
    x = rng.integers(0, 2, size=128, dtype=np.uint8)
    assert np.array_equal(demodulate_hard(modulate_bpsk(x)), x)


def test_awgn_vanishing_noise():
    symbols = modulate_bpsk([0, 1, 1, 0])
    assert np.allclose(add_awgn(symbols, 1e-20, seed=3), symbols)


def test_awgn_seeded_determinism():
    symbols = modulate_bpsk(np.zeros(64))
    assert np.array_equal(add_awgn(symbols, 0.5, seed=11), add_awgn(symbols, 0.5, seed=11))
    assert not np.array_equal(add_awgn(symbols, 0.5, seed=11), add_awgn(symbols, 0.5, seed=12))


def test_awgn_accepts_generator():
    symbols = np.zeros(8)
    first = add_awgn(symbols, 1.0, np.random.default_rng(5))
    again = add_awgn(symbols, 1.0, np.random.default_rng(5))
    assert np.array_equal(first, again)


def test_awgn_variance():
    sigma2 = 0.37
    noise = add_awgn(np.zeros(1_000_000), sigma2, seed=2014)
    assert abs(noise.var() - sigma2) < 0.01 * sigma2
    assert abs(noise.mean()) < 0.005


@pytest.mark.parametrize("sigma2", [0.0, -1.0])
def test_nonpositive_variance(sigma2):
    with pytest.raises(ChannelError):
        add_awgn([1.0], sigma2, seed=0)

    with pytest.raises(ChannelError):
        llr_from_observation([1.0], sigma2)


def test_llr_examples():
    assert llr_from_observation([1.0], 1.0).tolist() == [2.0]
    assert llr_from_observation([0.0], 1.0).tolist() == [0.0]
    assert llr_from_observation([-0.5], 0.5).tolist() == [-2.0]


def test_llr_doubles_when_variance_halves(rng):
    y = rng.normal(size=32)
    assert np.allclose(llr_from_observation(y, 0.25), 2 * llr_from_observation(y, 0.5))


def test_llr_sign_consistency(rng):
    x = rng.integers(0, 2, size=64, dtype=np.uint8)
    llrs = llr_from_observation(modulate_bpsk(x), 0.8)
    assert np.array_equal((llrs < 0).astype(np.uint8), x)


def test_ebn0_to_sigma2():
    assert ebn0_to_sigma2(0.0, 0.5) == pytest.approx(1.0)
    assert ebn0_to_sigma2(10.0, 1.0) == pytest.approx(0.05)

    params = ChannelParams.from_ebn0(3.0, 0.5)
    assert params.sigma2 == pytest.approx(1.0 / 10 ** 0.3)

    with pytest.raises(ChannelError):
        ebn0_to_sigma2(1.0, 0.0)
