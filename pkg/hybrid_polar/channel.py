#      Copyright (C) 2020  Jeremy Schulman
#
#      This program is free software: you can redistribute it and/or modify
#      it under the terms of the GNU General Public License as published by
#      the Free Software Foundation, either version 3 of the License, or
#      (at your option) any later version.
#
#      This program is distributed in the hope that it will be useful,
#      but WITHOUT ANY WARRANTY; without even the implied warranty of
#      MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#      GNU General Public License for more details.
#
#      You should have received a copy of the GNU General Public License
#      along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
BPSK over AWGN.  Bit 0 maps to +1.0 so that a positive LLR always favours
bit 0, the same rule the hard-decision units use downstream.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Union, Sequence
from dataclasses import dataclass

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from hybrid_polar.errors import ChannelError

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "ChannelParams",
    "SeedLike",
    "ebn0_to_sigma2",
    "modulate_bpsk",
    "demodulate_hard",
    "add_awgn",
    "llr_from_observation",
]


# -----------------------------------------------------------------------------
#
#                              CODE BEGINS
#
# -----------------------------------------------------------------------------

SeedLike = Union[int, Sequence[int], np.random.SeedSequence, np.random.Generator, None]


def ebn0_to_sigma2(ebn0_db: float, rate: float) -> float:
    if not 0.0 < rate <= 1.0:
        raise ChannelError(f"code rate {rate} not in (0, 1]")

    return 1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))


@dataclass(frozen=True)
class ChannelParams:
    ebn0_db: float
    rate: float
    sigma2: float

    @classmethod
    def from_ebn0(cls, ebn0_db: float, rate: float) -> "ChannelParams":
        return cls(ebn0_db=ebn0_db, rate=rate, sigma2=ebn0_to_sigma2(ebn0_db, rate))


def _check_variance(sigma2: float):
    if not sigma2 > 0.0:
        raise ChannelError(f"noise variance must be positive, got {sigma2}")


def modulate_bpsk(x) -> np.ndarray:
    return 1.0 - 2.0 * np.asarray(x, dtype=np.float64)


def demodulate_hard(y) -> np.ndarray:
    return (np.asarray(y) < 0).astype(np.uint8)


def add_awgn(symbols, sigma2: float, seed: SeedLike = None) -> np.ndarray:
    """
    Add i.i.d. zero-mean Gaussian noise of variance sigma2.  The seed may
    be a numpy Generator, in which case its stream is consumed; anything
    else is handed to numpy's default_rng so the result is reproducible.
    """
    _check_variance(sigma2)
    rng = np.random.default_rng(seed)
    symbols = np.asarray(symbols, dtype=np.float64)
    return symbols + rng.normal(0.0, np.sqrt(sigma2), size=symbols.shape)


def llr_from_observation(y, sigma2: float) -> np.ndarray:
    _check_variance(sigma2)
    return 2.0 * np.asarray(y, dtype=np.float64) / sigma2
