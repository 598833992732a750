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
Hybrid BP -> SC decoding.  The BP front end runs with early stopping; a
frame it cannot validate within max_iter iterations has its denoised x-side
LLRs handed to the SC back end.  Latency is accounted with the closed-form
cycle counts: about 2v + m cycles for v BP iterations and n / 2**(k-2)
cycles for a 2**k-bit output SC decoder.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Optional
from dataclasses import dataclass
from enum import Enum

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from hybrid_polar import DEFAULT_SC_OUTPUT_BITS_LOG2
from hybrid_polar.codec import CodeSpec, BitVector, is_power_of_two, extract_info_bits
from hybrid_polar.errors import LatencyError
from hybrid_polar.log import get_logger
from hybrid_polar.decoders.sc import sc_decode
from hybrid_polar.decoders.bp import BpSettings, bp_decode

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "DecoderSource",
    "LatencyParams",
    "DecodeOutcome",
    "latency_cycles",
    "sc_cycles",
    "worst_case_cycles",
    "equivalent_bp_iterations",
    "hybrid_decode",
]


# -----------------------------------------------------------------------------
#
#                              CODE BEGINS
#
# -----------------------------------------------------------------------------


class DecoderSource(str, Enum):
    BP_EARLY = "bp-early"
    SC_FALLBACK = "sc-fallback"
    BP_EXHAUSTED = "bp-exhausted"
    SC_ONLY = "sc-only"


@dataclass(frozen=True)
class LatencyParams:
    m: int
    sc_output_bits_log2: int = DEFAULT_SC_OUTPUT_BITS_LOG2

    def __post_init__(self):
        if self.m < 0:
            raise LatencyError(f"m must be >= 0, got {self.m}")

        if self.sc_output_bits_log2 < 2:
            raise LatencyError(
                f"SC output width 2**{self.sc_output_bits_log2} bits is below the 4-bit minimum"
            )

    @classmethod
    def for_spec(
        cls, spec: CodeSpec, sc_output_bits_log2: int = DEFAULT_SC_OUTPUT_BITS_LOG2
    ) -> "LatencyParams":
        return cls(m=spec.m, sc_output_bits_log2=sc_output_bits_log2)


@dataclass(frozen=True)
class DecodeOutcome:
    u_hat: BitVector
    info_hat: np.ndarray
    source: DecoderSource
    iterations: int
    cycles: int


def sc_cycles(params: LatencyParams, n: int) -> int:
    if not is_power_of_two(n):
        raise LatencyError(f"block length {n} is not a power of two")

    divisor = 1 << (params.sc_output_bits_log2 - 2)
    if divisor > n:
        raise LatencyError(
            f"SC output width 2**{params.sc_output_bits_log2} too wide for n={n}"
        )

    return n // divisor


def latency_cycles(kind: DecoderSource, v: int, params: LatencyParams, n: int) -> int:
    """
    Modelled decoding latency in clock cycles.

    Parameters
    ----------
    kind:
        Which decoder produced the output.

    v:
        BP iterations run; for SC_FALLBACK this is max_iter.

    params:
        m and the SC output width.

    n:
        Block length.
    """
    if v < 0:
        raise LatencyError(f"iteration count must be >= 0, got {v}")

    sc = sc_cycles(params, n)
    bp = 2 * v + params.m

    if kind in (DecoderSource.BP_EARLY, DecoderSource.BP_EXHAUSTED):
        return bp
    if kind == DecoderSource.SC_FALLBACK:
        return bp + sc
    if kind == DecoderSource.SC_ONLY:
        return sc

    raise LatencyError(f"unknown decoder source {kind!r}")


def worst_case_cycles(max_iter: int, params: LatencyParams, n: int) -> int:
    return latency_cycles(DecoderSource.SC_FALLBACK, max_iter, params, n)


def equivalent_bp_iterations(cycles: int, m: int) -> int:
    """BP max_iter whose worst case 2v + m is closest to the given cycles."""
    return max(0, round((cycles - m) / 2))


def hybrid_decode(
    llrs,
    spec: CodeSpec,
    max_iter: int,
    settings: Optional[BpSettings] = None,
    latency: Optional[LatencyParams] = None,
) -> DecodeOutcome:
    """
    Decode one frame with the BP front end, falling back to SC on the
    denoised LLRs when early stopping never fires.  SC is not run at all
    for frames BP validates.
    """
    latency = latency or LatencyParams.for_spec(spec)
    bp_out = bp_decode(llrs, spec, max_iter, settings=settings, early_stop=True)

    if bp_out.stopped_early:
        u_hat, source = bp_out.u_hat, DecoderSource.BP_EARLY
    else:
        get_logger().debug(
            f"BP did not converge in {max_iter} iterations, falling back to SC"
        )
        u_hat, source = sc_decode(bp_out.denoised_llrs, spec), DecoderSource.SC_FALLBACK

    return DecodeOutcome(
        u_hat=u_hat,
        info_hat=extract_info_bits(u_hat, spec),
        source=source,
        iterations=bp_out.iterations_used,
        cycles=latency_cycles(source, bp_out.iterations_used, latency, spec.n),
    )
