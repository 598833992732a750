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
Decoder registry.  Every variant the simulation harness can run is decoded
through decode_frame() and reports a DecodeOutcome.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Optional
from enum import Enum

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from hybrid_polar.codec import CodeSpec, extract_info_bits
from hybrid_polar.decoders.sc import sc_decode
from hybrid_polar.decoders.bp import BpSettings, bp_decode
from hybrid_polar.decoders.hybrid import (
    DecoderSource,
    DecodeOutcome,
    LatencyParams,
    latency_cycles,
    hybrid_decode,
)

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["DecoderKind", "decode_frame"]


# -----------------------------------------------------------------------------
#
#                              CODE BEGINS
#
# -----------------------------------------------------------------------------


class DecoderKind(str, Enum):
    SC = "sc"
    BP = "bp"
    BP_ES = "bp-es"
    HYBRID = "hybrid"

    @property
    def iterative(self) -> bool:
        return self is not DecoderKind.SC


def decode_frame(
    kind: DecoderKind,
    llrs,
    spec: CodeSpec,
    max_iter: int,
    settings: Optional[BpSettings] = None,
    latency: Optional[LatencyParams] = None,
) -> DecodeOutcome:
    latency = latency or LatencyParams.for_spec(spec)

    if kind == DecoderKind.HYBRID:
        return hybrid_decode(llrs, spec, max_iter, settings=settings, latency=latency)

    if kind == DecoderKind.SC:
        u_hat, source, iterations = sc_decode(llrs, spec), DecoderSource.SC_ONLY, 0

    else:
        bp_out = bp_decode(
            llrs,
            spec,
            max_iter,
            settings=settings,
            early_stop=(kind == DecoderKind.BP_ES),
        )
        u_hat, iterations = bp_out.u_hat, bp_out.iterations_used
        source = (
            DecoderSource.BP_EARLY if bp_out.stopped_early else DecoderSource.BP_EXHAUSTED
        )

    return DecodeOutcome(
        u_hat=u_hat,
        info_hat=extract_info_bits(u_hat, spec),
        source=source,
        iterations=iterations,
        cycles=latency_cycles(source, iterations, latency, spec.n),
    )
