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
Hardware comparison of the simulated decoders at one SNR point: PE counts,
critical path in adder delays before and after retiming, measured
average/worst latency and throughput normalized to the stand-alone SC
decoder.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Dict, Iterable, List, Mapping
from dataclasses import dataclass, asdict

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from hybrid_polar.config_models import DecoderVariant
from hybrid_polar.decoders import DecoderKind
from hybrid_polar.decoders.hybrid import LatencyParams, sc_cycles
from hybrid_polar.errors import ConfigError
from hybrid_polar.unified_pe import (
    CRITICAL_PATH_ADDERS,
    SC_CRITICAL_PATH_ADDERS_BEFORE_RETIMING,
    bp_pe_count,
    sc_pe_count,
)

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["HardwareRow", "hardware_table", "format_hardware_table"]


# -----------------------------------------------------------------------------
#
#                              CODE BEGINS
#
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class HardwareRow:
    architecture: str
    pe_count: int
    critical_path_adders: int
    critical_path_before_retiming: int
    mean_cycles: float
    worst_cycles: int
    throughput: float
    efficiency: float

    def as_dict(self) -> Dict:
        return asdict(self)


def hardware_table(
    rows: Iterable[Mapping], snr_db: float, n: int, params: LatencyParams
) -> List[HardwareRow]:
    """
    Build the comparison from sweep rows (TrialStats.as_dict() or the CSV
    records) at the given SNR.  The hybrid shares the BP array, so it is
    charged the same PE count as BP.
    """
    reference = sc_cycles(params, n)
    sc_pes = sc_pe_count(n)
    table = list()

    for rec in rows:
        if abs(float(rec["snr_db"]) - snr_db) > 1e-9:
            continue

        label = rec["decoder"]
        kind = DecoderVariant.from_label(label).kind
        pes = sc_pes if kind == DecoderKind.SC else bp_pe_count(n)
        mean_cycles = float(rec["mean_cycles"])
        throughput = reference / mean_cycles if mean_cycles else 0.0

        table.append(
            HardwareRow(
                architecture=label,
                pe_count=pes,
                critical_path_adders=CRITICAL_PATH_ADDERS,
                critical_path_before_retiming=(
                    SC_CRITICAL_PATH_ADDERS_BEFORE_RETIMING
                    if kind == DecoderKind.SC
                    else CRITICAL_PATH_ADDERS
                ),
                mean_cycles=mean_cycles,
                worst_cycles=int(rec["worst_cycles"]),
                throughput=throughput,
                efficiency=throughput / (pes / sc_pes),
            )
        )

    if not table:
        raise ConfigError(f"no sweep rows at {snr_db:g} dB")

    return table


def format_hardware_table(table: List[HardwareRow]) -> str:
    lines = [
        f"{'architecture':<14}{'PEs':>7}{'T_adder':>9}{'pre-ret':>9}{'avg cyc':>10}"
        f"{'worst':>7}{'thruput':>9}{'effic':>8}"
    ]
    lines.extend(
        f"{row.architecture:<14}{row.pe_count:>7}{row.critical_path_adders:>9}"
        f"{row.critical_path_before_retiming:>9}"
        f"{row.mean_cycles:>10.1f}{row.worst_cycles:>7}{row.throughput:>9.2f}"
        f"{row.efficiency:>8.3f}"
        for row in table
    )
    return "\n".join(lines)
