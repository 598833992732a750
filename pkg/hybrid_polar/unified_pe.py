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
Functional model of the unified Type-I / Type-II computation blocks.

With the right input selection one datapath serves both decoders:

    SC f(a, b)        == Type-I  with s = 1, in1 = a, in2 = b, in3 = 0
    SC g(a, b, u_sum) == Type-II with s = sign(b), in1 = (-1)**u_sum * a,
                                      in2 = in3 = b

This is not a cycle or RTL simulator.  The hardware figures below are
documented estimates, used only for reporting.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Any, List, Optional, Tuple
from collections import Counter
from dataclasses import dataclass
from enum import Enum

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from hybrid_polar.codec import CodeSpec, is_power_of_two
from hybrid_polar.errors import PeModeError, CodeSpecError
from hybrid_polar.decoders.sc import ScKernels, sign, flip, sc_decode
from hybrid_polar.decoders.bp import (
    BpKernels,
    BpOutput,
    BpSettings,
    msg_type1,
    msg_type2,
    bp_decode,
)

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "PeMode",
    "PeConfig",
    "unified_type1",
    "unified_type2",
    "ScheduleDecoder",
    "StepKind",
    "Sweep",
    "ScheduleStep",
    "schedule_modes",
    "count_activations",
    "UnifiedDatapath",
    "bp_pe_count",
    "sc_pe_count",
    "CRITICAL_PATH_ADDERS",
    "SC_CRITICAL_PATH_ADDERS_BEFORE_RETIMING",
]


# -----------------------------------------------------------------------------
#
#                              CODE BEGINS
#
# -----------------------------------------------------------------------------

CRITICAL_PATH_ADDERS = 4
SC_CRITICAL_PATH_ADDERS_BEFORE_RETIMING = 15


def bp_pe_count(n: int) -> int:
    """one PE per butterfly per stage: n/2 * log2(n)."""
    return (n // 2) * (n.bit_length() - 1)


def sc_pe_count(n: int) -> int:
    return n


class PeMode(str, Enum):
    SC_F = "sc-f"
    SC_G = "sc-g"
    BP_TYPE1 = "bp-type1"
    BP_TYPE2 = "bp-type2"


@dataclass(frozen=True)
class PeConfig:
    mode: PeMode
    s: float = 1.0
    u_sum: Any = 0

    def __post_init__(self):
        if self.mode == PeMode.SC_F and self.s != 1.0:
            raise PeModeError(f"SC f mode requires s = 1, got {self.s}")


_SC_F_CONFIG = PeConfig(PeMode.SC_F)


def unified_type1(cfg: PeConfig, a, b, c=0.0):
    if cfg.mode == PeMode.SC_F:
        return msg_type1(1.0, a, b, 0.0)

    if cfg.mode == PeMode.BP_TYPE1:
        return msg_type1(cfg.s, a, b, c)

    raise PeModeError(f"Type-I block cannot run in mode {cfg.mode.value}")


def unified_type2(cfg: PeConfig, a, b, c=0.0):
    if cfg.mode == PeMode.SC_G:
        # s is the sign of the SC b operand, which also feeds in2 and in3.
        return msg_type2(sign(b), flip(a, cfg.u_sum), b, b)

    if cfg.mode == PeMode.BP_TYPE2:
        return msg_type2(cfg.s, a, b, c)

    raise PeModeError(f"Type-II block cannot run in mode {cfg.mode.value}")


# -----------------------------------------------------------------------------
#
#                              Mode schedules
#
# -----------------------------------------------------------------------------


class ScheduleDecoder(str, Enum):
    SC = "sc"
    BP = "bp"


class StepKind(str, Enum):
    COMPUTE = "compute"
    DECIDE = "decide"


class Sweep(str, Enum):
    RIGHT_TO_LEFT = "right-to-left"
    LEFT_TO_RIGHT = "left-to-right"


@dataclass(frozen=True)
class ScheduleStep:
    kind: StepKind
    stage: int = 0
    modes: Tuple[PeMode, ...] = ()
    activations: int = 0
    bit_index: Optional[int] = None
    sweep: Optional[Sweep] = None
    iteration: Optional[int] = None


def _sc_schedule(n: int) -> List[ScheduleStep]:
    m = n.bit_length() - 1
    steps = list()

    for index in range(n):
        if index == 0:
            top, use_g = m - 1, False
        else:
            top, use_g = (index & -index).bit_length() - 1, True

        for level in range(top, -1, -1):
            mode = PeMode.SC_G if (use_g and level == top) else PeMode.SC_F
            steps.append(
                ScheduleStep(
                    kind=StepKind.COMPUTE,
                    stage=level + 1,
                    modes=(mode,),
                    activations=1 << level,
                )
            )

        steps.append(ScheduleStep(kind=StepKind.DECIDE, bit_index=index))

    return steps


def _bp_schedule(n: int, iterations: int) -> List[ScheduleStep]:
    m = n.bit_length() - 1
    both = (PeMode.BP_TYPE1, PeMode.BP_TYPE2)
    steps = list()

    for iteration in range(1, iterations + 1):
        for sweep, stages in (
            (Sweep.RIGHT_TO_LEFT, range(m, 0, -1)),
            (Sweep.LEFT_TO_RIGHT, range(1, m + 1)),
        ):
            steps.extend(
                ScheduleStep(
                    kind=StepKind.COMPUTE,
                    stage=stage,
                    modes=both,
                    activations=n // 2,
                    sweep=sweep,
                    iteration=iteration,
                )
                for stage in stages
            )

    return steps


def schedule_modes(
    decoder: ScheduleDecoder, n: int, iterations: int = 1
) -> List[ScheduleStep]:
    """
    Produce the per-stage mode plan the control FSM steps through.

    Parameters
    ----------
    decoder:
        SC emits the serial f/g activation order, one DECIDE step per bit.
        BP emits the right-to-left then left-to-right stage sweeps.

    n:
        Block length, power of two.

    iterations:
        BP iterations to plan; ignored for SC.

    Returns
    -------
    The ordered schedule.  activations is the number of PEs each listed
    mode fires in that step.
    """
    if not is_power_of_two(n) or n < 2:
        raise CodeSpecError(f"block length {n} is not a power of two >= 2")

    if ScheduleDecoder(decoder) == ScheduleDecoder.SC:
        return _sc_schedule(n)

    return _bp_schedule(n, iterations)


def count_activations(steps: List[ScheduleStep]) -> Counter:
    totals = Counter()
    for step in steps:
        for mode in step.modes:
            totals[mode] += step.activations
    return totals


# -----------------------------------------------------------------------------
#
#                              Unified datapath
#
# -----------------------------------------------------------------------------


class UnifiedDatapath:
    """
    Runs complete SC and BP decodes with every node computation routed
    through the unified blocks, tallying PE activations per mode.
    """

    def __init__(self, settings: Optional[BpSettings] = None):
        self.settings = settings or BpSettings()
        self.activations: Counter = Counter()

    def reset(self):
        self.activations.clear()

    def _tally(self, mode: PeMode, result):
        self.activations[mode] += int(np.size(result))
        return result

    def _sc_f(self, a, b):
        return self._tally(PeMode.SC_F, unified_type1(_SC_F_CONFIG, a, b))

    def _sc_g(self, a, b, u_sum):
        cfg = PeConfig(PeMode.SC_G, u_sum=u_sum)
        return self._tally(PeMode.SC_G, unified_type2(cfg, a, b))

    def _bp_type1(self, s, in1, in2, in3):
        cfg = PeConfig(PeMode.BP_TYPE1, s=s)
        return self._tally(PeMode.BP_TYPE1, unified_type1(cfg, in1, in2, in3))

    def _bp_type2(self, s, in1, in2, in3):
        cfg = PeConfig(PeMode.BP_TYPE2, s=s)
        return self._tally(PeMode.BP_TYPE2, unified_type2(cfg, in1, in2, in3))

    @property
    def sc_kernels(self) -> ScKernels:
        return ScKernels(f=self._sc_f, g=self._sc_g)

    @property
    def bp_kernels(self) -> BpKernels:
        return BpKernels(type1=self._bp_type1, type2=self._bp_type2)

    def sc_decode(self, llrs, spec: CodeSpec) -> np.ndarray:
        return sc_decode(llrs, spec, kernels=self.sc_kernels)

    def bp_decode(
        self, llrs, spec: CodeSpec, max_iter: int, early_stop: bool = True
    ) -> BpOutput:
        return bp_decode(
            llrs,
            spec,
            max_iter,
            settings=self.settings,
            early_stop=early_stop,
            kernels=self.bp_kernels,
        )
