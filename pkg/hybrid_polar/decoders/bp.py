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
Min-sum belief propagation on the (m+1)-column polar factor graph.

Column 0 is the u side, column m the x side.  The butterfly between
column s and s+1 pairs index j with j + 2**s, where the right-hand node j
carries left[j] ^ left[j + 2**s] and node j + 2**s carries left[j + 2**s].
Every node update is one of two computations:

    Type-I   d = s * sign(in1) * sign(in2 + in3) * min(|in1|, |in2 + in3|)
    Type-II  d = in1 + s * sign(in2) * sign(in3) * min(|in2|, |in3|)
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Callable, NamedTuple, Optional, Tuple
from dataclasses import dataclass
from enum import Enum

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from hybrid_polar import DEFAULT_BP_SCALE, DEFAULT_SATURATION
from hybrid_polar.codec import CodeSpec, BitVector, polar_transform
from hybrid_polar.errors import ConfigError, DecoderStateError, FrameError
from hybrid_polar.decoders.sc import sign

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "msg_type1",
    "msg_type2",
    "BpSchedule",
    "DenoisedMode",
    "BpSettings",
    "BpKernels",
    "BpState",
    "BpOutput",
    "init_state",
    "bp_iteration",
    "decide",
    "stop_check",
    "extract_denoised",
    "bp_decode",
]


# -----------------------------------------------------------------------------
#
#                              CODE BEGINS
#
# -----------------------------------------------------------------------------


def msg_type1(s, in1, in2, in3):
    t = in2 + in3
    return s * sign(in1) * sign(t) * np.minimum(np.abs(in1), np.abs(t))


def msg_type2(s, in1, in2, in3):
    return in1 + s * sign(in2) * sign(in3) * np.minimum(np.abs(in2), np.abs(in3))


class BpKernels(NamedTuple):
    type1: Callable
    type2: Callable


DEFAULT_KERNELS = BpKernels(type1=msg_type1, type2=msg_type2)


class BpSchedule(str, Enum):
    """
    FLOODING updates every stage from the previous iteration's messages, so
    channel beliefs need m iterations to reach the u side.  ROUND_TRIP runs
    a right-to-left sweep then a left-to-right sweep, each stage reading the
    messages its neighbour produced earlier in the same iteration.
    """

    FLOODING = "flooding"
    ROUND_TRIP = "round-trip"


class DenoisedMode(str, Enum):
    TOTAL = "total"
    EXTRINSIC = "extrinsic"


@dataclass(frozen=True)
class BpSettings:
    scale: float = DEFAULT_BP_SCALE
    saturation: float = DEFAULT_SATURATION
    schedule: BpSchedule = BpSchedule.FLOODING
    denoised: DenoisedMode = DenoisedMode.TOTAL

    def __post_init__(self):
        if not 0.0 < self.scale <= 1.0:
            raise ConfigError(f"BP scale {self.scale} not in (0, 1]")

        if not self.saturation > 0.0:
            raise ConfigError(f"saturation bound must be positive, got {self.saturation}")

        try:
            object.__setattr__(self, "schedule", BpSchedule(self.schedule))
            object.__setattr__(self, "denoised", DenoisedMode(self.denoised))
        except ValueError as exc:
            raise ConfigError(str(exc))

    @property
    def frozen_prior(self) -> float:
        return 2.0 * self.saturation


@dataclass
class BpState:
    left_msgs: np.ndarray
    right_msgs: np.ndarray
    channel_llrs: np.ndarray
    iteration: int = 0


@dataclass(frozen=True)
class BpOutput:
    u_hat: BitVector
    x_hat: BitVector
    denoised_llrs: np.ndarray
    iterations_used: int
    stopped_early: bool


def init_state(llrs, spec: CodeSpec, settings: Optional[BpSettings] = None) -> BpState:
    """
    All messages start at zero except the pinned boundaries: the channel
    frame on the x side and the frozen priors on the u side.
    """
    settings = settings or BpSettings()
    llrs = np.asarray(llrs, dtype=np.float64)
    if llrs.shape != (spec.n,):
        raise FrameError(f"LLR frame length {llrs.size} does not match n={spec.n}")

    sat = settings.saturation
    left = np.zeros((spec.m + 1, spec.n))
    right = np.zeros((spec.m + 1, spec.n))
    left[spec.m] = np.clip(llrs, -sat, sat)
    right[0, spec.frozen] = min(settings.frozen_prior, sat)

    return BpState(left_msgs=left, right_msgs=right, channel_llrs=llrs.copy())


def _halves(row: np.ndarray, half: int) -> Tuple[np.ndarray, np.ndarray]:
    view = row.reshape(-1, 2, half)
    return view[:, 0, :], view[:, 1, :]


def _check_state(state: BpState, spec: CodeSpec):
    shape = (spec.m + 1, spec.n)
    if (
        not isinstance(state, BpState)
        or state.left_msgs.shape != shape
        or state.right_msgs.shape != shape
    ):
        raise DecoderStateError(f"BP state is not initialized for n={spec.n}")


def _left_stage(kernels, s, sat, stage, left_src, right_src, left_dst):
    half = 1 << stage
    l_top, l_bot = _halves(left_src[stage + 1], half)
    r_top, r_bot = _halves(right_src[stage], half)
    out_top, out_bot = _halves(left_dst[stage], half)
    out_top[...] = np.clip(kernels.type1(s, l_top, l_bot, r_bot), -sat, sat)
    out_bot[...] = np.clip(kernels.type2(s, l_bot, r_top, l_top), -sat, sat)


def _right_stage(kernels, s, sat, stage, left_src, right_src, right_dst):
    half = 1 << stage
    l_top, l_bot = _halves(left_src[stage + 1], half)
    r_top, r_bot = _halves(right_src[stage], half)
    out_top, out_bot = _halves(right_dst[stage + 1], half)
    out_top[...] = np.clip(kernels.type1(s, r_top, l_bot, r_bot), -sat, sat)
    out_bot[...] = np.clip(kernels.type2(s, r_bot, r_top, l_top), -sat, sat)


def bp_iteration(
    state: BpState,
    spec: CodeSpec,
    settings: Optional[BpSettings] = None,
    kernels: Optional[BpKernels] = None,
) -> BpState:
    """
    One BP iteration, updating the state in place and returning it.

    Under the flooding schedule every stage reads the messages left by the
    previous iteration.  Under the round-trip schedule a right-to-left sweep
    updates the left-propagating messages stage by stage, then a
    left-to-right sweep updates the right-propagating messages.  Both
    schedules activate the same 2 * m * n/2 node updates per iteration.
    """
    _check_state(state, spec)
    settings = settings or BpSettings()
    kernels = kernels or DEFAULT_KERNELS
    s, sat = settings.scale, settings.saturation
    left, right = state.left_msgs, state.right_msgs

    if settings.schedule is BpSchedule.FLOODING:
        old_left, old_right = left.copy(), right.copy()
        for stage in range(spec.m):
            _left_stage(kernels, s, sat, stage, old_left, old_right, left)
            _right_stage(kernels, s, sat, stage, old_left, old_right, right)
    else:
        for stage in reversed(range(spec.m)):
            _left_stage(kernels, s, sat, stage, left, right, left)
        for stage in range(spec.m):
            _right_stage(kernels, s, sat, stage, left, right, right)

    state.iteration += 1
    return state


def extract_denoised(
    state: BpState, spec: CodeSpec, settings: Optional[BpSettings] = None
) -> np.ndarray:
    """
    The x-side soft output handed to SC.  TOTAL is the channel LLR plus the
    extrinsic message arriving at column m; EXTRINSIC is that message alone.
    """
    _check_state(state, spec)
    if state.iteration < 1:
        raise DecoderStateError("denoised LLRs requested before any BP iteration")

    settings = settings or BpSettings()
    if settings.denoised is DenoisedMode.EXTRINSIC:
        return state.right_msgs[spec.m].copy()

    return state.channel_llrs + state.right_msgs[spec.m]


def decide(state: BpState, spec: CodeSpec) -> Tuple[BitVector, BitVector]:
    """Hard decisions at both ends of the graph: (u_hat, x_hat)."""
    u_llrs = state.left_msgs[0] + state.right_msgs[0]
    u_hat = (u_llrs < 0).astype(np.uint8)
    u_hat[spec.frozen] = 0
    # x side always decides on the total belief, whatever is handed to SC
    x_hat = (extract_denoised(state, spec) < 0).astype(np.uint8)
    return u_hat, x_hat


def stop_check(u_hat, x_hat, spec: CodeSpec) -> bool:
    """G-matrix criterion: the re-encoded u-side decisions equal the x side."""
    u_hat, x_hat = np.asarray(u_hat), np.asarray(x_hat)
    if u_hat.shape != (spec.n,) or x_hat.shape != (spec.n,):
        raise FrameError(
            f"stop check lengths {u_hat.size}/{x_hat.size} do not match n={spec.n}"
        )

    return bool(np.array_equal(polar_transform(u_hat), x_hat))


def bp_decode(
    llrs,
    spec: CodeSpec,
    max_iter: int,
    settings: Optional[BpSettings] = None,
    early_stop: bool = True,
    kernels: Optional[BpKernels] = None,
) -> BpOutput:
    """
    Run up to max_iter BP iterations.  With early_stop the G-matrix check
    runs after every iteration and decoding ends on the first success;
    without it exactly max_iter iterations are run.
    """
    if max_iter < 1:
        raise ConfigError(f"max_iter must be >= 1, got {max_iter}")

    state = init_state(llrs, spec, settings)

    for _ in range(max_iter):
        bp_iteration(state, spec, settings, kernels)
        if early_stop:
            u_hat, x_hat = decide(state, spec)
            if stop_check(u_hat, x_hat, spec):
                return BpOutput(
                    u_hat=u_hat,
                    x_hat=x_hat,
                    denoised_llrs=extract_denoised(state, spec, settings),
                    iterations_used=state.iteration,
                    stopped_early=True,
                )

    u_hat, x_hat = decide(state, spec)
    return BpOutput(
        u_hat=u_hat,
        x_hat=x_hat,
        denoised_llrs=extract_denoised(state, spec, settings),
        iterations_used=max_iter,
        stopped_early=False,
    )
