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
Bit-serial successive-cancellation decoding over the m-stage butterfly.

The LLR scratch memory is one array per level: level l holds 2**l values
and level m is the channel frame.  Deciding u_i only recomputes the levels
below the most significant changed bit of i, so a full decode performs
2(n - 1) node-vector evaluations and keeps O(n) LLRs.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Callable, List, NamedTuple, Optional
from dataclasses import dataclass, field

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from hybrid_polar.codec import CodeSpec, BitVector
from hybrid_polar.errors import FrameError

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "sign",
    "flip",
    "f_node",
    "g_node",
    "hard_decision",
    "ScKernels",
    "ScState",
    "init_sc_state",
    "sc_decode",
]


# -----------------------------------------------------------------------------
#
#                              CODE BEGINS
#
# -----------------------------------------------------------------------------


def sign(x):
    """sign() with sign(0) = +1, matching two's-complement hardware."""
    return np.where(np.asarray(x) < 0, -1.0, 1.0)


def flip(a, u_sum):
    """Return a * (-1)**u_sum."""
    return np.where(np.asarray(u_sum) != 0, -np.asarray(a), a)


def f_node(a, b):
    return sign(a) * sign(b) * np.minimum(np.abs(a), np.abs(b))


def g_node(a, b, u_sum):
    return flip(a, u_sum) + b


def hard_decision(llr: float, index: int, spec: CodeSpec) -> int:
    if spec.frozen[index]:
        return 0
    return 0 if llr >= 0 else 1


class ScKernels(NamedTuple):
    f: Callable
    g: Callable


DEFAULT_KERNELS = ScKernels(f=f_node, g=g_node)


@dataclass
class ScState:
    llr_stages: List[np.ndarray]
    partial_sums: List[Optional[np.ndarray]]
    u_hat: np.ndarray
    next_index: int = 0
    m: int = field(init=False)

    def __post_init__(self):
        self.m = len(self.llr_stages) - 1

    @property
    def done(self) -> bool:
        return self.next_index == self.u_hat.size


def init_sc_state(llrs, spec: CodeSpec) -> ScState:
    llrs = np.asarray(llrs, dtype=np.float64)
    if llrs.shape != (spec.n,):
        raise FrameError(f"LLR frame length {llrs.size} does not match n={spec.n}")

    stages = [np.zeros(1 << level) for level in range(spec.m)]
    stages.append(llrs.copy())

    return ScState(
        llr_stages=stages,
        partial_sums=[None] * spec.m,
        u_hat=np.zeros(spec.n, dtype=np.uint8),
    )


def _refresh_llrs(state: ScState, kernels: ScKernels):
    index = state.next_index
    stages = state.llr_stages

    # the first bit walks f all the way down; every later bit starts with a
    # g at the level of its lowest set bit, then f down to the leaf.

    if index == 0:
        top, use_g = state.m - 1, False
    else:
        top, use_g = (index & -index).bit_length() - 1, True

    for level in range(top, -1, -1):
        parent = stages[level + 1]
        half = 1 << level
        a, b = parent[:half], parent[half:]
        if use_g and level == top:
            stages[level][:] = kernels.g(a, b, state.partial_sums[level])
        else:
            stages[level][:] = kernels.f(a, b)


def _commit_bit(state: ScState, bit: int):
    index = state.next_index
    state.u_hat[index] = bit

    # fold the decided bit into the partial sums of every subtree it closes.

    psum = np.array([bit], dtype=np.uint8)
    level = 0
    while (index >> level) & 1:
        psum = np.concatenate((state.partial_sums[level] ^ psum, psum))
        level += 1

    if level < state.m:
        state.partial_sums[level] = psum

    state.next_index += 1


def sc_decode(
    llrs, spec: CodeSpec, kernels: Optional[ScKernels] = None
) -> BitVector:
    """
    Decide u_0 .. u_{n-1} in index order and return the full u-vector;
    frozen positions are forced to zero.

    Parameters
    ----------
    llrs:
        Length-n channel (or denoised) LLR frame, positive favours bit 0.

    spec:
        The code specification.

    kernels:
        Optional f/g node implementations; defaults to f_node/g_node.
    """
    kernels = kernels or DEFAULT_KERNELS
    state = init_sc_state(llrs, spec)

    while not state.done:
        _refresh_llrs(state, kernels)
        _commit_bit(
            state, hard_decision(state.llr_stages[0][0], state.next_index, spec)
        )

    return state.u_hat
