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
Polar code specification, frozen-set construction and the natural-order
polar transform x = uG, G = F^(x)m with F = [[1, 0], [1, 1]].  No
bit-reversal permutation is applied anywhere in this package; the encoder,
the SC schedule and the BP factor graph all share this index convention.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Union, Sequence
from dataclasses import dataclass
from pathlib import Path

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from hybrid_polar import DEFAULT_Z0
from hybrid_polar.errors import CodeSpecError, FrameError

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "CodeSpec",
    "BitVector",
    "is_power_of_two",
    "bhattacharyya",
    "construct_frozen_set",
    "polar_transform",
    "encode",
    "insert_info_bits",
    "extract_info_bits",
    "load_frozen_file",
    "save_frozen_file",
]


# -----------------------------------------------------------------------------
#
#                              CODE BEGINS
#
# -----------------------------------------------------------------------------

BitVector = np.ndarray
BitsLike = Union[np.ndarray, Sequence[int]]


def is_power_of_two(n) -> bool:
    return isinstance(n, (int, np.integer)) and n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True, eq=False)
class CodeSpec:
    n: int
    k: int
    frozen: np.ndarray
    design_param: float = DEFAULT_Z0

    def __post_init__(self):
        if not is_power_of_two(self.n):
            raise CodeSpecError(f"block length {self.n} is not a power of two")

        if not 1 <= self.k <= self.n:
            raise CodeSpecError(f"info length {self.k} out of range [1, {self.n}]")

        mask = np.array(self.frozen, dtype=bool)
        if mask.shape != (self.n,):
            raise CodeSpecError(
                f"frozen mask length {mask.size} does not match n={self.n}"
            )

        if (n_frozen := int(mask.sum())) != self.n - self.k:
            raise CodeSpecError(
                f"frozen mask has {n_frozen} frozen positions, expected {self.n - self.k}"
            )

        mask.setflags(write=False)
        object.__setattr__(self, "frozen", mask)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "k", int(self.k))

    @classmethod
    def from_mask(cls, mask: BitsLike, design_param: float = DEFAULT_Z0) -> "CodeSpec":
        mask = np.asarray(mask, dtype=bool)
        return cls(
            n=mask.size,
            k=int(mask.size - mask.sum()),
            frozen=mask,
            design_param=design_param,
        )

    @property
    def m(self) -> int:
        return self.n.bit_length() - 1

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def free_indices(self) -> np.ndarray:
        return np.flatnonzero(~self.frozen)

    @property
    def frozen_indices(self) -> np.ndarray:
        return np.flatnonzero(self.frozen)

    def __eq__(self, other):
        if not isinstance(other, CodeSpec):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and np.array_equal(self.frozen, other.frozen)
        )

    def __repr__(self):
        return f"CodeSpec(n={self.n}, k={self.k}, design_param={self.design_param})"


# -----------------------------------------------------------------------------
#
#                              Construction
#
# -----------------------------------------------------------------------------


def bhattacharyya(n: int, z0: float) -> np.ndarray:
    """
    Bhattacharyya parameters of the n synthesized bit-channels, natural
    order.  Each recursion step replaces Z by the pair (2Z - Z^2, Z^2); the
    first step corresponds to the most significant bit of the u index.
    """
    if not is_power_of_two(n):
        raise CodeSpecError(f"block length {n} is not a power of two")

    if not 0.0 < z0 < 1.0:
        raise CodeSpecError(f"initial Bhattacharyya value {z0} not in (0, 1)")

    z = np.array([z0], dtype=np.float64)
    while z.size < n:
        nxt = np.empty(2 * z.size, dtype=np.float64)
        nxt[0::2] = 2.0 * z - z * z
        nxt[1::2] = z * z
        z = nxt

    return z


def construct_frozen_set(n: int, k: int, z0: float = DEFAULT_Z0) -> CodeSpec:
    """
    Freeze the n - k bit-channels with the largest Bhattacharyya parameter.
    On equal Z the lower index is frozen first.
    """
    z = bhattacharyya(n, z0)

    if not 1 <= k <= n:
        raise CodeSpecError(f"info length {k} out of range [1, {n}]")

    # lexsort sorts by the last key first: descending Z, then ascending index.
    order = np.lexsort((np.arange(n), -z))
    frozen = np.zeros(n, dtype=bool)
    frozen[order[: n - k]] = True

    return CodeSpec(n=n, k=k, frozen=frozen, design_param=float(z0))


# -----------------------------------------------------------------------------
#
#                              Encoding
#
# -----------------------------------------------------------------------------


def _as_bits(bits: BitsLike, n: int, what: str) -> np.ndarray:
    arr = np.asarray(bits)
    if arr.shape != (n,):
        raise FrameError(f"{what} length {arr.size} does not match n={n}")

    if np.any((arr != 0) & (arr != 1)):
        raise FrameError(f"{what} contains values other than 0/1")

    return arr.astype(np.uint8)


def polar_transform(bits: BitsLike) -> np.ndarray:
    """
    Return bits * F^(x)m over GF(2) using the in-place butterfly; the
    transform is its own inverse.
    """
    x = np.array(bits, dtype=np.uint8)
    if not is_power_of_two(x.size):
        raise FrameError(f"transform length {x.size} is not a power of two")

    half = 1
    while half < x.size:
        view = x.reshape(-1, 2, half)
        view[:, 0, :] ^= view[:, 1, :]
        half *= 2

    return x


def encode(u: BitsLike, spec: CodeSpec) -> BitVector:
    u = _as_bits(u, spec.n, "u")
    if np.any(u[spec.frozen]):
        bad = np.flatnonzero(u.astype(bool) & spec.frozen)
        raise FrameError(f"nonzero value at frozen positions {bad.tolist()[:8]}")

    return polar_transform(u)


def insert_info_bits(info: BitsLike, spec: CodeSpec) -> BitVector:
    info = np.asarray(info)
    if info.shape != (spec.k,):
        raise FrameError(f"info length {info.size} does not match k={spec.k}")

    u = np.zeros(spec.n, dtype=np.uint8)
    u[spec.free_indices] = info
    return u


def extract_info_bits(u: BitsLike, spec: CodeSpec) -> np.ndarray:
    u = np.asarray(u)
    if u.shape != (spec.n,):
        raise FrameError(f"u length {u.size} does not match n={spec.n}")

    return u[spec.free_indices].astype(np.uint8)


# -----------------------------------------------------------------------------
#
#                              Frozen-mask file
#
# -----------------------------------------------------------------------------


def save_frozen_file(spec: CodeSpec, path: Union[str, Path]):
    Path(path).write_text(format_frozen_mask(spec), encoding="ascii")


def format_frozen_mask(spec: CodeSpec) -> str:
    mask = "".join("1" if flag else "0" for flag in spec.frozen)
    return f"{spec.n} {spec.k}\n{mask}\n"


def load_frozen_file(path: Union[str, Path]) -> CodeSpec:
    """
    Read the two-line mask file: "n k", then the n-character 0/1 mask.  A
    trailing newline is allowed; any other content is rejected.
    """
    try:
        lines = Path(path).read_text(encoding="ascii").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise CodeSpecError(f"unable to read frozen file {path}: {exc}")

    header = lines[0].split(" ") if lines else []
    if len(lines) != 2 or len(header) != 2:
        raise CodeSpecError(f"malformed frozen file {path}")

    try:
        n, k = int(header[0]), int(header[1])
    except ValueError:
        raise CodeSpecError(f"malformed frozen file {path}: header {lines[0]!r}")

    mask = lines[1]
    if len(mask) != n or set(mask) - {"0", "1"}:
        raise CodeSpecError(f"frozen file {path}: mask does not match n={n}")

    spec = CodeSpec.from_mask([ch == "1" for ch in mask], design_param=float("nan"))
    if spec.k != k:
        raise CodeSpecError(f"frozen file {path}: header k={k}, mask k={spec.k}")

    return spec
