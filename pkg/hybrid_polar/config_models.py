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

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Any, Dict, List, Optional, Union
from pathlib import Path

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from hybrid_polar import (
    DEFAULT_Z0,
    DEFAULT_MAX_ITER,
    DEFAULT_BP_SCALE,
    DEFAULT_SATURATION,
    DEFAULT_SC_OUTPUT_BITS_LOG2,
)
from hybrid_polar.codec import (
    CodeSpec,
    construct_frozen_set,
    load_frozen_file,
    is_power_of_two,
)
from hybrid_polar.errors import ConfigError
from hybrid_polar.decoders import DecoderKind
from hybrid_polar.decoders.bp import BpSchedule, BpSettings, DenoisedMode
from hybrid_polar.decoders.hybrid import LatencyParams

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "DecoderVariant",
    "ExperimentConfig",
    "parse_snr_points",
    "parse_decoders",
    "load_config_file",
    "normalize_keys",
    "make_config",
]


# -----------------------------------------------------------------------------
#
#                              CODE BEGINS
#
# -----------------------------------------------------------------------------

DEFAULT_SNR_RANGE = "1.0:4.0:0.5"
DEFAULT_DECODERS = "sc,bp-es,hybrid"

# config-file / CLI flag names that differ from the model field names.
_KEY_ALIASES = {"snr": "snr_points", "out": "output_path", "config": None}


class DecoderVariant(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: DecoderKind
    max_iter: Optional[int] = None

    @model_validator(mode="after")
    def _check_iterations(self):
        if self.kind == DecoderKind.SC:
            if self.max_iter is not None:
                raise ValueError("the sc decoder takes no iteration count")
        elif self.max_iter is None or self.max_iter < 1:
            raise ValueError(f"{self.kind.value} requires max_iter >= 1")
        return self

    @property
    def label(self) -> str:
        if self.kind == DecoderKind.SC:
            return self.kind.value
        return f"{self.kind.value}-{self.max_iter}"

    @classmethod
    def parse(cls, text: str, default_max_iter: int = DEFAULT_MAX_ITER):
        """Parse 'sc', 'bp', 'bp-es:315', 'hybrid' and the like."""
        name, _, count = text.strip().lower().partition(":")
        kind = DecoderKind(name)
        if kind == DecoderKind.SC:
            return cls(kind=kind, max_iter=int(count) if count else None)

        return cls(kind=kind, max_iter=int(count) if count else default_max_iter)

    @classmethod
    def from_label(cls, label: str):
        """Inverse of .label, e.g. 'hybrid-60'."""
        name, _, count = label.rpartition("-")
        if name and count.isdigit():
            return cls.parse(f"{name}:{count}")
        return cls.parse(label)


def parse_snr_points(value: Union[str, float, List[float]]) -> List[float]:
    """
    Accept a number, a list of numbers, a comma list "1.0,2.5" or an
    inclusive range "a:b:step".
    """
    if isinstance(value, (int, float)):
        return [float(value)]

    if not isinstance(value, str):
        return [float(item) for item in value]

    text = value.strip()
    if ":" in text:
        start, stop, step = (float(part) for part in text.split(":"))
        if step <= 0 or stop < start:
            raise ValueError(f"invalid SNR range {text!r}")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 6) for i in range(count)]

    return [float(part) for part in text.split(",") if part.strip()]


def parse_decoders(value, default_max_iter: int) -> List[DecoderVariant]:
    if isinstance(value, str):
        value = [part for part in value.split(",") if part.strip()]

    variants = list()
    for item in value:
        if isinstance(item, str):
            item = DecoderVariant.parse(item, default_max_iter)
        elif isinstance(item, dict):
            item = DecoderVariant(**item)
        variants.append(item)

    return variants


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = 1024
    k: int = 512
    z0: float = DEFAULT_Z0
    snr_points: List[float]
    decoders: List[DecoderVariant]
    max_iter: int = Field(DEFAULT_MAX_ITER, ge=1)
    min_frame_errors: int = Field(100, ge=1)
    max_frames: int = Field(10_000_000, ge=1)
    seed: int = Field(0, ge=0)
    output_path: Path = Path("sweep.csv")
    frozen_file: Optional[Path] = None
    bp_scale: float = Field(DEFAULT_BP_SCALE, gt=0.0, le=1.0)
    saturation: float = Field(DEFAULT_SATURATION, gt=0.0)
    bp_schedule: BpSchedule = BpSchedule.FLOODING
    denoised: DenoisedMode = DenoisedMode.TOTAL
    sc_output_bits_log2: int = Field(DEFAULT_SC_OUTPUT_BITS_LOG2, ge=2)
    noiseless: bool = False
    workers: int = Field(1, ge=1)
    batch_frames: int = Field(64, ge=1)

    @model_validator(mode="before")
    @classmethod
    def _parse_lists(cls, data: Any):
        if not isinstance(data, dict):
            return data

        data = dict(data)
        max_iter = int(data.get("max_iter") or DEFAULT_MAX_ITER)
        data["snr_points"] = parse_snr_points(data.get("snr_points", DEFAULT_SNR_RANGE))
        data["decoders"] = parse_decoders(
            data.get("decoders", DEFAULT_DECODERS), max_iter
        )
        return data

    @field_validator("snr_points")
    @classmethod
    def _snr_not_empty(cls, value):
        if not value:
            raise ValueError("at least one SNR point is required")
        return value

    @field_validator("decoders")
    @classmethod
    def _decoders_not_empty(cls, value):
        if not value:
            raise ValueError("at least one decoder is required")
        return value

    @model_validator(mode="after")
    def _check_dimensions(self):
        if self.max_frames < self.min_frame_errors:
            raise ValueError(
                f"max_frames {self.max_frames} < min_frame_errors {self.min_frame_errors}"
            )

        if self.frozen_file is None:
            if not is_power_of_two(self.n):
                raise ValueError(f"n={self.n} is not a power of two")
            if not 1 <= self.k <= self.n:
                raise ValueError(f"k={self.k} out of range [1, {self.n}]")
            if not 0.0 < self.z0 < 1.0:
                raise ValueError(f"z0={self.z0} not in (0, 1)")

        return self

    def code_spec(self) -> CodeSpec:
        if self.frozen_file is not None:
            return load_frozen_file(self.frozen_file)
        return construct_frozen_set(self.n, self.k, self.z0)

    def bp_settings(self) -> BpSettings:
        return BpSettings(
            scale=self.bp_scale,
            saturation=self.saturation,
            schedule=self.bp_schedule,
            denoised=self.denoised,
        )

    def latency_params(self, spec: CodeSpec) -> LatencyParams:
        return LatencyParams.for_spec(spec, self.sc_output_bits_log2)


# -----------------------------------------------------------------------------
#
#                              Config file / flags
#
# -----------------------------------------------------------------------------


def normalize_keys(data: Dict) -> Dict:
    """Map flag-style keys (dashes, short aliases) onto model field names."""
    normalized = dict()
    for key, value in data.items():
        key = key.strip().lstrip("-").replace("-", "_")
        key = _KEY_ALIASES.get(key, key)
        if key is not None:
            normalized[key] = value
    return normalized


def load_config_file(path: Union[str, Path]) -> Dict:
    try:
        with open(path) as ifile:
            body = yaml.safe_load(ifile) or {}
    except OSError as exc:
        raise ConfigError(f"unable to read config file {path}: {exc.strerror}")
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed config file {path}: {exc}")

    if not isinstance(body, dict):
        raise ConfigError(f"config file {path} must hold a key: value mapping")

    return normalize_keys(body)


def make_config(
    file_data: Optional[Dict] = None, **flags
) -> ExperimentConfig:
    """
    Build the experiment config: file values first, then any flag that was
    given (None means not given), then the model defaults.
    """
    data = dict(file_data or {})
    data.update(normalize_keys({k: v for k, v in flags.items() if v is not None}))

    try:
        return ExperimentConfig(**data)
    except (ValidationError, ValueError) as exc:
        raise ConfigError(f"invalid experiment configuration: {exc}")
