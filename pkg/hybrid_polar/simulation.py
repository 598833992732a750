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

from typing import Callable, Dict, List, Optional, Tuple
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
import asyncio
import csv

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
from scipy.stats import beta

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from hybrid_polar.codec import CodeSpec, encode, insert_info_bits
from hybrid_polar.channel import (
    ebn0_to_sigma2,
    modulate_bpsk,
    add_awgn,
    llr_from_observation,
)
from hybrid_polar.config_models import ExperimentConfig, DecoderVariant
from hybrid_polar.decoders import decode_frame
from hybrid_polar.decoders.bp import BpSettings
from hybrid_polar.decoders.hybrid import LatencyParams
from hybrid_polar.errors import ConfigError
from hybrid_polar.log import get_logger

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "CSV_COLUMNS",
    "TrialStats",
    "PointJob",
    "trial_rng",
    "simulate_frame",
    "run_batch",
    "run_point",
    "run_experiment",
    "write_csv",
    "read_csv",
    "format_summary",
]


# -----------------------------------------------------------------------------
#
#                              CODE BEGINS
#
# -----------------------------------------------------------------------------

CSV_COLUMNS = [
    "decoder",
    "snr_db",
    "frames",
    "frame_errors",
    "bit_errors",
    "fer",
    "ber",
    "mean_iterations",
    "mean_cycles",
    "worst_cycles",
]


@dataclass
class TrialStats:
    decoder: str
    snr_db: float
    k: int
    frames: int = 0
    frame_errors: int = 0
    bit_errors: int = 0
    total_iterations: int = 0
    total_cycles: int = 0
    worst_cycles: int = 0

    def add(self, bit_errors: int, iterations: int, cycles: int):
        self.frames += 1
        self.bit_errors += bit_errors
        self.frame_errors += int(bit_errors > 0)
        self.total_iterations += iterations
        self.total_cycles += cycles
        self.worst_cycles = max(self.worst_cycles, cycles)

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames * self.k) if self.frames else 0.0

    @property
    def mean_iterations(self) -> float:
        return self.total_iterations / self.frames if self.frames else 0.0

    @property
    def mean_cycles(self) -> float:
        return self.total_cycles / self.frames if self.frames else 0.0

    def fer_interval(self, confidence: float = 0.95) -> Tuple[float, float]:
        """Clopper-Pearson interval on the frame error rate."""
        alpha = 1.0 - confidence
        errs, frames = self.frame_errors, self.frames
        if not frames:
            return 0.0, 1.0

        low = beta.ppf(alpha / 2, errs, frames - errs + 1) if errs else 0.0
        high = (
            beta.ppf(1 - alpha / 2, errs + 1, frames - errs)
            if errs < frames
            else 1.0
        )
        return float(low), float(high)

    def as_dict(self) -> Dict[str, str]:
        return dict(
            decoder=self.decoder,
            snr_db=f"{self.snr_db:g}",
            frames=str(self.frames),
            frame_errors=str(self.frame_errors),
            bit_errors=str(self.bit_errors),
            fer=f"{self.fer:.6e}",
            ber=f"{self.ber:.6e}",
            mean_iterations=f"{self.mean_iterations:.4f}",
            mean_cycles=f"{self.mean_cycles:.4f}",
            worst_cycles=str(self.worst_cycles),
        )


# -----------------------------------------------------------------------------
#
#                              Trials
#
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class PointJob:
    spec: CodeSpec
    variant: DecoderVariant
    snr_db: float
    seed: int
    settings: BpSettings
    latency: LatencyParams
    noiseless: bool = False


def _snr_key(snr_db: float) -> int:
    # seed entropy must be non-negative; milli-dB resolution.
    return int(round((snr_db + 1000.0) * 1000))


def trial_rng(seed: int, snr_db: float, trial: int) -> np.random.Generator:
    """
    The generator of one trial depends only on the master seed, the SNR
    point and the trial index; every decoder sees the same frames and the
    result does not depend on which worker ran the trial.
    """
    return np.random.default_rng([seed, _snr_key(snr_db), trial])


def simulate_frame(job: PointJob, trial: int) -> Tuple[int, int, int]:
    """Run one trial, return (bit errors, BP iterations, cycles)."""
    spec = job.spec
    rng = trial_rng(job.seed, job.snr_db, trial)

    info = rng.integers(0, 2, size=spec.k, dtype=np.uint8)
    symbols = modulate_bpsk(encode(insert_info_bits(info, spec), spec))
    sigma2 = ebn0_to_sigma2(job.snr_db, spec.rate)
    received = symbols if job.noiseless else add_awgn(symbols, sigma2, rng)
    llrs = llr_from_observation(received, sigma2)

    outcome = decode_frame(
        job.variant.kind,
        llrs,
        spec,
        max_iter=job.variant.max_iter or 1,
        settings=job.settings,
        latency=job.latency,
    )

    return (
        int(np.count_nonzero(outcome.info_hat != info)),
        outcome.iterations,
        outcome.cycles,
    )


def run_batch(job: PointJob, start: int, count: int) -> np.ndarray:
    """Trials [start, start + count) as an int64 array of shape (count, 3)."""
    return np.array(
        [simulate_frame(job, trial) for trial in range(start, start + count)],
        dtype=np.int64,
    ).reshape(count, 3)


async def run_point(
    cfg: ExperimentConfig,
    variant: DecoderVariant,
    snr_db: float,
    spec: Optional[CodeSpec] = None,
    executor: Optional[Executor] = None,
) -> TrialStats:
    """
    Simulate one (decoder, SNR) point until min_frame_errors frame errors
    or max_frames frames.

    Parameters
    ----------
    cfg:
        The experiment configuration.

    variant:
        Decoder variant to simulate.

    snr_db:
        Eb/N0 in dB.

    spec:
        Code specification; built from cfg when not given.

    executor:
        Optional process pool.  Work units are dispatched in waves of
        cfg.workers batches and gathered; without an executor batches run
        inline.

    Returns
    -------
    The aggregated statistics.  Trials are folded in index order and the
    point ends at the exact trial reaching min_frame_errors, so the result
    is the same for any worker count.
    """
    log = get_logger()
    spec = spec or cfg.code_spec()
    job = PointJob(
        spec=spec,
        variant=variant,
        snr_db=snr_db,
        seed=cfg.seed,
        settings=cfg.bp_settings(),
        latency=cfg.latency_params(spec),
        noiseless=cfg.noiseless,
    )
    stats = TrialStats(decoder=variant.label, snr_db=snr_db, k=spec.k)
    loop = asyncio.get_running_loop()
    next_trial = 0

    log.info(f"Simulating {variant.label} at {snr_db:g} dB ...")

    while next_trial < cfg.max_frames:
        units = list()
        for _ in range(cfg.workers):
            if next_trial >= cfg.max_frames:
                break
            count = min(cfg.batch_frames, cfg.max_frames - next_trial)
            units.append((next_trial, count))
            next_trial += count

        if executor is None:
            blocks = [run_batch(job, start, count) for start, count in units]
        else:
            blocks = await asyncio.gather(
                *(
                    loop.run_in_executor(executor, run_batch, job, start, count)
                    for start, count in units
                )
            )

        for bit_errors, iterations, cycles in np.concatenate(blocks):
            stats.add(int(bit_errors), int(iterations), int(cycles))
            if stats.frame_errors >= cfg.min_frame_errors:
                log.info(
                    f"Simulated {variant.label} at {snr_db:g} dB: "
                    f"{stats.frames} frames, FER {stats.fer:.3e}"
                )
                return stats

    log.info(
        f"Simulated {variant.label} at {snr_db:g} dB: frame cap reached, "
        f"{stats.frame_errors} frame errors"
    )
    return stats


# -----------------------------------------------------------------------------
#
#                              Experiment
#
# -----------------------------------------------------------------------------


def write_csv(rows: List[TrialStats], path: Path):
    with open(path, "w", newline="") as ofile:
        writer = csv.DictWriter(ofile, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(row.as_dict() for row in rows)


def read_csv(path: Path) -> List[Dict[str, str]]:
    try:
        with open(path, newline="") as ifile:
            return list(csv.DictReader(ifile))
    except OSError as exc:
        raise ConfigError(f"unable to read sweep CSV {path}: {exc.strerror}")


def format_summary(rows: List[TrialStats]) -> str:
    lines = [
        f"{'decoder':<14}{'snr_db':>8}{'frames':>10}{'fer':>12}{'ber':>12}"
        f"{'iters':>8}{'cycles':>10}{'worst':>7}"
    ]
    lines.extend(
        f"{row.decoder:<14}{row.snr_db:>8g}{row.frames:>10}{row.fer:>12.3e}"
        f"{row.ber:>12.3e}{row.mean_iterations:>8.2f}{row.mean_cycles:>10.1f}"
        f"{row.worst_cycles:>7}"
        for row in rows
    )
    return "\n".join(lines)


def _check_writable(path: Path):
    # append mode: an existing CSV is left untouched until the sweep completes
    try:
        with open(path, "a"):
            pass
    except OSError as exc:
        raise ConfigError(f"unable to write output {path}: {exc.strerror}")


async def run_experiment(
    cfg: ExperimentConfig, echo: Optional[Callable[[str], None]] = print
) -> List[TrialStats]:
    """
    Evaluate every (decoder, SNR) pair, write the CSV to cfg.output_path and
    echo a summary table.
    """
    log = get_logger()
    _check_writable(cfg.output_path)

    spec = cfg.code_spec()
    executor = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    rows = list()

    try:
        for variant in cfg.decoders:
            for snr_db in cfg.snr_points:
                rows.append(
                    await run_point(cfg, variant, snr_db, spec=spec, executor=executor)
                )
    finally:
        if executor is not None:
            executor.shutdown()

    write_csv(rows, cfg.output_path)
    log.info(f"Wrote {len(rows)} rows to {cfg.output_path}")

    if echo:
        echo(format_summary(rows))

    return rows
