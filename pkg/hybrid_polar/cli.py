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

import asyncio
import sys

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import click
import numpy as np

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
    construct_frozen_set,
    load_frozen_file,
    save_frozen_file,
    format_frozen_mask,
)
from hybrid_polar.config_models import DecoderVariant, load_config_file, make_config
from hybrid_polar.decoders import decode_frame
from hybrid_polar.decoders.bp import BpSchedule, BpSettings, DenoisedMode
from hybrid_polar.decoders.hybrid import LatencyParams
from hybrid_polar.errors import PolarError, FrameError
from hybrid_polar.hardware import hardware_table, format_hardware_table
from hybrid_polar.log import setup_logging
from hybrid_polar.simulation import run_experiment, read_csv

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["cli", "main"]


# -----------------------------------------------------------------------------
#
#                                 CLI
#
# -----------------------------------------------------------------------------

_SCHEDULES = [mode.value for mode in BpSchedule]
_DENOISED = [mode.value for mode in DenoisedMode]


def _code_spec(frozen_file, n, k, z0):
    if frozen_file:
        return load_frozen_file(frozen_file)
    return construct_frozen_set(n, k, z0)


@click.group()
@click.option(
    "--log-level",
    default="WARNING",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
)
def cli(log_level):
    setup_logging(log_level)


@cli.command()
@click.option("--n", type=int, default=1024, help="block length")
@click.option("--k", type=int, default=512, help="information length")
@click.option("--z0", type=float, default=DEFAULT_Z0, help="initial Bhattacharyya value")
@click.option("--out", type=click.Path(dir_okay=False), help="frozen-mask file")
def construct(n, k, z0, out):
    """Construct a code and emit its frozen-mask file."""
    spec = construct_frozen_set(n, k, z0)
    if out:
        save_frozen_file(spec, out)
        click.echo(f"OK: wrote ({spec.n}, {spec.k}) frozen mask to {out}")
    else:
        click.echo(format_frozen_mask(spec), nl=False)


@cli.command()
@click.option(
    "--llr-file",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="whitespace separated channel LLRs",
)
@click.option("--frozen-file", type=click.Path(exists=True, dir_okay=False))
@click.option("--n", type=int, default=1024)
@click.option("--k", type=int, default=512)
@click.option("--z0", type=float, default=DEFAULT_Z0)
@click.option("--decoder", default="hybrid", help="sc, bp, bp-es or hybrid")
@click.option("--max-iter", type=int, default=DEFAULT_MAX_ITER)
@click.option("--bp-scale", type=float, default=DEFAULT_BP_SCALE)
@click.option("--saturation", type=float, default=DEFAULT_SATURATION)
@click.option(
    "--bp-schedule",
    type=click.Choice(_SCHEDULES),
    default=BpSchedule.FLOODING.value,
    show_default=True,
)
@click.option(
    "--denoised",
    type=click.Choice(_DENOISED),
    default=DenoisedMode.TOTAL.value,
    show_default=True,
    help="soft output handed from BP to SC",
)
@click.option("--sc-output-bits-log2", type=int, default=DEFAULT_SC_OUTPUT_BITS_LOG2)
def decode(
    llr_file,
    frozen_file,
    n,
    k,
    z0,
    decoder,
    max_iter,
    bp_scale,
    saturation,
    bp_schedule,
    denoised,
    sc_output_bits_log2,
):
    """Decode a single LLR frame and print the outcome."""
    spec = _code_spec(frozen_file, n, k, z0)

    try:
        llrs = np.loadtxt(llr_file, ndmin=1, dtype=np.float64)
    except ValueError as exc:
        raise FrameError(f"unable to parse LLR file {llr_file}: {exc}")

    try:
        variant = DecoderVariant.parse(decoder, max_iter)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--decoder")

    outcome = decode_frame(
        variant.kind,
        llrs,
        spec,
        max_iter=variant.max_iter or 1,
        settings=BpSettings(
            scale=bp_scale,
            saturation=saturation,
            schedule=bp_schedule,
            denoised=denoised,
        ),
        latency=LatencyParams.for_spec(spec, sc_output_bits_log2),
    )

    click.echo(f"decoder:    {variant.label}")
    click.echo(f"source:     {outcome.source.value}")
    click.echo(f"iterations: {outcome.iterations}")
    click.echo(f"cycles:     {outcome.cycles}")
    click.echo(f"info:       {''.join(map(str, outcome.info_hat))}")


@cli.command()
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--n", type=int)
@click.option("--k", type=int)
@click.option("--z0", type=float)
@click.option("--snr", help="comma list or a:b:step of Eb/N0 values in dB")
@click.option("--decoders", help="comma list, e.g. sc,bp-es:60,hybrid:60")
@click.option("--max-iter", type=int)
@click.option("--min-frame-errors", type=int)
@click.option("--max-frames", type=int)
@click.option("--seed", type=int)
@click.option("--out", type=click.Path(dir_okay=False))
@click.option("--frozen-file", type=click.Path(exists=True, dir_okay=False))
@click.option("--bp-scale", type=float)
@click.option("--saturation", type=float)
@click.option("--bp-schedule", type=click.Choice(_SCHEDULES))
@click.option("--denoised", type=click.Choice(_DENOISED))
@click.option("--sc-output-bits-log2", type=int)
@click.option("--workers", type=int)
@click.option("--batch-frames", type=int)
@click.option("--noiseless", is_flag=True, default=None, help="debug: no channel noise")
def sweep(config_file, **flags):
    """Run the Monte Carlo FER / latency sweep and write the CSV."""
    file_data = load_config_file(config_file) if config_file else None
    cfg = make_config(file_data, **flags)
    asyncio.run(run_experiment(cfg, echo=click.echo))


@cli.command()
@click.option("--csv", "csv_file", required=True, type=click.Path(exists=True))
@click.option("--snr", type=float, required=True, help="Eb/N0 point in dB")
@click.option("--n", type=int, default=1024)
@click.option("--sc-output-bits-log2", type=int, default=DEFAULT_SC_OUTPUT_BITS_LOG2)
def hardware(csv_file, snr, n, sc_output_bits_log2):
    """Tabulate PE count, latency and throughput from a sweep CSV."""
    params = LatencyParams(m=n.bit_length() - 1, sc_output_bits_log2=sc_output_bits_log2)
    table = hardware_table(read_csv(csv_file), snr, n, params)
    click.echo(format_hardware_table(table))


def main():
    try:
        cli()

    except PolarError as exc:
        print(f"FAILURE: {str(exc)}")
        sys.exit(1)


if __name__ == "__main__":
    main()
