from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from hybrid_polar.config_models import DecoderVariant, make_config
from hybrid_polar.errors import CodeSpecError, ConfigError
import hybrid_polar.simulation as simulation
from hybrid_polar.simulation import (
    CSV_COLUMNS,
    TrialStats,
    PointJob,
    trial_rng,
    simulate_frame,
    run_batch,
    run_point,
    run_experiment,
    read_csv,
    format_summary,
)


def small_config(**flags):
    flags.setdefault("n", 64)
    flags.setdefault("k", 32)
    flags.setdefault("seed", 5)
    return make_config(**flags)


def make_job(cfg, label, snr_db):
    spec = cfg.code_spec()
    return PointJob(
        spec=spec,
        variant=DecoderVariant.parse(label, cfg.max_iter),
        snr_db=snr_db,
        seed=cfg.seed,
        settings=cfg.bp_settings(),
        latency=cfg.latency_params(spec),
        noiseless=cfg.noiseless,
    )


# -----------------------------------------------------------------------------
# statistics
# -----------------------------------------------------------------------------


def test_stats_accumulate():
    stats = TrialStats(decoder="hybrid-60", snr_db=2.5, k=4)
    stats.add(0, 3, 16)
    stats.add(2, 5, 20)

    assert (stats.frames, stats.frame_errors, stats.bit_errors) == (2, 1, 2)
    assert stats.fer == 0.5
    assert stats.ber == 0.25
    assert stats.mean_iterations == 4.0
    assert stats.mean_cycles == 18.0
    assert stats.worst_cycles == 20

    row = stats.as_dict()
    assert list(row) == CSV_COLUMNS
    assert row["snr_db"] == "2.5"
    assert row["fer"] == "5.000000e-01"
    assert row["mean_iterations"] == "4.0000"
    assert row["worst_cycles"] == "20"


def test_stats_empty():
    stats = TrialStats(decoder="sc", snr_db=1.0, k=4)
    assert stats.fer == stats.ber == stats.mean_cycles == 0.0
    assert stats.fer_interval() == (0.0, 1.0)


def test_fer_interval():
    stats = TrialStats(decoder="sc", snr_db=1.0, k=4, frames=10)
    low, high = stats.fer_interval()
    assert low == 0.0
    assert 0.30 < high < 0.31

    stats = TrialStats(decoder="sc", snr_db=1.0, k=4, frames=1000, frame_errors=100)
    low, high = stats.fer_interval()
    assert low < 0.1 < high
    assert high - low < 0.05

    stats = TrialStats(decoder="sc", snr_db=1.0, k=4, frames=10, frame_errors=10)
    assert stats.fer_interval()[1] == 1.0


# -----------------------------------------------------------------------------
# trials
# -----------------------------------------------------------------------------


def test_trial_rng():
    draw = trial_rng(1, 2.5, 7).normal(size=4)
    assert np.array_equal(draw, trial_rng(1, 2.5, 7).normal(size=4))
    assert not np.array_equal(draw, trial_rng(1, 2.5, 8).normal(size=4))
    assert not np.array_equal(draw, trial_rng(1, 3.0, 7).normal(size=4))
    assert not np.array_equal(draw, trial_rng(2, 2.5, 7).normal(size=4))
    assert trial_rng(0, -3.0, 0).integers(10) >= 0


def test_simulate_frame_repeatable():
    job = make_job(small_config(), "hybrid:10", 1.0)
    assert simulate_frame(job, 3) == simulate_frame(job, 3)


def test_simulate_frame_noiseless():
    job = make_job(small_config(noiseless=True), "bp-es:10", -2.0)
    for trial in range(20):
        errors, iterations, cycles = simulate_frame(job, trial)
        assert errors == 0
        assert 1 <= iterations <= 6
        assert cycles == 2 * iterations + 6


def test_run_batch_shape():
    job = make_job(small_config(), "sc", 1.0)
    block = run_batch(job, 10, 5)
    assert block.shape == (5, 3)
    assert block.dtype == np.int64
    assert tuple(block[2]) == simulate_frame(job, 12)
    assert np.all(block[:, 2] == 64 // 2)


def test_common_frames_across_decoders(monkeypatch):
    seen = list()
    real_decode = simulation.decode_frame

    def _record(kind, llrs, *vargs, **kwargs):
        seen.append(np.array(llrs))
        return real_decode(kind, llrs, *vargs, **kwargs)

    monkeypatch.setattr(simulation, "decode_frame", _record)

    cfg = small_config()
    for label in ("sc", "bp-es:5", "hybrid:5"):
        simulate_frame(make_job(cfg, label, 1.5), 11)

    assert len(seen) == 3
    assert np.array_equal(seen[0], seen[1])
    assert np.array_equal(seen[0], seen[2])


# -----------------------------------------------------------------------------
# points
# -----------------------------------------------------------------------------


@pytest.mark.asyncio
async def test_run_point_noiseless_cap():
    cfg = small_config(noiseless=True, min_frame_errors=1, max_frames=50, batch_frames=8)
    stats = await run_point(cfg, DecoderVariant.parse("hybrid:60"), 2.0)

    assert stats.frames == 50
    assert stats.frame_errors == stats.bit_errors == 0
    assert 1.0 <= stats.mean_iterations <= 6.0
    assert stats.mean_cycles == pytest.approx(2 * stats.mean_iterations + 6)
    assert stats.worst_cycles <= 2 * 6 + 6
    assert stats.decoder == "hybrid-60"


@pytest.mark.asyncio
async def test_run_point_stops_at_error_target():
    cfg = small_config(min_frame_errors=5, max_frames=10_000, batch_frames=7, workers=3)
    stats = await run_point(cfg, DecoderVariant.parse("sc"), -3.0)
    assert stats.frame_errors == 5

    job = make_job(cfg, "sc", -3.0)
    errors = trial = 0
    while errors < 5:
        errors += int(simulate_frame(job, trial)[0] > 0)
        trial += 1
    assert stats.frames == trial


@pytest.mark.asyncio
async def test_run_point_worker_invariance():
    variant = DecoderVariant.parse("hybrid:8")
    serial = await run_point(
        small_config(min_frame_errors=12, batch_frames=1, workers=1), variant, 0.5
    )

    cfg = small_config(min_frame_errors=12, batch_frames=5, workers=4)
    with ThreadPoolExecutor(4) as executor:
        pooled = await run_point(cfg, variant, 0.5, executor=executor)

    assert pooled.as_dict() == serial.as_dict()


@pytest.mark.asyncio
async def test_run_point_bp_latency_bookkeeping():
    cfg = small_config(min_frame_errors=20)
    stats = await run_point(cfg, DecoderVariant.parse("bp-es:30"), 1.0)
    assert stats.mean_cycles == pytest.approx(2 * stats.mean_iterations + 6)

    stats = await run_point(cfg, DecoderVariant.parse("bp:4"), 1.0)
    assert stats.mean_iterations == 4.0
    assert stats.worst_cycles == 2 * 4 + 6


# -----------------------------------------------------------------------------
# experiment
# -----------------------------------------------------------------------------


@pytest.mark.asyncio
async def test_run_experiment_writes_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    echoed = list()
    cfg = small_config(
        snr="1.0,2.0,3.0", decoders="sc,hybrid:10", min_frame_errors=3, out=str(out)
    )

    rows = await run_experiment(cfg, echo=echoed.append)

    assert len(rows) == 6
    assert out.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)

    records = read_csv(out)
    assert [(r["decoder"], r["snr_db"]) for r in records] == [
        ("sc", "1"),
        ("sc", "2"),
        ("sc", "3"),
        ("hybrid-10", "1"),
        ("hybrid-10", "2"),
        ("hybrid-10", "3"),
    ]
    assert records[0] == rows[0].as_dict()
    assert echoed == [format_summary(rows)]
    assert "hybrid-10" in echoed[0]


@pytest.mark.asyncio
async def test_run_experiment_process_pool_identical(tmp_path):
    flags = dict(snr="0.5,1.5", decoders="bp-es:10,hybrid:10", min_frame_errors=6)
    serial = small_config(out=str(tmp_path / "one.csv"), workers=1, **flags)
    pooled = small_config(
        out=str(tmp_path / "two.csv"), workers=2, batch_frames=4, **flags
    )

    await run_experiment(serial, echo=None)
    await run_experiment(pooled, echo=None)

    assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "two.csv").read_bytes()


@pytest.mark.asyncio
async def test_run_experiment_unwritable(tmp_path):
    cfg = small_config(out=str(tmp_path / "missing" / "sweep.csv"))
    with pytest.raises(ConfigError):
        await run_experiment(cfg, echo=None)


def test_read_csv_missing(tmp_path):
    with pytest.raises(ConfigError):
        read_csv(tmp_path / "nope.csv")


@pytest.mark.asyncio
async def test_run_experiment_keeps_existing_csv_on_failure(tmp_path):
    out = tmp_path / "sweep.csv"
    out.write_text("previous results\n")
    frozen = tmp_path / "mask.txt"
    frozen.write_text("8 4\n11101000\n")
    cfg = small_config(out=str(out), frozen_file=str(frozen))
    frozen.unlink()

    with pytest.raises(CodeSpecError):
        await run_experiment(cfg, echo=None)

    assert out.read_text() == "previous results\n"
