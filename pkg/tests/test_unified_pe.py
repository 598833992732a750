import numpy as np
import pytest

from hybrid_polar.unified_pe import (
    PeMode,
    PeConfig,
    unified_type1,
    unified_type2,
    ScheduleDecoder,
    StepKind,
    Sweep,
    schedule_modes,
    count_activations,
    UnifiedDatapath,
    bp_pe_count,
    sc_pe_count,
)
from hybrid_polar.decoders.sc import f_node, g_node, sc_decode
from hybrid_polar.decoders.bp import BpSchedule, BpSettings, msg_type1, msg_type2, bp_decode
from hybrid_polar.channel import add_awgn, modulate_bpsk, llr_from_observation
from hybrid_polar.codec import construct_frozen_set
from hybrid_polar.errors import CodeSpecError, PeModeError

from .conftest import random_codeword

SC_F = PeConfig(PeMode.SC_F)
BP_T1 = PeConfig(PeMode.BP_TYPE1, s=1.0)
BP_T2 = PeConfig(PeMode.BP_TYPE2, s=1.0)


def test_type1_examples():
    assert unified_type1(SC_F, 2.0, -3.0, 99.0) == -2.0 == f_node(2.0, -3.0)
    assert unified_type1(BP_T1, 2.0, 1.0, 2.0) == 2.0
    scaled = PeConfig(PeMode.BP_TYPE1, s=0.9375)
    assert unified_type1(scaled, -4.0, 1.0, 1.0) == msg_type1(0.9375, -4.0, 1.0, 1.0)


def test_type1_modes_agree(rng):
    a = rng.normal(scale=6.0, size=100_000)
    b = rng.normal(scale=6.0, size=100_000)
    c = rng.normal(size=100_000)
    via_sc = unified_type1(SC_F, a, b, c)
    assert np.array_equal(via_sc, unified_type1(BP_T1, a, b, 0.0))
    assert np.array_equal(via_sc, f_node(a, b))


def test_type2_examples():
    assert unified_type2(PeConfig(PeMode.SC_G, u_sum=1), 1.5, 2.0) == 0.5
    assert unified_type2(BP_T2, 1.0, 2.0, -3.0) == -1.0
    assert unified_type2(PeConfig(PeMode.SC_G, u_sum=1), 1.5, 0.0) == -1.5
    assert unified_type2(PeConfig(PeMode.SC_G, u_sum=0), 1.5, 0.0) == 1.5


def test_type2_sc_route_matches_g(rng):
    a = rng.normal(scale=6.0, size=100_000)
    b = rng.normal(scale=6.0, size=100_000)
    b[b == 0.0] = 1.0
    u_sum = rng.integers(0, 2, size=100_000)
    cfg = PeConfig(PeMode.SC_G, u_sum=u_sum)
    assert np.array_equal(unified_type2(cfg, a, b), g_node(a, b, u_sum))

    s = 0.75
    c = rng.normal(size=100_000)
    cfg = PeConfig(PeMode.BP_TYPE2, s=s)
    assert np.array_equal(unified_type2(cfg, a, b, c), msg_type2(s, a, b, c))


def test_mode_mismatch():
    with pytest.raises(PeModeError):
        unified_type1(PeConfig(PeMode.SC_G), 1.0, 1.0)

    with pytest.raises(PeModeError):
        unified_type2(PeConfig(PeMode.BP_TYPE1), 1.0, 1.0, 1.0)

    with pytest.raises(PeModeError):
        PeConfig(PeMode.SC_F, s=0.5)


def test_schedule_sc_n2():
    steps = schedule_modes(ScheduleDecoder.SC, 2)
    assert [(s.kind, s.stage, s.modes, s.bit_index) for s in steps] == [
        (StepKind.COMPUTE, 1, (PeMode.SC_F,), None),
        (StepKind.DECIDE, 0, (), 0),
        (StepKind.COMPUTE, 1, (PeMode.SC_G,), None),
        (StepKind.DECIDE, 0, (), 1),
    ]


def test_schedule_bp_n2():
    steps = schedule_modes(ScheduleDecoder.BP, 2, iterations=1)
    both = (PeMode.BP_TYPE1, PeMode.BP_TYPE2)
    assert [(s.stage, s.modes, s.sweep) for s in steps] == [
        (1, both, Sweep.RIGHT_TO_LEFT),
        (1, both, Sweep.LEFT_TO_RIGHT),
    ]


def test_schedule_sc_n8_activations():
    steps = schedule_modes(ScheduleDecoder.SC, 8)
    counts = count_activations(steps)
    assert counts[PeMode.SC_F] == 12
    assert counts[PeMode.SC_G] == 12
    assert sum(counts.values()) == 8 * 3
    assert [s.bit_index for s in steps if s.kind == StepKind.DECIDE] == list(range(8))
    assert sum(1 for s in steps if s.kind == StepKind.COMPUTE) == 2 * (8 - 1)


def test_schedule_bp_stage_order():
    steps = schedule_modes(ScheduleDecoder.BP, 8, iterations=2)
    assert [s.stage for s in steps] == [3, 2, 1, 1, 2, 3] * 2
    assert [s.iteration for s in steps] == [1] * 6 + [2] * 6
    counts = count_activations(steps)
    assert counts[PeMode.BP_TYPE1] == counts[PeMode.BP_TYPE2] == 2 * 2 * 3 * 4


@pytest.mark.parametrize("n", [0, 1, 6, 12])
def test_schedule_invalid_n(n):
    with pytest.raises(CodeSpecError):
        schedule_modes(ScheduleDecoder.SC, n)


def test_pe_counts():
    assert bp_pe_count(1024) == 5120
    assert sc_pe_count(1024) == 1024


def test_datapath_sc_activations_match_schedule(spec8):
    datapath = UnifiedDatapath()
    datapath.sc_decode(np.linspace(-3, 4, 8), spec8)
    assert datapath.activations == count_activations(schedule_modes(ScheduleDecoder.SC, 8))


@pytest.mark.parametrize("schedule", list(BpSchedule))
def test_datapath_bp_activations_match_schedule(spec8, schedule):
    datapath = UnifiedDatapath(BpSettings(schedule=schedule))
    datapath.bp_decode(np.linspace(-3, 4, 8), spec8, max_iter=3, early_stop=False)
    expected = count_activations(schedule_modes(ScheduleDecoder.BP, 8, iterations=3))
    assert datapath.activations == expected

    datapath.reset()
    assert not datapath.activations


def test_datapath_sc_drop_in(spec1024, rng):
    datapath = UnifiedDatapath()
    sigma2 = 0.7
    for trial in range(100):
        _, _, x = random_codeword(spec1024, rng)
        llrs = llr_from_observation(add_awgn(modulate_bpsk(x), sigma2, seed=trial), sigma2)
        assert np.array_equal(datapath.sc_decode(llrs, spec1024), sc_decode(llrs, spec1024))


@pytest.mark.parametrize("schedule", list(BpSchedule))
def test_datapath_bp_drop_in(rng, schedule):
    settings = BpSettings(schedule=schedule)
    spec = construct_frozen_set(256, 128)
    datapath = UnifiedDatapath(settings)
    sigma2 = 0.7
    for trial in range(20):
        _, _, x = random_codeword(spec, rng)
        llrs = llr_from_observation(add_awgn(modulate_bpsk(x), sigma2, seed=trial), sigma2)
        ref = bp_decode(llrs, spec, max_iter=20, settings=settings)
        out = datapath.bp_decode(llrs, spec, max_iter=20)
        assert np.array_equal(out.u_hat, ref.u_hat)
        assert np.array_equal(out.denoised_llrs, ref.denoised_llrs)
        assert out.iterations_used == ref.iterations_used
        assert out.stopped_early == ref.stopped_early
