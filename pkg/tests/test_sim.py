# -*- coding: utf-8 -*-
"""合成场景、因素扫描与合成序列"""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np
import pytest

from pipeline.tracks import TrackValidity
from robust import histogram_vote
from sim import (
    SceneConfig,
    SequenceConfig,
    SweepFactor,
    SweepResult,
    check_expected_trends,
    generate_scene,
    omega_error,
    read_sweep,
    run_sweep,
    run_trial,
    simulate_sequence,
    write_sweep,
)
from sim.sweep import SIM_VOTE_CONFIG
from solver import ExpansionOrder, solve_omega


def test_scene_shape_and_visibility(rng):
    config = SceneConfig(n_landmarks=8, events_per_track=12)
    tracks = generate_scene(config, rng)
    assert len(tracks) == 8
    for track in tracks:
        assert len(track.samples) == 12
        taus = [s.tau_i for s in track.samples]
        assert taus == sorted(taus)
        assert 0.0 <= taus[0] and taus[-1] <= config.window
        assert max(abs(x) for x in track.exact_bearings) <= config.bearing_limit
        assert abs(track.omega_true) <= 0.5


def test_scene_invalid_config():
    with pytest.raises(ValueError):
        SceneConfig(depth_mean=5.0, depth_halfwidth=5.0)
    with pytest.raises(ValueError):
        SceneConfig(events_per_track=2)


def test_noise_free_scene_recovers_omega(rng):
    config = SceneConfig(n_landmarks=6, noise_sigma=0.0, omega_true=0.37)
    tracks = generate_scene(config, rng)
    estimates = [solve_omega(t.samples, "s7c6", config.solver_tau, track_id=i) for i, t in enumerate(tracks)]
    result = histogram_vote(estimates, SIM_VOTE_CONFIG)
    assert omega_error(result.omega_consensus, 0.37) < 1e-4


def test_depth_mean_is_respected(rng):
    config = SceneConfig(n_landmarks=5000, events_per_track=3, omega_true=0.0, d=0.01, noise_sigma=0.0)
    depths = [t.landmark.p0y for t in generate_scene(config, rng)]
    assert np.mean(depths) == pytest.approx(config.depth_mean, abs=0.3)
    assert min(depths) >= config.depth_mean - config.depth_halfwidth


def test_trial_is_deterministic():
    config = SceneConfig(n_landmarks=4, trials=2, seed=9)
    orders = [ExpansionOrder.S5C4, ExpansionOrder.S7C6]
    assert run_trial(config, 0, 1, orders) == run_trial(config, 0, 1, orders)
    assert run_trial(config, 0, 1, orders) != run_trial(config, 0, 0, orders)


def test_factor_apply():
    base = SceneConfig()
    assert SweepFactor.parse("TAU").apply(base, 0.5).tau == 0.5
    assert SweepFactor.TAU.apply(base, 0.5).window == base.window
    assert SweepFactor.INTERVAL.apply(base, 0.1).window == 0.1
    assert SweepFactor.LANDMARKS.apply(base, 20).n_landmarks == 20
    assert SweepFactor.DEPTH.apply(base, 14).depth_mean == 14


def test_small_sweep_round_trip(tmp_path):
    base = SceneConfig(trials=3, n_landmarks=5, seed=3)
    result = run_sweep("noise", values=[0.0, 2.0], base=base, orders=["s7c6"], keep_raw=True)
    assert set(result.mean_eps) == {(0.0, ExpansionOrder.S7C6), (2.0, ExpansionOrder.S7C6)}
    assert all(np.isfinite(v) for v in result.mean_eps.values())
    assert result.mean_eps[(0.0, ExpansionOrder.S7C6)] < 1e-4
    assert len(result.raw[(2.0, ExpansionOrder.S7C6)]) + result.failures[(2.0, ExpansionOrder.S7C6)] == 3

    out = tmp_path / "noise.csv"
    sidecar = write_sweep(result, out)
    series = read_sweep(out)
    assert [v for v, _ in series["s7c6"]] == [0.0, 2.0]
    with sidecar.open("rb") as f:
        meta = tomllib.load(f)
    assert meta["factor"] == "noise"
    assert meta["orders"] == ["s7c6"]
    assert meta["error_metric"] == "abs(omega_rec - omega_gt)"
    assert meta["base_config"]["trials"] == 3


def test_sweep_rejects_empty_values():
    with pytest.raises(ValueError):
        run_sweep("noise", values=[])


def test_expected_trends_report_violations():
    s3, s5, s7 = ExpansionOrder.S3C2, ExpansionOrder.S5C4, ExpansionOrder.S7C6
    result = SweepResult(SweepFactor.FOCAL, (100.0, 500.0), (s3, s5, s7), SceneConfig())
    result.mean_eps.update({
        (100.0, s3): 0.10, (100.0, s5): 0.05, (100.0, s7): 0.04,
        (500.0, s3): 0.03, (500.0, s5): 0.02, (500.0, s7): 0.03,
    })
    notes = check_expected_trends(result)
    assert len(notes) == 2
    assert any("focal" in n for n in notes)


def test_synthetic_sequence():
    config = SequenceConfig(duration=1.0, tracks_per_second=20)
    sequence = simulate_sequence(config, np.random.default_rng(0))
    validity = TrackValidity()
    assert len(sequence.tracks) == 20
    assert all(validity.reason(t) is None for t in sequence.tracks)
    for track in sequence.tracks:
        assert all(0 <= e.u < config.width and 0 <= e.v < config.height for e in track.events)
        assert config.margin <= track.t_start and track.t_end <= config.duration - config.margin + 1e-12
    assert sequence.ground_truth[0].t == 0.0
    assert sequence.ground_truth[-1].t == pytest.approx(config.duration)


def test_sequence_rejects_short_duration():
    with pytest.raises(ValueError):
        SequenceConfig(duration=0.5)


@pytest.mark.slow
def test_order_dominance_at_defaults():
    result = run_sweep("noise", values=[1.0], base=SceneConfig(), workers=4)
    e3, e5, e7 = (result.mean_eps[(1.0, o)] for o in ExpansionOrder)
    assert e3 >= e5 >= e7


@pytest.mark.slow
def test_interval_monotonicity():
    values = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35]
    result = run_sweep("interval", values=values, orders=["s7c6"], workers=4)
    curve = result.series("s7c6")
    assert np.all(np.diff(curve) < 0)


@pytest.mark.slow
def test_focal_trend_is_soft():
    result = run_sweep("focal", values=[100, 500], orders=["s7c6"], workers=4)
    notes = check_expected_trends(result)
    if notes:
        pytest.skip("; ".join(notes))
    assert result.mean_eps[(100, ExpansionOrder.S7C6)] > 2 * result.mean_eps[(500, ExpansionOrder.S7C6)]
