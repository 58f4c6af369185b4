"""Learning runs at reduced but meaningful scale. Hours of CPU time."""

import numpy as np
import pytest

from maxmax.envs.differential import DG_PEAK_WIDTH_PER_AGENT
from maxmax.settings import ExperimentSettings
from maxmax.simulation.evaluate import evaluate_agents
from maxmax.simulation.simulate import Simulate
from maxmax.theory import mc_min_distance_experiment
from maxmax.theory import run_theory_suite

pytestmark = pytest.mark.slow

SMOKE = {
    "algo.layers": (64, 64),
    "algo.pretrain_steps": 5000,
    "run.eval_interval": 5000,
    "run.eval_episodes": 10,
    "run.checkpoint": False,
}


def _train(tmpdir, algorithm, env, total_steps, seeds, **extra):
    values = dict(SMOKE)
    values.update(
        {
            "env.name": env,
            "algo.name": algorithm,
            "run.total_steps": total_steps,
            "run.seeds": tuple(seeds),
        }
    )
    values.update(extra)
    settings = ExperimentSettings.from_dict(values)

    runs = []
    for seed in seeds:
        output_dir = tmpdir.join(f"{algorithm}_{seed}")
        sim = Simulate(settings, seed, output_dir=output_dir, progress=False)
        record = sim.run()
        assert record.status == "finished"
        runs.append((sim, record))
    return runs


def _final_mean(runs, window=5):
    return np.array([np.mean(record.returns[-window:]) for _, record in runs])


def test_min_distance_full_scale():
    for M in (1, 5, 15, 50):
        for c in (0.0, 0.5, 0.9):
            result = mc_min_distance_experiment(1.0, c, M, 100000, rng=M, check=True)
            assert result.estimate < result.bound


def test_theory_suite_full_scale():
    outcomes = run_theory_suite(seed=0, quick=False)
    failed = [outcome.name for outcome in outcomes if not outcome.passed]
    assert failed == []


def test_differential_game_mmq_beats_iddpg(tmpdir):
    mmq = _train(tmpdir, "mmq", "dg", 50000, range(3))
    iddpg = _train(tmpdir, "iddpg", "dg", 50000, range(3))
    assert _final_mean(mmq).mean() > _final_mean(iddpg).mean()

    m = DG_PEAK_WIDTH_PER_AGENT
    central = 0
    for sim, _ in mmq:
        evaluation = evaluate_agents(sim.agents, sim.eval_env, 5)
        central += np.median(evaluation.final_locations) < m
    assert central >= 2

    coverage = [record.diagnostics[-1]["coverage"] for _, record in mmq]
    assert np.mean(coverage) >= 90.0


def test_more_penalty_separation(tmpdir):
    mmq = _final_mean(_train(tmpdir, "mmq", "cn_more_penalty", 150000, range(4)))
    iddpg = _final_mean(_train(tmpdir, "iddpg", "cn_more_penalty", 150000, range(4)))
    assert mmq.mean() - iddpg.mean() > mmq.std(ddof=1) + iddpg.std(ddof=1)


def test_negative_shift_helps(tmpdir):
    shifted = _train(tmpdir.mkdir("shift"), "mmq", "dg", 50000, range(3))
    plain = _train(
        tmpdir.mkdir("plain"), "mmq", "dg", 50000, range(3), **{"algo.c": 0.0}
    )
    assert _final_mean(shifted).mean() >= _final_mean(plain).mean()
