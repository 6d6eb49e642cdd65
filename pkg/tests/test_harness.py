import json
import math
from dataclasses import replace

import numpy as np
import pytest

from wflo.harness import (
    ExperimentConfig,
    box_stats,
    cobyla_cvar_samples,
    enumerate_degenerate,
    fit_scaling,
    mean_placement,
    optimal_layouts_l4,
    percent_of_optimal,
    run_experiment,
    run_seeds,
    scaling_intersection,
    solve_once,
)
from wflo.harness.experiment import failed_runs, optimal_power
from wflo.harness.io import dumps, read_powers, write_records
from wflo.wake import GridGeometry


class TestConfig:
    def test_defaults(self):
        c = ExperimentConfig()
        assert (c.l_grid, c.m, c.num_runs, c.shots, c.method) == (4, 4, 36, 1024, "vqe-cobyla")
        assert c.problem().q == 16

    @pytest.mark.parametrize(
        "kw",
        [dict(method="gurobi"), dict(m=17), dict(cvar_alpha=0.0), dict(cvar_alpha=1.5), dict(shots=0), dict(xi=1.0)],
    )
    def test_validation(self, kw):
        with pytest.raises(ValueError):
            ExperimentConfig(**kw).validate()

    def test_round_trip(self, tmp_path):
        c = ExperimentConfig(l_grid=3, method="sa", cvar_alpha=0.25, master_seed=9)
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(c.to_dict()))
        back = ExperimentConfig.load(path)
        assert back.to_dict() == c.to_dict()

    def test_unknown_key(self):
        with pytest.raises(ValueError):
            ExperimentConfig.from_dict({"l_grid": 3, "temperature": 4})


def test_seed_splitting_is_prefix_stable():
    assert run_seeds(5, 3) == run_seeds(5, 10)[:3]
    assert len(set(run_seeds(5, 100))) == 100
    assert all(0 <= s < 2**63 for s in run_seeds(0, 20))


def test_exhaustive_farm_is_always_optimal():
    records = run_experiment(ExperimentConfig(method="exhaustive", num_runs=3))
    assert [r.power_kW for r in records] == [pytest.approx(2304.0, rel=1e-12)] * 3


@pytest.mark.parametrize("m", [1, 2, 3])
def test_noiseless_vqe_optimal_every_run_l2(m):
    cfg = ExperimentConfig(l_grid=2, m=m, method="vqe-exact", num_runs=12)
    best = optimal_power(cfg)
    records = run_experiment(cfg)
    assert failed_runs(records) == 0
    assert all(r.power_kW == pytest.approx(best, rel=1e-12) for r in records)


@pytest.mark.xfail(
    strict=True,
    reason="with alpha=1 every feasible layout is a local minimum of the energy, so runs stall off-optimum",
)
def test_noiseless_vqe_optimal_every_run_l3():
    cfg = ExperimentConfig(l_grid=3, m=4, method="vqe-exact", layers=3, num_runs=8, workers=4)
    records = run_experiment(cfg)
    assert all(r.power_kW == pytest.approx(2304.0, rel=1e-12) for r in records)


@pytest.mark.parametrize("method", ["sa", "vqe-cobyla", "vqe-powell", "vqe-bo", "vqe-exact"])
def test_records_are_scored_by_power(method):
    cfg = ExperimentConfig(
        l_grid=2, m=2, method=method, num_runs=2, layers=1, max_evals=60, bo_budget=14, shots=64, cvar_alpha=0.5
    )
    for r in run_experiment(cfg):
        assert r.method == method
        assert r.alpha == 0.5
        if r.succeeded:
            bits = np.array([int(c) for c in r.selected_layout])
            assert bits.sum() == 2
            assert r.power_kW == cfg.power(bits)
        assert r.objective_history


def test_byte_identical_records(tmp_path):
    cfg = ExperimentConfig(l_grid=3, method="vqe-cobyla", num_runs=3, layers=1, max_evals=80, master_seed=4)
    a, b = tmp_path / "a", tmp_path / "b"
    write_records(a, run_experiment(cfg))
    write_records(b, run_experiment(cfg))
    assert (a / "records.json").read_bytes() == (b / "records.json").read_bytes()
    assert (a / "records.csv").read_bytes() == (b / "records.csv").read_bytes()
    assert not (a / "timings.json").exists()
    write_records(a, run_experiment(cfg), timing=True)
    assert len(json.loads((a / "timings.json").read_text())) == 3


def test_farm_order_does_not_matter():
    cfg = ExperimentConfig(l_grid=3, method="sa", num_runs=6, master_seed=2, sa_sweeps=100)
    serial = [r.to_dict() for r in run_experiment(cfg)]
    pooled = [r.to_dict() for r in run_experiment(replace(cfg, workers=3))]
    assert serial == pooled
    seeds = run_seeds(cfg.master_seed, cfg.num_runs)
    backwards = [solve_once(cfg, k, seeds[k]).to_dict() for k in reversed(range(6))]
    assert sorted(backwards, key=lambda d: d["run_index"]) == serial


class TestDegeneracy:
    def test_no_2304_below_l3(self):
        for l in (1, 2):
            cfg = ExperimentConfig(l_grid=l, m=min(4, l * l))
            value, layouts = enumerate_degenerate(cfg)
            assert value < 2304.0

    def test_l4_matches_fixture_in_order(self):
        value, layouts = enumerate_degenerate(ExperimentConfig())
        assert value == pytest.approx(2304.0, rel=1e-12)
        assert layouts == optimal_layouts_l4()
        assert all(s.count("1") == 4 for s in layouts)


class TestHeatmap:
    def test_single_layout(self):
        h = mean_placement(["1001"], GridGeometry(2))
        np.testing.assert_array_equal(h.mean_placement, [[1, 0], [0, 1]])
        assert h.num_layouts == 1

    def test_optimal_set(self):
        h = mean_placement(optimal_layouts_l4(), GridGeometry(4)).mean_placement
        assert h.sum() == pytest.approx(4.0, abs=1e-9)
        assert np.all((0 <= h) & (h <= 1))
        np.testing.assert_allclose(h, np.rot90(h), atol=1e-12)

    def test_empty_and_ragged(self):
        with pytest.raises(ValueError):
            mean_placement([], GridGeometry(2))
        with pytest.raises(ValueError):
            mean_placement([[1, 0, 0]], GridGeometry(2))


class TestPercent:
    def test_all_optimal(self):
        assert percent_of_optimal([5.0, 5.0], 5.0).percent == 100.0

    def test_failures_counted_apart(self):
        res = percent_of_optimal([4.0, None, 2.0], 4.0)
        assert (res.percent, res.successes, res.failures) == (75.0, 2, 1)

    def test_no_successes_is_nan(self):
        assert math.isnan(percent_of_optimal([None], 4.0).percent)

    def test_rejects_bad_optimum(self):
        with pytest.raises(ValueError):
            percent_of_optimal([1.0], 0.0)

    def test_fixture_sizes(self):
        assert len(cobyla_cvar_samples()) == 36
        assert len(cobyla_cvar_samples("extended_284")) == 284


def test_box_stats():
    s = box_stats([1, 2, 3, 4, 100])
    assert (s["median"], s["q1"], s["q3"]) == (3.0, 2.0, 4.0)
    assert s["outliers"] == [100.0]
    assert s["whisker_high"] == 4.0
    assert box_stats([7.0])["std"] == 0.0


class TestScaling:
    @pytest.mark.parametrize("slope, intercept", [(4.24, -5.18), (2.0, 0.5), (-1.0, 3.0)])
    def test_recovers_power_law(self, slope, intercept):
        V = np.array([4.0, 9.0, 16.0, 25.0])
        fit = fit_scaling(list(zip(V, 10 ** (intercept + slope * np.log10(V)))))
        assert abs(fit.slope - slope) <= 1e-9
        assert abs(fit.intercept - intercept) <= 1e-9
        np.testing.assert_allclose(fit.predict(V), 10 ** (intercept + slope * np.log10(V)), rtol=1e-9)

    def test_natural_base_slope_unchanged(self):
        V = np.array([4.0, 9.0, 16.0])
        t = 3.0 * V**1.7
        assert fit_scaling(list(zip(V, t)), base=math.e).slope == pytest.approx(1.7, abs=1e-12)
        assert fit_scaling(list(zip(V, t)), base=math.e).intercept == pytest.approx(math.log(3.0), abs=1e-12)

    def test_constant_timings(self):
        assert fit_scaling([(4, 2.0), (9, 2.0), (16, 2.0)]).slope == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("pts", [[(4, 1.0)], [(4, 1.0), (4, 2.0)], [(4, 1.0), (9, -1.0)]])
    def test_degenerate(self, pts):
        with pytest.raises(ValueError):
            fit_scaling(pts)

    def test_intersection(self):
        V = np.array([4.0, 9.0, 16.0])
        a = fit_scaling(list(zip(V, 10 ** (1.0 + 1.0 * np.log10(V)))))
        b = fit_scaling(list(zip(V, 10 ** (0.0 + 2.0 * np.log10(V)))))
        assert scaling_intersection(a, b) == pytest.approx(10.0, rel=1e-9)
        with pytest.raises(ValueError):
            scaling_intersection(a, a)


class TestIo:
    def test_float_format(self):
        assert dumps(0.1) == "0.10000000000000001"
        assert dumps(2.0) == "2.0"
        assert dumps(float("nan")) == "null"
        assert dumps({"a": [1, 2.5], "b": None}) == '{\n "a": [1, 2.5],\n "b": null\n}'
        assert json.loads(dumps({"x": np.float64(1 / 3)}))["x"] == 1 / 3

    def test_read_powers(self, tmp_path):
        (tmp_path / "p.json").write_text("[1.5, 2.5]")
        assert read_powers(tmp_path / "p.json") == [1.5, 2.5]
        (tmp_path / "p.csv").write_text("1.0\n2.0\n")
        assert read_powers(tmp_path / "p.csv") == [1.0, 2.0]
        (tmp_path / "d.json").write_text('{"other": 1}')
        with pytest.raises(ValueError):
            read_powers(tmp_path / "d.json")

    def test_read_powers_from_records(self, tmp_path):
        cfg = ExperimentConfig(l_grid=2, m=2, method="sa", num_runs=2)
        recs = run_experiment(cfg)
        write_records(tmp_path, recs)
        assert read_powers(tmp_path / "records.json") == [r.power_kW for r in recs]
        assert read_powers(tmp_path / "records.csv") == [r.power_kW for r in recs]
