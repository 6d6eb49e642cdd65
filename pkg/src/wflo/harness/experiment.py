"""Seeded multi-run experiments over every solver."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any

import numpy as np

from ..hamiltonian import bits_to_label, label_to_bits, qubo_to_hamiltonian
from ..optimizers import (
    BoOptions,
    CobylaOptions,
    ObjectiveHandle,
    PowellOptions,
    SaSchedule,
    bo_minimize,
    cobyla_minimize,
    exhaustive_search,
    powell_minimize,
    simulated_annealing,
)
from ..qubo import DEFAULT_LAMBDA1, QuboProblem, build_q, objective_f
from ..vqe import AnsatzSpec, apply_ansatz, expectation, random_parameters, select_solution
from ..wake import GridGeometry, WakeParams, WindFarmSetup, WindRegime, mosetti_regime_2

METHODS = ("exhaustive", "sa", "vqe-cobyla", "vqe-powell", "vqe-bo", "vqe-exact")


@dataclass
class ExperimentConfig:
    l_grid: int = 4
    m: int = 4
    xi: float = 0.0
    lambda1: float = DEFAULT_LAMBDA1
    method: str = "vqe-cobyla"
    cvar_alpha: float = 1.0
    shots: int = 1024
    layers: int | None = None
    rotation_axes: str = "yx"
    num_runs: int = 36
    master_seed: int = 0
    workers: int = 1
    sa_sweeps: int = 1000
    rho_begin: float = 0.5
    rho_end: float = 1e-4
    max_evals: int = 1000
    bo_budget: int = 200
    bo_initial: int = 10
    kernel_form: str = "standard"
    regime: WindRegime = field(default_factory=mosetti_regime_2)
    wake: WakeParams = field(default_factory=WakeParams)

    def validate(self) -> "ExperimentConfig":
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; choose from {', '.join(METHODS)}")
        GridGeometry(self.l_grid)
        q = self.l_grid**2
        if not 0 <= self.m <= q:
            raise ValueError(f"m={self.m} outside 0..{q}")
        if self.xi != 0:
            raise ValueError("only xi = 0 is supported by the QUBO builder")
        if self.lambda1 < 0:
            raise ValueError("lambda1 must be non-negative")
        if not 0 < self.cvar_alpha <= 1:
            raise ValueError("cvar_alpha must lie in (0, 1]")
        if self.shots < 1 or self.num_runs < 1 or self.workers < 1:
            raise ValueError("shots, num_runs and workers must be positive")
        if self.method.startswith("vqe"):
            AnsatzSpec(q, self.layers, self.rotation_axes)
        return self

    @property
    def geometry(self) -> GridGeometry:
        return GridGeometry(self.l_grid)

    def problem(self) -> QuboProblem:
        return build_q(self.regime, self.wake, self.geometry, self.lambda1, self.m)

    def power(self, layouts):
        return objective_f(layouts, self.regime, self.wake, self.geometry)

    def to_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self) if f.name not in ("regime", "wake")}
        out.update(WindFarmSetup(self.geometry, self.regime, self.wake).to_dict())
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        doc = dict(doc)
        setup = WindFarmSetup.from_dict({k: doc.pop(k) for k in ("arrangements", "wake", "l_grid") if k in doc})
        known = {f.name for f in fields(cls)} - {"regime", "wake", "l_grid"}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(l_grid=setup.geometry.l_grid, regime=setup.regime, wake=setup.params, **doc)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass
class RunRecord:
    run_index: int
    seed: int
    method: str
    alpha: float
    selected_layout: str | None
    power_kW: float | None
    qubo_value: float | None
    objective_history: list[tuple[int, float]]
    wall_time_seconds: float
    iteration_times: list[float] = field(default_factory=list, repr=False)

    @property
    def succeeded(self) -> bool:
        return self.selected_layout is not None

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        d = asdict(self)
        d["objective_history"] = [[n, v] for n, v in self.objective_history]
        d.pop("iteration_times")
        if not timing:
            d.pop("wall_time_seconds")
        return d


def run_seeds(master_seed: int, n: int) -> list[int]:
    """Per-run seeds: child ``k`` of ``SeedSequence(master_seed)``, first 63 bits.

    Independent of scheduling order, so a farm can be replayed run by run.
    """
    children = np.random.SeedSequence(master_seed).spawn(n)
    return [int(c.generate_state(1, dtype=np.uint64)[0] >> 1) for c in children]


def _vqe_objective(config: ExperimentConfig, spec: AnsatzSpec, energies: np.ndarray, rng):
    if config.method == "vqe-exact":
        mode = "exact" if config.cvar_alpha == 1 else "exact-cvar"
        return lambda t: expectation(apply_ansatz(spec, t), energies, mode, alpha=config.cvar_alpha)
    return lambda t: expectation(
        apply_ansatz(spec, t), energies, "sampled", alpha=config.cvar_alpha, shots=config.shots, seed=rng
    )


def solve_once(config: ExperimentConfig, run_index: int, seed: int, problem: QuboProblem | None = None) -> RunRecord:
    """One seeded solve; failures to find a feasible label are recorded, not raised."""
    problem = problem or config.problem()
    rng = np.random.default_rng(seed)
    q = problem.q
    history: list[tuple[int, float]] = []
    times: list[float] = []
    t0 = time.perf_counter()
    label = None
    if config.method == "exhaustive":
        res = exhaustive_search(config.power, q=q, m=config.m)
        label = bits_to_label(res.layouts[0])
    elif config.method == "sa":
        schedule = SaSchedule.for_problem(problem, config.sa_sweeps)
        x, _, trace = simulated_annealing(problem, schedule, rng, return_trace=True)
        label = bits_to_label(x)
        history = list(enumerate(trace))
    else:
        spec = AnsatzSpec(q, config.layers, config.rotation_axes)
        energies = qubo_to_hamiltonian(problem).diagonal()
        handle = ObjectiveHandle(_vqe_objective(config, spec, energies, rng))
        theta0 = random_parameters(spec, rng)
        if config.method in ("vqe-cobyla", "vqe-exact"):
            opts = CobylaOptions(config.rho_begin, config.rho_end, config.max_evals)
            theta, _, _ = cobyla_minimize(handle, theta0, opts)
        elif config.method == "vqe-powell":
            theta, _, _ = powell_minimize(handle, theta0, PowellOptions(max_evals=config.max_evals))
        else:
            opts = BoOptions(budget=config.bo_budget, n_initial=config.bo_initial, kernel_form=config.kernel_form)
            theta, _, _ = bo_minimize(handle, spec.num_parameters, opts, seed=rng)
        history = [(n, v) for n, v, _ in handle.trace()]
        times = [t for _, _, t in handle.trace()]
        label = select_solution(apply_ansatz(spec, theta), config.m)
    wall = time.perf_counter() - t0

    power = qubo_value = None
    if label is not None:
        bits = label_to_bits(label, q)
        if int(bits.sum()) != config.m:
            label = None
        else:
            power = float(config.power(bits))
            qubo_value = float(bits @ problem.Q @ bits)
    return RunRecord(run_index, seed, config.method, config.cvar_alpha, label, power, qubo_value, history, wall, times)


def _solve_star(args):
    return solve_once(*args)


def run_experiment(config: ExperimentConfig) -> list[RunRecord]:
    """``num_runs`` independent solves, sorted by run index."""
    config.validate()
    problem = config.problem()
    seeds = run_seeds(config.master_seed, config.num_runs)
    jobs = [(config, k, s, problem) for k, s in enumerate(seeds)]
    if config.workers == 1:
        records = [_solve_star(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_solve_star, jobs))
    return sorted(records, key=lambda r: r.run_index)


def enumerate_degenerate(config: ExperimentConfig) -> tuple[float, list[str]]:
    """Optimal power and every feasible layout attaining it, as 0/1 labels."""
    config.validate()
    res = exhaustive_search(config.power, q=config.l_grid**2, m=config.m)
    return float(res.value), [bits_to_label(x) for x in res.layouts]


def optimal_power(config: ExperimentConfig) -> float:
    return enumerate_degenerate(config)[0]


def time_solve(config: ExperimentConfig, seed: int = 0) -> float:
    """End-to-end wall time of one solve, in seconds."""
    t0 = time.perf_counter()
    solve_once(config, 0, seed)
    return time.perf_counter() - t0


def failed_runs(records) -> int:
    return sum(1 for r in records if not r.succeeded)
