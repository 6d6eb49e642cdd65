from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..qubo import QuboProblem


@dataclass(frozen=True)
class SaSchedule:
    sweeps: int = 1000
    beta_initial: float = 1e-4
    beta_final: float = 1e-2

    def __post_init__(self):
        if self.sweeps < 0:
            raise ValueError("sweeps must be non-negative")
        if not self.beta_final >= self.beta_initial > 0:
            raise ValueError("need beta_final >= beta_initial > 0")

    def betas(self) -> np.ndarray:
        if self.sweeps <= 1:
            return np.full(self.sweeps, self.beta_final)
        return np.geomspace(self.beta_initial, self.beta_final, self.sweeps)

    @classmethod
    def for_problem(cls, problem: QuboProblem, sweeps: int = 1000) -> "SaSchedule":
        """Inverse temperatures scaled to the coupling magnitudes of ``problem``."""
        mags = np.abs(problem.Q[np.triu_indices(problem.q)])
        nonzero = mags[mags > 0]
        if nonzero.size == 0:
            return cls(sweeps, 1.0, 1.0)
        return cls(sweeps, 0.1 / nonzero.max(), 10.0 / nonzero.min())


def simulated_annealing(problem: QuboProblem, schedule: SaSchedule | None = None, seed=None, return_trace=False):
    """Metropolis single-bit-flip annealing of ``x^T Q x``.

    Each sweep visits every site once in a fresh random order. Returns the
    best layout visited and its QUBO value (plus the best-so-far value after
    each sweep when ``return_trace`` is set).
    """
    schedule = schedule or SaSchedule.for_problem(problem)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    q = problem.q
    diag = np.diag(problem.Q).copy()
    W = problem.Q + problem.Q.T
    W[np.diag_indices(q)] = 0.0

    x = rng.integers(0, 2, q)
    field_ = diag + W @ x  # energy change of turning site i on, given the others
    energy = float(x @ problem.Q @ x)
    best_x, best_e = x.copy(), energy
    trace = []
    for beta in schedule.betas():
        order = rng.permutation(q)
        u = rng.random(q)
        for i, r in zip(order, u):
            delta = field_[i] if x[i] == 0 else -field_[i]
            if delta <= 0 or r < np.exp(-beta * delta):
                sign = 1 - 2 * x[i]
                x[i] ^= 1
                field_ += sign * W[:, i]
                energy += delta
                if energy < best_e:
                    best_e, best_x = energy, x.copy()
        trace.append(best_e)
    best_e = float(best_x @ problem.Q @ best_x)
    if return_trace:
        return best_x, best_e, trace
    return best_x, best_e
