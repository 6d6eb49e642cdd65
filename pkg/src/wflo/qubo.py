"""Constrained QUBO for the wind-farm layout problem.

The objective minimised is ``-f(x) + g(x)`` where ``f`` is the
linear-superposition power and ``g`` penalises a turbine count different
from ``m`` (and, optionally, turbines closer than ``xi``). It is stored as an
upper-triangular ``Q`` plus the constant ``lambda1 * m**2`` that the matrix
form drops.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .wake import GridGeometry, WakeParams, WindRegime, deficit_matrix

DEFAULT_LAMBDA1 = 1000.0


def _as_layouts(layout) -> tuple[np.ndarray, bool]:
    x = np.asarray(layout)
    single = x.ndim == 1
    return np.atleast_2d(x).astype(float), single


def objective_f(layout, regime: WindRegime, params: WakeParams, geometry: GridGeometry):
    """Power of one layout (1-D input) or of each row of a 2-D batch."""
    x, single = _as_layouts(layout)
    if x.shape[1] != geometry.q:
        raise ValueError(f"layouts have {x.shape[1]} sites, grid has {geometry.q}")
    D = deficit_matrix(regime, params, geometry)
    power = regime.free_power() * x.sum(1) - np.einsum("ni,ij,nj->n", x, D, x)
    return float(power[0]) if single else power


def penalty_g(layout, lambda1: float, lambda2: float, m: int, xi: float, geometry: GridGeometry):
    if lambda1 < 0 or lambda2 < 0:
        raise ValueError("penalty weights must be non-negative")
    x, single = _as_layouts(layout)
    g = lambda1 * (x.sum(1) - m) ** 2
    if xi > 0 and lambda2 != 0:
        close = np.triu(geometry.distances() < xi, k=1).astype(float)
        g = g + lambda2 * np.einsum("ni,ij,nj->n", x, close, x)
    return float(g[0]) if single else g


def is_feasible(layout, m: int, xi: float, geometry: GridGeometry) -> bool:
    x = np.asarray(layout).astype(int).ravel()
    if x.sum() != m:
        return False
    if xi <= 0:
        return True
    on = np.flatnonzero(x)
    dist = geometry.distances()[np.ix_(on, on)]
    return not np.any(np.triu(dist < xi, k=1))


@dataclass(frozen=True, eq=False)
class QuboProblem:
    Q: np.ndarray
    lambda1: float = DEFAULT_LAMBDA1
    lambda2: float = 0.0
    m: int = 4
    xi: float = 0.0
    constant_offset: float = 0.0

    def __post_init__(self):
        Q = np.array(self.Q, dtype=float)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
            raise ValueError("Q must be square")
        if np.any(np.tril(Q, k=-1) != 0):
            raise ValueError("Q must be upper triangular")
        Q.setflags(write=False)
        object.__setattr__(self, "Q", Q)

    @property
    def q(self) -> int:
        return self.Q.shape[0]

    def symmetric(self) -> np.ndarray:
        """Symmetric coupling matrix with the off-diagonals split in half."""
        off = np.triu(self.Q, k=1)
        return np.diag(np.diag(self.Q)) + (off + off.T) / 2.0

    def to_dict(self) -> dict:
        rows, cols = np.triu_indices(self.q)
        return {
            "q": self.q,
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "m": self.m,
            "xi": self.xi,
            "constant_offset": self.constant_offset,
            "terms": [[int(i), int(j), float(self.Q[i, j])] for i, j in zip(rows, cols)],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "QuboProblem":
        q = int(doc["q"])
        Q = np.zeros((q, q))
        for i, j, v in doc["terms"]:
            if j < i:
                raise ValueError(f"term ({i}, {j}) is below the diagonal")
            Q[i, j] = v
        return cls(
            Q,
            lambda1=float(doc.get("lambda1", 0.0)),
            lambda2=float(doc.get("lambda2", 0.0)),
            m=int(doc.get("m", 0)),
            xi=float(doc.get("xi", 0.0)),
            constant_offset=float(doc.get("constant_offset", 0.0)),
        )

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1))

    @classmethod
    def load(cls, path) -> "QuboProblem":
        return cls.from_dict(json.loads(Path(path).read_text()))


def build_q(
    regime: WindRegime,
    params: WakeParams,
    geometry: GridGeometry,
    lambda1: float = DEFAULT_LAMBDA1,
    m: int = 4,
) -> QuboProblem:
    """Weight matrix of ``-f + lambda1 (sum x - m)^2``.

    Diagonal: ``-sum_d p_d v_d^3 / 3 + lambda1 (1 - 2m)``. Each unordered
    pair ``i < j`` carries both directed wake losses plus ``2 lambda1``.
    The wake losses enter with a plus sign since they reduce ``f``.
    """
    if lambda1 < 0:
        raise ValueError("lambda1 must be non-negative")
    D = deficit_matrix(regime, params, geometry)
    Q = np.triu(D + D.T + 2.0 * lambda1, k=1)
    Q[np.diag_indices(geometry.q)] = -regime.free_power() + lambda1 * (1 - 2 * m)
    return QuboProblem(Q, lambda1=lambda1, m=m, constant_offset=lambda1 * m * m)


def evaluate_qubo(problem: QuboProblem, layout):
    """``sum_{i<=j} Q_ij x_i x_j`` for one layout or a batch of rows."""
    x, single = _as_layouts(layout)
    if x.shape[1] != problem.q:
        raise ValueError(f"layouts have {x.shape[1]} sites, problem has {problem.q}")
    val = np.einsum("ni,ij,nj->n", x, problem.Q, x)
    return float(val[0]) if single else val


def lambda1_lower_bound(regime: WindRegime) -> float:
    """Penalty weight above which every QUBO minimiser is count-feasible.

    An extra turbine gains at most the free power of one site, while a unit
    count violation costs at least ``lambda1``.
    """
    return regime.free_power()
