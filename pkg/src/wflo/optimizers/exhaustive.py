from __future__ import annotations

import itertools
import math
from typing import Callable, NamedTuple

import numpy as np

from ..qubo import QuboProblem, evaluate_qubo

MAX_SITES = 24
_CHUNK = 1 << 16


class ExhaustiveResult(NamedTuple):
    value: float
    layouts: list[np.ndarray]
    visited: int


def _feasible_chunks(q: int, m: int):
    combos = itertools.combinations(range(q), m)
    while True:
        block = list(itertools.islice(combos, _CHUNK))
        if not block:
            return
        X = np.zeros((len(block), q), dtype=np.int8)
        if m:
            rows = np.repeat(np.arange(len(block)), m)
            X[rows, np.asarray(block).ravel()] = 1
        yield X


def _all_chunks(q: int):
    shifts = np.arange(q - 1, -1, -1)
    for start in range(0, 2**q, _CHUNK):
        n = np.arange(start, min(start + _CHUNK, 2**q))[:, None]
        yield ((n >> shifts) & 1).astype(np.int8)


def exhaustive_search(
    objective: QuboProblem | Callable[[np.ndarray], np.ndarray],
    q: int | None = None,
    m: int | None = None,
    mode: str = "feasible",
    maximize: bool | None = None,
    rtol: float = 1e-9,
) -> ExhaustiveResult:
    """Enumerate layouts and return the optimum with every layout attaining it.

    ``objective`` is a :class:`QuboProblem` (minimised by default) or a
    batch function mapping an ``(n, q)`` 0/1 array to ``n`` values (maximised
    by default). ``mode="feasible"`` visits only layouts with exactly ``m``
    ones; ``mode="all"`` visits all ``2**q``. Optimal layouts are returned in
    ascending integer-label order (site 1 most significant). Ties are
    decided with a relative tolerance ``rtol``.
    """
    if isinstance(objective, QuboProblem):
        problem = objective
        q = problem.q if q is None else q
        m = problem.m if m is None else m
        fn = lambda X: evaluate_qubo(problem, X)  # noqa: E731
        maximize = False if maximize is None else maximize
    else:
        fn = objective
        maximize = True if maximize is None else maximize
    if q is None:
        raise ValueError("q is required for a callable objective")
    if q > MAX_SITES:
        raise ValueError(f"exhaustive search is capped at {MAX_SITES} sites, got {q}")
    if mode == "feasible":
        if m is None or not 0 <= m <= q:
            raise ValueError("feasible mode needs 0 <= m <= q")
        chunks = _feasible_chunks(q, m)
    elif mode == "all":
        chunks = _all_chunks(q)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    sign = -1.0 if maximize else 1.0
    best = math.inf
    winners: list[np.ndarray] = []
    visited = 0
    for X in chunks:
        visited += len(X)
        vals = sign * np.asarray(fn(X), dtype=float)
        low = vals.min()
        tol = rtol * max(1.0, abs(low), abs(best) if math.isfinite(best) else 0.0)
        if low < best - tol:
            best, winners = low, []
        if low <= best + tol:
            winners.extend(X[vals <= best + tol])
            best = min(best, low)
    weights = 2 ** np.arange(q - 1, -1, -1)
    winners.sort(key=lambda x: int(x @ weights))
    return ExhaustiveResult(sign * best, [w.astype(int) for w in winners], visited)
