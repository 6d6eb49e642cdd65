from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .objective import as_handle


@dataclass
class PowellOptions:
    xtol: float = 1e-4
    ftol: float = 1e-8
    max_evals: int = 1000
    max_sweeps: int | None = None


def powell_minimize(objective, theta0, options: PowellOptions | None = None, **kwargs):
    """Powell's conjugate-direction method (scipy's implementation).

    Same return contract as :func:`cobyla_minimize`: the best point seen in
    the evaluation history, its value and the recording handle.
    """
    opts = options or PowellOptions()
    if kwargs:
        opts = PowellOptions(**{**opts.__dict__, **kwargs})
    f = as_handle(objective)
    x0 = np.asarray(theta0, dtype=float).ravel()
    if not np.all(np.isfinite(x0)):
        raise ValueError("starting point must be finite")
    start = f.evaluation_count
    remaining = lambda: opts.max_evals - (f.evaluation_count - start)  # noqa: E731

    class _Budget(Exception):
        pass

    def guarded(x):
        if remaining() <= 0:
            raise _Budget
        return f(x)

    try:
        minimize(
            guarded,
            x0,
            method="Powell",
            options={"xtol": opts.xtol, "ftol": opts.ftol, "maxfev": opts.max_evals, "maxiter": opts.max_sweeps},
        )
    except _Budget:
        pass
    return (*f.best(), f)
