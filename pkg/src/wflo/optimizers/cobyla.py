"""Unconstrained COBYLA-style minimisation with linear simplex models.

The method keeps ``n + 1`` interpolation points, fits the unique linear model
through them, and steps to the model minimiser on a trust-region ball. The
radius lower bound ``rho`` shrinks from ``rho_begin`` to ``rho_end`` once the
simplex is well shaped and trust-region steps stop paying off.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .objective import as_handle

# simplex acceptability thresholds, relative to the trust radius
_FAR = 2.1
_FLAT = 0.25


@dataclass
class CobylaOptions:
    rho_begin: float = 0.5
    rho_end: float = 1e-4
    max_evals: int = 1000


def _next_rho(rho: float, rho_end: float) -> float:
    if rho > 250 * rho_end:
        return 0.1 * rho
    if rho > 16 * rho_end:
        return float(np.sqrt(rho * rho_end))
    return rho_end


class _Simplex:
    def __init__(self, X: np.ndarray, F: np.ndarray):
        self.X = X
        self.F = F
        self.refresh()

    def refresh(self):
        self.best = int(np.argmin(self.F))
        others = [k for k in range(len(self.F)) if k != self.best]
        self.others = others
        self.sim = (self.X[others] - self.X[self.best]).T
        try:
            self.simi = np.linalg.inv(self.sim)
        except np.linalg.LinAlgError:
            self.simi = np.linalg.pinv(self.sim)

    @property
    def x0(self):
        return self.X[self.best]

    @property
    def f0(self):
        return self.F[self.best]

    def gradient(self) -> np.ndarray:
        return self.simi.T @ (self.F[self.others] - self.f0)

    def replace(self, k: int, x: np.ndarray, f: float):
        self.X[k] = x
        self.F[k] = f
        self.refresh()


def cobyla_minimize(objective, theta0, options: CobylaOptions | None = None, **kwargs):
    """Minimise ``objective`` from ``theta0`` without derivatives.

    Returns ``(theta_best, value_best, handle)``; the handle's ``history`` is
    the full evaluation record. Keyword arguments override ``options``.
    """
    opts = options or CobylaOptions()
    if kwargs:
        opts = CobylaOptions(**{**opts.__dict__, **kwargs})
    if not opts.rho_begin >= opts.rho_end > 0:
        raise ValueError("need rho_begin >= rho_end > 0")
    f = as_handle(objective)
    x0 = np.asarray(theta0, dtype=float).ravel()
    if not np.all(np.isfinite(x0)):
        raise ValueError("starting point must be finite")
    n = x0.size
    budget = f.evaluation_count + opts.max_evals

    if n == 0:
        f(x0)
        return (*f.best(), f)

    X = np.vstack([x0, x0 + opts.rho_begin * np.eye(n)])
    F = np.empty(n + 1)
    for k in range(n + 1):
        if f.evaluation_count >= budget:
            return (*f.best(), f)
        F[k] = f(X[k])
    if not np.isfinite(F).all():  # pragma: no cover - handle raises first
        raise ValueError("non-finite objective")
    s = _Simplex(X, F)
    rho = opts.rho_begin
    delta = rho

    while f.evaluation_count < budget:
        g = s.gradient()
        gnorm = float(np.linalg.norm(g))
        ratio = -1.0
        step_len = 0.0
        if gnorm > 0:
            d = -delta * g / gnorm
            step_len = delta
            x_new = s.x0 + d
            f_new = f(x_new)
            predicted = delta * gnorm
            ratio = (s.f0 - f_new) / predicted
            # interpolation point to drop: best volume gain, far points first
            lam = s.simi @ d
            bary = np.empty(n + 1)
            bary[s.others] = lam
            bary[s.best] = 1.0 - lam.sum()
            dist = np.linalg.norm(s.X - s.x0, axis=1)
            score = np.abs(bary) * np.maximum(1.0, (dist / delta) ** 2)
            if f_new >= s.f0:
                score[s.best] = -np.inf
            s.replace(int(np.argmax(score)), x_new, f_new)

        if ratio <= 0.1:
            delta = 0.5 * delta
        elif ratio <= 0.7:
            delta = max(0.5 * delta, step_len)
        else:
            delta = max(0.5 * delta, 2.0 * step_len)
        if delta <= 1.5 * rho:
            delta = rho

        if ratio > 0.1:
            continue

        # poor step: fix the geometry before giving up on this rho
        veta = np.linalg.norm(s.sim, axis=0)
        vsig = 1.0 / np.maximum(np.linalg.norm(s.simi, axis=1), 1e-300)
        far = veta > _FAR * delta
        flat = vsig < _FLAT * delta
        if (far.any() or flat.any()) and f.evaluation_count < budget:
            j = int(np.argmax(veta)) if far.any() else int(np.argmin(vsig))
            direction = s.simi[j] / np.linalg.norm(s.simi[j])
            d = delta * direction
            if g @ d > 0:
                d = -d
            x_new = s.x0 + d
            s.replace(s.others[j], x_new, f(x_new))
            continue
        if delta > rho:
            continue
        if rho <= opts.rho_end:
            break
        rho = _next_rho(rho, opts.rho_end)
        delta = max(0.5 * delta, rho)

    return (*f.best(), f)
