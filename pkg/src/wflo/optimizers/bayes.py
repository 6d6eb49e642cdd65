"""Bayesian optimisation with a periodic-kernel Gaussian process.

The kernel is

    k(a, b) = sigma^2 prod_i exp(-2 / l^2 sin^2(pi |(a_i - b_i) / p|^2))

with the squared scaled difference inside the sine (``form="printed"``).
That form is not positive semidefinite once a handful of points are spread
over a period, so the default is the usual ``sin^2(pi |a_i - b_i| / p)``
(``form="standard"``). Candidates are picked by maximising expected
improvement with multi-start COBYLA.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.special import ndtr

from .cobyla import cobyla_minimize
from .objective import as_handle

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def periodic_kernel(A, B, sigma=1.0, length=1.0, period=2 * math.pi, form="standard") -> np.ndarray:
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    diff = np.abs(A[:, None, :] - B[None, :, :]) / period
    if form == "printed":
        arg = math.pi * diff**2
    elif form == "standard":
        arg = math.pi * diff
    else:
        raise ValueError(f"unknown kernel form {form!r}")
    return sigma**2 * np.exp((-2.0 / length**2) * np.sin(arg) ** 2).prod(axis=-1)


@dataclass
class GpModel:
    training_points: list[tuple[np.ndarray, float]] = field(default_factory=list)
    kernel_sigma: float = 1.0
    kernel_length: float = 1.0
    kernel_period: float = 2 * math.pi
    noise_variance: float = 0.0
    kernel_form: str = "standard"
    # filled by gp_fit
    _chol: tuple | None = field(default=None, repr=False)
    _weights: np.ndarray | None = field(default=None, repr=False)
    _mean: float = 0.0
    _jitter: float = 0.0

    def kernel(self, A, B) -> np.ndarray:
        return periodic_kernel(A, B, self.kernel_sigma, self.kernel_length, self.kernel_period, self.kernel_form)

    @property
    def X(self) -> np.ndarray:
        return np.array([np.ravel(t) for t, _ in self.training_points], dtype=float)

    @property
    def y(self) -> np.ndarray:
        return np.array([v for _, v in self.training_points], dtype=float)


def gp_fit(model: GpModel, max_jitter: float = 1e-4) -> GpModel:
    """Factorise the training covariance; returns a fitted copy.

    The prior mean is the sample mean of the observations. If the covariance
    is numerically singular, diagonal jitter grows tenfold from
    ``1e-12 sigma^2`` up to ``max_jitter sigma^2`` before giving up.
    """
    if not model.training_points:
        raise ValueError("GP needs at least one training point")
    X, y = model.X, model.y
    K = model.kernel(X, X)
    base = model.kernel_sigma**2
    jitter = 0.0
    while True:
        try:
            chol = cho_factor(K + (model.noise_variance + jitter) * np.eye(len(y)), lower=True)
            break
        except np.linalg.LinAlgError:
            jitter = 1e-12 * base if jitter == 0 else 10 * jitter
            if jitter > max_jitter * base:
                raise np.linalg.LinAlgError("GP covariance is not positive definite")
    mean = float(y.mean())
    return replace(model, _chol=chol, _weights=cho_solve(chol, y - mean), _mean=mean, _jitter=jitter)


def gp_predict(model: GpModel, theta) -> tuple[float, float]:
    """Posterior mean and standard deviation of the latent function."""
    if model._chol is None:
        raise ValueError("call gp_fit first")
    t = np.atleast_2d(np.asarray(theta, dtype=float).ravel())
    ks = model.kernel(t, model.X)[0]
    mean = model._mean + ks @ model._weights
    v = cho_solve(model._chol, ks)
    var = model.kernel_sigma**2 - ks @ v
    return float(mean), math.sqrt(max(var, 0.0))


def ei_closed_form(mean: float, std: float, e_min: float) -> float:
    gain = e_min - mean
    if std <= 0:
        return max(0.0, gain)
    z = gain / std
    return max(0.0, gain * float(ndtr(z)) + std * _INV_SQRT_2PI * math.exp(-0.5 * z * z))


def expected_improvement(model: GpModel, theta, e_min: float) -> float:
    mean, std = gp_predict(model, theta)
    return ei_closed_form(mean, std, e_min)


@dataclass
class BoOptions:
    budget: int = 200
    n_initial: int = 10
    sigma: float = 1.0
    length: float = 1.0
    period: float = 2 * math.pi
    kernel_form: str = "standard"
    noise_variance: float | None = None  # None: estimate from repeats
    noise_repeats: int = 3
    n_restarts: int = 8
    acq_max_evals: int = 200


def bo_minimize(objective, dim: int, options: BoOptions | None = None, seed=None, **kwargs):
    """Minimise a (possibly noisy) objective on ``[0, period)^dim``.

    The first design point is evaluated ``noise_repeats`` times to estimate
    the noise variance unless ``noise_variance`` is given; the repeats count
    toward ``budget`` and the GP sees their mean. Returns
    ``(theta_best, value_best, handle)`` where the best is taken over all
    observations.
    """
    opts = options or BoOptions()
    if kwargs:
        opts = replace(opts, **kwargs)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    f = as_handle(objective)
    repeats = opts.noise_repeats if opts.noise_variance is None else 1
    design_size = opts.n_initial + repeats - 1
    if opts.budget < design_size:
        raise ValueError(f"budget {opts.budget} is below the initial design size {design_size}")
    start = f.evaluation_count

    design = rng.uniform(0.0, opts.period, (opts.n_initial, dim))
    first = [f(design[0]) for _ in range(repeats)]
    noise = float(np.var(first, ddof=1)) if repeats > 1 else float(opts.noise_variance or 0.0)
    points = [(design[0], float(np.mean(first)))]
    for theta in design[1:]:
        points.append((theta, f(theta)))

    model = GpModel(
        points,
        kernel_sigma=opts.sigma,
        kernel_length=opts.length,
        kernel_period=opts.period,
        noise_variance=noise,
        kernel_form=opts.kernel_form,
    )
    while f.evaluation_count - start < opts.budget:
        fitted = gp_fit(model)
        e_min = min(v for _, v in model.training_points)
        best_theta, best_ei = None, -1.0
        for _ in range(opts.n_restarts):
            t0 = rng.uniform(0.0, opts.period, dim)
            t, neg_ei, _ = cobyla_minimize(
                lambda t: -expected_improvement(fitted, t, e_min),
                t0,
                rho_begin=0.5,
                rho_end=1e-3,
                max_evals=opts.acq_max_evals,
            )
            if -neg_ei > best_ei:
                best_theta, best_ei = t, -neg_ei
        theta = np.mod(best_theta, opts.period)
        model.training_points.append((theta, f(theta)))

    return (*f.best(), f)
