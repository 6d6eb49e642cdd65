"""Grid geometry, wind regimes and the linear-superposition wake model.

Sites are numbered 1..q row-major starting at the north-west corner, so site 1
is ``(1, 1)`` and site ``q`` is ``(l_grid, l_grid)``. Rows grow southward and
columns grow eastward. Wind angles are the direction the wind comes *from*,
measured clockwise from west: 0 deg blows eastward (+col), 90 deg blows
southward (+row).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

# comparisons on the wake cone boundary
_GEOM_EPS = 1e-9


@dataclass(frozen=True)
class GridGeometry:
    l_grid: int
    spacing: float = 1.0

    def __post_init__(self):
        if int(self.l_grid) != self.l_grid or self.l_grid < 1:
            raise ValueError(f"l_grid must be a positive integer, got {self.l_grid!r}")
        if self.spacing != 1.0:
            raise ValueError("only unit grid spacing is supported")

    @property
    def q(self) -> int:
        return self.l_grid * self.l_grid

    def coords(self) -> np.ndarray:
        """(q, 2) array of (row, col) for sites 1..q."""
        idx = np.arange(self.q)
        return np.stack([idx // self.l_grid + 1, idx % self.l_grid + 1], axis=1).astype(float)

    def distances(self) -> np.ndarray:
        c = self.coords()
        diff = c[:, None, :] - c[None, :, :]
        return np.sqrt((diff**2).sum(-1))


def site_coords(geometry: GridGeometry, index: int) -> tuple[int, int]:
    """Map a 1-based site index to its 1-based (row, col)."""
    if not 1 <= index <= geometry.q:
        raise ValueError(f"site index {index} outside 1..{geometry.q}")
    l = geometry.l_grid
    return (index - 1) // l + 1, (index - 1) % l + 1


def rotate90_permutation(geometry: GridGeometry) -> np.ndarray:
    """0-based site permutation for a clockwise quarter turn of the grid.

    ``perm[i]`` is the site that site ``i`` lands on.
    """
    l = geometry.l_grid
    perm = np.empty(geometry.q, dtype=int)
    for i in range(geometry.q):
        r, c = divmod(i, l)
        perm[i] = c * l + (l - 1 - r)
    return perm


@dataclass(frozen=True)
class WindArrangement:
    angle_deg: float
    speed: float
    probability: float

    def __post_init__(self):
        if self.probability < 0:
            raise ValueError("arrangement probability must be non-negative")
        if self.speed <= 0:
            raise ValueError("free wind speed must be positive")

    def propagation(self) -> tuple[float, float]:
        """Unit vector the wake travels along, as (d_row, d_col)."""
        a = math.radians(self.angle_deg)
        return math.sin(a), math.cos(a)


@dataclass(frozen=True)
class WindRegime:
    arrangements: tuple[WindArrangement, ...]

    def __post_init__(self):
        object.__setattr__(self, "arrangements", tuple(self.arrangements))
        if not self.arrangements:
            raise ValueError("wind regime needs at least one arrangement")
        total = math.fsum(d.probability for d in self.arrangements)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"arrangement probabilities sum to {total!r}, not 1")

    def __len__(self):
        return len(self.arrangements)

    def __iter__(self):
        return iter(self.arrangements)

    def free_power(self) -> float:
        """Expected power of an unwaked turbine, sum_d p_d v_d^3 / 3."""
        return math.fsum(d.probability * d.speed**3 / 3.0 for d in self.arrangements)

    def max_speed(self) -> float:
        return max(d.speed for d in self.arrangements)


def mosetti_regime_2() -> WindRegime:
    """36 equiprobable directions every 10 degrees at 12 m/s."""
    return WindRegime(tuple(WindArrangement(10.0 * k, 12.0, 1.0 / 36.0) for k in range(36)))


@dataclass(frozen=True)
class WakeParams:
    x_max: float = 1.0
    r_spread: float = 1.5
    r_turbine: float = 0.33
    axial_induction: float = 0.1

    def __post_init__(self):
        if not self.x_max > 0:
            raise ValueError("x_max must be positive")
        if not self.r_spread > self.r_turbine >= 0:
            raise ValueError("need r_spread > r_turbine >= 0 for a growing wake")
        if not 0 < self.axial_induction < 0.5:
            raise ValueError("axial induction must lie in (0, 0.5)")


def alpha_T(params: WakeParams) -> float:
    """Radial expansion rate of the wake."""
    if params.x_max == 0:
        raise ValueError("x_max must be non-zero")
    return (params.r_spread - params.r_turbine) / params.x_max


def reduced_speed(params: WakeParams, v_d: float, delta):
    """Jensen reduced speed at distance ``delta`` behind a turbine.

    Works elementwise on arrays. The deficit decays monotonically with
    distance, so ``u`` always lies in ``[v_d (1 - 2a), v_d]``.
    """
    delta = np.asarray(delta, dtype=float)
    if np.any(delta < 0):
        raise ValueError("distance must be non-negative")
    a = params.axial_induction
    denom = (1.0 + alpha_T(params) * (delta / params.r_spread) ** 2) ** 2
    u = v_d * (1.0 - 2.0 * a / denom)
    return float(u) if u.ndim == 0 else u


def in_wake(i: int, j: int, d: WindArrangement, params: WakeParams, geometry: GridGeometry) -> bool:
    """True if the centre of site ``j`` lies in the wake cone of a turbine at ``i``.

    The cone starts at the centre of ``i``, extends ``x_max`` downstream and
    has half-width ``r_spread * t`` at downstream distance ``t``.
    """
    if i == j:
        return False
    ri, ci = site_coords(geometry, i)
    rj, cj = site_coords(geometry, j)
    dr, dc = rj - ri, cj - ci
    pr, pc = d.propagation()
    t = dr * pr + dc * pc
    s = abs(dr * pc - dc * pr)
    return _GEOM_EPS < t <= params.x_max + _GEOM_EPS and s <= params.r_spread * t + _GEOM_EPS


def wake_masks(regime: WindRegime, params: WakeParams, geometry: GridGeometry) -> np.ndarray:
    """Boolean array ``[d, i, j]``: site j is waked by i under arrangement d."""
    c = geometry.coords()
    dr = c[None, :, 0] - c[:, None, 0]
    dc = c[None, :, 1] - c[:, None, 1]
    masks = np.zeros((len(regime), geometry.q, geometry.q), dtype=bool)
    for n, d in enumerate(regime):
        pr, pc = d.propagation()
        t = dr * pr + dc * pc
        s = np.abs(dr * pc - dc * pr)
        masks[n] = (t > _GEOM_EPS) & (t <= params.x_max + _GEOM_EPS) & (s <= params.r_spread * t + _GEOM_EPS)
    return masks


def deficit_matrix(regime: WindRegime, params: WakeParams, geometry: GridGeometry) -> np.ndarray:
    """Expected pairwise power loss ``D[i, j]`` of a turbine at j waked by i.

    ``D[i, j] = sum_d p_d 1{j in w_i(d)} (v_d^3 - u_ij^3) / 3``; zero diagonal.
    """
    masks = wake_masks(regime, params, geometry)
    dist = geometry.distances()
    out = np.zeros((geometry.q, geometry.q))
    for n, d in enumerate(regime):
        u = reduced_speed(params, d.speed, dist)
        out += np.where(masks[n], d.probability * (d.speed**3 - u**3) / 3.0, 0.0)
    return out


def power_ls(layout, regime: WindRegime, params: WakeParams, geometry: GridGeometry) -> float:
    """Linear-superposition expected power of a single layout, in kW.

    Straight summation over arrangements and turbine pairs. Slow but
    transparent; :func:`wflo.qubo.objective_f` is the vectorised route.
    """
    x = np.asarray(layout).astype(int).ravel()
    if x.size != geometry.q:
        raise ValueError(f"layout has {x.size} sites, grid has {geometry.q}")
    turbines = [i + 1 for i in range(geometry.q) if x[i] == 1]
    total = 0.0
    for d in regime:
        for i in turbines:
            loss = 0.0
            ri, ci = site_coords(geometry, i)
            for j in turbines:
                if in_wake(i, j, d, params, geometry):
                    rj, cj = site_coords(geometry, j)
                    u = reduced_speed(params, d.speed, math.hypot(ri - rj, ci - cj))
                    loss += (d.speed**3 - u**3) / 3.0
            total += d.probability * (d.speed**3 / 3.0 - loss)
    return total


@dataclass(frozen=True)
class WindFarmSetup:
    """A grid, wind regime and wake parameters read from one JSON document."""

    geometry: GridGeometry
    regime: WindRegime = field(default_factory=mosetti_regime_2)
    params: WakeParams = field(default_factory=WakeParams)

    @classmethod
    def from_dict(cls, doc: dict) -> "WindFarmSetup":
        geometry = GridGeometry(int(doc.get("l_grid", 4)))
        if "arrangements" in doc:
            regime = WindRegime(
                tuple(
                    WindArrangement(float(a["angle_deg"]), float(a["speed"]), float(a["probability"]))
                    for a in doc["arrangements"]
                )
            )
        else:
            regime = mosetti_regime_2()
        params = WakeParams(**doc["wake"]) if "wake" in doc else WakeParams()
        return cls(geometry, regime, params)

    def to_dict(self) -> dict:
        return {
            "arrangements": [
                {"angle_deg": d.angle_deg, "speed": d.speed, "probability": d.probability}
                for d in self.regime
            ],
            "wake": {
                "x_max": self.params.x_max,
                "r_spread": self.params.r_spread,
                "r_turbine": self.params.r_turbine,
                "axial_induction": self.params.axial_induction,
            },
            "l_grid": self.geometry.l_grid,
        }

    @classmethod
    def load(cls, path) -> "WindFarmSetup":
        return cls.from_dict(json.loads(Path(path).read_text()))
