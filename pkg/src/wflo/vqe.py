"""Noiseless statevector simulation of the layered rotation/CNOT ansatz.

Qubit ``k`` (0-based) is site ``k + 1`` and is the most significant bit of
the basis index, matching :mod:`wflo.hamiltonian`.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .hamiltonian import DiagonalHamiltonian, label_to_int

MAX_QUBITS = 24
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AnsatzSpec:
    """Layered ansatz: a rotation on every qubit, then a CNOT chain.

    ``rotation_axes`` is cycled over layers, so the default ``"yx"`` uses
    Y-rotations in odd layers and X-rotations in even ones. ``"y"`` gives the
    all-Y circuit, whose real amplitudes cap the parameter rank at
    ``2**q - 1``. Parameters are ordered layer by layer, qubit 0 first.
    """

    num_qubits: int
    num_layers: int | None = None
    rotation_axes: str = "yx"
    entangler: str = "cnot-chain"

    def __post_init__(self):
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise ValueError(f"num_qubits must be in 1..{MAX_QUBITS}")
        if self.num_layers is None:
            object.__setattr__(self, "num_layers", self.num_qubits)
        if self.num_layers < 0:
            raise ValueError("num_layers must be non-negative")
        if not self.rotation_axes or set(self.rotation_axes) - set("xyz"):
            raise ValueError(f"rotation_axes must be drawn from 'xyz', got {self.rotation_axes!r}")
        if self.entangler not in ("cnot-chain", "none"):
            raise ValueError(f"unknown entangler {self.entangler!r}")

    @property
    def num_parameters(self) -> int:
        return self.num_qubits * self.num_layers

    def axis(self, layer: int) -> str:
        return self.rotation_axes[layer % len(self.rotation_axes)]

    @cached_property
    def _chain_perm(self) -> np.ndarray:
        # gather index: new[b] = old[perm[b]] for the whole CNOT chain
        q = self.num_qubits
        idx = np.arange(2**q)
        if self.entangler == "none":
            return idx
        src = idx.copy()
        # apply CNOT(k, k+1) in order to basis labels, then invert
        for k in range(q - 1):
            ctrl = (src >> (q - 1 - k)) & 1
            src = src ^ (ctrl << (q - 2 - k))
        perm = np.empty_like(idx)
        perm[src] = idx
        return perm


def rotation(axis: str, theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    if axis == "y":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if axis == "x":
        return np.array([[c, -1j * s], [-1j * s, c]])
    return np.array([[complex(c, -s), 0], [0, complex(c, s)]])


def rotation_derivative(axis: str, theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    if axis == "y":
        return 0.5 * np.array([[-s, -c], [c, -s]], dtype=complex)
    if axis == "x":
        return 0.5 * np.array([[-s, -1j * c], [-1j * c, -s]])
    return 0.5 * np.array([[complex(-s, -c), 0], [0, complex(-s, c)]])


@dataclass(frozen=True, eq=False)
class Statevector:
    amplitudes: np.ndarray

    @property
    def num_qubits(self) -> int:
        return int(self.amplitudes.size).bit_length() - 1

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass
class ShotResult:
    counts: dict[str, int]
    shots: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not add up to the number of shots")


def _apply_1q(psi: np.ndarray, q: int, k: int, U: np.ndarray) -> np.ndarray:
    view = psi.reshape(2**k, 2, 2 ** (q - k - 1))
    return np.einsum("ab,ibj->iaj", U, view).reshape(-1)


def _run_circuit(spec: AnsatzSpec, theta: np.ndarray, swap: int | None = None) -> np.ndarray:
    """Apply the ansatz to |0..0>; optionally replace gate ``swap`` by its derivative."""
    q = spec.num_qubits
    psi = np.zeros(2**q, dtype=complex)
    psi[0] = 1.0
    n = 0
    for layer in range(spec.num_layers):
        ax = spec.axis(layer)
        for k in range(q):
            gate = rotation_derivative(ax, theta[n]) if n == swap else rotation(ax, theta[n])
            psi = _apply_1q(psi, q, k, gate)
            n += 1
        psi = psi[spec._chain_perm]
    return psi


def _check_theta(spec: AnsatzSpec, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float).ravel()
    if theta.size != spec.num_parameters:
        raise ValueError(f"ansatz takes {spec.num_parameters} parameters, got {theta.size}")
    return np.mod(theta, TWO_PI)


def apply_ansatz(spec: AnsatzSpec, theta) -> Statevector:
    return Statevector(_run_circuit(spec, _check_theta(spec, theta)))


def random_parameters(spec: AnsatzSpec, rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(0.0, TWO_PI, spec.num_parameters)


def sample_shots(state: Statevector, K: int, seed=None) -> ShotResult:
    """Draw ``K`` computational-basis measurements.

    ``seed`` may be an int, ``None`` or an existing ``numpy`` Generator (which
    is advanced in place).
    """
    if K < 1:
        raise ValueError("need at least one shot")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    p = state.probabilities()
    counts = rng.multinomial(K, p / p.sum())
    q = state.num_qubits
    return ShotResult({format(i, f"0{q}b"): int(c) for i, c in enumerate(counts) if c}, K)


def _cvar_count(alpha: float, K: int) -> int:
    # round before ceil so that e.g. 0.7 * 10 keeps 7 samples, not 8
    return max(1, math.ceil(round(alpha * K, 9)))


def cvar_estimate(energies, alpha: float) -> float:
    """Mean of the lowest ``ceil(alpha * K)`` of ``K`` sampled energies."""
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    raw = np.asarray(energies, dtype=float).ravel()
    if raw.size == 0:
        raise ValueError("no energies given")
    keep = _cvar_count(alpha, raw.size)
    if keep == raw.size:
        return float(raw.mean())
    return float(np.sort(raw)[:keep].mean())


def exact_cvar(probabilities: np.ndarray, energies: np.ndarray, alpha: float) -> float:
    """CVaR of the exact distribution: mean energy of its lowest ``alpha`` mass."""
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    order = np.argsort(energies, kind="stable")
    p = probabilities[order] / probabilities.sum()
    e = energies[order]
    before = np.concatenate([[0.0], np.cumsum(p)[:-1]])
    take = np.clip(alpha - before, 0.0, p)
    return float(take @ e / alpha)


def _diag(hamiltonian) -> np.ndarray:
    if isinstance(hamiltonian, DiagonalHamiltonian):
        return hamiltonian.diagonal()
    return np.asarray(hamiltonian, dtype=float)


def expectation(
    state: Statevector,
    hamiltonian,
    mode: str = "exact",
    *,
    alpha: float = 1.0,
    shots: int = 1024,
    seed=None,
) -> float:
    """Energy estimate of ``state``.

    ``hamiltonian`` is a :class:`DiagonalHamiltonian` or its precomputed
    diagonal. Modes: ``"exact"`` (noiseless mean), ``"exact-cvar"`` and
    ``"sampled"`` (``shots`` draws reduced with :func:`cvar_estimate`).
    """
    energies = _diag(hamiltonian)
    p = state.probabilities()
    if energies.size != p.size:
        raise ValueError("Hamiltonian and state dimensions differ")
    if mode == "exact":
        return float(p @ energies / p.sum())
    if mode == "exact-cvar":
        return exact_cvar(p, energies, alpha)
    if mode == "sampled":
        if shots < 1:
            raise ValueError("need at least one shot")
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        counts = rng.multinomial(shots, p / p.sum())
        return cvar_estimate(np.repeat(energies, counts), alpha)
    raise ValueError(f"unknown expectation mode {mode!r}")


def select_solution(counts_or_state, m: int, num_qubits: int | None = None) -> str | None:
    """Most probable basis label with exactly ``m`` ones.

    Ties go to the lowest integer label. Returns ``None`` when no weight-``m``
    label carries any weight.
    """
    if isinstance(counts_or_state, ShotResult):
        counts_or_state = counts_or_state.counts
    if isinstance(counts_or_state, Mapping):
        if not counts_or_state:
            return None
        q = num_qubits or len(next(iter(counts_or_state)))
        weights = {label_to_int(k, q): float(v) for k, v in counts_or_state.items()}
    else:
        amps = counts_or_state.amplitudes if isinstance(counts_or_state, Statevector) else np.asarray(counts_or_state)
        q = int(amps.size).bit_length() - 1
        probs = np.abs(amps) ** 2
        weights = {int(i): float(probs[i]) for i in np.flatnonzero(probs)}
    best, best_w = None, 0.0
    for label in sorted(weights):
        w = weights[label]
        if w > best_w and bin(label).count("1") == m:
            best, best_w = label, w
    return None if best is None else format(best, f"0{q}b")


def dea_jacobian(spec: AnsatzSpec, theta) -> np.ndarray:
    """Real Jacobian of the output state, ``[Re dC; Im dC]`` per parameter."""
    theta = _check_theta(spec, theta)
    dim = 2**spec.num_qubits
    J = np.empty((2 * dim, spec.num_parameters))
    for k in range(spec.num_parameters):
        d = _run_circuit(spec, theta, swap=k)
        J[:dim, k] = d.real
        J[dim:, k] = d.imag
    return J


def dea_check(spec: AnsatzSpec, theta, rtol: float = 1e-10) -> list[tuple[int, bool]]:
    """Flag each parameter as independent or redundant.

    Parameters are added one at a time. Parameter ``k`` is independent if the
    Gram matrix ``S = J^T J`` of the independent columns found so far plus
    column ``k`` stays invertible, judged by its smallest eigenvalue relative
    to its largest. Redundant columns are dropped before moving on.
    """
    J = dea_jacobian(spec, theta)
    keep: list[int] = []
    verdicts = []
    for k in range(J.shape[1]):
        cols = J[:, keep + [k]]
        ev = np.linalg.eigvalsh(cols.T @ cols)
        ok = ev[-1] > 0 and ev[0] > rtol * ev[-1]
        if ok:
            keep.append(k)
        verdicts.append((k + 1, bool(ok)))
    return verdicts
