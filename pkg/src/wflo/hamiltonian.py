"""Diagonal Pauli-Z Hamiltonians equivalent to a QUBO.

Bit convention: ``x_i = (1 - z_i) / 2``, so basis label bit 1 means a turbine.
Labels are strings or integers; the leftmost character of a label string is
site 1, which is the most significant bit of the integer label. ``z_mask``
follows the same bit order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qubo import QuboProblem

PRUNE_TOL = 1e-15


@dataclass(frozen=True)
class PauliTerm:
    coefficient: float
    z_mask: int

    @property
    def weight(self) -> int:
        return bin(self.z_mask).count("1")

    def label(self, num_qubits: int) -> str:
        return "".join("Z" if self.z_mask >> (num_qubits - 1 - k) & 1 else "I" for k in range(num_qubits))


@dataclass(frozen=True)
class DiagonalHamiltonian:
    terms: tuple[PauliTerm, ...]
    num_qubits: int

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def as_dict(self) -> dict[str, float]:
        return {t.label(self.num_qubits): t.coefficient for t in self.terms}

    def diagonal(self) -> np.ndarray:
        """Energies of all 2**q basis states indexed by integer label."""
        labels = np.arange(2**self.num_qubits)
        out = np.zeros(labels.size)
        for t in self.terms:
            parity = np.zeros(labels.size, dtype=np.int64)
            m = labels & t.z_mask
            # popcount parity
            while np.any(m):
                parity ^= m & 1
                m >>= 1
            out += t.coefficient * (1 - 2 * parity)
        return out


def _site_bit(q: int, site: int) -> int:
    """Mask bit for 0-based site index."""
    return 1 << (q - 1 - site)


def qubo_to_hamiltonian(problem: QuboProblem, prune: float = PRUNE_TOL) -> DiagonalHamiltonian:
    q = problem.q
    Q = problem.Q
    coeffs: dict[int, float] = {0: 0.0}
    for i in range(q):
        bi = _site_bit(q, i)
        coeffs[0] += Q[i, i] / 2.0
        coeffs[bi] = coeffs.get(bi, 0.0) - Q[i, i] / 2.0
        for j in range(i + 1, q):
            w = Q[i, j]
            if w == 0:
                continue
            bj = _site_bit(q, j)
            coeffs[0] += w / 4.0
            coeffs[bi] -= w / 4.0
            coeffs[bj] = coeffs.get(bj, 0.0) - w / 4.0
            coeffs[bi | bj] = coeffs.get(bi | bj, 0.0) + w / 4.0
    terms = [PauliTerm(c, mask) for mask, c in coeffs.items() if abs(c) > prune]
    return DiagonalHamiltonian(terms, q)


def label_to_int(label, num_qubits: int) -> int:
    if isinstance(label, str):
        if len(label) != num_qubits or set(label) - {"0", "1"}:
            raise ValueError(f"bad basis label {label!r} for {num_qubits} qubits")
        return int(label, 2)
    value = int(label)
    if not 0 <= value < 2**num_qubits:
        raise ValueError(f"label {value} out of range for {num_qubits} qubits")
    return value


def label_to_bits(label, num_qubits: int) -> np.ndarray:
    value = label_to_int(label, num_qubits)
    return np.array([(value >> (num_qubits - 1 - k)) & 1 for k in range(num_qubits)], dtype=int)


def bits_to_label(bits) -> str:
    return "".join(str(int(b)) for b in bits)


def basis_energy(h: DiagonalHamiltonian, label) -> float:
    value = label_to_int(label, h.num_qubits)
    total = 0.0
    for t in h.terms:
        sign = -1.0 if bin(value & t.z_mask).count("1") % 2 else 1.0
        total += t.coefficient * sign
    return total


def all_bitstrings(q: int) -> np.ndarray:
    """(2**q, q) 0/1 matrix whose row ``n`` is the bits of label ``n``."""
    n = np.arange(2**q)[:, None]
    return (n >> np.arange(q - 1, -1, -1)) & 1
