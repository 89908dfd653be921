"""Independent brute-force solvers for certifying the encoder and simulator."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import CapacityError, ConfigurationError, MatrixError
from .ising import DenseHamiltonian, FeatureSubset
from .mi import MIMatrix

MAX_BRUTE_FORCE_BITS = 20


def all_bitstrings(n: int) -> np.ndarray:
    """(2^n, n) array of bit vectors in basis order (qubit 0 = MSB)."""
    if n > MAX_BRUTE_FORCE_BITS:
        raise CapacityError(f"{n} bits exceed the enumeration cap of "
                            f"{MAX_BRUTE_FORCE_BITS}")
    values = np.arange(1 << n)[:, None]
    shifts = n - 1 - np.arange(n)[None, :]
    return ((values >> shifts) & 1).astype(float)


def penalized_energy(m: MIMatrix, alpha: float, k: int, x: np.ndarray) -> np.ndarray:
    """E(x) = -x^T M x + alpha (sum x - k)^2, rows of x evaluated at once."""
    quad = np.einsum("bi,ij,bj->b", x, m.entries, x)
    return -quad + alpha * (x.sum(axis=1) - k) ** 2


@dataclass(frozen=True)
class OracleResult:
    """All global minimizers of the penalized objective."""

    best_energy: float
    optimal_bitstrings: tuple
    objective_value: float

    def to_json_dict(self) -> dict:
        return {"best_energy": self.best_energy,
                "optimal_bitstrings": [list(b) for b in self.optimal_bitstrings],
                "objective_value": self.objective_value}


def brute_force_select(m: MIMatrix, alpha: float, k: int) -> OracleResult:
    """Enumerate every bitstring and return all minimizers of E(x).

    Minimizers are listed in ascending bitstring order; ``objective_value``
    is the un-penalized x^T M x of the first one.
    """
    if not 0 <= k <= m.n:
        raise ConfigurationError(f"k={k} out of range [0, {m.n}]")
    x = all_bitstrings(m.n)
    energies = penalized_energy(m, alpha, k, x)
    best = float(energies.min())
    winners = np.flatnonzero(energies <= best + 1e-12)
    bits = tuple(tuple(int(v) for v in x[w]) for w in winners)
    first = x[winners[0]]
    return OracleResult(best, bits, float(first @ m.entries @ first))


def exact_ground_states(hp: DenseHamiltonian, tol: float = 1e-9):
    """Minimum diagonal entry of a diagonal Hamiltonian and its basis indices."""
    matrix = hp.matrix
    diag = np.real(np.diag(matrix)).copy()
    if np.any(matrix != np.diag(np.diag(matrix))):
        raise MatrixError("exact_ground_states requires a diagonal Hamiltonian")
    e0 = float(diag.min())
    indices = [int(i) for i in np.flatnonzero(diag <= e0 + tol)]
    return e0, indices


def evolve_reference(h0, hp, total_time: float, fine_steps: int) -> np.ndarray:
    """Reference midpoint propagation at fine resolution; returns final state.

    Written as its own loop (no shared code with the main integrator) so
    agreement between the two is a genuine cross-check.
    """
    a = h0.matrix if isinstance(h0, DenseHamiltonian) else np.asarray(h0)
    b = hp.matrix if isinstance(hp, DenseHamiltonian) else np.asarray(hp)
    dim = a.shape[0]
    psi = np.full(dim, 1.0 / math.sqrt(dim), dtype=complex)
    dt = total_time / fine_steps
    for j in range(fine_steps):
        s = (j + 0.5) / fine_steps
        lam, vec = np.linalg.eigh((1.0 - s) * a + s * b)
        phases = np.exp(-1j * lam * dt)
        psi = vec @ (phases * (vec.conj().T @ psi))
    return psi


def greedy_forward_baseline(m: MIMatrix, k: int) -> FeatureSubset:
    """Classical forward selection on the un-penalized objective.

    Starting from the empty set, repeatedly add the feature with the largest
    marginal increase of x^T M x (ties to the lowest index), k times.
    """
    if not 1 <= k <= m.n:
        raise ConfigurationError(f"k={k} out of range [1, {m.n}]")
    e = m.entries
    chosen: list = []
    remaining = list(range(m.n))
    for _ in range(k):
        gains = [(e[j, j] + 2.0 * sum(e[i, j] for i in chosen), j)
                 for j in remaining]
        _, best = max(gains, key=lambda t: (t[0], -t[1]))
        chosen.append(best)
        remaining.remove(best)
    bits = tuple(1 if i in chosen else 0 for i in range(m.n))
    return FeatureSubset(bits)


def alpha_star(m: MIMatrix) -> float:
    """Penalty strength guaranteeing every optimum has exactly k features."""
    return 2.0 * m.n * float(np.abs(m.entries).max()) + 1.0
