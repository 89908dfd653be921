"""Ising encoding of the feature-selection objective and dense operators.

The penalized objective over bitstrings x in {0,1}^n is

    E(x) = -x^T M x + alpha * (sum_i x_i - k)^2

and the encoder produces biases/couplings/offset such that the diagonal of
the problem Hamiltonian equals E(x) exactly, bitstring by bitstring. The
convention is bit 1 <-> sigma_z eigenvalue -1 (number operator
n_i = (I - sigma_z)/2), and basis index v enumerates bitstrings with qubit 0
as the most significant bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (CapacityError, ConfigurationError, DataError,
                         DomainError, ShapeError, MatrixError, StateError)
from .mi import MIMatrix

MAX_DENSE_QUBITS = 14
_HERMITICITY_TOL = 1e-12
_COMMUTATOR_TOL = 1e-10
_NORM_TOL = 1e-9

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def _check_capacity(n: int) -> None:
    if n < 1:
        raise ConfigurationError(f"qubit count must be >= 1, got {n}")
    if n > MAX_DENSE_QUBITS:
        raise CapacityError(f"{n} qubits exceed the dense-matrix cap of "
                            f"{MAX_DENSE_QUBITS}")


@dataclass(frozen=True)
class IsingProblem:
    """Biases, couplings and penalty data for one selection instance.

    ``couplings`` is an (n, n) array with nonzero entries only strictly
    above the diagonal.
    """

    n: int
    biases: np.ndarray
    couplings: np.ndarray
    alpha: float
    k: int
    energy_offset: float

    def __post_init__(self):
        if self.n < 1:
            raise ConfigurationError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise ConfigurationError(f"k={self.k} out of range [0, {self.n}]")
        b = np.asarray(self.biases, dtype=float)
        j = np.asarray(self.couplings, dtype=float)
        if b.shape != (self.n,) or j.shape != (self.n, self.n):
            raise ShapeError("biases/couplings shape mismatch")
        if np.any(np.tril(j) != 0):
            raise DataError("couplings must be strictly upper triangular")
        object.__setattr__(self, "biases", b)
        object.__setattr__(self, "couplings", j)


@dataclass(frozen=True)
class DenseHamiltonian:
    """2^n x 2^n Hermitian matrix with a provenance label."""

    n: int
    matrix: np.ndarray
    label: str = field(default="")

    def __post_init__(self):
        m = np.asarray(self.matrix)
        dim = 1 << self.n
        if m.shape != (dim, dim):
            raise ShapeError(f"matrix shape {m.shape} is not 2^{self.n} square")
        if np.abs(m - m.conj().T).max() > _HERMITICITY_TOL:
            raise MatrixError(f"matrix labelled {self.label!r} is not Hermitian")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return 1 << self.n


@dataclass(frozen=True)
class FeatureSubset:
    """Length-n bit vector; bit 1 means the feature is selected."""

    bits: tuple

    @property
    def indices(self) -> tuple:
        return tuple(i for i, b in enumerate(self.bits) if b)

    @classmethod
    def from_basis_index(cls, index: int, n: int) -> "FeatureSubset":
        return cls(tuple((index >> (n - 1 - i)) & 1 for i in range(n)))

    def basis_index(self) -> int:
        v = 0
        for b in self.bits:
            v = (v << 1) | int(b)
        return v


def encode_qubo(m: MIMatrix, alpha: float, k: int) -> IsingProblem:
    """Translate the penalized objective into biases, couplings and offset.

    For every bitstring x the resulting problem Hamiltonian's diagonal entry
    equals E(x) = -x^T M x + alpha (sum x - k)^2; the expansion constants go
    into ``energy_offset`` so the match is exact, not up to a shift.
    """
    if alpha < 0:
        raise ConfigurationError(f"alpha must be >= 0, got {alpha}")
    if not 0 <= k <= m.n:
        raise ConfigurationError(f"k={k} out of range [0, {m.n}]")
    n = m.n
    e = m.entries
    # Quadratic-in-bits form: E(x) = sum h_i x_i + sum_{i<j} q_ij x_i x_j + c
    h = -np.diag(e) + alpha * (1 - 2 * k)
    q = 2.0 * (alpha - e)
    np.fill_diagonal(q, 0.0)
    c = alpha * float(k) ** 2
    # Substitute x_i = (1 - z_i)/2 and collect against -b.z - J.zz + offset.
    r = q.sum(axis=1)
    biases = h / 2.0 + r / 4.0
    couplings = np.triu(-q / 4.0, k=1)
    offset = c + h.sum() / 2.0 + np.triu(q, k=1).sum() / 4.0
    return IsingProblem(n, biases, couplings, float(alpha), int(k), float(offset))


def _z_diagonal(n: int, qubit: int) -> np.ndarray:
    """Diagonal of sigma_z on one qubit, as a Kronecker product of diagonals."""
    diag = np.array([1.0])
    for q in range(n):
        diag = np.kron(diag, np.array([1.0, -1.0]) if q == qubit else np.ones(2))
    return diag


def problem_diagonal(p: IsingProblem) -> np.ndarray:
    """Diagonal energies of the problem Hamiltonian over all basis states."""
    _check_capacity(p.n)
    z = np.array([_z_diagonal(p.n, q) for q in range(p.n)])
    diag = np.full(1 << p.n, p.energy_offset)
    diag -= p.biases @ z
    for i in range(p.n):
        for j in range(i + 1, p.n):
            if p.couplings[i, j] != 0.0:
                diag -= p.couplings[i, j] * z[i] * z[j]
    return diag


def build_problem_hamiltonian(p: IsingProblem) -> DenseHamiltonian:
    """Dense diagonal problem Hamiltonian -sum b_i Z_i - sum J_ij Z_i Z_j + offset."""
    return DenseHamiltonian(p.n, np.diag(problem_diagonal(p)), "problem")


def build_mixer(n: int) -> DenseHamiltonian:
    """Transverse-field sum  sum_i sigma_x^i  (positive sign convention)."""
    _check_capacity(n)
    dim = 1 << n
    m = np.zeros((dim, dim))
    idx = np.arange(dim)
    for q in range(n):
        # sigma_x on qubit q connects each basis state to itself with bit q flipped
        m[idx, idx ^ (1 << (n - 1 - q))] += 1.0
    return DenseHamiltonian(n, m, "mixer")


def annealing_driver(n: int) -> DenseHamiltonian:
    """Negated mixer, -sum_i sigma_x^i: the s=0 end of the anneal.

    Its ground state is the uniform superposition, so evolving from that
    state tracks the instantaneous ground level all the way to the problem
    Hamiltonian's minimum. (The positive-sum mixer has the uniform state as
    its top eigenvector instead.)
    """
    mixer = build_mixer(n)
    return DenseHamiltonian(n, -mixer.matrix, "driver")


def check_noncommute(h0: DenseHamiltonian, hp: DenseHamiltonian) -> bool:
    """True iff the max-entry norm of the commutator [H0, Hp] exceeds 1e-10."""
    if h0.dim != hp.dim:
        raise ShapeError(f"dimension mismatch: {h0.dim} vs {hp.dim}")
    a, b = h0.matrix, hp.matrix
    comm = a @ b - b @ a
    return bool(np.abs(comm).max() > _COMMUTATOR_TOL)


def interpolate(h0: DenseHamiltonian, hp: DenseHamiltonian, s: float) -> DenseHamiltonian:
    """Convex combination (1-s) H0 + s Hp."""
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"interpolation parameter s={s} outside [0, 1]")
    if h0.dim != hp.dim:
        raise ShapeError(f"dimension mismatch: {h0.dim} vs {hp.dim}")
    return DenseHamiltonian(h0.n, (1.0 - s) * h0.matrix + s * hp.matrix,
                            f"interpolated({s})")


def readout(state: np.ndarray, tolerance: float = 0.0):
    """Decode a state vector into feature subsets with probabilities.

    Returns (subset, probability) pairs for every basis amplitude with
    |amplitude|^2 >= tolerance, sorted by descending probability with ties
    broken by ascending bitstring value.
    """
    state = np.asarray(state)
    dim = state.shape[0]
    n = dim.bit_length() - 1
    if dim != 1 << n or state.ndim != 1:
        raise ShapeError(f"state length {dim} is not a power of two")
    norm = float(np.linalg.norm(state))
    if abs(norm - 1.0) > _NORM_TOL:
        raise StateError(f"state norm {norm!r} is not 1 within {_NORM_TOL}")
    probs = np.abs(state) ** 2
    keep = [(float(p), v) for v, p in enumerate(probs) if p >= tolerance]
    keep.sort(key=lambda t: (-t[0], t[1]))
    return [(FeatureSubset.from_basis_index(v, n), p) for p, v in keep]


def write_ising_problem(p: IsingProblem, path) -> None:
    triples = [[i, j, float(p.couplings[i, j])]
               for i in range(p.n) for j in range(i + 1, p.n)
               if p.couplings[i, j] != 0.0]
    obj = {"n": p.n, "biases": p.biases.tolist(), "couplings": triples,
           "alpha": p.alpha, "k": p.k, "offset": p.energy_offset}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh)
        fh.write("\n")


def read_ising_problem(path) -> IsingProblem:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    n = int(obj["n"])
    couplings = np.zeros((n, n))
    for i, j, val in obj["couplings"]:
        couplings[int(i), int(j)] = float(val)
    return IsingProblem(n, np.array(obj["biases"], dtype=float), couplings,
                        float(obj["alpha"]), int(obj["k"]), float(obj["offset"]))
