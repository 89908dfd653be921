import math
from collections import Counter

import numpy as np
import pytest

from aqfs.ising import DenseHamiltonian
from aqfs.mi import MIMatrix


@pytest.fixture
def analytic_pair():
    """The 2-level instance with a closed-form gap 2*sqrt((1-s)^2 + s^2)."""
    h0 = DenseHamiltonian(1, np.array([[0.0, 1.0], [1.0, 0.0]]), "mixer")
    hp = DenseHamiltonian(1, np.diag([-1.0, 1.0]), "problem")
    return h0, hp


@pytest.fixture
def analytic_driver_pair(analytic_pair):
    """Same instance with the negated-mixer driver (ground state = uniform)."""
    h0, hp = analytic_pair
    return DenseHamiltonian(1, -h0.matrix, "driver"), hp


def rand_mi_matrix(seed, n):
    rng = np.random.default_rng(seed)
    m = rng.uniform(0.0, 1.0, (n, n))
    return MIMatrix(n, (m + m.T) / 2.0)


def mi_oracle(a, b):
    """Plain-dict plug-in MI in bits; independent of the library path."""
    total = len(a)
    joint = Counter(zip(a, b))
    ca = Counter(a)
    cb = Counter(b)
    out = 0.0
    for (x, y), c in joint.items():
        p = c / total
        out += p * math.log2(p / ((ca[x] / total) * (cb[y] / total)))
    return out


def entropy_oracle(values):
    total = len(values)
    return -sum((c / total) * math.log2(c / total)
                for c in Counter(values).values())


def penalized_energy_oracle(entries, alpha, k, bits):
    """E(x) = -x^T M x + alpha (sum x - k)^2 as an explicit double loop."""
    n = len(bits)
    quad = 0.0
    for i in range(n):
        for j in range(n):
            quad += bits[i] * entries[i][j] * bits[j]
    return -quad + alpha * (sum(bits) - k) ** 2
