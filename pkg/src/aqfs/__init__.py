"""Feature selection by simulated adiabatic quantum annealing.

The package scores features with plug-in mutual information (maximal
relevance, minimum redundancy), encodes the penalized bi-quadratic
objective as a diagonal Ising Hamiltonian over one qubit per feature, and
integrates the time-dependent Schrödinger equation along a linear anneal to
read the optimal subset out of the final ground state. Exact brute-force
oracles certify every stage on small instances.
"""

from .data import (Dataset, discretize, load_dataset, sample_random_weights,
                   synthetic_dataset)
from .evolution import (EvolutionTrace, GapScan, Schedule, drift_norm, evolve,
                        gap_at, global_time_bound, ground_fidelity,
                        initial_state, local_delay_integral, scan_gap,
                        spectrum, success_probability)
from .ising import (DenseHamiltonian, FeatureSubset, IsingProblem,
                    annealing_driver, build_mixer, build_problem_hamiltonian,
                    check_noncommute, encode_qubo, interpolate,
                    problem_diagonal, readout)
from .mi import (JointDistribution, MIMatrix, build_mi_matrix,
                 joint_distribution, mutual_information, normalize_mi_matrix)
from .oracle import (OracleResult, alpha_star, brute_force_select,
                     evolve_reference, exact_ground_states,
                     greedy_forward_baseline)
from .pipeline import SelectionResult, select_features
from .selector import QuantumAdiabaticSelector

__version__ = "0.1.0"

__all__ = [
    "Dataset", "discretize", "load_dataset", "sample_random_weights",
    "synthetic_dataset",
    "JointDistribution", "MIMatrix", "build_mi_matrix", "joint_distribution",
    "mutual_information", "normalize_mi_matrix",
    "DenseHamiltonian", "FeatureSubset", "IsingProblem", "annealing_driver",
    "build_mixer", "build_problem_hamiltonian", "check_noncommute",
    "encode_qubo", "interpolate", "problem_diagonal", "readout",
    "EvolutionTrace", "GapScan", "Schedule", "drift_norm", "evolve", "gap_at",
    "global_time_bound", "ground_fidelity", "initial_state",
    "local_delay_integral", "scan_gap", "spectrum", "success_probability",
    "OracleResult", "alpha_star", "brute_force_select", "evolve_reference",
    "exact_ground_states", "greedy_forward_baseline",
    "SelectionResult", "select_features",
    "QuantumAdiabaticSelector",
]
