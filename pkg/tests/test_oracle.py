import numpy as np
import pytest

from aqfs.evolution import (Schedule, drift_norm, evolve, global_time_bound,
                            initial_state, scan_gap)
from aqfs.exceptions import CapacityError, ConfigurationError, MatrixError
from aqfs.ising import (DenseHamiltonian, FeatureSubset, annealing_driver,
                        build_mixer, build_problem_hamiltonian, encode_qubo)
from aqfs.mi import MIMatrix
from aqfs.oracle import (alpha_star, all_bitstrings, brute_force_select,
                         evolve_reference, exact_ground_states,
                         greedy_forward_baseline)
from conftest import rand_mi_matrix


class TestBruteForce:
    def test_hard_cardinality_picks_highest_relevance(self):
        res = brute_force_select(MIMatrix(2, np.diag([3.0, 1.0])), 100.0, 1)
        assert res.optimal_bitstrings == ((1, 0),)
        assert res.objective_value == pytest.approx(3.0)

    def test_all_ones_maximizes_positive_matrix(self):
        res = brute_force_select(MIMatrix(2, np.array([[1.0, 5.0], [5.0, 1.0]])),
                                 0.0, 0)
        assert res.optimal_bitstrings == ((1, 1),)
        assert res.best_energy == pytest.approx(-12.0)

    def test_minimizers_match_hamiltonian_ground_states(self):
        m = rand_mi_matrix(31, 6)
        res = brute_force_select(m, 3.0, 3)
        hp = build_problem_hamiltonian(encode_qubo(m, 3.0, 3))
        e0, idx = exact_ground_states(hp, 1e-9)
        from_diag = tuple(FeatureSubset.from_basis_index(i, 6).bits for i in idx)
        assert from_diag == res.optimal_bitstrings
        assert e0 == pytest.approx(res.best_energy, abs=1e-9)

    def test_capacity_and_range_checks(self):
        with pytest.raises(CapacityError):
            all_bitstrings(21)
        with pytest.raises(ConfigurationError):
            brute_force_select(rand_mi_matrix(0, 3), 1.0, 4)

    @pytest.mark.parametrize("case", range(20))
    def test_agreement_with_encoder_across_instances(self, case):
        n = 2 + case % 7
        m = rand_mi_matrix(100 + case, n)
        k = case % (n + 1)
        alpha = [0.0, 1.0, 10.0, alpha_star(m)][case % 4]
        oracle = brute_force_select(m, alpha, k)
        hp = build_problem_hamiltonian(encode_qubo(m, alpha, k))
        _, idx = exact_ground_states(hp, 1e-9)
        assert tuple(FeatureSubset.from_basis_index(i, n).bits
                     for i in idx) == oracle.optimal_bitstrings

    @pytest.mark.parametrize("seed", range(10))
    def test_alpha_star_enforces_cardinality(self, seed):
        n = 2 + seed % 6
        m = rand_mi_matrix(300 + seed, n)
        k = seed % (n + 1)
        res = brute_force_select(m, alpha_star(m), k)
        assert all(sum(bits) == k for bits in res.optimal_bitstrings)

    @pytest.mark.parametrize("seed", range(6))
    def test_raising_relevance_keeps_feature_selected(self, seed):
        n = 4
        m = rand_mi_matrix(400 + seed, n)
        res = brute_force_select(m, alpha_star(m), 2)
        if len(res.optimal_bitstrings) != 1:
            pytest.skip("needs a strict optimum")
        bits = res.optimal_bitstrings[0]
        i = bits.index(1)
        bumped = m.entries.copy()
        bumped[i, i] += 0.5
        res2 = brute_force_select(MIMatrix(n, bumped), alpha_star(m), 2)
        assert all(b[i] == 1 for b in res2.optimal_bitstrings)


class TestExactGroundStates:
    def test_degenerate_pair(self):
        hp = DenseHamiltonian(2, np.diag([1.0, 0.0, 0.0, 1.0]))
        assert exact_ground_states(hp, 1e-9) == (0.0, [1, 2])

    def test_unique_minimum(self):
        hp = DenseHamiltonian(1, np.diag([-2.0, 5.0]))
        assert exact_ground_states(hp, 1e-9) == (-2.0, [0])

    def test_rejects_non_diagonal(self):
        with pytest.raises(MatrixError):
            exact_ground_states(build_mixer(1), 1e-9)


class TestReferencePropagator:
    def test_commuting_case_matches_phase_evolution(self):
        h0 = build_mixer(2)
        final = evolve_reference(h0, h0, total_time=5.0, fine_steps=500)
        expected = np.exp(-1j * 2 * 5.0) * initial_state(2)
        np.testing.assert_allclose(final, expected, atol=1e-10)

    def test_analytic_instance_agreement(self, analytic_driver_pair):
        h0, hp = analytic_driver_pair
        main = evolve(h0, hp, 10.0, steps=2000).final_state
        ref = evolve_reference(h0, hp, 10.0, fine_steps=20000)
        main = main * np.exp(-1j * np.angle(np.vdot(ref, main)))
        assert np.linalg.norm(main - ref) <= 1e-6

    def test_seeded_instance_agreement_at_adiabatic_time(self):
        hp = build_problem_hamiltonian(encode_qubo(rand_mi_matrix(0, 3), 1.0, 1))
        h0 = annealing_driver(3)
        scan = scan_gap(h0, hp, Schedule.gap_scan(201))
        total = 10.0 * global_time_bound(scan.g_min, drift_norm(h0, hp))
        main = evolve(h0, hp, total, steps=10000).final_state
        ref = evolve_reference(h0, hp, total, fine_steps=100000)
        main = main * np.exp(-1j * np.angle(np.vdot(ref, main)))
        assert np.linalg.norm(main - ref) <= 1e-6


class TestGreedyBaseline:
    def test_diagonal_matrix(self):
        sub = greedy_forward_baseline(MIMatrix(3, np.diag([3.0, 2.0, 1.0])), 2)
        assert sub.indices == (0, 1)

    def test_k_equals_n_selects_everything(self):
        sub = greedy_forward_baseline(rand_mi_matrix(3, 4), 4)
        assert sub.indices == (0, 1, 2, 3)

    def test_known_suboptimal_instance(self):
        # off-diagonal mass pulls greedy onto a pair the exact optimum avoids
        m = rand_mi_matrix(1, 4)
        greedy = greedy_forward_baseline(m, 2)
        exact = brute_force_select(m, 100.0, 2)
        assert tuple(greedy.bits) not in exact.optimal_bitstrings

    def test_k_range(self):
        with pytest.raises(ConfigurationError):
            greedy_forward_baseline(rand_mi_matrix(0, 3), 0)


def test_alpha_star_value():
    m = rand_mi_matrix(5, 4)
    assert alpha_star(m) == pytest.approx(8.0 * np.abs(m.entries).max() + 1.0)
