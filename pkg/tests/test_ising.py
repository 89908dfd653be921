import numpy as np
import pytest

from aqfs.exceptions import (CapacityError, ConfigurationError, DomainError,
                             MatrixError, ShapeError, StateError)
from aqfs.ising import (DenseHamiltonian, FeatureSubset, annealing_driver,
                        build_mixer, build_problem_hamiltonian,
                        check_noncommute, encode_qubo, interpolate,
                        problem_diagonal, read_ising_problem, readout,
                        write_ising_problem)
from aqfs.mi import MIMatrix
from conftest import penalized_energy_oracle, rand_mi_matrix

SX = np.array([[0.0, 1.0], [1.0, 0.0]])
SZ = np.diag([1.0, -1.0])


def diag_of(m: MIMatrix, alpha, k):
    return problem_diagonal(encode_qubo(m, alpha, k))


class TestEncodeQubo:
    def test_pure_penalty(self):
        m = MIMatrix(2, np.zeros((2, 2)))
        np.testing.assert_allclose(diag_of(m, 1.0, 1), [1.0, 0.0, 0.0, 1.0],
                                   atol=1e-12)

    def test_identity_relevance_no_penalty(self):
        m = MIMatrix(2, np.eye(2))
        np.testing.assert_allclose(diag_of(m, 0.0, 0), [0.0, -1.0, -1.0, -2.0],
                                   atol=1e-12)

    def test_random_instance_matches_objective_oracle(self):
        m = rand_mi_matrix(17, 4)
        alpha, k = 2.0, 2
        diag = diag_of(m, alpha, k)
        for v in range(16):
            bits = [(v >> (3 - i)) & 1 for i in range(4)]
            expected = penalized_energy_oracle(m.entries, alpha, k, bits)
            assert diag[v] == pytest.approx(expected, abs=1e-9)

    @pytest.mark.parametrize("seed,n,alpha,k", [
        (0, 1, 0.5, 1), (1, 2, 0.0, 2), (2, 3, 3.0, 0), (3, 5, 1.5, 2),
        (4, 8, 10.0, 4), (5, 10, 2.0, 5),
    ])
    def test_encoding_correct_for_every_bitstring(self, seed, n, alpha, k):
        m = rand_mi_matrix(seed, n)
        diag = diag_of(m, alpha, k)
        for v in range(1 << n):
            bits = [(v >> (n - 1 - i)) & 1 for i in range(n)]
            assert diag[v] == pytest.approx(
                penalized_energy_oracle(m.entries, alpha, k, bits), abs=1e-9)

    def test_k_out_of_range(self):
        with pytest.raises(ConfigurationError):
            encode_qubo(rand_mi_matrix(0, 2), 1.0, 3)
        with pytest.raises(ConfigurationError):
            encode_qubo(rand_mi_matrix(0, 2), 1.0, -1)


class TestProblemHamiltonian:
    def test_single_qubit_bias(self):
        from aqfs.ising import IsingProblem
        p = IsingProblem(1, np.array([1.0]), np.zeros((1, 1)), 0.0, 0, 0.0)
        h = build_problem_hamiltonian(p)
        np.testing.assert_allclose(h.matrix, np.diag([-1.0, 1.0]))

    def test_two_qubit_coupling(self):
        from aqfs.ising import IsingProblem
        couplings = np.array([[0.0, 1.0], [0.0, 0.0]])
        p = IsingProblem(2, np.zeros(2), couplings, 0.0, 0, 0.0)
        np.testing.assert_allclose(np.diag(build_problem_hamiltonian(p).matrix),
                                   [-1.0, 1.0, 1.0, -1.0])

    def test_matches_encode_example(self):
        h = build_problem_hamiltonian(encode_qubo(MIMatrix(2, np.zeros((2, 2))), 1.0, 1))
        np.testing.assert_allclose(np.diag(h.matrix), [1.0, 0.0, 0.0, 1.0], atol=1e-12)

    def test_output_is_exactly_diagonal(self):
        h = build_problem_hamiltonian(encode_qubo(rand_mi_matrix(2, 4), 1.0, 2))
        off = h.matrix - np.diag(np.diag(h.matrix))
        assert np.all(off == 0.0)

    def test_capacity_cap(self):
        from aqfs.ising import IsingProblem
        with pytest.raises(CapacityError):
            build_problem_hamiltonian(
                IsingProblem(15, np.zeros(15), np.zeros((15, 15)), 0.0, 0, 0.0))


class TestMixer:
    def test_single_qubit_is_sigma_x(self):
        np.testing.assert_array_equal(build_mixer(1).matrix, SX)

    def test_two_qubit_spectrum(self):
        eig = np.linalg.eigvalsh(build_mixer(2).matrix)
        np.testing.assert_allclose(eig, [-2.0, 0.0, 0.0, 2.0], atol=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_uniform_state_is_top_eigenvector(self, n):
        h = build_mixer(n)
        psi = np.full(1 << n, (1 << n) ** -0.5)
        np.testing.assert_allclose(h.matrix @ psi, n * psi, atol=1e-12)

    @pytest.mark.parametrize("n", [1, 3])
    def test_driver_grounds_the_uniform_state(self, n):
        h = annealing_driver(n)
        lam, vec = np.linalg.eigh(h.matrix)
        assert lam[0] == pytest.approx(-n, abs=1e-12)
        psi = np.full(1 << n, (1 << n) ** -0.5)
        assert abs(np.dot(vec[:, 0], psi)) == pytest.approx(1.0, abs=1e-9)

    def test_matches_kronecker_construction(self):
        eye = np.eye(2)
        expected = (np.kron(SX, np.kron(eye, eye)) +
                    np.kron(eye, np.kron(SX, eye)) +
                    np.kron(eye, np.kron(eye, SX)))
        np.testing.assert_array_equal(build_mixer(3).matrix, expected)


class TestCommutatorCheck:
    def test_pauli_pair_does_not_commute(self):
        assert check_noncommute(DenseHamiltonian(1, SX), DenseHamiltonian(1, -SZ))

    def test_self_commutes(self):
        h = DenseHamiltonian(1, SX)
        assert not check_noncommute(h, h)

    def test_identity_commutes(self):
        assert not check_noncommute(DenseHamiltonian(1, SX),
                                    DenseHamiltonian(1, 3.7 * np.eye(2)))

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            check_noncommute(DenseHamiltonian(1, SX), build_mixer(2))

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_mixer_vs_nonconstant_problem(self, seed):
        m = rand_mi_matrix(seed, 3)
        hp = build_problem_hamiltonian(encode_qubo(m, 1.0, 1))
        assert np.ptp(np.diag(hp.matrix)) > 0
        assert check_noncommute(build_mixer(3), hp)


class TestInterpolate:
    def test_endpoints(self, analytic_pair):
        h0, hp = analytic_pair
        hp_neg = DenseHamiltonian(1, -hp.matrix)
        np.testing.assert_array_equal(interpolate(h0, hp_neg, 0.0).matrix, h0.matrix)
        np.testing.assert_array_equal(interpolate(h0, hp_neg, 1.0).matrix, hp_neg.matrix)

    def test_midpoint_matrix(self, analytic_pair):
        h0, _ = analytic_pair
        hp = DenseHamiltonian(1, -SZ)
        np.testing.assert_allclose(interpolate(h0, hp, 0.5).matrix,
                                   [[-0.5, 0.5], [0.5, 0.5]])

    def test_linearity_in_s(self):
        h0 = build_mixer(2)
        hp = build_problem_hamiltonian(encode_qubo(rand_mi_matrix(3, 2), 1.0, 1))
        lhs = interpolate(h0, hp, 0.3).matrix + interpolate(h0, hp, 0.4).matrix
        rhs = interpolate(h0, hp, 0.7).matrix + interpolate(h0, hp, 0.0).matrix
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_domain_error(self, analytic_pair):
        h0, hp = analytic_pair
        with pytest.raises(DomainError):
            interpolate(h0, hp, 1.5)


class TestReadout:
    def test_basis_state_decoding(self):
        state = np.zeros(8, dtype=complex)
        state[0b101] = 1.0
        [(subset, prob)] = readout(state, 0.5)
        assert subset.bits == (1, 0, 1)
        assert subset.indices == (0, 2)
        assert prob == pytest.approx(1.0)

    def test_uniform_superposition(self):
        state = np.full(4, 0.5, dtype=complex)
        got = readout(state, 0.2)
        assert [s.bits for s, _ in got] == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert all(p == pytest.approx(0.25) for _, p in got)

    def test_tie_break_ascending_bitstring(self):
        state = np.zeros(4, dtype=complex)
        state[0b01] = state[0b10] = 2.0 ** -0.5
        got = readout(state, 0.4)
        assert [s.indices for s, _ in got] == [(1,), (0,)]

    def test_probabilities_sum_to_one_at_zero_tolerance(self):
        rng = np.random.default_rng(4)
        state = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        state /= np.linalg.norm(state)
        got = readout(state, 0.0)
        assert sum(p for _, p in got) == pytest.approx(1.0, abs=1e-12)
        assert sum(p for _, p in readout(state, 0.05)) <= 1.0 + 1e-12

    def test_rejects_unnormalized_state(self):
        with pytest.raises(StateError):
            readout(np.array([1.0, 1.0]), 0.1)


class TestTypesAndSerialization:
    def test_dense_hamiltonian_must_be_hermitian(self):
        with pytest.raises(MatrixError):
            DenseHamiltonian(1, np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_dense_hamiltonian_dimension(self):
        with pytest.raises(ShapeError):
            DenseHamiltonian(2, np.eye(3))

    def test_feature_subset_roundtrip(self):
        sub = FeatureSubset.from_basis_index(0b0110, 4)
        assert sub.bits == (0, 1, 1, 0)
        assert sub.indices == (1, 2)
        assert sub.basis_index() == 0b0110

    def test_ising_problem_json_roundtrip(self, tmp_path):
        p = encode_qubo(rand_mi_matrix(9, 3), 1.5, 2)
        path = tmp_path / "problem.json"
        write_ising_problem(p, path)
        q = read_ising_problem(path)
        assert q.n == p.n and q.k == p.k and q.alpha == p.alpha
        assert q.energy_offset == p.energy_offset
        np.testing.assert_array_equal(q.biases, p.biases)
        np.testing.assert_array_equal(q.couplings, p.couplings)
