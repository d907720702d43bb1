import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qsystems.galilei import build_additive_rep, build_spin_rep, casimir_squared
from qsystems.hilbert import Operator, SpaceSpec, StateVector, basis_state, lift, pauli_matrices
from qsystems.symmetry import (
    Permutation,
    SymmetrySector,
    build_projectors,
    classify_state,
    count_antisymmetric_basis,
    count_symmetric_basis,
    exchange_expectation_check,
    pauli_exclusion_check,
    permutation_operator,
    physical_projector,
    projector_rank,
)

TWO_QUBITS = SpaceSpec((2, 2))


def random_state(space, seed):
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal(space.total_dim) + 1j * rng.standard_normal(space.total_dim)
    return StateVector(space, raw).normalized()


def enumerate_symmetric_rank(n, d):
    """Independent oracle: count orbits of index tuples under sorting."""
    return len({tuple(sorted(t)) for t in itertools.product(range(d), repeat=n)})


def enumerate_antisymmetric_rank(n, d):
    """Independent oracle: count strictly increasing index tuples."""
    return sum(1 for t in itertools.product(range(d), repeat=n) if all(a < b for a, b in zip(t, t[1:])))


class TestPermutation:
    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 2))

    def test_parity_matches_inversion_count(self):
        for image in itertools.permutations(range(4)):
            inversions = sum(
                1 for i, j in itertools.combinations(range(4), 2) if image[i] > image[j]
            )
            assert Permutation(image).parity == (-1) ** inversions

    def test_compose_and_inverse(self):
        p = Permutation((1, 2, 0))
        q = Permutation((0, 2, 1))
        composed = p.compose(q)
        for i in range(3):
            assert composed.image[i] == p.image[q.image[i]]
        assert p.compose(p.inverse()) == Permutation.identity(3)


class TestPermutationOperator:
    def test_identity_permutation(self):
        u = permutation_operator(Permutation.identity(2), TWO_QUBITS)
        assert np.array_equal(u.entries, np.eye(4))

    def test_transposition_swaps_product_kets(self):
        u = permutation_operator(Permutation((1, 0)), TWO_QUBITS)
        e01 = basis_state(TWO_QUBITS, 1)  # e0 x e1
        e10 = basis_state(TWO_QUBITS, 2)
        assert np.allclose(u.entries @ e01.amplitudes, e10.amplitudes)

    def test_transpositions_are_involutions(self):
        space = SpaceSpec((3, 3, 3))
        for i, j in itertools.combinations(range(3), 2):
            u = permutation_operator(Permutation.transposition(3, i, j), space).entries
            assert np.allclose(u @ u, np.eye(27))

    def test_unitarity(self):
        space = SpaceSpec((2, 2, 2))
        for image in itertools.permutations(range(3)):
            u = permutation_operator(Permutation(image), space).entries
            assert np.allclose(u.conj().T @ u, np.eye(8), atol=1e-14)

    def test_rejects_incompatible_dims(self):
        with pytest.raises(ValueError):
            permutation_operator(Permutation((1, 0)), SpaceSpec((2, 3)))

    @settings(max_examples=60)
    @given(st.permutations(range(4)), st.permutations(range(4)))
    def test_homomorphism(self, img_p, img_q):
        space = SpaceSpec((2, 2, 2, 2))
        p, q = Permutation(tuple(img_p)), Permutation(tuple(img_q))
        u_pq = permutation_operator(p.compose(q), space).entries
        u_p = permutation_operator(p, space).entries
        u_q = permutation_operator(q, space).entries
        assert np.max(np.abs(u_pq - u_p @ u_q)) <= 1e-12


class TestProjectors:
    @pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
    def test_ranks_match_enumeration(self, n, d):
        pair = build_projectors(n, d)
        assert projector_rank(pair.symmetrizer) == enumerate_symmetric_rank(n, d)
        assert projector_rank(pair.antisymmetrizer) == enumerate_antisymmetric_rank(n, d)
        # package counting helpers agree with the in-test oracles
        assert count_symmetric_basis(n, d) == enumerate_symmetric_rank(n, d)
        assert count_antisymmetric_basis(n, d) == enumerate_antisymmetric_rank(n, d)

    def test_known_small_ranks(self):
        pair = build_projectors(2, 2)
        assert projector_rank(pair.symmetrizer) == 3
        assert projector_rank(pair.antisymmetrizer) == 1
        assert projector_rank(build_projectors(3, 2).antisymmetrizer) == 0

    @pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
    def test_projector_algebra(self, n, d):
        pair = build_projectors(n, d)
        s, a = pair.symmetrizer.entries, pair.antisymmetrizer.entries
        assert np.max(np.abs(s @ s - s)) <= 1e-12
        assert np.max(np.abs(a @ a - a)) <= 1e-12
        assert np.max(np.abs(s @ a)) <= 1e-12
        assert np.max(np.abs(s - s.conj().T)) <= 1e-14
        assert np.max(np.abs(a - a.conj().T)) <= 1e-14

    def test_two_factor_completeness(self):
        for d in (2, 3, 4):
            pair = build_projectors(2, d)
            total = pair.symmetrizer.entries + pair.antisymmetrizer.entries
            assert np.max(np.abs(total - np.eye(d * d))) <= 1e-12

    def test_rank_sum_strict_for_three_or_more(self):
        for n, d in ((3, 2), (3, 3), (4, 2)):
            pair = build_projectors(n, d)
            total = projector_rank(pair.symmetrizer) + projector_rank(pair.antisymmetrizer)
            assert total < d ** n

    def test_sector_orthogonality_random(self):
        pair = build_projectors(3, 3)
        rng = np.random.default_rng(9)
        for _ in range(10):
            raw_s = pair.symmetrizer.entries @ (rng.standard_normal(27) + 1j * rng.standard_normal(27))
            raw_a = pair.antisymmetrizer.entries @ (rng.standard_normal(27) + 1j * rng.standard_normal(27))
            psi_s = raw_s / np.linalg.norm(raw_s)
            psi_a = raw_a / np.linalg.norm(raw_a)
            assert abs(np.vdot(psi_s, psi_a)) <= 1e-12

    def test_physical_projector_is_sum(self):
        pair = build_projectors(3, 2)
        combined = physical_projector(3, 2)
        assert np.allclose(
            combined.entries,
            pair.symmetrizer.entries + pair.antisymmetrizer.entries,
        )


class TestClassify:
    def test_symmetric_and_antisymmetric_states(self):
        sym = StateVector(TWO_QUBITS, np.array([0, 1, 1, 0]) / math.sqrt(2))
        singlet = StateVector(TWO_QUBITS, np.array([0, 1, -1, 0]) / math.sqrt(2))
        assert classify_state(sym) is SymmetrySector.SYMMETRIC
        assert classify_state(singlet) is SymmetrySector.ANTISYMMETRIC

    def test_product_state_is_mixed(self):
        e01 = basis_state(TWO_QUBITS, 1)
        assert classify_state(e01) is SymmetrySector.MIXED

    def test_transposition_eigenvalues(self):
        assert SymmetrySector.SYMMETRIC.transposition_eigenvalue == 1
        assert SymmetrySector.ANTISYMMETRIC.transposition_eigenvalue == -1
        assert SymmetrySector.MIXED.transposition_eigenvalue is None

    def test_requires_equal_factors(self):
        with pytest.raises(ValueError):
            classify_state(random_state(SpaceSpec((2, 3)), 1))

    def test_projected_states_classify_by_sector(self):
        pair = build_projectors(3, 2)
        rng = np.random.default_rng(4)
        raw = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        sym_raw = pair.symmetrizer.entries @ raw
        psi = StateVector(pair.space, sym_raw / np.linalg.norm(sym_raw))
        assert classify_state(psi) is SymmetrySector.SYMMETRIC


class TestExchangeExpectation:
    def test_total_observable_invariant_any_state(self):
        two_spins = build_additive_rep([build_spin_rep(0.5), build_spin_rep(0.5)])
        j_square = Operator(TWO_QUBITS, casimir_squared(two_spins))
        swap = Permutation((1, 0))
        for seed in range(6):
            psi = random_state(TWO_QUBITS, seed)
            check = exchange_expectation_check(j_square, psi, swap)
            assert check.passed, check.to_dict()

    def test_one_sided_observable_on_symmetric_state(self):
        _, _, sz = pauli_matrices()
        obs = lift(Operator(SpaceSpec.single(2), sz), 0, TWO_QUBITS)
        sym = StateVector(TWO_QUBITS, np.array([0, 1, 1, 0]) / math.sqrt(2))
        assert exchange_expectation_check(obs, sym, Permutation((1, 0))).passed

    def test_negative_control_one_sided_on_product_state(self):
        _, _, sz = pauli_matrices()
        obs = lift(Operator(SpaceSpec.single(2), sz), 0, TWO_QUBITS)
        e01 = basis_state(TWO_QUBITS, 1)
        check = exchange_expectation_check(obs, e01, Permutation((1, 0)))
        assert not check.passed
        assert check.difference == pytest.approx(2.0, abs=1e-12)
        assert check.expectation_original == pytest.approx(1.0)
        assert check.expectation_permuted == pytest.approx(-1.0)


class TestExclusion:
    def test_duplicate_states_annihilated(self):
        phi = random_state(SpaceSpec.single(2), 3)
        check = pauli_exclusion_check([phi, phi])
        assert check.has_duplicate_ray
        assert check.antisymmetrized_norm <= 1e-12
        assert check.passed

    def test_duplicate_up_to_phase_detected(self):
        phi = random_state(SpaceSpec.single(3), 5)
        shifted = StateVector(phi.space, np.exp(1.3j) * phi.amplitudes)
        check = pauli_exclusion_check([phi, shifted])
        assert check.has_duplicate_ray
        assert check.antisymmetrized_norm <= 1e-12

    def test_slater_determinant_survives(self):
        qubit = SpaceSpec.single(2)
        check = pauli_exclusion_check([basis_state(qubit, 0), basis_state(qubit, 1)])
        assert not check.has_duplicate_ray
        assert check.antisymmetrized_norm == pytest.approx(1 / math.sqrt(2), abs=1e-12)

    def test_triple_with_repeat_annihilated(self):
        qubit3 = SpaceSpec.single(3)
        phi = random_state(qubit3, 8)
        chi = random_state(qubit3, 9)
        check = pauli_exclusion_check([phi, phi, chi])
        assert check.antisymmetrized_norm <= 1e-12
        assert check.passed

    def test_requires_shared_dimension(self):
        with pytest.raises(ValueError):
            pauli_exclusion_check(
                [random_state(SpaceSpec.single(2), 1), random_state(SpaceSpec.single(3), 2)]
            )
