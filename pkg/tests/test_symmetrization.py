"""
Unit tests for spectrum classification and the eta operator.

Test categories
===============

1. **Classification** - real values, conjugate pairs, unpaired values,
   ordering, permutation invariance.
2. **c-normalization** - unit c-norm, sign convention, exceptional states.
3. **Eta construction** - Hermiticity, quasi-Hermiticity, kernel rank, left states.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest
import scipy.linalg

from src.domain.errors import EtaConstructionError
from src.domain.matrix_model import tight_binding_matrix
from src.domain.symmetrization import (
    Classification,
    EtaOperator,
    build_eta,
    c_normalize,
    classify,
    eta_for_matrix,
    quasi_hermiticity_residual,
)


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

def _make_balanced_triple() -> np.ndarray:
    """Three-site model whose gain-loss terms balance the spectrum."""
    gamma = np.sqrt(0.0175) * np.array([1.0, -2.0, 1.0])
    return tight_binding_matrix([-0.15, 0.0, 0.15], gamma, 0.2)


def _make_dimer(gamma: float, j: float = 0.2) -> np.ndarray:
    return tight_binding_matrix([0.0, 0.0], [gamma, -gamma], j)


def _value_sets(values: np.ndarray, result: Classification) -> tuple:
    """Classified values, independent of where they sit in the input."""
    def ordered(items: list) -> list:
        return sorted(items, key=lambda z: (z[0].real, z[0].imag) if isinstance(z, tuple) else (z.real, z.imag))

    return (
        ordered([complex(values[i]) for i in result.real_indices]),
        ordered([(complex(values[p]), complex(values[m])) for p, m in result.pair_indices]),
        ordered([complex(values[i]) for i in result.unpaired_indices]),
    )


# ===================================================================
# 1. Classification
# ===================================================================

class TestClassify:

    def test_all_real(self) -> None:
        result = classify([-1.0, -0.5 + 1e-12j, 0.3])
        assert result.real_indices == (0, 1, 2)
        assert result.pair_indices == ()
        assert result.summary == "3R"

    def test_conjugate_pair(self) -> None:
        result = classify([1.0 + 0.1j, -2.0, 1.0 - 0.1j])
        assert result.real_indices == (1,)
        assert result.pair_indices == ((0, 2),)
        assert result.labels == ("pair", "real", "pair")
        assert result.summary == "1R+1P"
        assert result.is_conjugation_closed

    def test_unpaired_values(self) -> None:
        result = classify([1.0 + 0.1j, 1.0 - 0.2j])
        assert result.pair_indices == ()
        assert result.unpaired_indices == (0, 1)
        assert result.summary == "2U"
        assert not result.is_conjugation_closed

    def test_index_sets_ascend_by_position(self) -> None:
        result = classify([2.0 - 0.3j, 0.4, 1.0 + 0.1j, -0.7, 1.0 - 0.2j])
        assert result.real_indices == (1, 3)
        assert result.unpaired_indices == (0, 2, 4)

    def test_invariant_under_permutation(self) -> None:
        values = np.array([0.5 + 0.2j, -1.0, 2.0 + 0.3j, 0.5 - 0.2j, 1.5 - 0.4j])
        expected = _value_sets(values, classify(values))

        for permutation in itertools.permutations(range(values.size)):
            permuted = values[list(permutation)]
            assert _value_sets(permuted, classify(permuted)) == expected

    def test_idempotent(self) -> None:
        values = np.array([0.5 + 0.2j, -1.0, 2.0 + 0.3j, 0.5 - 0.2j, 0.1])
        first = classify(values)
        order = list(first.real_indices) + [i for pair in first.pair_indices for i in pair]
        order += list(first.unpaired_indices)

        second = classify(values[order])

        assert second.labels == ("real", "real", "pair", "pair", "unpaired")
        assert _value_sets(values[order], second) == _value_sets(values, first)

    def test_pairing_picks_nearest_partner(self) -> None:
        result = classify([1.0 + 0.1j, 1.0 - 0.1j, 1.5 - 0.1j, 1.5 + 0.1j])
        assert set(result.pair_indices) == {(0, 1), (3, 2)}

    def test_tolerance_is_relative(self) -> None:
        """Above unit modulus the bound scales with the largest value."""
        assert classify([100.0 + 1e-6j], tolerance=1e-7).real_indices == (0,)
        assert classify([1.0 + 1e-6j], tolerance=1e-7).unpaired_indices == (0,)

    def test_partition(self) -> None:
        result = classify([0.5 + 0.2j, 0.5 - 0.2j, -1.0, 2.0 + 0.3j])
        assert result.is_partition
        assert result.size == 4

    def test_empty_spectrum(self) -> None:
        assert classify([]).summary == "0R"

    def test_rejects_non_positive_tolerance(self) -> None:
        with pytest.raises(ValueError, match="tolerance"):
            classify([1.0], tolerance=0.0)


# ===================================================================
# 2. c-normalization
# ===================================================================

class TestCNormalize:

    def test_unit_c_norm(self) -> None:
        vector = c_normalize(np.array([1.0 + 0.5j, -0.3j, 2.0]))
        assert vector @ vector == pytest.approx(1.0)

    def test_weighted_norm(self) -> None:
        vector = c_normalize(np.array([3.0, 4.0]), weight=0.5)
        assert 0.5 * (vector @ vector) == pytest.approx(1.0)

    def test_first_component_positive(self) -> None:
        vector = c_normalize(np.array([-2.0, 1.0]))
        assert vector[0].real > 0.0

    def test_vanishing_c_norm_raises(self) -> None:
        """The self-orthogonal state of an exceptional point."""
        with pytest.raises(EtaConstructionError):
            c_normalize(np.array([1.0, 1.0j]))


# ===================================================================
# 3. Eta construction
# ===================================================================

class TestEta:

    def test_real_symmetric_matrix_gives_identity(self) -> None:
        hamiltonian = np.array([[1.0, 0.3, 0.0], [0.3, 2.0, -0.1], [0.0, -0.1, 0.5]])
        eta, classification = eta_for_matrix(hamiltonian)

        assert classification.summary == "3R"
        np.testing.assert_allclose(eta.matrix, np.eye(3), atol=1e-10)
        assert eta.kernel_rank == 0
        assert eta.rank == 3

    def test_balanced_triple_well_model(self) -> None:
        hamiltonian = _make_balanced_triple()
        eta, classification = eta_for_matrix(hamiltonian)

        assert classification.summary == "3R"
        np.testing.assert_allclose(
            np.sort(np.linalg.eigvals(hamiltonian).real), [-np.sqrt(0.05), 0.0, np.sqrt(0.05)], atol=1e-8
        )
        assert eta.kernel_rank == 0
        np.testing.assert_allclose(eta.matrix, eta.matrix.conj().T, atol=1e-12)
        assert quasi_hermiticity_residual(eta, hamiltonian) < 1e-10

    def test_left_states_are_conjugated_right_states(self) -> None:
        """Independent left eigenvectors match conj(right) and rebuild the same eta."""
        hamiltonian = _make_balanced_triple()
        values, left, right = scipy.linalg.eig(hamiltonian, left=True, right=True)

        rebuilt = np.zeros((3, 3), dtype=complex)
        for n in range(values.size):
            r = c_normalize(right[:, n])
            left_state = left[:, n] / np.conj(left[:, n].conj() @ r)
            np.testing.assert_allclose(left_state.conj() @ hamiltonian, values[n] * left_state.conj(), atol=1e-10)
            np.testing.assert_allclose(left_state, r.conj(), atol=1e-10)
            rebuilt += np.outer(left_state, left_state.conj())

        eta, _ = eta_for_matrix(hamiltonian)
        np.testing.assert_allclose(eta.matrix, rebuilt, atol=1e-10)
        assert quasi_hermiticity_residual(eta, hamiltonian) < 1e-10

    @pytest.mark.parametrize("gamma", [0.1, 0.3])
    def test_dimer_below_and_above_threshold(self, gamma: float) -> None:
        """Real pair below ``gamma = J``, conjugate pair above it."""
        hamiltonian = _make_dimer(gamma)
        eta, classification = eta_for_matrix(hamiltonian)

        expected = "2R" if gamma < 0.2 else "1P"
        assert classification.summary == expected
        assert quasi_hermiticity_residual(eta, hamiltonian) < 1e-10

    def test_unpaired_states_enter_kernel(self) -> None:
        hamiltonian = np.diag([1.0 + 0.1j, 2.0])
        eta, classification = eta_for_matrix(hamiltonian)

        assert classification.unpaired_indices == (0,)
        assert eta.kernel_rank == 1
        assert eta.rank == 1
        assert quasi_hermiticity_residual(eta, hamiltonian) < 1e-12

    def test_mismatched_classification_raises(self) -> None:
        states = [(1.0 + 0j, np.array([1.0, 0.0]))]
        classification = Classification((0, 1), (), (), 1e-7, 2)
        with pytest.raises(EtaConstructionError, match="covers 2"):
            build_eta(states, classification)

    def test_rejects_non_hermitian_matrix(self) -> None:
        with pytest.raises(ValueError, match="Hermitian"):
            EtaOperator(np.array([[1.0, 1.0], [0.0, 1.0]]), kernel_rank=0)

    def test_residual_shape_mismatch(self) -> None:
        eta = EtaOperator(np.eye(2), kernel_rank=0)
        with pytest.raises(ValueError, match="shape"):
            quasi_hermiticity_residual(eta, np.eye(3))
