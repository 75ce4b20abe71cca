"""
Unit tests for the tight-binding matrix model.

Test categories
===============

1. **Basis** - single-well ground states, normalization, unbound wells.
2. **Assembly** - ``H`` is the bilinear form of the grid operator.
3. **Orthogonalization** - ``X K X = 1``, model spectrum equals the
   generalized one, extraction of ``epsilon``, ``gamma`` and ``J``.
4. **Closed forms** - two-well detuning, its inverse, three-well balance.
5. **Dense spectra** - agreement with ``scipy.linalg.eigvals``.
6. **Sensitivities** - finite-difference map between the parameter sets.
7. **Expansion quality** - residual of the single-well expansion against
   the continuous states.
"""

from __future__ import annotations

import numpy as np
import pytest
from scipy.linalg import eigvals

from src.domain.errors import InfeasibilityReason, InfeasibleSeedError, OverlapMatrixError, UnboundWellError
from src.domain.grid_solver import Grid, discretize, solve_lowest
from src.domain.matrix_model import (
    REFERENCE_TUNNELING,
    OverlapMatrices,
    TunnelingMode,
    approximation_residual,
    assemble,
    build_basis,
    dense_eigenpairs,
    dense_eigenvalues,
    effective_model,
    orthogonalize,
    sensitivities,
    three_well_admissible,
    tight_binding_balance,
    tight_binding_matrix,
    two_well_epsilon,
    two_well_gamma,
    two_well_ground_epsilon,
    two_well_real_eigenvalue,
)
from src.domain.potential import MultiWellPotential


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

def _make_double_well(gain_losses: tuple[float, float] = (0.2, -0.1)) -> MultiWellPotential:
    return MultiWellPotential.from_arrays([-3.0, -3.4], list(gain_losses), [1.0, 1.0], [-1.5, 1.5])


def _make_triple_well() -> MultiWellPotential:
    width = 1.0 / np.sqrt(2.0)
    return MultiWellPotential.from_arrays(
        [-1.8, -2.0, -2.2], [0.1, -0.2, 0.1], [width] * 3, [-3.0, 0.0, 3.0]
    )


def _make_grid(n_points: int = 241) -> Grid:
    return Grid(-9.0, 9.0, n_points)


def _spectrum_sorted(values: np.ndarray) -> np.ndarray:
    return values[np.lexsort((values.imag, values.real))]


# ===================================================================
# 1. Basis
# ===================================================================

class TestBuildBasis:

    def test_functions_are_normalized_and_positive(self) -> None:
        grid = _make_grid()
        basis = build_basis(_make_double_well(), grid)

        assert basis.size == 2
        for phi in basis.functions:
            assert grid.integrate(phi * phi) == pytest.approx(1.0, abs=1e-12)
            assert phi[np.argmax(np.abs(phi))] > 0.0

    def test_energies_are_bound(self) -> None:
        basis = build_basis(_make_double_well(), _make_grid())
        assert all(energy < 0.0 for energy in basis.energies)
        # the deeper well binds more strongly
        assert basis.energies[1] < basis.energies[0]

    def test_gain_loss_does_not_enter_basis(self) -> None:
        grid = _make_grid()
        plain = build_basis(_make_double_well((0.0, 0.0)), grid)
        complex_ = build_basis(_make_double_well((0.4, -0.3)), grid)
        np.testing.assert_allclose(plain.functions, complex_.functions, atol=1e-12)

    def test_unbound_well_raises(self) -> None:
        """A tiny well on a finite box has its lowest level above zero."""
        potential = MultiWellPotential.from_arrays([-3.0, -1e-3], [0.0, 0.0], [1.0, 0.1], [-1.5, 1.5])
        with pytest.raises(UnboundWellError) as excinfo:
            build_basis(potential, _make_grid())
        assert excinfo.value.well == 2
        assert excinfo.value.ground_energy >= 0.0


# ===================================================================
# 2. Assembly
# ===================================================================

class TestAssemble:

    def test_hamiltonian_is_grid_bilinear_form(self) -> None:
        grid = _make_grid()
        potential = _make_double_well()
        basis = build_basis(potential, grid)

        overlaps = assemble(basis, potential)

        phi = basis.functions
        expected = (phi @ discretize(potential, grid).to_dense() @ phi.T) * grid.spacing
        np.testing.assert_allclose(overlaps.h, expected, atol=1e-10)

    def test_overlap_matrix(self) -> None:
        grid = _make_grid()
        potential = _make_double_well()
        overlaps = assemble(build_basis(potential, grid), potential)

        np.testing.assert_allclose(np.diag(overlaps.k), [1.0, 1.0], atol=1e-12)
        assert 0.0 < overlaps.k[0, 1] < 1.0
        assert overlaps.k[0, 1] == overlaps.k[1, 0]

    def test_hamiltonian_is_complex_symmetric(self) -> None:
        grid = _make_grid()
        potential = _make_triple_well()
        overlaps = assemble(build_basis(potential, grid), potential)
        np.testing.assert_array_equal(overlaps.h, overlaps.h.T)


# ===================================================================
# 3. Orthogonalization
# ===================================================================

class TestOrthogonalize:

    def test_lowdin_identity(self) -> None:
        grid = _make_grid()
        potential = _make_triple_well()
        overlaps = assemble(build_basis(potential, grid), potential)

        model = orthogonalize(overlaps)

        np.testing.assert_allclose(model.x @ overlaps.k @ model.x, np.eye(3), atol=1e-10)
        assert model.lowdin_residual < 1e-10

    def test_model_spectrum_equals_generalized_spectrum(self) -> None:
        grid = _make_grid()
        potential = _make_triple_well()
        overlaps = assemble(build_basis(potential, grid), potential)

        model = orthogonalize(overlaps)

        generalized = _spectrum_sorted(eigvals(overlaps.h, overlaps.k))
        np.testing.assert_allclose(dense_eigenvalues(model.h_eff), generalized, atol=1e-10)

    def test_parameters_read_from_effective_hamiltonian(self) -> None:
        model = effective_model(_make_triple_well(), _make_grid())

        np.testing.assert_allclose(model.epsilon, np.diag(model.h_eff).real)
        np.testing.assert_allclose(model.gamma, np.diag(model.h_eff).imag)
        assert model.j == pytest.approx(-np.mean(np.diag(model.h_eff, 1).real))
        assert model.j > 0.0

    def test_gain_loss_signs_carry_over(self) -> None:
        model = effective_model(_make_double_well((0.2, -0.1)), _make_grid())
        assert model.gamma[0] > 0.0
        assert model.gamma[1] < 0.0

    def test_real_symmetric_double_well(self) -> None:
        """Identical real wells give identical on-site energies and no gamma."""
        potential = MultiWellPotential.from_arrays([-3.0, -3.0], [0.0, 0.0], [1.0, 1.0], [-1.5, 1.5])
        model = effective_model(potential, _make_grid())

        assert model.epsilon[0] == pytest.approx(model.epsilon[1], abs=1e-10)
        np.testing.assert_allclose(model.gamma, 0.0, atol=1e-12)
        assert model.offdiag_residual < 1e-10

    def test_single_well_has_no_tunneling(self) -> None:
        potential = MultiWellPotential.from_arrays([-3.0], [0.3], [1.0], [0.0])
        model = effective_model(potential, _make_grid())

        assert model.size == 1
        assert model.j is None
        assert model.offdiag_residual == 0.0
        assert model.tunneling(TunnelingMode.FROZEN) is None

    def test_tunneling_modes(self) -> None:
        model = effective_model(_make_double_well(), _make_grid())
        assert model.tunneling(TunnelingMode.RECOMPUTED) == model.j
        assert model.tunneling(TunnelingMode.FROZEN) == REFERENCE_TUNNELING
        assert model.tunneling("frozen", 0.25) == 0.25

    def test_singular_overlap_raises(self) -> None:
        overlaps = OverlapMatrices(np.eye(2, dtype=complex), np.ones((2, 2)))
        with pytest.raises(OverlapMatrixError):
            orthogonalize(overlaps)


# ===================================================================
# 4. Closed forms
# ===================================================================

class TestTwoWellCriterion:
    """Real eigenvalue of ``[[e1 + i g1, -J], [-J, e2 + i g2]]``."""

    J = 0.22

    def test_same_sign_has_no_solution(self) -> None:
        assert two_well_epsilon(0.2, 0.1, self.J) is None

    def test_strong_gain_loss_has_no_solution(self) -> None:
        assert two_well_epsilon(0.5, -0.2, self.J) is None

    def test_detuning_produces_real_eigenvalue(self) -> None:
        gamma1, gamma2 = 0.3, -0.15
        plus, minus = two_well_epsilon(gamma1, gamma2, self.J)
        assert minus == -plus

        for epsilon in (plus, minus):
            matrix = tight_binding_matrix([0.0, epsilon], [gamma1, gamma2], self.J)
            values = np.linalg.eigvals(matrix)
            expected = two_well_real_eigenvalue(0.0, gamma1, gamma2, epsilon, self.J)
            closest = values[np.argmin(np.abs(values - expected))]
            assert closest.real == pytest.approx(expected, abs=1e-10)
            assert closest.imag == pytest.approx(0.0, abs=1e-10)

    def test_symmetric_case_is_unbiased(self) -> None:
        plus, minus = two_well_epsilon(0.1, -0.1, self.J)
        assert plus == 0.0 and minus == 0.0

        lower = two_well_real_eigenvalue(-1.0, 0.1, -0.1, 0.0, self.J)
        assert lower == pytest.approx(-1.0 - np.sqrt(self.J**2 - 0.01))

    def test_inverse_recovers_gamma2(self) -> None:
        gamma1, gamma2 = 0.3, -0.15
        plus, _ = two_well_epsilon(gamma1, gamma2, self.J)
        assert two_well_gamma(plus, gamma1, self.J) == pytest.approx(gamma2, abs=1e-8)

    def test_inverse_at_zero_detuning(self) -> None:
        assert two_well_gamma(0.0, 0.1, self.J) == -0.1
        assert two_well_gamma(0.0, 0.5, self.J) is None

    def test_ground_epsilon_gives_lower_eigenvalue(self) -> None:
        gamma1, gamma2 = 0.3, -0.15
        epsilon = two_well_ground_epsilon(gamma1, gamma2, self.J)
        values = np.linalg.eigvals(tight_binding_matrix([0.0, epsilon], [gamma1, gamma2], self.J))
        real_value = two_well_real_eigenvalue(0.0, gamma1, gamma2, epsilon, self.J)
        assert real_value == pytest.approx(min(values.real), abs=1e-10)


class TestThreeWellBalance:

    def test_admissible_patterns(self) -> None:
        assert three_well_admissible([-1.0, 0.0, 1.0], [0.1, -0.2, 0.1])
        assert three_well_admissible([1.0, 0.0, -1.0], [-0.1, 0.2, -0.1])
        assert not three_well_admissible([-1.0, 0.0, 1.0], [-0.1, 0.2, -0.1])
        assert not three_well_admissible([0.0, 1.0, 0.5], [0.1, -0.2, 0.1])

    def test_closed_form_balances_characteristic_polynomial(self) -> None:
        epsilon, j = [-0.15, 0.0, 0.15], 0.2

        gamma = tight_binding_balance(epsilon, j)

        np.testing.assert_allclose(gamma, np.sqrt(0.0175) * np.array([1.0, -2.0, 1.0]), atol=1e-12)
        coefficients = np.poly(tight_binding_matrix(epsilon, gamma, j))
        np.testing.assert_allclose(coefficients.imag, 0.0, atol=1e-12)

    def test_degenerate_energies_are_infeasible(self) -> None:
        with pytest.raises(InfeasibleSeedError) as excinfo:
            tight_binding_balance([0.0, 0.0, 0.0], 0.2)
        assert excinfo.value.reason is InfeasibilityReason.IMAGINARY


# ===================================================================
# 5. Dense spectra
# ===================================================================

class TestDenseEigenvalues:

    def test_tridiagonal_matches_scipy(self) -> None:
        matrix = tight_binding_matrix([-1.2, -1.0, -0.7, -0.5], [0.1, -0.3, 0.25, 0.05], 0.2)
        np.testing.assert_allclose(
            dense_eigenvalues(matrix), _spectrum_sorted(eigvals(matrix)), atol=1e-10
        )

    def test_full_matrix_matches_scipy(self) -> None:
        rng = np.random.default_rng(7)
        matrix = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        np.testing.assert_allclose(
            dense_eigenvalues(matrix), _spectrum_sorted(eigvals(matrix)), atol=1e-10
        )

    def test_eigenpairs_are_consistent(self) -> None:
        matrix = tight_binding_matrix([-1.0, -0.9, -0.8], [0.1, -0.2, 0.1], 0.2)
        values, vectors = dense_eigenpairs(matrix)
        np.testing.assert_allclose(matrix @ vectors, vectors * values, atol=1e-10)
        assert list(values.real) == sorted(values.real)

    def test_rejects_non_square(self) -> None:
        with pytest.raises(ValueError, match="square"):
            dense_eigenvalues(np.ones((2, 3)))


# ===================================================================
# 6. Sensitivities
# ===================================================================

class TestSensitivities:

    def test_diagonal_derivatives(self) -> None:
        sensitivity = sensitivities(_make_double_well(), _make_grid())

        # deeper wells lower their on-site energy
        assert np.all(sensitivity.d_epsilon_d_depth > 0.0)
        # gain-loss enters gamma with a weight below one
        assert np.all(sensitivity.d_gamma_d_gain_loss > 0.0)
        assert np.all(sensitivity.d_gamma_d_gain_loss < 1.0)

    def test_gain_loss_only(self) -> None:
        sensitivity = sensitivities(_make_double_well(), _make_grid(), include_depths=False)
        assert np.all(np.isnan(sensitivity.d_epsilon_d_depth))
        np.testing.assert_allclose(
            sensitivity.gain_loss_increment([0.01, 0.01]) * sensitivity.d_gamma_d_gain_loss, 0.01
        )

    def test_rejects_non_positive_step(self) -> None:
        with pytest.raises(ValueError, match="step"):
            sensitivities(_make_double_well(), _make_grid(), step=0.0)


# ===================================================================
# 7. Expansion quality
# ===================================================================

class TestApproximationResidual:

    @staticmethod
    def _residuals(position: float) -> np.ndarray:
        potential = MultiWellPotential.from_arrays([-3.0, -3.0], [0.0, 0.0], [1.0, 1.0], [-position, position])
        grid = _make_grid()
        basis = build_basis(potential, grid)
        overlaps = assemble(basis, potential)
        continuous = solve_lowest(potential, grid, 2)
        return np.array([approximation_residual(continuous, basis, overlaps, l) for l in (1, 2)])

    def test_separated_wells_are_well_described(self) -> None:
        assert np.all(self._residuals(1.5) < 0.2)

    def test_grows_as_wells_merge(self) -> None:
        assert np.all(self._residuals(0.5) > self._residuals(1.5))

    def test_rejects_state_outside_basis(self) -> None:
        potential = _make_double_well()
        grid = _make_grid()
        basis = build_basis(potential, grid)
        with pytest.raises(IndexError, match="outside"):
            approximation_residual(solve_lowest(potential, grid, 3), basis, assemble(basis, potential), 3)
