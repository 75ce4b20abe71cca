"""
Properties that hold for every configuration, checked on random draws.

Test categories
===============

1. **Eigensolver** - balance identity, dense oracle, complex conjugation.
2. **Matrix model** - symmetric orthogonalization, two-well criterion.
3. **Symmetrization** - metric operators of balanced three-well models.
4. **Residuals** - symmetric-function residual on conjugation-closed triples.
"""

from __future__ import annotations

import numpy as np
import pytest
from scipy.linalg import eigvals

from src.domain.errors import InfeasibleSeedError
from src.domain.grid_solver import Grid, balance_check, discretize, solve_lowest
from src.domain.matrix_model import (
    REFERENCE_TUNNELING,
    assemble,
    build_basis,
    dense_eigenvalues,
    orthogonalize,
    tight_binding_balance,
    tight_binding_matrix,
    two_well_epsilon,
    two_well_real_eigenvalue,
)
from src.domain.potential import MultiWellPotential
from src.domain.rootfind import symmetric_balance_residual
from src.domain.symmetrization import eta_for_matrix, quasi_hermiticity_residual

pytestmark = pytest.mark.slow

DRAWS = 100


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20190801)


def _make_random_potential(rng: np.random.Generator, n_wells: int) -> MultiWellPotential:
    """Separated wells with random depths, widths and gain-loss terms."""
    centers = 3.0 * (np.arange(n_wells) - 0.5 * (n_wells - 1))
    return MultiWellPotential.from_arrays(
        rng.uniform(-3.5, -1.5, n_wells),
        rng.uniform(-0.3, 0.3, n_wells),
        rng.uniform(0.6, 1.0, n_wells),
        centers + rng.uniform(-0.2, 0.2, n_wells),
    )


def _make_grid(potential: MultiWellPotential, n_points: int = 401) -> Grid:
    return Grid.auto(potential, n_points=n_points)


def _dense_lowest(potential: MultiWellPotential, grid: Grid, m: int) -> np.ndarray:
    values = eigvals(discretize(potential, grid).to_dense())
    return values[np.lexsort((values.imag, values.real))][:m]


# ===================================================================
# 1. Eigensolver
# ===================================================================

class TestEigensolverProperties:

    @pytest.mark.parametrize("n_wells", [1, 2, 3])
    def test_balance_identity(self, rng: np.random.Generator, n_wells: int) -> None:
        for _ in range(5):
            potential = _make_random_potential(rng, n_wells)
            grid = _make_grid(potential, 2001)
            spectrum = solve_lowest(potential, grid, n_wells)
            for pair in spectrum:
                imag_mu, integral = balance_check(pair, potential, grid)
                assert abs(imag_mu - integral) <= 1e-8

    @pytest.mark.parametrize("n_wells", [2, 3])
    def test_dense_oracle(self, rng: np.random.Generator, n_wells: int) -> None:
        for _ in range(5):
            potential = _make_random_potential(rng, n_wells)
            grid = _make_grid(potential)
            spectrum = solve_lowest(potential, grid, n_wells, tol=1e-11)
            np.testing.assert_allclose(spectrum.energies, _dense_lowest(potential, grid, n_wells), atol=1e-9)

    def test_conjugated_potential_has_conjugated_spectrum(self, rng: np.random.Generator) -> None:
        for _ in range(5):
            potential = _make_random_potential(rng, 3)
            conjugate = potential.with_gain_losses(-potential.gain_losses)
            grid = _make_grid(potential, 1001)

            energies = solve_lowest(potential, grid, 3).energies
            mirrored = solve_lowest(conjugate, grid, 3).energies

            np.testing.assert_allclose(mirrored, np.conj(energies), atol=1e-10)


# ===================================================================
# 2. Matrix model
# ===================================================================

class TestMatrixModelProperties:

    @pytest.mark.parametrize("n_wells", [2, 3, 4])
    def test_symmetric_orthogonalization(self, rng: np.random.Generator, n_wells: int) -> None:
        for _ in range(3):
            potential = _make_random_potential(rng, n_wells)
            grid = _make_grid(potential, 1001)
            overlaps = assemble(build_basis(potential, grid), potential)

            model = orthogonalize(overlaps)

            np.testing.assert_allclose(model.x @ overlaps.k @ model.x, np.eye(n_wells), atol=1e-10)

    def test_two_well_criterion_gives_one_real_eigenvalue(self, rng: np.random.Generator) -> None:
        j = REFERENCE_TUNNELING
        checked = 0
        while checked < DRAWS:
            gamma1 = rng.uniform(0.02, 1.0)
            gamma2 = -rng.uniform(0.05, 0.8) * j * j / gamma1
            if abs(gamma1 + gamma2) < 1e-2:
                continue
            epsilon1 = rng.uniform(-3.0, -1.0)
            for detuning in two_well_epsilon(gamma1, gamma2, j):
                matrix = tight_binding_matrix([epsilon1, epsilon1 + detuning], [gamma1, gamma2], j)
                values = dense_eigenvalues(matrix)

                real = [value for value in values if abs(value.imag) < 1e-10]
                assert len(real) == 1
                assert real[0].real == pytest.approx(
                    two_well_real_eigenvalue(epsilon1, gamma1, gamma2, detuning, j), abs=1e-10
                )
            checked += 1


# ===================================================================
# 3. Symmetrization
# ===================================================================

class TestSymmetrizationProperties:

    @pytest.mark.parametrize(
        "coupling_ratio, expected",
        [((1.1, 1.8), "3R"), ((2.2, 3.0), "1R+1P")],
    )
    def test_balanced_three_well_models(
        self, rng: np.random.Generator, coupling_ratio: tuple[float, float], expected: str
    ) -> None:
        """On-site energies ``c + (-a, 0, a)``; real spectrum below ``J = 2a``, a pair above."""
        for _ in range(20):
            a = rng.uniform(0.05, 0.5)
            j = a * rng.uniform(*coupling_ratio)
            epsilon = rng.uniform(-2.0, 0.0) + np.array([-a, 0.0, a])
            try:
                gamma = tight_binding_balance(epsilon, j)
            except InfeasibleSeedError:
                pytest.fail(f"J = {j} > a = {a} must admit a balanced model")
            matrix = tight_binding_matrix(epsilon, gamma, j)

            eta, classification = eta_for_matrix(matrix)

            assert classification.summary == expected
            assert eta.kernel_rank == 0
            assert quasi_hermiticity_residual(eta, matrix) < 1e-8


# ===================================================================
# 4. Residuals
# ===================================================================

class TestResidualProperties:

    def test_conjugation_closed_triples_balance(self, rng: np.random.Generator) -> None:
        for _ in range(DRAWS):
            real = rng.uniform(-3.0, 0.0)
            pair = complex(rng.uniform(-3.0, 0.0), rng.uniform(0.0, 1.0))
            for triple in ([pair, pair.conjugate(), real], [real, pair.conjugate(), pair]):
                np.testing.assert_allclose(symmetric_balance_residual(triple), 0.0, atol=1e-12)

            reals = rng.uniform(-3.0, 0.0, 3)
            np.testing.assert_allclose(symmetric_balance_residual(reals), 0.0, atol=1e-12)

    def test_unbalanced_triple_is_detected(self) -> None:
        residual = symmetric_balance_residual([-1.0 + 0.1j, -0.5, -0.2])
        assert np.abs(residual).max() > 1e-3
