import numpy as np
import pytest

from stiff_spectra.cusp.error import CuspProblemError
from stiff_spectra.cusp.problem import (
    BoundaryConditionKind,
    CuspBoundaryCondition,
    solve_cusp_problem,
)
from stiff_spectra.geometry.enum import BoundaryTag
from stiff_spectra.meshing.mesh import Mesh


@pytest.mark.module
@pytest.mark.cusp
class TestCuspBoundaryCondition:
    """CuspBoundaryCondition. 観点: 正常系"""

    def test_constructors(self) -> None:
        assert CuspBoundaryCondition.constant(2).kind is BoundaryConditionKind.CONSTANT_ON_GAMMA0
        assert CuspBoundaryCondition.constant(2).c0 == 2.0
        assert CuspBoundaryCondition.zero().kind is BoundaryConditionKind.ZERO_ON_GAMMA0


@pytest.mark.module
@pytest.mark.cusp
class TestSolveCuspProblem_Constant:
    """solve_cusp_problem（Γ₀ で定数）. 観点: 正常系・異常系"""

    def test_lam_zero_gives_constant(self, kissing_annulus_mesh: Mesh) -> None:
        """λ = 0 では u ≡ c₀（Neumann 条件のもとで定数が解）"""
        solution = solve_cusp_problem(kissing_annulus_mesh, CuspBoundaryCondition.constant(1.5), 0.0)
        np.testing.assert_allclose(solution.u, 1.5, rtol=1e-10)
        assert solution.nearest_eigenvalue is None
        assert not solution.near_resonance

    def test_trace_is_imposed(self, kissing_annulus_mesh: Mesh) -> None:
        solution = solve_cusp_problem(kissing_annulus_mesh, CuspBoundaryCondition.constant(1.0), 1.0)
        gamma0 = kissing_annulus_mesh.boundary_vertices(BoundaryTag.GAMMA0)
        np.testing.assert_array_equal(solution.u[gamma0], 1.0)
        assert solution.nearest_eigenvalue is not None and solution.nearest_eigenvalue > 0
        assert np.all(np.isfinite(solution.u))

    def test_near_resonance(self, kissing_annulus_mesh: Mesh) -> None:
        """Dirichlet–Neumann 固有値のすぐ近くの λ ではフラグが立つ"""
        lam_1 = solve_cusp_problem(kissing_annulus_mesh, CuspBoundaryCondition.zero()).eigenvalues[0]
        solution = solve_cusp_problem(kissing_annulus_mesh, CuspBoundaryCondition.constant(1.0), lam_1 * (1 + 1e-4))
        assert solution.near_resonance
        assert solution.nearest_eigenvalue == pytest.approx(lam_1, rel=1e-8)

    def test_missing_lam(self, kissing_annulus_mesh: Mesh) -> None:
        with pytest.raises(CuspProblemError) as e:
            solve_cusp_problem(kissing_annulus_mesh, CuspBoundaryCondition.constant(1.0))
        assert e.value.field == "lam"

    def test_negative_lam(self, kissing_annulus_mesh: Mesh) -> None:
        with pytest.raises(CuspProblemError) as e:
            solve_cusp_problem(kissing_annulus_mesh, CuspBoundaryCondition.constant(1.0), -1.0)
        assert e.value.message == "[Stiff Spectra] Invalid cusp problem argument lam=-1.0: constant-trace solves need lam >= 0"


@pytest.mark.module
@pytest.mark.cusp
class TestSolveCuspProblem_Zero:
    """solve_cusp_problem（Γ₀ で 0）. 観点: 正常系"""

    def test_eigenpairs(self, kissing_annulus_mesh: Mesh) -> None:
        """固有値は正で昇順、固有関数は Γ₀ 上で 0"""
        solution = solve_cusp_problem(kissing_annulus_mesh, CuspBoundaryCondition.zero(), nev=2)
        assert solution.lam is None
        assert len(solution.fields) == 2
        assert 0 < solution.eigenvalues[0] <= solution.eigenvalues[1]
        gamma0 = kissing_annulus_mesh.boundary_vertices(BoundaryTag.GAMMA0)
        for u in solution.fields:
            assert np.all(u[gamma0] == 0.0)
            assert np.max(np.abs(u)) > 0
        assert all(r <= 1e-6 * max(1.0, lam) for r, lam in zip(solution.residuals, solution.eigenvalues))
