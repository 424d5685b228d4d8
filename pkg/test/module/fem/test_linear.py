import numpy as np
import pytest

from stiff_spectra.fem.assembly import assemble_mass, assemble_stiffness
from stiff_spectra.fem.coefficient import CoefficientField
from stiff_spectra.fem.dofmap import DofMap
from stiff_spectra.fem.enum import DofMode
from stiff_spectra.fem.error import DofMapError
from stiff_spectra.fem.linear import solve_lifted, solve_neumann_mean_zero
from stiff_spectra.meshing.mesh import Mesh


@pytest.mark.module
@pytest.mark.fem
class TestSolveLifted:
    """solve_lifted. 観点: 正常系・異常系"""

    def test_constant_dirichlet_data(self, square_mesh_gamma0: Mesh) -> None:
        """Δu = 0, u = 2 on Γ₀, 他は自然境界: 解は u ≡ 2"""
        free = DofMap.build(square_mesh_gamma0, DofMode.FREE)
        k = assemble_stiffness(square_mesh_gamma0, free, CoefficientField.uniform())
        dofmap = DofMap.build(square_mesh_gamma0, DofMode.DIRICHLET_ON_GAMMA0, 2.0)
        u = solve_lifted(k.full(), np.zeros(square_mesh_gamma0.n_vertices), dofmap)
        np.testing.assert_allclose(u, 2.0, atol=1e-12)

    def test_constant_trace_map_rejected(self, square_mesh_gamma0: Mesh) -> None:
        free = DofMap.build(square_mesh_gamma0, DofMode.FREE)
        k = assemble_stiffness(square_mesh_gamma0, free, CoefficientField.uniform())
        dofmap = DofMap.build(square_mesh_gamma0, DofMode.CONSTANT_TRACE_ON_GAMMA0)
        with pytest.raises(DofMapError) as e:
            solve_lifted(k.full(), np.zeros(square_mesh_gamma0.n_vertices), dofmap)
        assert e.value.message == (
            "[Stiff Spectra] Cannot build DofMap in mode constant_trace_on_gamma0: "
            "lifted solves need a Dirichlet or free map"
        )


@pytest.mark.module
@pytest.mark.fem
class TestSolveNeumannMeanZero:
    """solve_neumann_mean_zero. 観点: 正常系"""

    def test_compatible_load(self, square_mesh: Mesh) -> None:
        """両立条件を満たす右辺: K u = f を満たし平均 0"""
        free = DofMap.build(square_mesh, DofMode.FREE)
        k = assemble_stiffness(square_mesh, free, CoefficientField.uniform())
        m = assemble_mass(square_mesh, free, CoefficientField.uniform())
        weights = m @ np.ones(square_mesh.n_vertices)
        f = m @ (square_mesh.vertices[:, 0] - 0.5)
        u = solve_neumann_mean_zero(k.full(), weights, f)
        assert abs(weights @ u) < 1e-12
        assert np.max(np.abs(k @ u - f)) < 1e-10
