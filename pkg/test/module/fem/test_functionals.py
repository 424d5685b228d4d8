import numpy as np
import pytest

from stiff_spectra.fem.dofmap import DofMap
from stiff_spectra.fem.enum import DofMode
from stiff_spectra.fem.error import DimensionMismatchError, NotConvergedError
from stiff_spectra.fem.functionals import (
    boundary_flux_integral,
    eigen_residual,
    gradient_gram,
    nodal_boundary_load,
    nodal_flux,
    region_integral,
    region_norms,
)
from stiff_spectra.geometry.enum import BoundaryTag
from stiff_spectra.meshing.mesh import Mesh


@pytest.mark.module
@pytest.mark.fem
class TestBoundaryFluxIntegral:
    """boundary_flux_integral / nodal_flux. 観点: 正常系・異常系"""

    def test_linear_field_flux(self, square_mesh_gamma0: Mesh) -> None:
        """u = x: Γ₀ (x = 0) で ν₀ = -e_x、∫∂_ν u ds = -1"""
        dofmap = DofMap.build(square_mesh_gamma0, DofMode.FREE)
        u = square_mesh_gamma0.vertices[:, 0]
        flux = boundary_flux_integral(square_mesh_gamma0, dofmap, u, 0.0, region=None, tol=None)
        assert flux == pytest.approx(-1.0, rel=1e-12)

    def test_nodal_values_on_tag(self, square_mesh_gamma0: Mesh) -> None:
        dofmap = DofMap.build(square_mesh_gamma0, DofMode.FREE)
        u = square_mesh_gamma0.vertices[:, 0]
        vertices, values = nodal_flux(square_mesh_gamma0, dofmap, u, 0.0, region=None, tol=None)
        assert vertices.size == 9
        # 端点は辺の半分しか持たない
        np.testing.assert_allclose(np.sort(values), [-1 / 8] * 7 + [-1 / 16] * 2, rtol=1e-12)

    def test_residual_gate(self, square_mesh_gamma0: Mesh) -> None:
        """固有対でない (u, λ) は既定 tol で NotConvergedError"""
        dofmap = DofMap.build(square_mesh_gamma0, DofMode.FREE)
        u = square_mesh_gamma0.vertices[:, 0]
        with pytest.raises(NotConvergedError) as e:
            boundary_flux_integral(square_mesh_gamma0, dofmap, u, 0.0, region=None)
        assert e.value.tolerance == 1e-6

    def test_dimension(self, square_mesh_gamma0: Mesh) -> None:
        dofmap = DofMap.build(square_mesh_gamma0, DofMode.FREE)
        with pytest.raises(DimensionMismatchError):
            nodal_flux(square_mesh_gamma0, dofmap, np.zeros(4), 0.0, tol=None)


@pytest.mark.module
@pytest.mark.fem
class TestEigenResidual:
    """eigen_residual. 観点: 正常系"""

    def test_constant_is_neumann_eigenfunction(self, square_mesh: Mesh) -> None:
        dofmap = DofMap.build(square_mesh, DofMode.FREE)
        assert eigen_residual(square_mesh, dofmap, np.ones(81), 0.0, region=None) < 1e-12

    def test_zero_vector(self, square_mesh: Mesh) -> None:
        dofmap = DofMap.build(square_mesh, DofMode.FREE)
        assert eigen_residual(square_mesh, dofmap, np.zeros(81), 1.0) == 0.0


@pytest.mark.module
@pytest.mark.fem
class TestRegionQuantities:
    """region_norms / region_integral / gradient_gram / nodal_boundary_load. 観点: 正常系"""

    def test_norms_of_linear_field(self, square_mesh: Mesh) -> None:
        l2, h1 = region_norms(square_mesh, square_mesh.vertices[:, 0], None)
        assert l2 == pytest.approx(np.sqrt(1.0 / 3.0), rel=1e-12)
        assert h1 == pytest.approx(1.0, rel=1e-12)

    def test_integral(self, square_mesh: Mesh) -> None:
        assert region_integral(square_mesh, square_mesh.vertices[:, 1], None) == pytest.approx(0.5, rel=1e-12)

    def test_gram_of_coordinates(self, square_mesh: Mesh) -> None:
        """(∇x, ∇y) の Gram 行列は単位行列"""
        gram = gradient_gram(square_mesh, [square_mesh.vertices[:, 0], square_mesh.vertices[:, 1]], None)
        np.testing.assert_allclose(gram, np.eye(2), atol=1e-12)

    def test_boundary_load_sums_to_length(self, square_mesh_gamma0: Mesh) -> None:
        load = nodal_boundary_load(square_mesh_gamma0, lambda p: np.ones(len(p)), BoundaryTag.GAMMA0)
        assert load.sum() == pytest.approx(1.0, rel=1e-12)

    def test_boundary_load_linear_data(self, square_mesh_gamma0: Mesh) -> None:
        """g = y を Γ₀ 上で積分すると 1/2"""
        load = nodal_boundary_load(square_mesh_gamma0, lambda p: p[:, 1], BoundaryTag.GAMMA0)
        assert load.sum() == pytest.approx(0.5, rel=1e-12)

    def test_vertex_vector_dimension(self, square_mesh: Mesh) -> None:
        with pytest.raises(DimensionMismatchError) as e:
            region_integral(square_mesh, np.zeros(2), None)
        assert e.value.what == "vertex vector"
