import numpy as np
import pytest

from stiff_spectra.cusp.mesh import across_thickness_counts, build_kissing_mesh
from stiff_spectra.geometry.cusp_chart import CuspGeometry
from stiff_spectra.geometry.enum import BoundaryTag, RegionTag
from stiff_spectra.meshing.mesh import GradingSpec, Mesh


@pytest.mark.module
@pytest.mark.cusp
class TestBuildKissingMesh:
    """build_kissing_mesh. 観点: 正常系"""

    def test_annulus_only(self, kissing_annulus_mesh: Mesh) -> None:
        assert np.all(kissing_annulus_mesh.region_mask(RegionTag.ANNULUS))
        for tag in (BoundaryTag.GAMMA0, BoundaryTag.GAMMA1, BoundaryTag.TRUNCATION):
            assert kissing_annulus_mesh.boundary_vertices(tag).size > 0

    def test_truncation_from_geometry(self, kissing_annulus_mesh: Mesh, kissing_geometry: CuspGeometry) -> None:
        """切断辺は x1 = ±delta_trunc（GradingSpec の値は無視される）"""
        cut = kissing_annulus_mesh.vertices[kissing_annulus_mesh.boundary_vertices(BoundaryTag.TRUNCATION)]
        np.testing.assert_allclose(np.abs(cut[:, 0]), kissing_geometry.delta_trunc, rtol=1e-9)

    def test_deterministic(self, kissing_geometry: CuspGeometry) -> None:
        a = build_kissing_mesh(kissing_geometry, 0.2, GradingSpec(n_across=2), seed=3)
        b = build_kissing_mesh(kissing_geometry, 0.2, GradingSpec(n_across=2), seed=3)
        np.testing.assert_array_equal(a.vertices, b.vertices)
        np.testing.assert_array_equal(a.triangles, b.triangles)


@pytest.mark.module
@pytest.mark.cusp
class TestAcrossThicknessCounts:
    """across_thickness_counts. 観点: 正常系"""

    def test_graded_resolution(self, kissing_annulus_mesh: Mesh, kissing_geometry: CuspGeometry) -> None:
        """n_across = 6 の grading で厚さ方向に 4 要素以上"""
        counts = across_thickness_counts(kissing_annulus_mesh, kissing_geometry, [0.3, 0.2, 0.1, 0.06])
        assert counts.dtype == np.int64
        assert np.all(counts >= 4)
