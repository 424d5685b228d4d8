import numpy as np
import pytest

from stiff_spectra.geometry.cusp_chart import CuspGeometry, thickness_profiles
from stiff_spectra.geometry.domain import DomainSpec, build_domain
from stiff_spectra.geometry.enum import BoundaryTag, RegionTag
from stiff_spectra.meshing.error import MeshFailureError
from stiff_spectra.meshing.generator import (
    MIN_QUALITY_ANGLE,
    cusp_size_function,
    generate_kissing_annulus,
    generate_mesh,
)
from stiff_spectra.meshing.mesh import GradingSpec, Mesh, validate_mesh


@pytest.mark.module
@pytest.mark.meshing
class TestGenerateMesh_Concentric:
    """generate_mesh（同心円）. 観点: 正常系"""

    def test_valid_and_quality(self, concentric_mesh: Mesh) -> None:
        diagnostics = validate_mesh(concentric_mesh)
        assert diagnostics.ok
        assert diagnostics.min_angle >= MIN_QUALITY_ANGLE
        assert concentric_mesh.h_max <= 0.2 * 1.2

    def test_region_areas(self, concentric_mesh: Mesh) -> None:
        """多角形近似なので面積は円の面積よりわずかに小さい"""
        core = concentric_mesh.region_area(RegionTag.CORE)
        annulus = concentric_mesh.region_area(RegionTag.ANNULUS)
        assert core == pytest.approx(np.pi * 0.25, rel=0.03)
        assert annulus == pytest.approx(np.pi * 0.75, rel=0.03)
        assert core < np.pi * 0.25

    def test_boundary_vertices_on_circles(self, concentric_mesh: Mesh) -> None:
        v = concentric_mesh.vertices
        gamma0 = concentric_mesh.boundary_vertices(BoundaryTag.GAMMA0)
        gamma1 = concentric_mesh.boundary_vertices(BoundaryTag.GAMMA1)
        np.testing.assert_allclose(np.hypot(*v[gamma0].T), 0.5, atol=1e-12)
        np.testing.assert_allclose(np.hypot(*v[gamma1].T), 1.0, atol=1e-12)

    def test_same_seed_same_mesh(self) -> None:
        """同じ入力と seed なら同じメッシュ"""
        domain = build_domain(DomainSpec.concentric(0.5, 1.0))
        a = generate_mesh(domain, 0.3, seed=3)
        b = generate_mesh(domain, 0.3, seed=3)
        np.testing.assert_array_equal(a.vertices, b.vertices)
        np.testing.assert_array_equal(a.triangles, b.triangles)


@pytest.mark.module
@pytest.mark.meshing
class TestGenerateMesh_Errors:
    """generate_mesh. 観点: 異常系"""

    def test_non_positive_h(self) -> None:
        domain = build_domain(DomainSpec.concentric(0.5, 1.0))
        with pytest.raises(MeshFailureError) as e:
            generate_mesh(domain, 0.0)
        assert e.value.message == "[Stiff Spectra] Mesh generation failed: mesh size must be positive, got h=0.0"

    def test_kissing_needs_truncation(self) -> None:
        domain = build_domain(DomainSpec.kissing(0.5, 1.0))
        with pytest.raises(MeshFailureError) as e:
            generate_mesh(domain, 0.2)
        assert e.value.reason == "kissing domains need a grading with delta_trunc > 0"


@pytest.mark.module
@pytest.mark.meshing
class TestGenerateKissingAnnulus:
    """generate_kissing_annulus / cusp_size_function. 観点: 正常系"""

    def test_annulus_only_and_valid(self, kissing_annulus_mesh: Mesh) -> None:
        assert validate_mesh(kissing_annulus_mesh).ok
        assert set(np.unique(kissing_annulus_mesh.triangle_tags).tolist()) == {int(RegionTag.ANNULUS)}

    def test_cut_edges_at_truncation(self, kissing_annulus_mesh: Mesh, kissing_geometry: CuspGeometry) -> None:
        """TRUNCATION 辺の頂点は x1 = ±delta_trunc 上"""
        v = kissing_annulus_mesh.vertices[kissing_annulus_mesh.boundary_vertices(BoundaryTag.TRUNCATION)]
        np.testing.assert_allclose(np.abs(v[:, 0]), kissing_geometry.delta_trunc, atol=1e-12)

    def test_vertices_inside_gap_near_cusp(self, kissing_annulus_mesh: Mesh, kissing_geometry: CuspGeometry) -> None:
        """cusp 近傍の頂点は H1 <= x2 <= H0 を満たす"""
        v = kissing_annulus_mesh.vertices
        near = (np.abs(v[:, 0]) < 0.2) & (v[:, 1] < 0.1)
        h0, h1, _, _ = thickness_profiles(kissing_geometry, v[near, 0])
        assert np.all(v[near, 1] >= h1 - 1e-12)
        assert np.all(v[near, 1] <= h0 + 1e-12)

    def test_size_resolves_thickness(self) -> None:
        """gap 内のサイズは H / n_across 以下"""
        geom = CuspGeometry(R0=0.5, R1=1.0, delta_trunc=0.02)
        grading = GradingSpec(delta_trunc=0.02, n_across=6)
        size = cusp_size_function(geom, 0.1, grading)
        x1 = np.array([0.04, 0.1, 0.2])
        _, h1, h, _ = thickness_profiles(geom, x1)
        s = size(np.column_stack([x1, h1 + 0.5 * h]))
        assert np.all(s <= h / 6 + 1e-15)

    def test_non_positive_h(self, kissing_geometry: CuspGeometry) -> None:
        with pytest.raises(MeshFailureError):
            generate_kissing_annulus(kissing_geometry, -1.0, GradingSpec(delta_trunc=0.05))
