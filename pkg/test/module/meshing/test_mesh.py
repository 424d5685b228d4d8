import numpy as np
import pytest

from stiff_spectra.geometry.enum import BoundaryTag, RegionTag
from stiff_spectra.meshing.error import GradingSpecError
from stiff_spectra.meshing.mesh import GradingSpec, Mesh, validate_mesh
from support.meshes import structured_square


@pytest.mark.module
@pytest.mark.meshing
class TestMesh_Geometry:
    """Mesh の幾何量. 観点: 正常系"""

    def test_area_and_edges(self, square_mesh: Mesh) -> None:
        """8×8 正方形: 面積 1、辺数 3·64 + 2·8"""
        assert square_mesh.region_area() == pytest.approx(1.0)
        assert square_mesh.edges.shape == (3 * 64 + 2 * 8, 2)
        assert square_mesh.h_max == pytest.approx(np.sqrt(2) / 8)

    def test_arrays_are_read_only(self, square_mesh: Mesh) -> None:
        with pytest.raises(ValueError):
            square_mesh.vertices[0, 0] = 1.0

    def test_boundary_vertices_by_tag(self, square_mesh_gamma0: Mesh) -> None:
        """左辺の頂点は 9 個"""
        left = square_mesh_gamma0.boundary_vertices(BoundaryTag.GAMMA0)
        assert left.size == 9
        np.testing.assert_allclose(square_mesh_gamma0.vertices[left, 0], 0.0)


@pytest.mark.module
@pytest.mark.meshing
class TestMesh_Submesh:
    """Mesh.submesh / shared_vertices. 観点: 正常系"""

    def test_split_halves(self) -> None:
        """左右の部分メッシュは x = 1/2 上の 5 頂点を共有する"""
        mesh = structured_square(4, core_left_half=True)
        core = mesh.submesh(RegionTag.CORE)
        annulus = mesh.submesh(RegionTag.ANNULUS)
        assert core.region_area() == pytest.approx(0.5)
        assert annulus.region_area() == pytest.approx(0.5)
        idx_core, idx_annulus = core.shared_vertices(annulus)
        assert idx_core.size == 5
        np.testing.assert_allclose(core.vertices[idx_core], annulus.vertices[idx_annulus])
        np.testing.assert_allclose(core.vertices[idx_core, 0], 0.5)

    def test_parent_vertices_point_into_parent(self) -> None:
        mesh = structured_square(4, core_left_half=True)
        core = mesh.submesh(RegionTag.CORE)
        np.testing.assert_allclose(mesh.vertices[core.parent_vertices], core.vertices)


@pytest.mark.module
@pytest.mark.meshing
class TestValidateMesh:
    """validate_mesh. 観点: 正常系・異常系（例外を投げず issues に報告）"""

    def test_structured_square_ok(self, square_mesh: Mesh) -> None:
        diagnostics = validate_mesh(square_mesh)
        assert diagnostics.ok
        assert diagnostics.min_angle == pytest.approx(45.0)

    def test_reversed_triangle_reported(self, square_mesh: Mesh) -> None:
        """向きが逆の三角形は negative_area に入る"""
        triangles = square_mesh.triangles.copy()
        triangles[0] = triangles[0][::-1]
        broken = Mesh(
            vertices=square_mesh.vertices,
            triangles=triangles,
            triangle_tags=square_mesh.triangle_tags,
            boundary_edges=square_mesh.boundary_edges,
            edge_tags=square_mesh.edge_tags,
        )
        diagnostics = validate_mesh(broken)
        assert not diagnostics.ok
        assert diagnostics.negative_area == (0,)

    def test_missing_boundary_tag_reported(self, square_mesh: Mesh) -> None:
        broken = Mesh(
            vertices=square_mesh.vertices,
            triangles=square_mesh.triangles,
            triangle_tags=square_mesh.triangle_tags,
            boundary_edges=square_mesh.boundary_edges[1:],
            edge_tags=square_mesh.edge_tags[1:],
        )
        assert validate_mesh(broken).untagged_boundary_edges == 1

    def test_region_crossing_off_interface(self) -> None:
        """GAMMA0 なしで core と annulus が頂点を共有すると報告される"""
        diagnostics = validate_mesh(structured_square(4, core_left_half=True))
        assert diagnostics.cross_interface_vertices == 5


@pytest.mark.module
@pytest.mark.meshing
class TestGradingSpec:
    """GradingSpec. 観点: 正常系・異常系"""

    def test_from_dict_defaults(self) -> None:
        assert GradingSpec.from_dict() == GradingSpec(delta_trunc=0.0, ratio=0.5, n_across=6)

    def test_ratio_range(self) -> None:
        with pytest.raises(GradingSpecError) as e:
            GradingSpec(ratio=1.5)
        assert e.value.message == "[Stiff Spectra] Invalid grading field 'ratio': must lie in (0, 1), value: 1.5"
