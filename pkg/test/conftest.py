import sys
import tempfile
from pathlib import Path
from typing import Iterator

import pytest

from stiff_spectra import CuspGeometry, DomainSpec, Mesh, build_domain, generate_mesh
from stiff_spectra.asymptotics.limit import LimitMeshes
from stiff_spectra.cusp.mesh import build_kissing_mesh
from stiff_spectra.meshing.mesh import GradingSpec

_test_root = Path(__file__).resolve().parent
if str(_test_root) not in sys.path:
    sys.path.insert(0, str(_test_root))

from support.meshes import structured_square  # noqa: E402


@pytest.fixture
def temp_work_dir() -> Iterator[Path]:
    """毎回新しい一時作業ディレクトリを作成する。テストごとに必ず別のディレクトリが渡される。"""
    with tempfile.TemporaryDirectory(prefix="stiff_spectra_test_") as tmpdir:
        yield Path(tmpdir).resolve()


@pytest.fixture
def square_mesh() -> Mesh:
    """単位正方形 8×8（全境界 GAMMA1）"""
    return structured_square(8)


@pytest.fixture
def square_mesh_gamma0() -> Mesh:
    """単位正方形 8×8、左辺 x = 0 が GAMMA0"""
    return structured_square(8, left_gamma0=True)


@pytest.fixture(scope="session")
def concentric_mesh() -> Mesh:
    """同心円 r0 = 0.5, r1 = 1, h = 0.2（粗いメッシュ、単体テスト用）"""
    return generate_mesh(build_domain(DomainSpec.concentric(0.5, 1.0)), 0.2, seed=0)


@pytest.fixture(scope="session")
def concentric_limit_meshes(concentric_mesh: Mesh) -> LimitMeshes:
    return LimitMeshes.from_mesh(concentric_mesh)


@pytest.fixture(scope="session")
def kissing_geometry() -> CuspGeometry:
    return CuspGeometry(R0=0.5, R1=1.0, delta_trunc=0.05)


@pytest.fixture(scope="session")
def kissing_annulus_mesh(kissing_geometry: CuspGeometry) -> Mesh:
    """Kissing annulus（chart 座標、delta_trunc = 0.05, h = 0.1）"""
    return build_kissing_mesh(kissing_geometry, 0.1, GradingSpec(), seed=0)
