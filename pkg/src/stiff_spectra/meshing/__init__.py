from .generator import generate_kissing_annulus, generate_mesh, smooth_mesh
from .io import export_mesh, import_mesh
from .mesh import GradingSpec, Mesh, MeshDiagnostics, validate_mesh

__all__ = [
    "GradingSpec",
    "Mesh",
    "MeshDiagnostics",
    "export_mesh",
    "generate_kissing_annulus",
    "generate_mesh",
    "import_mesh",
    "smooth_mesh",
    "validate_mesh",
]
