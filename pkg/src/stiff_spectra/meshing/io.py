"""
Plain-text mesh files.

<stem>.node : "index x y" per line
<stem>.ele  : "index v0 v1 v2 region" per line
<stem>.edge : "index v0 v1 boundary" per line

The first line of each file holds the record count.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from stiff_spectra.meshing.error import MeshFormatError
from stiff_spectra.meshing.mesh import Mesh

logger = logging.getLogger(__name__)


def _write(path: Path, rows: np.ndarray, fmt: list[str]) -> None:
    index = np.arange(rows.shape[0])[:, None]
    with path.open("w", encoding="utf-8") as f:
        f.write(f"{rows.shape[0]}\n")
        np.savetxt(f, np.hstack([index, rows]), fmt=fmt)


def export_mesh(mesh: Mesh, stem: str | Path) -> list[Path]:
    """Write the .node/.ele/.edge triple and return the written paths."""
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    node = stem.with_suffix(".node")
    ele = stem.with_suffix(".ele")
    edge = stem.with_suffix(".edge")

    with node.open("w", encoding="utf-8") as f:
        f.write(f"{mesh.n_vertices}\n")
        for i, (x, y) in enumerate(mesh.vertices.tolist()):
            f.write(f"{i} {x!r} {y!r}\n")
    _write(ele, np.column_stack([mesh.triangles, mesh.triangle_tags]), ["%d"] * 5)
    _write(edge, np.column_stack([mesh.boundary_edges, mesh.edge_tags]), ["%d"] * 4)
    logger.info("Exported mesh to %s.{node,ele,edge}", stem)
    return [node, ele, edge]


def _read(path: Path, columns: int) -> np.ndarray:
    if not path.exists():
        raise MeshFormatError(str(path), "file not found")
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise MeshFormatError(str(path), "empty file")
    try:
        count = int(lines[0])
        rows = [line.split() for line in lines[1 : 1 + count]]
    except ValueError as e:
        raise MeshFormatError(str(path), "invalid header") from e
    if len(rows) != count or any(len(r) != columns for r in rows):
        raise MeshFormatError(str(path), f"expected {count} records of {columns} columns")
    return np.array(rows, dtype=object).reshape(count, columns)


def import_mesh(stem: str | Path) -> Mesh:
    stem = Path(stem)
    node = _read(stem.with_suffix(".node"), 3)
    ele = _read(stem.with_suffix(".ele"), 5)
    edge = _read(stem.with_suffix(".edge"), 4)
    return Mesh(
        vertices=node[:, 1:].astype(np.float64),
        triangles=ele[:, 1:4].astype(np.int64),
        triangle_tags=ele[:, 4].astype(np.int8),
        boundary_edges=edge[:, 1:3].astype(np.int64),
        edge_tags=edge[:, 3].astype(np.int8),
    )
