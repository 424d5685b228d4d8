"""Scenario-only fixtures (finer concentric meshes shared by the acceptance scenarios)."""

from __future__ import annotations

import pytest

from stiff_spectra import DomainSpec, Mesh, build_domain, generate_mesh
from stiff_spectra.asymptotics.limit import LimitMeshes


@pytest.fixture(scope="session")
def concentric_fine_mesh() -> Mesh:
    """同心円 r0 = 0.5, r1 = 1, h = 0.1"""
    return generate_mesh(build_domain(DomainSpec.concentric(0.5, 1.0)), 0.1, seed=0)


@pytest.fixture(scope="session")
def concentric_fine_limit_meshes(concentric_fine_mesh: Mesh) -> LimitMeshes:
    return LimitMeshes.from_mesh(concentric_fine_mesh)
