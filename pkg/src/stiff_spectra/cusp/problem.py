from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from stiff_spectra.cusp.error import CuspProblemError
from stiff_spectra.eigensolver import EigenPair, SolverOptions, eigenvalues_near, solve_gevp
from stiff_spectra.fem.assembly import assemble_mass, assemble_stiffness
from stiff_spectra.fem.coefficient import CoefficientField
from stiff_spectra.fem.dofmap import DofMap
from stiff_spectra.fem.enum import DofMode
from stiff_spectra.fem.functionals import vertex_matrices
from stiff_spectra.fem.linear import solve_lifted
from stiff_spectra.meshing.mesh import Mesh

logger = logging.getLogger(__name__)

RESONANCE_RTOL = 1e-3


class BoundaryConditionKind(Enum):
    CONSTANT_ON_GAMMA0 = "constant_on_gamma0"
    ZERO_ON_GAMMA0 = "zero_on_gamma0"


@dataclass(frozen=True)
class CuspBoundaryCondition:
    """Condition on the core circle Γ₀; Γ₁ and the cut edges are natural."""

    kind: BoundaryConditionKind
    c0: float = 0.0

    @classmethod
    def constant(cls, c0: float) -> CuspBoundaryCondition:
        return cls(kind=BoundaryConditionKind.CONSTANT_ON_GAMMA0, c0=float(c0))

    @classmethod
    def zero(cls) -> CuspBoundaryCondition:
        return cls(kind=BoundaryConditionKind.ZERO_ON_GAMMA0)


@dataclass(frozen=True, eq=False)
class CuspSolution:
    """
    CuspSolution (fields of one cusp solve <Value Object>)

    - CONSTANT_ON_GAMMA0: `fields` holds one vertex field u with u = c0 on Γ₀.
      `nearest_eigenvalue` is the Dirichlet–Neumann eigenvalue closest to lam
      (None at lam = 0).
    - ZERO_ON_GAMMA0: `fields` holds nev eigenfunctions (vertex values,
      zero on Γ₀) and `eigenvalues` the matching eigenvalues.
    """

    bc: CuspBoundaryCondition
    lam: float | None
    fields: list[NDArray[np.float64]]
    eigenvalues: list[float] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)
    nearest_eigenvalue: float | None = None
    near_resonance: bool = False

    @property
    def u(self) -> NDArray[np.float64]:
        return self.fields[0]


def _solve_constant(
    mesh: Mesh, bc: CuspBoundaryCondition, lam: float, options: SolverOptions
) -> CuspSolution:
    dirichlet = DofMap.build(mesh, DofMode.DIRICHLET_ON_GAMMA0, bc.c0)
    k, m = vertex_matrices(mesh, None)
    operator = k.full() - lam * m.full()

    nearest = None
    near_resonance = False
    if lam > 0:
        unit = CoefficientField.uniform()
        zero = DofMap.build(mesh, DofMode.DIRICHLET_ON_GAMMA0)
        candidates = eigenvalues_near(
            assemble_stiffness(mesh, zero, unit),
            assemble_mass(mesh, zero, unit),
            lam,
            k=min(3, zero.n_dofs),
            options=options,
        )
        nearest = float(candidates[np.argmin(np.abs(candidates - lam))])
        if abs(nearest - lam) < RESONANCE_RTOL * max(abs(nearest), 1.0):
            near_resonance = True
            logger.warning(
                "Cusp solve at lam=%g is near the mixed eigenvalue %g; the solution is ill-conditioned",
                lam,
                nearest,
            )

    u = solve_lifted(operator, np.zeros(mesh.n_vertices), dirichlet)
    return CuspSolution(
        bc=bc,
        lam=lam,
        fields=[u],
        nearest_eigenvalue=nearest,
        near_resonance=near_resonance,
    )


def _solve_zero(mesh: Mesh, bc: CuspBoundaryCondition, options: SolverOptions) -> CuspSolution:
    dofmap = DofMap.build(mesh, DofMode.DIRICHLET_ON_GAMMA0)
    unit = CoefficientField.uniform()
    pairs: list[EigenPair] = solve_gevp(
        assemble_stiffness(mesh, dofmap, unit),
        assemble_mass(mesh, dofmap, unit),
        options,
    )
    logger.info("Dirichlet–Neumann cusp spectrum: %s", ", ".join(f"{p.lam:.6g}" for p in pairs))
    return CuspSolution(
        bc=bc,
        lam=None,
        fields=[dofmap.expand(p.vector) for p in pairs],
        eigenvalues=[p.lam for p in pairs],
        residuals=[p.residual for p in pairs],
    )


def solve_cusp_problem(
    mesh: Mesh,
    bc: CuspBoundaryCondition,
    lam: float | None = None,
    *,
    nev: int = 1,
    options: SolverOptions | None = None,
) -> CuspSolution:
    """
    Mixed problem in the truncated cusp annulus.

    CONSTANT_ON_GAMMA0 solves −Δu = λu with u = c0 on Γ₀ by lifting the
    constant; ZERO_ON_GAMMA0 returns the nev lowest eigenpairs with u = 0 on Γ₀.
    Γ₁ and the cut edges carry the natural condition in both cases.

    Raises:
        CuspProblemError: CONSTANT_ON_GAMMA0 without a nonnegative lam
        FactorizationSingularError / NoConvergenceError / NotConvergedError:
            propagated from the eigensolver
    """
    if options is None:
        options = SolverOptions()
    if bc.kind is BoundaryConditionKind.ZERO_ON_GAMMA0:
        return _solve_zero(mesh, bc, options.with_nev(nev))
    if lam is None or not lam >= 0:
        raise CuspProblemError("lam", lam, "constant-trace solves need lam >= 0")
    return _solve_constant(mesh, bc, float(lam), options)
