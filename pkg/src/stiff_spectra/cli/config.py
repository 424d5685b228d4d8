from __future__ import annotations

import logging
import tomllib
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from stiff_spectra.cli.enum import Subcommand
from stiff_spectra.cli.error import ConfigParseError, ConfigValidationError
from stiff_spectra.cusp.error import CuspStudyConfigError
from stiff_spectra.cusp.study import CuspStudyConfig
from stiff_spectra.eigensolver.error import SolverOptionsError
from stiff_spectra.geometry.domain import DomainSpec, build_domain
from stiff_spectra.geometry.error import CuspGeometryError, DomainSpecError, OverlapError, TangencyViolationError
from stiff_spectra.meshing.error import GradingSpecError
from stiff_spectra.verification.config import SweepConfig
from stiff_spectra.verification.error import SweepConfigError

logger = logging.getLogger(__name__)

SECTIONS = ("geometry", "sweep", "solver", "mesh", "cusp", "run")

# flag -> (section, key) pairs it overrides
FLAG_TARGETS: dict[str, tuple[tuple[str, str], ...]] = {
    "m": (("sweep", "m"),),
    "eps": (("sweep", "eps_list"),),
    "geometry": (("geometry", "kind"),),
    "r0": (("geometry", "r0"), ("cusp", "r0")),
    "r1": (("geometry", "r1"), ("cusp", "r1")),
    "h": (("sweep", "h"), ("cusp", "h")),
    "h2": (("sweep", "h2"),),
    "nev": (("sweep", "nev"),),
    "delta_trunc": (("mesh", "delta_trunc"), ("cusp", "delta_trunc")),
    "formula": (("sweep", "formula"),),
    "workers": (("sweep", "workers"), ("cusp", "workers")),
    "seed": (("mesh", "seed"), ("cusp", "seed")),
    "out": (("run", "out"),),
    "sweep_id": (("run", "sweep_id"),),
}


@dataclass(kw_only=True)
class RunConfig:
    """
    RunConfig (validated command configuration)

    Properties:
    - subcommand: limit / sweep / cusp / report
    - out_dir: directory of every written file (sweep.db included)
    - sweep: limit and sweep parameters (None for cusp and report)
    - cusp: cusp study parameters (cusp only)
    - sweep_id: stored sweep re-emitted by report (latest when None)
    """

    subcommand: Subcommand
    out_dir: Path
    sweep: SweepConfig | None = None
    cusp: CuspStudyConfig | None = None
    sweep_id: str | None = None

    @property
    def catalog_path(self) -> Path:
        return self.out_dir / "sweep.db"


def load_config_file(path: str | Path) -> dict[str, dict[str, Any]]:
    """
    Read a TOML file with flat sections.

    Raises:
        ConfigParseError: missing file, invalid TOML or unknown section
    """
    path = Path(path)
    try:
        with path.open("rb") as f:
            data = tomllib.load(f)
    except FileNotFoundError as e:
        raise ConfigParseError(str(path), "file does not exist") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigParseError(str(path), str(e)) from e
    unknown = sorted(set(data) - set(SECTIONS))
    if unknown:
        raise ConfigParseError(str(path), f"unknown section(s) {', '.join(unknown)}")
    for name, section in data.items():
        if not isinstance(section, dict):
            raise ConfigParseError(str(path), f"[{name}] must be a table")
    return {name: dict(data.get(name, {})) for name in SECTIONS}


def merge_flags(sections: dict[str, dict[str, Any]], flags: Mapping[str, Any]) -> dict[str, dict[str, Any]]:
    """Flags that are not None override the file values of every section they target."""
    merged = {name: dict(sections.get(name, {})) for name in SECTIONS}
    for flag, value in flags.items():
        if value is None or flag not in FLAG_TARGETS:
            continue
        for section, key in FLAG_TARGETS[flag]:
            merged[section][key] = value
    return merged


def _sweep_config(sections: dict[str, dict[str, Any]]) -> SweepConfig:
    sweep = sections["sweep"]
    mesh = sections["mesh"]
    if not sections["geometry"]:
        raise ConfigValidationError("geometry", None, "a [geometry] section or --geometry is required")
    geometry = DomainSpec.from_dict(sections["geometry"])
    build_domain(geometry)

    grading = {k: mesh[k] for k in ("delta_trunc", "ratio", "n_across") if k in mesh} or None
    data = {k: v for k, v in sweep.items() if k not in ("h", "h2")}
    data.update(
        mesh_h=sweep.get("h", 0.1),
        mesh_h2=sweep.get("h2"),
        geometry=geometry.to_dict(),
        solver=sections["solver"] or None,
        grading=grading,
        seed=mesh.get("seed", 0),
    )
    config = SweepConfig.from_dict(data)
    config.validate()
    return config


def _cusp_config(sections: dict[str, dict[str, Any]]) -> CuspStudyConfig:
    data = dict(sections["cusp"])
    if sections["solver"]:
        data["solver"] = sections["solver"]
    for key in ("ratio", "n_across"):
        if key in sections["mesh"]:
            data.setdefault(key, sections["mesh"][key])
    config = CuspStudyConfig.from_dict(data)
    config.validate()
    config.geometry()
    return config


def parse_config(
    path: str | Path | None = None,
    *,
    subcommand: Subcommand | str | None = None,
    flags: Mapping[str, Any] | None = None,
) -> RunConfig:
    """
    Merge the config file (if any) with flags and validate everything the
    subcommand needs.

    Args:
        path: TOML file with sections [geometry] [sweep] [solver] [mesh] [cusp] [run]
        subcommand: overrides [run] subcommand
        flags: flag name -> value (None = not given); see FLAG_TARGETS

    Raises:
        ConfigParseError: unreadable file
        ConfigValidationError: naming the invalid field
    """
    sections = load_config_file(path) if path is not None else {name: {} for name in SECTIONS}
    sections = merge_flags(sections, flags or {})
    run = sections["run"]

    raw = subcommand.value if isinstance(subcommand, Subcommand) else subcommand or run.get("subcommand")
    try:
        command = Subcommand(raw)
    except ValueError as e:
        raise ConfigValidationError("subcommand", raw, f"must be one of {[s.value for s in Subcommand]}") from e

    out_dir = Path(run.get("out", "out"))
    try:
        match command:
            case Subcommand.LIMIT | Subcommand.SWEEP:
                config = RunConfig(subcommand=command, out_dir=out_dir, sweep=_sweep_config(sections))
            case Subcommand.CUSP:
                config = RunConfig(subcommand=command, out_dir=out_dir, cusp=_cusp_config(sections))
            case Subcommand.REPORT:
                config = RunConfig(subcommand=command, out_dir=out_dir, sweep_id=run.get("sweep_id"))
    except ConfigValidationError:
        raise
    except (
        SweepConfigError,
        CuspStudyConfigError,
        CuspGeometryError,
        DomainSpecError,
        GradingSpecError,
        SolverOptionsError,
    ) as e:
        raise ConfigValidationError(e.field, e.value, e.reason) from e
    except (TangencyViolationError, OverlapError) as e:
        raise ConfigValidationError("geometry", sections["geometry"], e.message) from e
    except (TypeError, ValueError) as e:
        # float()/int()/Enum conversions of malformed values
        raise ConfigValidationError("config", None, str(e)) from e

    logger.debug("Parsed %s configuration (out=%s)", command.value, out_dir)
    return config
