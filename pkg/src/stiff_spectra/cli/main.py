from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import Sequence

from stiff_spectra.asymptotics.limit import LimitMeshes
from stiff_spectra.asymptotics.predict import Predictor
from stiff_spectra.cli.config import RunConfig, parse_config
from stiff_spectra.cli.enum import Subcommand
from stiff_spectra.core.error import StiffSpectraException
from stiff_spectra.cusp.report import write_cusp_report
from stiff_spectra.cusp.study import run_cusp_study
from stiff_spectra.geometry.domain import build_domain
from stiff_spectra.meshing.generator import generate_mesh
from stiff_spectra.verification.report import emit_all, fmt
from stiff_spectra.verification.store import SweepCatalog
from stiff_spectra.verification.sweep import run_sweep

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

LIMIT_HEADER = (
    "m",
    "n",
    "regime",
    "source",
    "lambda0",
    "multiplicity",
    "c0",
    "lambda_prime",
    "formula",
    "alpha",
    "beta",
    "gamma",
)


def _eps_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stiff-spectra",
        description="Stiff transmission eigenvalue asymptotics: limit problems, eps-sweeps and cusp studies",
    )
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    for command in Subcommand:
        p = sub.add_parser(command.value)
        p.add_argument("--config", type=Path, default=None, help="TOML file; flags override its values")
        p.add_argument("--out", type=Path, default=None, help="output directory")
        if command is Subcommand.REPORT:
            p.add_argument("--sweep-id", dest="sweep_id", default=None, help="stored sweep (latest if omitted)")
            continue
        p.add_argument("--r0", type=float, default=None)
        p.add_argument("--r1", type=float, default=None)
        p.add_argument("--h", type=float, default=None)
        p.add_argument("--delta-trunc", dest="delta_trunc", type=float, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--workers", type=int, default=None)
        if command is Subcommand.CUSP:
            continue
        p.add_argument("--geometry", choices=["concentric", "offset", "kissing"], default=None)
        p.add_argument("--m", type=float, default=None)
        p.add_argument("--eps", type=_eps_list, default=None, help="comma-separated, strictly decreasing")
        p.add_argument("--h2", type=float, default=None)
        p.add_argument("--nev", type=int, default=None)
        p.add_argument("--formula", choices=["derived", "extrapolated"], default=None)
    return parser


def _run_limit(config: RunConfig) -> int:
    sweep = config.sweep
    assert sweep is not None
    mesh = generate_mesh(build_domain(sweep.geometry), sweep.mesh_h, sweep.grading, seed=sweep.seed)
    predictor = Predictor(
        sweep.m,
        LimitMeshes.from_mesh(mesh),
        sweep.nev,
        options=sweep.solver,
        rtol_cluster=sweep.rtol_cluster,
        formula=sweep.formula,
    )
    count = min(sweep.nev, predictor.available)
    if count < sweep.nev:
        logger.warning("Only %d of %d indices have a complete limit cluster", count, sweep.nev)

    config.out_dir.mkdir(parents=True, exist_ok=True)
    path = config.out_dir / "limit.csv"
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(LIMIT_HEADER)
        for p in predictor.predictions(count):
            writer.writerow(
                [
                    fmt(p.m),
                    p.n,
                    p.regime.value,
                    "rigid" if p.source is None else p.source.value,
                    fmt(p.lambda0),
                    p.multiplicity,
                    fmt(p.c0),
                    fmt(p.lambda_prime),
                    p.label.value,
                    fmt(p.alpha),
                    fmt(p.beta),
                    fmt(p.gamma),
                ]
            )
    logger.info("Wrote %s", path)
    return EXIT_PASS


def _run_sweep(config: RunConfig) -> int:
    assert config.sweep is not None
    report = run_sweep(config.sweep)
    emit_all(report, config.out_dir)
    catalog = SweepCatalog(str(config.catalog_path))
    try:
        catalog.save(report)
    finally:
        catalog.close()
    return EXIT_PASS if report.passed else EXIT_FAIL


def _run_cusp(config: RunConfig) -> int:
    assert config.cusp is not None
    report = run_cusp_study(config.cusp)
    write_cusp_report(report, config.out_dir)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _run_report(config: RunConfig) -> int:
    if not config.catalog_path.exists():
        raise FileNotFoundError(f"no sweep catalog at {config.catalog_path}")
    catalog = SweepCatalog(str(config.catalog_path))
    try:
        report = catalog.load_report(config.sweep_id)
    finally:
        catalog.close()
    emit_all(report, config.out_dir)
    return EXIT_PASS if report.passed else EXIT_FAIL


_HANDLERS = {
    Subcommand.LIMIT: _run_limit,
    Subcommand.SWEEP: _run_sweep,
    Subcommand.CUSP: _run_cusp,
    Subcommand.REPORT: _run_report,
}


def run(config: RunConfig) -> int:
    """
    Execute one subcommand.

    Returns:
        0 when every check passes, 1 on any FAIL. Errors propagate; main maps
        them to 2.
    """
    logger.info("Running %s (out=%s)", config.subcommand.value, config.out_dir)
    return _HANDLERS[config.subcommand](config)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    flags = {k: v for k, v in vars(args).items() if k not in ("config", "subcommand", "log_level")}
    try:
        config = parse_config(args.config, subcommand=args.subcommand, flags=flags)
        return run(config)
    except (StiffSpectraException, OSError) as e:
        print(getattr(e, "message", str(e)), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
