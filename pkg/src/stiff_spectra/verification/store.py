from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import asdict, replace
from datetime import datetime
from typing import Any

import duckdb
import numpy as np

from stiff_spectra.asymptotics.correction import CorrectionLabel
from stiff_spectra.asymptotics.limit import LimitSource
from stiff_spectra.asymptotics.predict import Prediction
from stiff_spectra.asymptotics.regime import classify_regime, exponents
from stiff_spectra.util.json_dumps import json_dumps
from stiff_spectra.verification.config import SweepConfig
from stiff_spectra.verification.error import SweepNotFoundError
from stiff_spectra.verification.rates import RateFit
from stiff_spectra.verification.sweep import ConvergenceReport, IndexSeries, Status

logger = logging.getLogger(__name__)

# fields that change scheduling only, not results
_NON_IDENTIFYING = ("workers",)


def sweep_id(config: SweepConfig) -> str:
    """Deterministic id: sha256 of the canonical configuration JSON."""
    data = {k: v for k, v in config.to_dict().items() if k not in _NON_IDENTIFYING}
    return hashlib.sha256(json_dumps(data).encode("utf-8")).hexdigest()


def _fit_json(fit: RateFit | None) -> str | None:
    return None if fit is None else json_dumps(asdict(fit))


def _fit_from_json(text: str | None) -> RateFit | None:
    return None if text is None else RateFit(**json.loads(text))


class SweepCatalog:
    """
    SweepCatalog (Sweep Results Database <Repository>)

    責務:
    - ConvergenceReport の保存（save）。同じ設定の再実行は置き換える
    - 保存済み sweep の一覧（list_sweeps）と report の復元（load_report）

    Tables:
    - sweeps: one row per sweep (config JSON)
    - series: one row per index n (prediction, fits, status)
    - points: one row per (n, ε)
    """

    def __init__(self, db_file_path: str) -> None:
        """
        Args:
            db_file_path: DuckDB ファイルパス
        """
        self.db_file_path = db_file_path
        self.conn = duckdb.connect(db_file_path)
        self._init_schema()

    def _init_schema(self) -> None:
        self.conn.execute("""
            CREATE TABLE IF NOT EXISTS sweeps (
                id VARCHAR PRIMARY KEY,
                m DOUBLE NOT NULL,
                regime VARCHAR NOT NULL,
                status VARCHAR NOT NULL,
                created_at TIMESTAMP NOT NULL,
                config JSON NOT NULL
            )
        """)
        self.conn.execute("""
            CREATE TABLE IF NOT EXISTS series (
                sweep_id VARCHAR NOT NULL,
                n INTEGER NOT NULL,
                lambda0 DOUBLE NOT NULL,
                lambda_prime DOUBLE,
                multiplicity INTEGER NOT NULL,
                label VARCHAR NOT NULL,
                source VARCHAR,
                c0 DOUBLE,
                terms VARCHAR NOT NULL,
                fit VARCHAR,
                leading_fit VARCHAR,
                status VARCHAR NOT NULL,
                gated BOOLEAN NOT NULL
            )
        """)
        self.conn.execute("""
            CREATE TABLE IF NOT EXISTS points (
                sweep_id VARCHAR NOT NULL,
                n INTEGER NOT NULL,
                eps DOUBLE NOT NULL,
                lambda_eps DOUBLE NOT NULL,
                lambda_hat DOUBLE NOT NULL,
                residual DOUBLE NOT NULL,
                floor DOUBLE NOT NULL,
                used BOOLEAN NOT NULL
            )
        """)
        self.conn.execute("CREATE INDEX IF NOT EXISTS idx_series_sweep ON series(sweep_id)")
        self.conn.execute("CREATE INDEX IF NOT EXISTS idx_points_sweep ON points(sweep_id)")
        self.conn.commit()

    def save(self, report: ConvergenceReport) -> str:
        """Store the report and return its sweep id."""
        sid = sweep_id(report.config)
        self._delete(sid)
        self.conn.execute(
            "INSERT INTO sweeps VALUES (?, ?, ?, ?, ?, ?)",
            [sid, report.config.m, report.regime.value, report.status.value, datetime.now(), json_dumps(report.config.to_dict())],
        )
        for s in report.series:
            p = s.prediction
            self.conn.execute(
                "INSERT INTO series VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)",
                [
                    sid,
                    s.n,
                    p.lambda0,
                    p.lambda_prime,
                    p.multiplicity,
                    p.label.value,
                    None if p.source is None else p.source.value,
                    p.c0,
                    json_dumps([list(t) for t in p.terms]),
                    _fit_json(s.fit),
                    _fit_json(s.leading_fit),
                    s.status.value,
                    s.gated,
                ],
            )
            self.conn.executemany(
                "INSERT INTO points VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
                [
                    [sid, s.n, float(e), float(lam), float(hat), float(r), float(fl), bool(u)]
                    for e, lam, hat, r, fl, u in zip(s.eps, s.lambda_eps, s.lambda_hat, s.residuals, s.floor, s.used)
                ],
            )
        self.conn.commit()
        logger.info("Stored sweep %s (m=%g, %d indices)", sid[:12], report.config.m, len(report.series))
        return sid

    def _delete(self, sid: str) -> None:
        for table, column in (("points", "sweep_id"), ("series", "sweep_id"), ("sweeps", "id")):
            self.conn.execute(f"DELETE FROM {table} WHERE {column} = ?", [sid])

    def list_sweeps(self) -> list[dict[str, Any]]:
        rows = self.conn.execute(
            "SELECT id, m, regime, status, created_at FROM sweeps ORDER BY created_at DESC, id"
        ).fetchall()
        return [dict(zip(("id", "m", "regime", "status", "created_at"), row)) for row in rows]

    def load_report(self, sweep_id: str | None = None) -> ConvergenceReport:
        """
        Rebuild a ConvergenceReport (latest sweep when sweep_id is None).

        Raises:
            SweepNotFoundError: no matching sweep
        """
        if sweep_id is None:
            row = self.conn.execute("SELECT id, config FROM sweeps ORDER BY created_at DESC LIMIT 1").fetchone()
        else:
            row = self.conn.execute("SELECT id, config FROM sweeps WHERE id = ?", [sweep_id]).fetchone()
        if row is None:
            raise SweepNotFoundError(sweep_id)
        sid, config_json = row
        config = SweepConfig.from_dict(json.loads(config_json))
        regime = classify_regime(config.m)
        exps = exponents(config.m)

        series = []
        series_rows = self.conn.execute(
            """
            SELECT n, lambda0, lambda_prime, multiplicity, label, source, c0, terms, fit, leading_fit, status, gated
            FROM series WHERE sweep_id = ? ORDER BY n
            """,
            [sid],
        ).fetchall()
        for n, lambda0, lambda_prime, tau, label, source, c0, terms, fit, leading, status, gated in series_rows:
            points = self.conn.execute(
                "SELECT eps, lambda_eps, lambda_hat, residual, floor, used FROM points WHERE sweep_id = ? AND n = ? ORDER BY eps DESC",
                [sid, n],
            ).fetchall()
            columns = list(zip(*points)) if points else [()] * 6
            prediction = Prediction(
                n=n,
                m=config.m,
                regime=regime,
                lambda0=lambda0,
                lambda_prime=float("nan") if lambda_prime is None else lambda_prime,
                alpha=exps.alpha,
                beta=exps.beta,
                gamma=exps.gamma,
                multiplicity=tau,
                label=CorrectionLabel(label),
                terms=tuple((float(e), float(c)) for e, c in json.loads(terms)),
                c0=c0,
                source=None if source is None else LimitSource(source),
            )
            series.append(
                IndexSeries(
                    n=n,
                    prediction=prediction,
                    eps=np.asarray(columns[0], dtype=np.float64),
                    lambda_eps=np.asarray(columns[1], dtype=np.float64),
                    lambda_hat=np.asarray(columns[2], dtype=np.float64),
                    residuals=np.asarray(columns[3], dtype=np.float64),
                    floor=np.asarray(columns[4], dtype=np.float64),
                    used=np.asarray(columns[5], dtype=bool),
                    fit=_fit_from_json(fit),
                    leading_fit=_fit_from_json(leading),
                    status=Status(status),
                    gated=bool(gated),
                )
            )
        report = ConvergenceReport(config=config, regime=regime, exponents=exps, series=tuple(series))
        return replace(report, sweep_id=sid)

    def close(self) -> None:
        self.conn.close()
