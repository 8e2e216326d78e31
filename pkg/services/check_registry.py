# services/check_registry.py
from __future__ import annotations

import logging
from typing import List, Optional

from core import db
from core.errors import PreconditionError
from models.check_run import CheckRun
from models.schemas import CheckReport
from services.report_store import BaseReportStore, get_report_store

log = logging.getLogger(__name__)


def record_check_run(report: CheckReport, store: Optional[BaseReportStore] = None) -> CheckRun:
    """
    Persist a CheckRun row and archive the full report under
    checks/<scope>/<run id>.json.
    """
    store = store or get_report_store()
    session = db.SessionLocal()
    try:
        run = CheckRun(
            scope=report.scope,
            seed=report.seed,
            passed=report.passed,
            n_records=report.summary.records,
            n_failed=report.summary.failed,
            families={name: fam.model_dump() for name, fam in report.summary.families.items()},
            notes="fault injection" if report.fault_injection else None,
        )
        session.add(run)
        session.flush()

        key = f"checks/{report.scope}/{run.id}.json"
        store.put_json(key, report.model_dump(mode="json"))
        run.report_key = key

        session.commit()
        session.refresh(run)
        log.info("recorded check run %s (passed=%s, key=%s)", run.id, run.passed, key)
        return run
    finally:
        session.close()


def list_check_runs(limit: int = 20) -> List[CheckRun]:
    """
    Most recent check runs, newest first.
    """
    session = db.SessionLocal()
    try:
        return (
            session.query(CheckRun)
            .order_by(CheckRun.created_at.desc())
            .limit(limit)
            .all()
        )
    finally:
        session.close()


def get_check_run(run_id: str) -> CheckRun:
    session = db.SessionLocal()
    try:
        run = session.query(CheckRun).filter(CheckRun.id == run_id).first()
        if run is None:
            raise PreconditionError(f"CheckRun with id={run_id} not found.")
        return run
    finally:
        session.close()


def load_archived_report(run: CheckRun, store: Optional[BaseReportStore] = None) -> CheckReport:
    if not run.report_key:
        raise PreconditionError(f"CheckRun {run.id} has no archived report")
    store = store or get_report_store()
    return CheckReport.model_validate(store.get_json(run.report_key))
