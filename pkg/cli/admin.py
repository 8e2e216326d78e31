from __future__ import annotations

import argparse
import logging

import pandas as pd

from cli.common import emit
from core.errors import ForestSpechtError
from models.schemas import CheckReport, CheckRunOut
from services import check_registry
from services.checks import FAMILIES, SCOPES, run_checks

log = logging.getLogger(__name__)


class CheckFailed(ForestSpechtError):
    """At least one identity record failed; the report is already on stdout."""

    def __init__(self, report: CheckReport) -> None:
        first = next(r for r in report.records if not r.passed)
        self.details = {
            "failed": report.summary.failed,
            "identity": first.identity,
            "instance": first.instance,
            "left": first.left,
            "right": first.right,
        }
        super().__init__("check failed")


def check_command(args: argparse.Namespace) -> None:
    """
    Run the identity families and persist the run (unless --no-record).
    """
    report = run_checks(
        scope=args.scope,
        seed=args.seed,
        fault_injection=args.fault_injection,
        families=args.family,
    )
    if not args.no_record:
        run = check_registry.record_check_run(report)
        log.info("check run stored as %s", run.id)

    table = pd.DataFrame(
        [
            {"identity": name, "records": fam.records, "failed": fam.failed}
            for name, fam in sorted(report.summary.families.items())
        ]
    )
    emit(report, args.pretty, table)

    if not report.passed:
        raise CheckFailed(report)


def check_runs_command(args: argparse.Namespace) -> None:
    """
    Recent check runs, or one run with its archived report (--show ID).
    """
    if args.show:
        run = check_registry.get_check_run(args.show)
        report = check_registry.load_archived_report(run)
        emit({"run": CheckRunOut.model_validate(run).model_dump(mode="json"), "report": report.model_dump(mode="json")}, args.pretty)
        return

    runs = [CheckRunOut.model_validate(r) for r in check_registry.list_check_runs(args.limit)]
    table = pd.DataFrame(
        [
            {"id": r.id, "created_at": r.created_at, "scope": r.scope, "seed": r.seed, "passed": r.passed, "failed": r.n_failed}
            for r in runs
        ]
    )
    emit(runs, args.pretty, table)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("check", parents=[common], help="run the identity check suite")
    p.add_argument("--scope", choices=sorted(SCOPES), default="small")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", action="append", choices=sorted(FAMILIES), help="restrict to a family (repeatable)")
    p.add_argument("--fault-injection", action="store_true", help="corrupt the volume by one to test the harness")
    p.add_argument("--no-record", action="store_true", help="do not store the run")
    p.set_defaults(handler=check_command)

    p = subparsers.add_parser("check-runs", parents=[common], help="list or show stored check runs")
    p.add_argument("--limit", type=int, default=20)
    p.add_argument("--show", metavar="ID")
    p.set_defaults(handler=check_runs_command)
