import pytest

from core.errors import PreconditionError
from models.schemas import CheckRecord, CheckReport, CheckSummary, FamilySummary
from services import check_registry
from services.report_store import LocalReportStore


def _report(passed: bool = True) -> CheckReport:
    record = CheckRecord(identity="specht-volume", instance="P3", left="2", right="2" if passed else "3", passed=passed)
    return CheckReport(
        scope="small",
        seed=3,
        passed=passed,
        summary=CheckSummary(
            records=1,
            failed=0 if passed else 1,
            families={"specht-volume": FamilySummary(records=1, failed=0 if passed else 1)},
        ),
        records=[record],
    )


def test_record_and_fetch_check_run(isolated_registry):
    store = LocalReportStore(isolated_registry / "reports")
    run = check_registry.record_check_run(_report(), store=store)

    assert run.id
    assert run.report_key == f"checks/small/{run.id}.json"
    assert run.n_records == 1 and run.n_failed == 0

    fetched = check_registry.get_check_run(run.id)
    assert fetched.seed == 3
    assert fetched.families == {"specht-volume": {"records": 1, "failed": 0}}

    archived = check_registry.load_archived_report(fetched, store=store)
    assert archived == _report()


def test_list_check_runs_newest_first(isolated_registry):
    store = LocalReportStore(isolated_registry / "reports")
    first = check_registry.record_check_run(_report(True), store=store)
    second = check_registry.record_check_run(_report(False), store=store)

    runs = check_registry.list_check_runs(limit=10)
    assert {r.id for r in runs} == {first.id, second.id}
    assert check_registry.list_check_runs(limit=1)[0].created_at >= first.created_at


def test_unknown_check_run(isolated_registry):
    with pytest.raises(PreconditionError):
        check_registry.get_check_run("does-not-exist")
