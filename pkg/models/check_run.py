from datetime import datetime
from uuid import uuid4

from sqlalchemy import Boolean, Column, DateTime, Integer, String
from sqlalchemy.types import JSON, TypeDecorator

from core.db import Base


class Seed(TypeDecorator):
    """
    A 64-bit seed, signed or unsigned, kept as decimal text since SQLite
    INTEGER stops at 2^63 - 1.
    """

    impl = String(20)
    cache_ok = True

    def process_bind_param(self, value, dialect):
        return None if value is None else str(int(value))

    def process_result_value(self, value, dialect):
        return None if value is None else int(value)


class CheckRun(Base):
    __tablename__ = "check_runs"

    # UUID stored as string for SQLite compatibility
    id = Column(String(36), primary_key=True, default=lambda: str(uuid4()))

    created_at = Column(DateTime, default=datetime.utcnow, nullable=False)

    # "small" or "full"
    scope = Column(String(10), nullable=False)

    seed = Column(Seed, nullable=False)

    passed = Column(Boolean, nullable=False)

    n_records = Column(Integer, nullable=False)
    n_failed = Column(Integer, nullable=False)

    # Per-family summary: {"specht-volume": {"records": 12, "failed": 0}, ...}
    families = Column(JSON, nullable=False)

    # Key of the archived full report in the report store
    report_key = Column(String, nullable=True)

    # Free-text notes (fault-injection runs are flagged here)
    notes = Column(String, nullable=True)

    def __repr__(self) -> str:
        return (
            f"<CheckRun(id={self.id}, scope={self.scope}, seed={self.seed}, "
            f"passed={self.passed}, n_failed={self.n_failed})>"
        )
