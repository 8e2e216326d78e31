from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import declarative_base, sessionmaker

from core.config import settings

# Base class for our ORM models
Base = declarative_base()


def make_engine(url: str) -> Engine:
    # For SQLite, we need check_same_thread=False (check families run on a pool)
    connect_args = {}
    if url.startswith("sqlite"):
        connect_args = {"check_same_thread": False}
    return create_engine(url, connect_args=connect_args, future=True)


def make_session_factory(engine: Engine) -> sessionmaker:
    return sessionmaker(autocommit=False, autoflush=False, bind=engine)


engine = make_engine(settings.DB_URL)
SessionLocal = make_session_factory(engine)


def rebind(url: str) -> None:
    """
    Point the module-level engine/session factory at another database,
    e.g. after the CLI reloads settings from a --config file.
    """
    global engine
    engine = make_engine(url)
    SessionLocal.configure(bind=engine)


def init_db() -> None:
    # Import models so their tables are registered on Base.metadata
    from models.check_run import CheckRun  # noqa: F401

    Base.metadata.create_all(bind=engine)
