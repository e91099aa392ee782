"""
Database connection and session management for stored run summaries.

DB_BACKEND selects the backend: "sqlite" (default, file from
DEPALLOC_SQLITE_PATH) or "postgres" (POSTGRES_* variables, psycopg2 driver).
"""
import os
from contextlib import contextmanager
from typing import Iterator

from sqlalchemy import create_engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker

DB_BACKEND = os.getenv("DB_BACKEND", "sqlite")
DEFAULT_SQLITE_PATH = "./depalloc.db"


def database_url(backend: str = DB_BACKEND) -> str:
    if backend == "postgres":
        user = os.getenv("POSTGRES_USER", "user")
        password = os.getenv("POSTGRES_PASSWORD", "pass")
        host = os.getenv("POSTGRES_HOST", "localhost")
        port = os.getenv("POSTGRES_PORT", "5432")
        name = os.getenv("POSTGRES_DB", "depalloc")
        return f"postgresql://{user}:{password}@{host}:{port}/{name}"
    return f"sqlite:///{os.getenv('DEPALLOC_SQLITE_PATH', DEFAULT_SQLITE_PATH)}"


DATABASE_URL = database_url()

engine = create_engine(
    DATABASE_URL,
    # sessions are handed across FastAPI worker threads
    connect_args={"check_same_thread": False} if DATABASE_URL.startswith("sqlite") else {},
)

SessionLocal = sessionmaker(bind=engine, autoflush=False, autocommit=False)

Base = declarative_base()


def get_db() -> Iterator[Session]:
    """
    FastAPI dependency that provides a database session.

    Yields:
        Session: SQLAlchemy database session
    """
    db = SessionLocal()
    try:
        yield db
    finally:
        db.close()


@contextmanager
def session_scope() -> Iterator[Session]:
    """Session for command-line use; tables are created on first use."""
    init_db()
    db = SessionLocal()
    try:
        yield db
    finally:
        db.close()


def init_db():
    """Create the run and function-summary tables."""
    # Import models to register them with Base
    import models  # noqa: F401

    Base.metadata.create_all(bind=engine)


def clean_db():
    """Drop all tables. Used by tests."""
    Base.metadata.drop_all(bind=engine)
