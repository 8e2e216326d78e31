import os
from pathlib import Path
from typing import Optional, Tuple

from dotenv import load_dotenv
from sympy import isprime

from core.errors import ConfigError

# Base directory of the project (folder where main.py lives)
BASE_DIR = Path(__file__).resolve().parent.parent

# Load .env from project root
ENV_PATH = BASE_DIR / ".env"
if ENV_PATH.exists():
    load_dotenv(ENV_PATH)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from e


def _primes_env(name: str, default: Tuple[int, int]) -> Tuple[int, ...]:
    raw = os.getenv(name)
    if not raw:
        return default
    try:
        primes = tuple(int(p) for p in raw.split(",") if p.strip())
    except ValueError as e:
        raise ConfigError(f"{name} must be a comma-separated list of integers") from e
    if len(primes) < 2:
        raise ConfigError(f"{name} needs a primary and a confirmation prime")
    return primes


class Settings:
    def __init__(self) -> None:
        self.load()

    def load(self) -> None:
        # General environment ("cloud" switches the report store to S3)
        self.ENV: str = os.getenv("ENV", "local")

        # Check-run registry (SQLite by default)
        self.DB_URL: str = os.getenv("DB_URL", "sqlite:///./forest_specht.db")

        # Report archive
        self.REPORT_BUCKET: str = os.getenv("REPORT_BUCKET", "local-reports")
        self.REPORT_ROOT: str = os.getenv("REPORT_ROOT", str(BASE_DIR / "reports"))

        # Caps
        self.SPECHT_MAX_N: int = _int_env("SPECHT_MAX_N", 7)
        self.SYMMETRIZER_MAX_TERMS: int = _int_env("SYMMETRIZER_MAX_TERMS", 10**7)
        self.TENSOR_MAX_WORDS: int = _int_env("TENSOR_MAX_WORDS", 10**6)
        self.EHRHART_MAX_N: int = _int_env("EHRHART_MAX_N", 7)
        self.EXACT_RANK_MAX_N: int = _int_env("EXACT_RANK_MAX_N", 5)

        # Rank arithmetic: PRIMES[0] is used for all ranks, PRIMES[1] confirms
        self.PRIMES: Tuple[int, ...] = _primes_env("PRIMES", (2147483647, 2147483629))

        self.MEMO_SIZE: int = _int_env("MEMO_SIZE", 65536)
        self.THREADS: int = _int_env("FOREST_SPECHT_THREADS", 4)
        self.LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING").upper()

        self.validate()

    def validate(self) -> None:
        if len(self.PRIMES) < 2:
            raise ConfigError("PRIMES needs a primary and a confirmation prime")
        for p in self.PRIMES:
            # int64 split products in services.echelon need p < 2^31
            if not (2**30 < p < 2**31) or not isprime(p):
                raise ConfigError(f"PRIMES entries must be primes in (2^30, 2^31), got {p}")
        if self.PRIMES[0] == self.PRIMES[1]:
            raise ConfigError("primary and confirmation primes must differ")
        for name in ("SPECHT_MAX_N", "EHRHART_MAX_N", "MEMO_SIZE", "THREADS"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")

    def reload(self, env_file: Optional[str | Path] = None) -> "Settings":
        """
        Re-read the environment, optionally after loading an extra dotenv file
        (the CLI's --config flag). Values in env_file override the process env.
        """
        if env_file is not None:
            path = Path(env_file)
            if not path.exists():
                raise ConfigError(f"Config file not found: {path}")
            load_dotenv(path, override=True)
        self.load()
        return self


settings = Settings()
