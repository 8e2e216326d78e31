import os

import pytest

from core.config import settings
from core.errors import ConfigError


def test_defaults():
    assert settings.SPECHT_MAX_N == 7
    assert settings.TENSOR_MAX_WORDS == 10**6
    assert settings.EHRHART_MAX_N == 7
    assert len(settings.PRIMES) >= 2
    assert all(p > 2**30 for p in settings.PRIMES)


def test_threads_read_from_env(monkeypatch):
    monkeypatch.setenv("FOREST_SPECHT_THREADS", "2")
    settings.reload()
    assert settings.THREADS == 2


def test_reload_from_config_file(tmp_path, monkeypatch):
    monkeypatch.delenv("SPECHT_MAX_N", raising=False)
    env_file = tmp_path / "caps.env"
    env_file.write_text("SPECHT_MAX_N=5\nTENSOR_MAX_WORDS=1000\n")
    try:
        settings.reload(env_file)
        assert settings.SPECHT_MAX_N == 5
        assert settings.TENSOR_MAX_WORDS == 1000
    finally:
        # load_dotenv wrote these into the process environment
        os.environ.pop("SPECHT_MAX_N", None)
        os.environ.pop("TENSOR_MAX_WORDS", None)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        settings.reload(tmp_path / "nope.env")


@pytest.mark.parametrize(
    "primes",
    [
        "2147483647",  # only one prime
        "2147483647,2147483647",  # not distinct
        "2147483647,1000003",  # below 2^30
        "2147483647,2147483649",  # composite
        "2147483647,abc",
    ],
)
def test_invalid_primes(monkeypatch, primes):
    monkeypatch.setenv("PRIMES", primes)
    with pytest.raises(ConfigError):
        settings.reload()


def test_single_prime_override_rejected():
    settings.PRIMES = (2147483647,)
    with pytest.raises(ConfigError):
        settings.validate()
