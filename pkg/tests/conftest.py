"""Shared fixtures: seeded streams, scripted streams and isolated settings."""

from collections import deque

import pytest

from doublab import config as config_module
from doublab.rng import RngStream


@pytest.fixture
def rng():
    return RngStream(20240611)


class ScriptedRng:
    """Stand-in stream that replays fixed answers to ``below`` and ``dyadic``."""

    def __init__(self, below=(), dyadic=()):
        self._below = deque(below)
        self._dyadic = deque(dyadic)

    def below(self, n):
        value = self._below.popleft()
        assert 0 <= value < n, f"scripted {value} outside [0, {n})"
        return value

    def dyadic(self):
        return self._dyadic.popleft()


@pytest.fixture
def scripted():
    return ScriptedRng


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Point config and data dirs at a temp dir and reset the settings singleton."""
    monkeypatch.setattr(config_module, "user_config_dir", lambda app: str(tmp_path / "config"))
    monkeypatch.setattr(config_module, "user_data_dir", lambda app: str(tmp_path / "data"))
    monkeypatch.delenv(config_module.OUT_DIR_ENV, raising=False)
    monkeypatch.delenv(config_module.DEBUG_ENV, raising=False)
    monkeypatch.setattr(config_module, "_config", None)
    yield
    monkeypatch.setattr(config_module, "_config", None)


@pytest.fixture
def out_dir(tmp_path):
    path = tmp_path / "runs"
    path.mkdir()
    return path
