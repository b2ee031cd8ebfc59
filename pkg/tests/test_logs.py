"""Logging setup."""

import io

import pytest

from xube import logs
from xube.errors import ConfigError


class TestConfigure:

    def test_level_from_environment(self, monkeypatch):
        monkeypatch.setenv(logs.LOG_ENV, "WARNING")
        stream = io.StringIO()
        assert logs.configure(stream=stream) == "warning"
        log = logs.get_logger("xube.test")
        log.info("hidden")
        log.warning("shown", count=3)
        text = stream.getvalue()
        assert "hidden" not in text
        assert "shown" in text
        assert "count=3" in text

    def test_argument_beats_environment(self, monkeypatch):
        monkeypatch.setenv(logs.LOG_ENV, "error")
        assert logs.configure("debug", io.StringIO()) == "debug"

    def test_unknown_level(self, monkeypatch):
        monkeypatch.delenv(logs.LOG_ENV, raising=False)
        with pytest.raises(ConfigError):
            logs.configure("chatty")
