"""Tests for core.logging module."""

import logging
import sys
from pathlib import Path

import pytest

from gmrf_greedy._core.errors import ConfigurationError
from gmrf_greedy._core.logging import CONSOLE_FORMAT, DATE_FORMAT, FILE_FORMAT, resolve_level, setup_logging


def _stream_handlers(logger):
    return [h for h in logger.handlers if type(h) is logging.StreamHandler]


class TestSetupLogging:
    """Test setup_logging function."""

    def test_default_level_and_handler(self):
        logger = setup_logging("gmrf_test_default")
        assert logger.level == logging.INFO
        assert len(_stream_handlers(logger)) == 1

    def test_console_goes_to_stderr(self):
        """Stdout stays free for CSV rows."""
        logger = setup_logging("gmrf_test_stderr")
        (handler,) = _stream_handlers(logger)
        assert handler.stream is sys.stderr

    def test_formats(self, tmp_path):
        log_file = tmp_path / "run.log"
        logger = setup_logging("gmrf_test_formats", log_file=log_file)
        (console,) = _stream_handlers(logger)
        (to_file,) = [h for h in logger.handlers if isinstance(h, logging.FileHandler)]
        assert console.formatter._fmt == CONSOLE_FORMAT
        assert to_file.formatter._fmt == FILE_FORMAT
        assert to_file.formatter.datefmt == DATE_FORMAT

        record = logging.LogRecord("gmrf_greedy.greedy", logging.INFO, __file__, 1, "added (%d, %d)", (2, 3), None)
        assert console.format(record) == "INFO    gmrf_greedy.greedy: added (2, 3)"
        to_file.close()

    def test_level_by_name_or_constant(self):
        assert setup_logging("gmrf_test_lvl_name", level="debug").level == logging.DEBUG
        assert setup_logging("gmrf_test_lvl_const", level=logging.WARNING).level == logging.WARNING

    def test_file_handler_creates_directory(self, tmp_path):
        log_file = tmp_path / "logs" / "sweep" / "run.log"
        logger = setup_logging("gmrf_test_file", log_file=log_file, console=False)

        file_handlers = [h for h in logger.handlers if isinstance(h, logging.FileHandler)]
        assert len(file_handlers) == 1
        assert Path(file_handlers[0].baseFilename) == log_file
        assert _stream_handlers(logger) == []

        logger.warning("trial 3 failed")
        file_handlers[0].flush()
        assert "trial 3 failed" in log_file.read_text()

    def test_no_duplicate_handlers(self):
        """Repeated setup returns the same configured logger."""
        first = setup_logging("gmrf_test_unique")
        count = len(first.handlers)
        second = setup_logging("gmrf_test_unique", level="DEBUG")
        assert first is second
        assert len(second.handlers) == count
        assert second.level == logging.DEBUG

    def test_unknown_level_name(self):
        with pytest.raises(ConfigurationError, match="log level"):
            setup_logging("gmrf_test_bad_level", level="chatty")


class TestResolveLevel:
    def test_names_and_constants(self):
        assert resolve_level("warning") == logging.WARNING
        assert resolve_level(" Error ") == logging.ERROR
        assert resolve_level(15) == 15
