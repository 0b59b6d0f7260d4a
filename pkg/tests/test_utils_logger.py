"""Test the logger utility module.

Module Information:
    - Filename: test_utils_logger.py
    - Module: test_utils_logger
    - Location: tests/
"""

from pathlib import Path

from cubic_census import utils_logger


def test_logger_initialization(tmp_path):
    """The logger initializes into a given directory."""
    utils_logger.init_logger(log_dir=tmp_path)
    assert utils_logger.get_log_file_path() == tmp_path / "project.log"


def test_log_file_receives_lines(tmp_path):
    """Bound loggers write their module name to the file."""
    utils_logger.init_logger(level="DEBUG", log_dir=tmp_path)
    utils_logger.get_logger("cubic_census.test").info("census ready")
    text = utils_logger.get_log_file_path().read_text(encoding="utf-8")
    assert "cubic_census.test" in text
    assert "census ready" in text


def test_env_level_wins(monkeypatch, tmp_path):
    """CUBIC_CENSUS_LOG_LEVEL overrides the level argument."""
    monkeypatch.setenv(utils_logger.ENV_LOG_LEVEL, "warning")
    utils_logger.init_logger(level="DEBUG", log_dir=tmp_path)
    utils_logger.get_logger().info("hidden")
    utils_logger.get_logger().warning("shown")
    text = utils_logger.get_log_file_path().read_text(encoding="utf-8")
    assert "hidden" not in text
    assert "shown" in text


def test_default_log_path():
    """Without a directory the log goes to <project>/logs."""
    utils_logger.init_logger()
    log_path = utils_logger.get_log_file_path()
    assert isinstance(log_path, Path)
    assert log_path.suffix == ".log"
    assert log_path.parent.exists()


def test_utils_logger_main():
    """The module runs standalone."""
    utils_logger.main()
