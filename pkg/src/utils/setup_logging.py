"""
Module Name: setup_logging

Logging configuration for the levi-strata command-line tool.

Reports are written to stdout, so every log record goes elsewhere:
- A rotating file (levi_strata.log) at the requested level
- stderr, for warnings and errors only
- numpy floating-point warnings (overflow in a diverging Newton run, etc.)
  are captured through `py.warnings` and kept out of the console

Example:
    >>> from pathlib import Path
    >>> from src.utils import setup_logging
    >>> setup_logging("INFO", log_dir=Path("logs"))
    PosixPath('logs/levi_strata.log')
"""

import logging
import logging.config
import time

from pathlib import Path
from typing import Any, Dict, Final, Optional

from src.errors.core import *

LOG_DIR_NAME: Final[str] = "logs"
LOG_FILE_NAME: Final[str] = "levi_strata.log"
LOG_FORMAT: Final[str] = (
    "%(asctime)s.%(msecs)03d [%(levelname)-8s] "
    "%(name)s:%(funcName)s:%(lineno)d - %(message)s"
)
CONSOLE_FORMAT: Final[str] = "[%(levelname)s] %(name)s: %(message)s"
LOG_DATE_FORMAT: Final[str] = "%Y-%m-%dT%H:%M:%S%z"
LOG_MAX_BYTES: Final[int] = 10 * 1024 * 1024  # 10 MB
LOG_BACKUP_COUNT: Final[int] = 5
LOG_ENCODING: Final[str] = "utf-8"
CONSOLE_LEVEL: Final[str] = "WARNING"


def get_log_dir(project_root: Optional[Path] = None, log_dir: Optional[Path] = None) -> Path:
    """
    Resolves and creates the directory of levi_strata.log.

    Args:
        project_root (Path, optional): Repository root; <project_root>/logs is used when
            no explicit directory is given.
        log_dir (Path, optional): Explicit log directory (the CLI's --log-dir).

    Raises:
        LoggingSetupError: If the directory cannot be created.
    """
    if log_dir is None:
        if project_root is None:
            # this file lives in <project_root>/src/utils
            project_root = Path(__file__).resolve().parent.parent.parent
        log_dir = project_root / LOG_DIR_NAME
    log_dir = Path(log_dir)
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise LoggingSetupError(f"Failed to create log directory {log_dir}: {e}") from e
    return log_dir


def get_logging_config(log_file_path: Path, log_level: str, console_level: str = CONSOLE_LEVEL) -> Dict[str, Any]:
    """
    dictConfig document: file handler at `log_level`, stderr handler at `console_level`.

    `py.warnings` only reaches the file.
    """
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "standard": {"format": LOG_FORMAT, "datefmt": LOG_DATE_FORMAT, "validate": True},
            "console": {"format": CONSOLE_FORMAT},
        },
        "handlers": {
            "rotating_file": {
                "class": "logging.handlers.RotatingFileHandler",
                "level": log_level,
                "formatter": "standard",
                "filename": str(log_file_path),
                "encoding": LOG_ENCODING,
                "maxBytes": LOG_MAX_BYTES,
                "backupCount": LOG_BACKUP_COUNT,
                "delay": True,
            },
            "console": {
                "class": "logging.StreamHandler",
                "level": console_level,
                "formatter": "console",
                "stream": "ext://sys.stderr",
            },
        },
        "loggers": {
            "py.warnings": {
                "handlers": ["rotating_file"],
                "level": "WARNING",
                "propagate": False,
            },
        },
        "root": {
            "handlers": ["rotating_file", "console"],
            "level": log_level,
        },
    }


def setup_logging(log_level: str, project_root: Optional[Path] = None, log_dir: Optional[Path] = None) -> Path:
    """
    Configures logging for one CLI invocation.

    Args:
        log_level (str): Level of the log file ("DEBUG", "INFO", "WARNING", "ERROR").
        project_root (Path, optional): Repository root used for the default log directory.
        log_dir (Path, optional): Explicit log directory.

    Returns:
        Path: The log file.

    Raises:
        LoggingSetupError: If the directory or the configuration cannot be set up.
    """
    log_file = get_log_dir(project_root, log_dir) / LOG_FILE_NAME
    try:
        logging.config.dictConfig(get_logging_config(log_file, log_level))
    except (ValueError, TypeError, AttributeError, ImportError) as e:
        raise LoggingSetupError(f"Error setting up logging system: {e}") from e
    logging.captureWarnings(True)
    logging.Formatter.converter = time.localtime

    logging.getLogger(__name__).info("Logging configured at %s. File: %s", log_level, log_file)
    return log_file
