"""
Logging setup shared by the CLI and the scenario runner
"""

import logging
from typing import Optional

import colorlog

from .config import LOGGING_CONFIG


def setup_logging(level: str = LOGGING_CONFIG["level"], log_file: Optional[str] = None) -> logging.Logger:
    """
    Configure root handlers: colored console output plus an optional log file

    Args:
        level: Logging level name
        log_file: Optional path for a plain-text log

    Returns:
        The root logger
    """
    console = colorlog.StreamHandler()
    console.setFormatter(colorlog.ColoredFormatter(
        LOGGING_CONFIG["color_format"],
        log_colors={
            "DEBUG": "cyan",
            "INFO": "green",
            "WARNING": "yellow",
            "ERROR": "red",
            "CRITICAL": "bold_red",
        },
    ))
    handlers = [console]

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(logging.Formatter(LOGGING_CONFIG["format"]))
        handlers.append(file_handler)

    logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO), handlers=handlers, force=True)
    return logging.getLogger()
