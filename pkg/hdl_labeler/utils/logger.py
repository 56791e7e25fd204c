import logging
import sys
from copy import copy
from typing import Literal

import click

LEVEL_COLORS = {
    logging.DEBUG: "cyan",
    logging.INFO: "green",
    logging.WARNING: "yellow",
    logging.ERROR: "red",
    logging.CRITICAL: "bright_red",
}
LEVEL_WIDTH = 8


def get_formatted_logger(name: str = "hdl_labeler", level: int | str | None = None):
    """Return a logger that writes colored records to standard error."""
    logger = logging.getLogger(name)
    if level is not None:
        logger.setLevel(level)
    elif logger.level == logging.NOTSET:
        logger.setLevel(logging.INFO)

    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(
            DefaultFormatter("%(levelprefix)s [%(asctime)s] %(name)s: %(message)s", datefmt="%H:%M:%S")
        )
        logger.addHandler(handler)

    # Standard output is reserved for CSV/JSON results
    logger.propagate = False
    return logger


def set_log_level(level: int | str) -> None:
    """Apply ``level`` to the package logger and every child logger."""
    logging.getLogger("hdl_labeler").setLevel(level)
    for name, child in logging.Logger.manager.loggerDict.items():
        if name.startswith("hdl_labeler.") and isinstance(child, logging.Logger):
            child.setLevel(level)


class ColourizedFormatter(logging.Formatter):
    """Formatter exposing ``%(levelprefix)s``: the level name, a colon and padding to a fixed width.

    The level name is colored with ``click.style`` when ``use_colors`` is on.
    """

    def __init__(
        self,
        fmt: str | None = None,
        datefmt: str | None = None,
        style: Literal["%", "{", "$"] = "%",
        use_colors: bool | None = None,
    ):
        self.use_colors = self.should_use_colors() if use_colors is None else bool(use_colors)
        super().__init__(fmt=fmt, datefmt=datefmt, style=style)

    def should_use_colors(self) -> bool:
        return True

    def level_prefix(self, record: logging.LogRecord) -> str:
        name = record.levelname
        padding = " " * max(LEVEL_WIDTH - len(name), 0)
        if self.use_colors and record.levelno in LEVEL_COLORS:
            name = click.style(name, fg=LEVEL_COLORS[record.levelno])
        return f"{name}:{padding}"

    def formatMessage(self, record: logging.LogRecord) -> str:
        record = copy(record)
        record.levelprefix = self.level_prefix(record)
        return super().formatMessage(record)


class DefaultFormatter(ColourizedFormatter):
    """Colors only when standard error is a terminal."""

    def should_use_colors(self) -> bool:
        return sys.stderr.isatty()
