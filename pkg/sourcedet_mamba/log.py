"""Logging setup for command-line entry points"""

import logging
import os
from typing import Optional, Union

LOG_ENV_VAR = "SDM_LOG"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_PACKAGE_LOGGER = "sourcedet_mamba"


def resolve_level(level: Optional[Union[str, int]] = None) -> int:
    if level is None:
        level = os.environ.get(LOG_ENV_VAR, "WARNING")
    if isinstance(level, int):
        return level
    resolved = logging.getLevelName(level.strip().upper())
    return resolved if isinstance(resolved, int) else logging.WARNING


def configure_logging(level: Optional[Union[str, int]] = None) -> logging.Logger:
    """Attach a single stream handler to the package logger.

    Calling it again only updates the level, so repeated CLI invocations in one process do not
    duplicate output.
    """
    logger = logging.getLogger(_PACKAGE_LOGGER)
    logger.setLevel(resolve_level(level))
    if not any(getattr(h, "_sdm_handler", False) for h in logger.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._sdm_handler = True  # type: ignore[attr-defined]
        logger.addHandler(handler)
    return logger


__all__ = ["LOG_ENV_VAR", "configure_logging", "resolve_level"]
