"""Logging helpers."""
from __future__ import annotations

import logging

PACKAGE_LOGGER = "relief_planner"
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def setup_logging(verbose: bool = False, *, force: bool = False) -> logging.Logger:
    """Configure the root handler and the package log level.

    ``verbose`` turns on DEBUG for ``relief_planner.*`` only (assembly sizes,
    simplex phases, incumbent updates); third-party loggers stay at INFO.
    """

    logging.basicConfig(level=logging.INFO, format=LOG_FORMAT, force=force)
    package = logging.getLogger(PACKAGE_LOGGER)
    package.setLevel(logging.DEBUG if verbose else logging.INFO)
    return package


__all__ = ["LOG_FORMAT", "PACKAGE_LOGGER", "setup_logging"]
