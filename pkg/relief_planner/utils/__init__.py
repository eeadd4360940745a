"""Utilities for logging and numeric helpers."""
from .logging_utils import setup_logging
from .metrics import Stopwatch, close_to_integer, sample_variance

__all__ = ["setup_logging", "Stopwatch", "close_to_integer", "sample_variance"]
