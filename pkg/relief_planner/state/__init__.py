"""Result persistence helpers."""
from .result_store import BaseResultStore, InMemoryResultStore, JSONResultStore

__all__ = ["BaseResultStore", "InMemoryResultStore", "JSONResultStore"]
