"""Infrastructure services and cross-cutting utilities."""

from app.infrastructure.cache import MemoryCache, OrbitSizeCache
from app.infrastructure.logging import StructuredLogger, get_logger, reset_logger

__all__ = [
    "MemoryCache",
    "OrbitSizeCache",
    "StructuredLogger",
    "get_logger",
    "reset_logger",
]
