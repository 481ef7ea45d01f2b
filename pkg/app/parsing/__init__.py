"""Model file parsing and serialization."""

from app.parsing.model_format import (
    ModelParseError,
    load_model,
    parse_evidence,
    parse_model,
    save_model,
    serialize_model,
)

__all__ = [
    "ModelParseError",
    "load_model",
    "parse_evidence",
    "parse_model",
    "save_model",
    "serialize_model",
]
