"""Quality dimensions over catalog models."""

from .core import (
    attribute_error,
    attribute_level_accuracy,
    availability,
    completeness,
    consistency,
    freshness,
    overall_accuracy,
    relationship_error,
    relationship_level_accuracy,
    scalability_probe,
    timeliness,
)
from .cross import attribute_similarity, compatibility, dataset_key, pair_objects, value_similarity
from .noncore import count_syllables, flesch_kincaid, licensing, provenance_score, readability
from .results import ConsistencyViolation, DimensionScore, Finding, ScalabilitySample

__all__ = [
    "ConsistencyViolation", "DimensionScore", "Finding", "ScalabilitySample",
    "attribute_error", "attribute_level_accuracy", "attribute_similarity", "availability",
    "compatibility", "completeness", "consistency", "count_syllables", "dataset_key",
    "flesch_kincaid", "freshness", "licensing", "overall_accuracy", "pair_objects",
    "provenance_score", "readability", "relationship_error", "relationship_level_accuracy",
    "scalability_probe", "timeliness", "value_similarity",
]
