"""Fan-crossing and fan-planar embeddings of simple topological graphs."""

from fancross.embedding import (
    LR,
    RL,
    Crossing,
    Dart,
    Embedding,
    Graph,
    InvalidEmbedding,
    Planarization,
    ValidationReport,
    mirror,
    planarize,
    validate,
)

__all__ = [
    "LR",
    "RL",
    "Crossing",
    "Dart",
    "Embedding",
    "Graph",
    "InvalidEmbedding",
    "Planarization",
    "ValidationReport",
    "mirror",
    "planarize",
    "validate",
]

__version__ = "0.1.0"
