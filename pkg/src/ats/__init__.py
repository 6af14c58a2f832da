"""Feature-based automated text scoring.

Train, evaluate, and serve ordinal scoring models for essays and
readability levels, with per-token and per-feature attribution.
"""

from .core import (
    Dataset,
    Instance,
    LabelSpec,
    Prediction,
    TaskKind,
    denormalize_score,
    label_to_score,
    normalize_score,
    score_to_label,
)
from .errors import AtsError

__version__ = "0.1.0"

__all__ = [
    "AtsError",
    "Dataset",
    "Instance",
    "LabelSpec",
    "Prediction",
    "TaskKind",
    "denormalize_score",
    "label_to_score",
    "normalize_score",
    "score_to_label",
    "__version__",
]
