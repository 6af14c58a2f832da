"""Domain types shared by every module, plus the score/label converter.

The converter is what lets one metric suite evaluate both training schemes:
regression models emit continuous scores that are binned into ordinal
labels, and classification models emit labels that embed back into scores.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import AtsError


class TaskKind(enum.Enum):
    REGRESSION = "regression"
    CLASSIFICATION = "classification"


@dataclass(frozen=True)
class LabelSpec:
    """Contiguous integer range of valid labels for a task.

    ``lo`` and ``hi`` are inclusive; the class count is ``hi - lo + 1``.
    """

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo >= self.hi:
            raise AtsError("BadLabelSpec", f"need lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def num_labels(self) -> int:
        return self.hi - self.lo + 1

    def contains(self, label: int) -> bool:
        return self.lo <= label <= self.hi

    def labels(self) -> range:
        return range(self.lo, self.hi + 1)

    def index_of(self, label: int) -> int:
        """Zero-based class index of a label."""
        if not self.contains(label):
            raise AtsError("LabelOutOfRange", f"label {label} outside [{self.lo}, {self.hi}]")
        return label - self.lo


@dataclass(frozen=True)
class Instance:
    """One labeled (or unlabeled) text, with an optional prompt context."""

    id: str
    text: str
    label: int | None = None
    context: str | None = None

    def __post_init__(self):
        if not self.text.strip():
            raise AtsError("EmptyText", f"instance {self.id!r} has empty text")


@dataclass(frozen=True)
class Dataset:
    """Ordered collection of instances sharing one label universe."""

    instances: tuple[Instance, ...]
    label_spec: LabelSpec
    name: str = "dataset"

    def __post_init__(self):
        object.__setattr__(self, "instances", tuple(self.instances))
        seen: set[str] = set()
        for inst in self.instances:
            if inst.id in seen:
                raise AtsError("DuplicateId", f"duplicate instance id {inst.id!r}")
            seen.add(inst.id)
            if inst.label is not None and not self.label_spec.contains(inst.label):
                raise AtsError(
                    "LabelOutOfRange",
                    f"instance {inst.id!r} label {inst.label} outside "
                    f"[{self.label_spec.lo}, {self.label_spec.hi}]",
                )

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)

    def labels(self) -> list[int]:
        """Gold labels, in instance order. Requires a fully labeled dataset."""
        out = []
        for inst in self.instances:
            if inst.label is None:
                raise AtsError("MissingLabel", f"instance {inst.id!r} has no label")
            out.append(inst.label)
        return out


@dataclass(frozen=True)
class Prediction:
    """Model output for one text: raw score, converted label, optional probs."""

    score: float
    label: int
    probs: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.probs is not None:
            object.__setattr__(self, "probs", tuple(self.probs))


def _require_finite(x: float, what: str = "score") -> None:
    if not math.isfinite(x):
        raise AtsError("NonFiniteScore", f"{what} is not finite: {x!r}")


def score_to_label(score: float, spec: LabelSpec) -> int:
    """Bin a continuous score to the nearest valid label.

    Rounding is half-away-from-zero (2.5 -> 3, -2.5 -> -3), then the result
    is clamped into the spec. Clamping rather than erroring matters because
    regression models can overshoot the label range.
    """
    _require_finite(score)
    rounded = int(math.floor(abs(score) + 0.5))
    if score < 0:
        rounded = -rounded
    return min(max(rounded, spec.lo), spec.hi)


def label_to_score(label: int, spec: LabelSpec) -> float:
    """Exact real-valued embedding of an integer label."""
    if not spec.contains(label):
        raise AtsError("LabelOutOfRange", f"label {label} outside [{spec.lo}, {spec.hi}]")
    return float(label)


def normalize_score(score: float, spec: LabelSpec) -> float:
    """Map a score into [0, 1] over the spec's range, clamping overshoot."""
    _require_finite(score)
    y = (score - spec.lo) / (spec.hi - spec.lo)
    return min(max(y, 0.0), 1.0)


def denormalize_score(y01: float, spec: LabelSpec) -> float:
    """Inverse of :func:`normalize_score` on [0, 1]; extrapolates outside."""
    _require_finite(y01, "normalized score")
    return spec.lo + y01 * (spec.hi - spec.lo)
