"""Dataset readers (simple TSV and the eight-prompt essay corpus) and splits.

Simple TSV is ``<integer label> TAB <text>`` per line, UTF-8, no header.
The essay corpus format is tab-separated with a header row naming at least
``essay_id``, ``essay_set``, ``essay`` and ``domain1_score``; one model is
trained per prompt, so the reader filters to a single ``essay_set``.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path

from .core import Dataset, Instance, LabelSpec
from .errors import AtsError
from .prng import SplitMix64

log = logging.getLogger(__name__)

# Published per-prompt score ranges of the essay corpus (domain1_score).
# Overridable via dataset params; these are the dataset's documented values.
ASAP_SCORE_RANGES: dict[int, tuple[int, int]] = {
    1: (2, 12),
    2: (1, 6),
    3: (0, 3),
    4: (0, 3),
    5: (0, 4),
    6: (0, 4),
    7: (0, 30),
    8: (0, 60),
}


def _read_text(path: str | Path) -> str:
    """Read a corpus file, tolerating the cp1252 encoding of the public
    essay-corpus download."""
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        return data.decode("cp1252")


def read_tsv(path: str | Path, spec: LabelSpec | None = None, name: str | None = None) -> Dataset:
    """Read a simple-TSV corpus into a Dataset.

    Instance ids are 1-based line numbers. When ``spec`` is omitted it is
    inferred as [min observed label, max observed label].
    """
    lines = _read_text(path).split("\n")
    rows: list[tuple[int, int, str]] = []  # (line_no, label, text)
    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip("\r")
        if not line.strip():
            continue
        if "\t" not in line:
            raise AtsError("MalformedRow", f"expected <label>TAB<text> in {path}", line=line_no)
        label_str, text = line.split("\t", 1)
        try:
            label = int(label_str.strip())
        except ValueError:
            raise AtsError("BadLabel", f"label {label_str!r} is not an integer", line=line_no)
        if spec is not None and not spec.contains(label):
            raise AtsError(
                "LabelOutOfRange",
                f"label {label} outside [{spec.lo}, {spec.hi}]",
                line=line_no,
            )
        rows.append((line_no, label, text))
    if not rows:
        raise AtsError("EmptyDataset", f"no instances in {path}")
    if spec is None:
        observed = [label for _, label, _ in rows]
        lo, hi = min(observed), max(observed)
        if lo == hi:
            # One observed level cannot define a range; widen by one.
            log.warning("only label %d observed in %s; inferring spec [%d, %d]", lo, path, lo, lo + 1)
            hi = lo + 1
        spec = LabelSpec(lo, hi)
    instances = [Instance(id=str(n), text=text, label=label) for n, label, text in rows]
    return Dataset(tuple(instances), spec, name=name or Path(path).stem)


def read_asap(
    path: str | Path,
    prompt_id: int,
    score_range: tuple[int, int] | None = None,
) -> Dataset:
    """Read one prompt's essays from the eight-prompt corpus.

    ``score_range`` overrides the built-in per-prompt label range.
    """
    if prompt_id not in ASAP_SCORE_RANGES:
        raise AtsError("BadPrompt", f"prompt_id must be 1..8, got {prompt_id}")
    lines = _read_text(path).split("\n")
    lines = [ln for ln in lines if ln.strip()]
    if not lines:
        raise AtsError("EmptyDataset", f"no rows in {path}")
    header = lines[0].rstrip("\r").split("\t")
    col: dict[str, int] = {}
    for needed in ("essay_id", "essay_set", "essay", "domain1_score"):
        if needed not in header:
            raise AtsError("MissingColumn", f"column {needed!r} missing from header of {path}")
        col[needed] = header.index(needed)

    lo, hi = score_range if score_range is not None else ASAP_SCORE_RANGES[prompt_id]
    spec = LabelSpec(lo, hi)
    instances = []
    for line_no, line in enumerate(lines[1:], start=2):
        fields = line.rstrip("\r").split("\t")
        try:
            essay_set = int(fields[col["essay_set"]])
        except (IndexError, ValueError):
            raise AtsError("MalformedRow", "unreadable essay_set field", line=line_no)
        if essay_set != prompt_id:
            continue
        try:
            essay_id = fields[col["essay_id"]]
            essay = fields[col["essay"]]
            score_str = fields[col["domain1_score"]]
        except IndexError:
            raise AtsError("MalformedRow", "row has fewer columns than header", line=line_no)
        try:
            score = int(score_str)
        except ValueError:
            raise AtsError("BadLabel", f"domain1_score {score_str!r} is not an integer", line=line_no)
        if not spec.contains(score):
            raise AtsError(
                "LabelOutOfRange",
                f"domain1_score {score} outside [{lo}, {hi}]",
                line=line_no,
            )
        instances.append(Instance(id=essay_id, text=essay, label=score))
    if not instances:
        raise AtsError("EmptyDataset", f"no rows for prompt {prompt_id} in {path}")
    return Dataset(tuple(instances), spec, name=f"{Path(path).stem}-p{prompt_id}")


def split(ds: Dataset, train_ratio: float, seed: int) -> tuple[Dataset, Dataset]:
    """Deterministic shuffled train/test partition.

    Shuffles instance order with a seeded Fisher-Yates pass and puts the
    first ``floor(n * train_ratio)`` instances in the train side. Both
    sides keep the parent's label spec.
    """
    if not 0.0 < train_ratio < 1.0:
        raise AtsError("BadRatio", f"train_ratio must be in (0, 1), got {train_ratio}")
    if len(ds) == 0:
        raise AtsError("EmptyDataset", "cannot split an empty dataset")
    order = list(ds.instances)
    SplitMix64(seed).shuffle(order)
    n_train = math.floor(len(order) * train_ratio)
    if n_train == 0:
        log.warning("split of %d instances at ratio %.2f leaves the train side empty", len(ds), train_ratio)
    train = Dataset(tuple(order[:n_train]), ds.label_spec, name=f"{ds.name}-train")
    test = Dataset(tuple(order[n_train:]), ds.label_spec, name=f"{ds.name}-test")
    return train, test
