"""Tokenization and corpus statistics backing the feature extractors.

Two built-in tokenizers cover the supported languages without an external
NLP dependency: a whitespace+punctuation splitter for space-delimited
languages and a character tokenizer for languages written without spaces.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from .errors import AtsError

UNK_TOKEN = "<unk>"


def _is_punct(ch: str) -> bool:
    # Unicode categories P* (punctuation) and S* (symbols).
    return unicodedata.category(ch)[0] in ("P", "S")


@dataclass(frozen=True)
class Tokenizer:
    """Tokenizer configuration; ``kind`` is ``space_punct`` or ``char``.

    The same tokenizer must be used at train and predict time, so it is
    fixed when a feature pipeline is created and serialized with it.
    """

    kind: str = "space_punct"
    lowercase: bool = False

    def __post_init__(self):
        if self.kind not in ("space_punct", "char"):
            raise AtsError("UnknownType", f"unknown tokenizer kind {self.kind!r}")

    def tokenize(self, text: str) -> list[str]:
        if self.kind == "char":
            tokens = tokenize_char(text)
        else:
            tokens = tokenize_space_punct(text)
        if self.lowercase:
            tokens = [t.lower() for t in tokens]
        return tokens


def tokenize_space_punct(text: str) -> list[str]:
    """Split on Unicode whitespace, peeling edge punctuation into
    single-character tokens.

    Punctuation inside a chunk is kept ("don't" stays one token); only
    leading and trailing punctuation/symbol characters are peeled.
    """
    tokens: list[str] = []
    for chunk in text.split():
        lead: list[str] = []
        while chunk and _is_punct(chunk[0]):
            lead.append(chunk[0])
            chunk = chunk[1:]
        trail: list[str] = []
        while chunk and _is_punct(chunk[-1]):
            trail.append(chunk[-1])
            chunk = chunk[:-1]
        tokens.extend(lead)
        if chunk:
            tokens.append(chunk)
        tokens.extend(reversed(trail))
    return tokens


def tokenize_char(text: str) -> list[str]:
    """One token per non-whitespace Unicode scalar value, in order."""
    return [ch for ch in text if not ch.isspace()]


@dataclass(frozen=True)
class UnigramTable:
    """Token probabilities with a dedicated unknown-token slot.

    Probabilities plus ``unk_prob`` sum to 1; Laplace smoothing at build
    time guarantees a nonzero probability for out-of-vocabulary tokens,
    which the log-likelihood feature depends on.
    """

    probs: dict[str, float]
    unk_prob: float

    def prob(self, token: str) -> float:
        return self.probs.get(token, self.unk_prob)


def build_unigram_table(corpus_lines, tok: Tokenizer) -> UnigramTable:
    """Count tokens over a corpus and apply add-one (Laplace) smoothing.

    p(w) = (count(w) + 1) / (N + |V| + 1), with the +1 slot in the
    denominator reserved for unseen tokens: unk = 1 / (N + |V| + 1).
    """
    counts: dict[str, int] = {}
    total = 0
    for line in corpus_lines:
        for token in tok.tokenize(line):
            counts[token] = counts.get(token, 0) + 1
            total += 1
    if total == 0:
        raise AtsError("EmptyCorpus", "no tokens in corpus")
    denom = total + len(counts) + 1
    probs = {token: (c + 1) / denom for token, c in counts.items()}
    return UnigramTable(probs, 1.0 / denom)


def save_unigram_table(table: UnigramTable, path: str | Path) -> None:
    """Write a table as two-column TSV; the ``<unk>`` row is reserved."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{UNK_TOKEN}\t{table.unk_prob!r}\n")
        for token, p in table.probs.items():
            f.write(f"{token}\t{p!r}\n")


def load_unigram_table(path: str | Path) -> UnigramTable:
    probs: dict[str, float] = {}
    unk_prob: float | None = None
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue
            if "\t" not in line:
                raise AtsError("BadTable", f"expected <token>TAB<probability> in {path}", line=line_no)
            token, prob_str = line.split("\t", 1)
            try:
                p = float(prob_str)
            except ValueError:
                raise AtsError("BadTable", f"unreadable probability {prob_str!r}", line=line_no)
            if not 0.0 < p <= 1.0:
                raise AtsError("BadTable", f"probability {p} outside (0, 1]", line=line_no)
            if token == UNK_TOKEN:
                unk_prob = p
            else:
                probs[token] = p
    if unk_prob is None:
        raise AtsError("BadTable", f"no {UNK_TOKEN} row in {path}")
    return UnigramTable(probs, unk_prob)


@dataclass(frozen=True)
class VectorTable:
    """Fixed-dimension word vectors keyed by token."""

    dim: int
    vectors: dict[str, tuple[float, ...]] = field(default_factory=dict)


def save_word_vectors(vt: VectorTable, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for word, vec in vt.vectors.items():
            f.write(word + " " + " ".join(repr(v) for v in vec) + "\n")


def load_word_vectors(path: str | Path) -> VectorTable:
    """Parse a whitespace-separated vector file.

    Each line is ``word v1 v2 ...``; an optional first line ``count dim``
    (two integers) is skipped. Duplicate words keep the first occurrence.
    """
    dim: int | None = None
    vectors: dict[str, tuple[float, ...]] = {}
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            parts = line.split()
            if not parts:
                continue
            if line_no == 1 and len(parts) == 2:
                try:
                    int(parts[0]), int(parts[1])
                    continue  # header line
                except ValueError:
                    pass
            word, rest = parts[0], parts[1:]
            if not rest:
                raise AtsError("DimMismatch", f"no vector values for {word!r}", line=line_no)
            try:
                vec = tuple(float(v) for v in rest)
            except ValueError:
                raise AtsError("BadVector", f"unreadable vector for {word!r}", line=line_no)
            if dim is None:
                dim = len(vec)
            elif len(vec) != dim:
                raise AtsError(
                    "DimMismatch",
                    f"vector for {word!r} has {len(vec)} values, expected {dim}",
                    line=line_no,
                )
            if word not in vectors:
                vectors[word] = vec
    if dim is None:
        raise AtsError("EmptyCorpus", f"no vectors in {path}")
    return VectorTable(dim, vectors)
