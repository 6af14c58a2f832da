"""Regenerate the bundled toy corpus under data/.

60 labeled documents across 3 levels (0..2). Level correlates with length
and vocabulary: higher levels produce longer sentences with longer, rarer
words, so the default feature set separates them well. Deterministic, so
the checked-in files never drift.

Usage: python scripts/make_toy_data.py
"""

from __future__ import annotations

from pathlib import Path

from ats.lingproc import Tokenizer, build_unigram_table, save_unigram_table
from ats.prng import SplitMix64

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

WORDS = {
    0: ["the", "cat", "sat", "on", "a", "mat", "dog", "ran", "to", "us",
        "it", "is", "big", "red", "sun", "we", "go", "now", "and", "see"],
    1: ["teacher", "explains", "lesson", "students", "listen", "during",
        "morning", "classes", "library", "contains", "many", "books",
        "children", "practice", "writing", "simple", "stories", "about",
        "animals", "together"],
    2: ["comprehensive", "analysis", "demonstrates", "significant",
        "correlation", "between", "extensive", "vocabulary", "acquisition",
        "and", "sophisticated", "argumentation", "throughout", "academic",
        "discourse", "researchers", "investigate", "theoretical",
        "frameworks", "systematically"],
}

LENGTHS = {0: (4, 9), 1: (14, 22), 2: (28, 40)}


def make_doc(level: int, rng: SplitMix64) -> str:
    lo, hi = LENGTHS[level]
    n = lo + rng.randbelow(hi - lo + 1)
    # Mostly level-specific words, with some easy filler mixed in.
    words = []
    for _ in range(n):
        pool = WORDS[level] if rng.randbelow(4) else WORDS[0]
        words.append(pool[rng.randbelow(len(pool))])
    sentence = " ".join(words)
    return sentence[0].upper() + sentence[1:] + "."


def main() -> None:
    DATA.mkdir(exist_ok=True)
    rng = SplitMix64(20240501)
    rows = []
    for level in (0, 1, 2):
        for _ in range(20):
            rows.append((level, make_doc(level, rng)))
    rng.shuffle(rows)

    with open(DATA / "toy.tsv", "w", encoding="utf-8") as f:
        for level, text in rows:
            f.write(f"{level}\t{text}\n")

    table = build_unigram_table([text for _, text in rows], Tokenizer("space_punct"))
    save_unigram_table(table, DATA / "toy_unigrams.tsv")

    (DATA / "toy.yaml").write_text(
        """# Bundled toy experiment: 3-level classification on the toy corpus.
task: classification

profiler:
  type: FeatureClassifier
  params:
    learner:
      type: random_forest
      params:
        n_estimators: 100
        max_depth: 5
    features:
      - type: token_count
      - type: avg_token_length
      - type: unigram_likelihood
        params:
          table_path: toy_unigrams.tsv
    tokenizer:
      type: whitespace
    seed: 42

dataset:
  type: tsv
  params:
    path: toy.tsv
""",
        encoding="utf-8",
    )
    print(f"wrote {len(rows)} docs to {DATA}")


if __name__ == "__main__":
    main()
