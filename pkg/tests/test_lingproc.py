"""Tokenizers, unigram tables, and word-vector loading."""

import math

import pytest
from hypothesis import given, strategies as st

from ats.errors import AtsError
from ats.lingproc import (
    Tokenizer,
    build_unigram_table,
    load_unigram_table,
    load_word_vectors,
    save_unigram_table,
    tokenize_char,
    tokenize_space_punct,
)

from oracles import oracle_laplace_table


class TestSpacePunctTokenizer:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("Hello, world!", ["Hello", ",", "world", "!"]),
            ("a  b", ["a", "b"]),
            ("", []),
            ("don't stop", ["don't", "stop"]),
            ("(nested)!", ["(", "nested", ")", "!"]),
            ("!!!", ["!", "!", "!"]),
            ("price: $5.", ["price", ":", "$", "5", "."]),
        ],
    )
    def test_cases(self, text, expected):
        assert tokenize_space_punct(text) == expected

    def test_lowercase_applied_last(self):
        tok = Tokenizer("space_punct", lowercase=True)
        assert tok.tokenize("Hello WORLD") == ["hello", "world"]

    @given(st.text(max_size=80))
    def test_pure(self, text):
        assert tokenize_space_punct(text) == tokenize_space_punct(text)


class TestCharTokenizer:
    @pytest.mark.parametrize(
        "text,expected",
        [("你好", ["你", "好"]), ("你 好", ["你", "好"]), ("ab", ["a", "b"]), ("", [])],
    )
    def test_cases(self, text, expected):
        assert tokenize_char(text) == expected

    @given(st.text(max_size=80))
    def test_length_counts_non_whitespace(self, text):
        assert len(tokenize_char(text)) == sum(1 for c in text if not c.isspace())


class TestUnigramTable:
    def test_laplace_hand_case(self):
        # Oracle: tokens [a, a, b] -> p(a)=0.5, p(b)=1/3, unk=1/6.
        table = build_unigram_table(["a a b"], Tokenizer("space_punct"))
        assert table.probs["a"] == pytest.approx(0.5, abs=1e-15)
        assert table.probs["b"] == pytest.approx(0.3333333333333333, abs=1e-15)
        assert table.unk_prob == pytest.approx(0.16666666666666666, abs=1e-15)

    def test_single_token(self):
        table = build_unigram_table(["a"], Tokenizer("space_punct"))
        assert table.probs["a"] == pytest.approx(2 / 3, abs=1e-15)
        assert table.unk_prob == pytest.approx(1 / 3, abs=1e-15)

    def test_empty_corpus(self):
        with pytest.raises(AtsError) as e:
            build_unigram_table([], Tokenizer("space_punct"))
        assert e.value.code == "EmptyCorpus"

    @given(st.lists(st.sampled_from("abcde"), min_size=1, max_size=60))
    def test_sums_to_one(self, tokens):
        table = build_unigram_table([" ".join(tokens)], Tokenizer("space_punct"))
        assert math.isclose(sum(table.probs.values()) + table.unk_prob, 1.0, abs_tol=1e-9)

    @given(st.lists(st.sampled_from(["x", "yy", "zzz", "w"]), min_size=1, max_size=40))
    def test_matches_oracle(self, tokens):
        table = build_unigram_table([" ".join(tokens)], Tokenizer("space_punct"))
        probs, unk = oracle_laplace_table(tokens)
        assert table.unk_prob == pytest.approx(unk, abs=1e-15)
        for t, p in probs.items():
            assert table.probs[t] == pytest.approx(p, abs=1e-15)

    def test_save_load_round_trip(self, tmp_path):
        table = build_unigram_table(["the cat sat on the mat"], Tokenizer("space_punct"))
        path = tmp_path / "uni.tsv"
        save_unigram_table(table, path)
        loaded = load_unigram_table(path)
        assert loaded.unk_prob == table.unk_prob
        assert loaded.probs == table.probs

    def test_load_rejects_missing_unk(self, tmp_path):
        path = tmp_path / "uni.tsv"
        path.write_text("a\t0.5\n", encoding="utf-8")
        with pytest.raises(AtsError) as e:
            load_unigram_table(path)
        assert e.value.code == "BadTable"


class TestWordVectors:
    def test_basic(self, tmp_path):
        path = tmp_path / "v.txt"
        path.write_text("a 1 0\nb 0 1\n", encoding="utf-8")
        vt = load_word_vectors(path)
        assert vt.dim == 2
        assert vt.vectors["a"] == (1.0, 0.0)
        assert vt.vectors["b"] == (0.0, 1.0)

    def test_dim_mismatch(self, tmp_path):
        path = tmp_path / "v.txt"
        path.write_text("a 1 0\nb 1\n", encoding="utf-8")
        with pytest.raises(AtsError) as e:
            load_word_vectors(path)
        assert e.value.code == "DimMismatch"
        assert e.value.line == 2

    def test_header_skipped(self, tmp_path):
        plain = tmp_path / "plain.txt"
        plain.write_text("a 1 0\nb 0 1\n", encoding="utf-8")
        headed = tmp_path / "headed.txt"
        headed.write_text("2 2\na 1 0\nb 0 1\n", encoding="utf-8")
        assert load_word_vectors(plain) == load_word_vectors(headed)

    def test_bad_float(self, tmp_path):
        path = tmp_path / "v.txt"
        path.write_text("a 1 zz\n", encoding="utf-8")
        with pytest.raises(AtsError) as e:
            load_word_vectors(path)
        assert e.value.code == "BadVector"

    def test_duplicates_keep_first(self, tmp_path):
        path = tmp_path / "v.txt"
        path.write_text("a 1 0\na 9 9\n", encoding="utf-8")
        assert load_word_vectors(path).vectors["a"] == (1.0, 0.0)
