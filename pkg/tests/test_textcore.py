import pytest
from hypothesis import given, strategies as st

from brandgauge.errors import BrandGaugeError
from brandgauge.textcore import (
    Document,
    count_syllables,
    flesch_reading_ease,
    split_sentences,
    tokenize,
)

from oracles import SYLLABLE_ORACLE


class TestTokenize:
    def test_contraction_stays_single_token(self):
        assert [t.surface for t in tokenize("We're here.")] == ["We're", "here", "."]

    def test_empty_text(self):
        assert tokenize("") == []

    def test_hyphenated_word_stays_single_token(self):
        assert [t.surface for t in tokenize("state-of-the-art design")] == [
            "state-of-the-art",
            "design",
        ]

    def test_spans_match_source_slices(self):
        text = "Big news!  Acme's Q3 profits rose 12%."
        for tok in tokenize(text):
            lo, hi = tok.char_span
            assert text[lo:hi] == tok.surface

    def test_spans_strictly_increasing(self):
        toks = tokenize("a b, c. d")
        spans = [t.char_span for t in toks]
        assert all(a[1] <= b[0] for a, b in zip(spans, spans[1:]))

    def test_numbers_are_not_words(self):
        toks = tokenize("In 2017 Acme grew")
        by_surface = {t.surface: t.is_word for t in toks}
        assert by_surface["2017"] is False
        assert by_surface["Acme"] is True

    @given(st.text(max_size=200))
    def test_gap_reconstruction(self, text):
        toks = tokenize(text)
        rebuilt = []
        pos = 0
        for t in toks:
            rebuilt.append(text[pos : t.char_span[0]])
            rebuilt.append(t.surface)
            pos = t.char_span[1]
        rebuilt.append(text[pos:])
        assert "".join(rebuilt) == text


class TestSplitSentences:
    def test_two_sentences(self):
        assert len(split_sentences("It works. It sells.")) == 2

    def test_abbreviation_suppresses_split(self):
        assert len(split_sentences("Acme Inc. grew fast.")) == 1

    def test_empty(self):
        assert split_sentences("") == []

    def test_question_and_exclamation(self):
        assert len(split_sentences("Really? Yes! Quite so.")) == 3

    def test_lowercase_continuation_does_not_split(self):
        assert len(split_sentences("The deal closed at 3 p.m. yesterday evening.")) == 1

    def test_initials_do_not_split(self):
        assert len(split_sentences("J. Smith joined the board.")) == 1

    def test_covers_every_word_token_once(self):
        text = "First one. Second one! Third?  And a fourth."
        doc = Document.from_text(text)
        covered = []
        for s in doc.sentences:
            covered.extend(range(*s.token_range))
        word_idx = [i for i, t in enumerate(doc.tokens) if t.is_word]
        assert sorted(set(covered)) == covered
        assert set(word_idx) <= set(covered)

    def test_sentences_in_document_order(self):
        doc = Document.from_text("Alpha beta. Gamma delta. Epsilon zeta.")
        starts = [s.char_span[0] for s in doc.sentences]
        assert starts == sorted(starts)
        assert [s.index for s in doc.sentences] == [0, 1, 2]


class TestCountSyllables:
    @pytest.mark.parametrize("word,expected", [("cat", 1), ("banana", 3), ("the", 1)])
    def test_oracle_spot_checks(self, word, expected):
        assert count_syllables(word) == expected

    def test_not_a_word(self):
        with pytest.raises(BrandGaugeError):
            count_syllables("1234")

    def test_dictionary_oracle_agreement(self):
        agree = sum(1 for w, n in SYLLABLE_ORACLE if count_syllables(w) == n)
        assert len(SYLLABLE_ORACLE) == 100
        assert agree >= 90

    @given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=12))
    def test_at_least_one_and_duplication_monotone(self, word):
        base = count_syllables(word)
        assert base >= 1
        assert count_syllables("abab" + word) >= base


class TestFleschReadingEase:
    def test_six_word_fixture(self):
        doc = Document.from_text("The cat sat on the mat.")
        assert flesch_reading_ease(doc) == pytest.approx(116.145, abs=1e-6)

    def test_single_word(self):
        doc = Document.from_text("Cat.")
        assert flesch_reading_ease(doc) == pytest.approx(121.220, abs=1e-6)

    def test_empty_document_errors(self):
        with pytest.raises(BrandGaugeError):
            flesch_reading_ease(Document.from_text(""))

    def test_punctuation_only_errors(self):
        with pytest.raises(BrandGaugeError):
            flesch_reading_ease(Document.from_text("... !!!"))

    def test_word_for_word_duplication_is_invariant(self):
        text = "The cat sat on the mat. A dog ran far away."
        doubled = text + " " + text
        assert flesch_reading_ease(Document.from_text(text)) == pytest.approx(
            flesch_reading_ease(Document.from_text(doubled)), abs=1e-9
        )
