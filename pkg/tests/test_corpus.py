import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polywn import fixtures
from polywn.corpus import (
    CorpusError,
    PhraseTooLongError,
    build_index,
    find_occurrences,
    find_phrase,
    load_index,
    load_parallel,
    load_parallel_dir,
    save_index,
    tokenize,
)

from conftest import random_instance
from oracles import brute_force_phrase, contains_at


class TestTokenize:
    def test_case_and_punct(self):
        assert tokenize("The Bank!").tokens == ("the", "bank")

    def test_empty(self):
        assert tokenize("").tokens == ()

    def test_unicode_and_spacing(self):
        assert tokenize("río  grande,").tokens == ("río", "grande")

    def test_inner_punct_kept_numerals_kept(self):
        assert tokenize("«Don't» pay 6 euros...").tokens == ("don't", "pay", "6", "euros")

    def test_punct_only_token_dropped(self):
        assert tokenize("a -- b").tokens == ("a", "b")

    def test_raw_kept(self):
        assert tokenize("Hi there").raw == "Hi there"

    @settings(max_examples=100, deadline=None)
    @given(st.text(max_size=40))
    def test_tokens_have_no_whitespace(self, text):
        toks = tokenize(text).tokens
        assert all(t and not any(c.isspace() for c in t) for t in toks)
        assert tokenize(text).tokens == toks


class TestLoadParallel:
    def test_two_languages(self):
        c = load_parallel({"en": ["a cat"], "es": ["un gato"]})
        assert len(c) == 1
        assert c.languages == ("en", "es")

    def test_mismatch_reports_counts(self):
        with pytest.raises(CorpusError) as err:
            load_parallel({"en": ["a", "b"], "es": ["x", "y", "z"]})
        assert "2" in str(err.value) and "3" in str(err.value)

    def test_needs_pivot(self):
        with pytest.raises(CorpusError):
            load_parallel({"fr": ["a"], "es": ["b"]})

    def test_fixture_dir(self):
        c = load_parallel_dir(fixtures.path("translation"), ["en", "fr", "de"])
        assert len(c) == 50
        assert all(len(t.sentences) == 3 for t in c.tuples)
        assert [t.id for t in c.tuples] == list(range(50))
        assert c.languages == ("en", "de", "fr")


class TestIndex:
    def test_bigram(self):
        idx = build_index(load_parallel({"en": ["the bank"], "es": ["la orilla"]}), 2)
        assert find_phrase(idx, "en", "the bank") == {0}

    def test_absent(self):
        idx = build_index(load_parallel({"en": ["the bank"], "es": ["la orilla"]}), 2)
        assert find_phrase(idx, "en", "river") == frozenset()

    def test_contiguity(self):
        c = load_parallel({"en": ["he took a commercial loan", "a commercial bank loan"], "es": ["x", "y"]})
        idx = build_index(c, 4)
        assert find_phrase(idx, "en", "commercial loan") == {0}

    def test_too_long(self):
        idx = build_index(load_parallel({"en": ["a b c"], "es": ["x"]}), 2)
        with pytest.raises(PhraseTooLongError, match="max_n"):
            find_phrase(idx, "en", "a b c")

    def test_fixture_bank(self):
        c = load_parallel_dir(fixtures.path("translation"), ["en", "fr", "de"])
        idx = build_index(c, 4)
        assert find_phrase(idx, "en", "Bank") == brute_force_phrase(c, "en", ["bank"])

    def test_bad_max_n(self):
        with pytest.raises(ValueError):
            build_index(load_parallel({"en": ["a"], "es": ["b"]}), 0)

    @pytest.mark.parametrize("seed", range(5))
    def test_equals_scan_on_random_corpora(self, seed):
        _, c = random_instance(seed)
        idx = build_index(c, 3)
        for lang in c.languages:
            grams = set()
            for t in c.tuples[:40]:
                toks = t.sentences[lang].tokens
                for n in (1, 2, 3):
                    grams.update(toks[i:i + n] for i in range(len(toks) - n + 1))
            grams.add((f"{lang}999",))
            for g in grams:
                assert set(idx.lookup(lang, g)) == brute_force_phrase(c, lang, list(g))

    def test_posting_lists_sorted(self):
        _, c = random_instance(11)
        idx = build_index(c, 2)
        for table in idx.postings.values():
            for ids in table.values():
                assert list(ids) == sorted(set(ids))

    def test_serialization_round_trip_and_determinism(self):
        _, c = random_instance(3)
        a, b = io.BytesIO(), io.BytesIO()
        save_index(build_index(c, 4), a)
        save_index(build_index(c, 4), b)
        assert a.getvalue() == b.getvalue()
        a.seek(0)
        assert load_index(a) == build_index(c, 4)

    def test_load_rejects_garbage(self):
        with pytest.raises(ValueError):
            load_index(io.BytesIO(b"nope\n"))


class TestOccurrences:
    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.sampled_from("ab"), max_size=12), st.lists(st.sampled_from("ab"), min_size=1, max_size=3))
    def test_matches_naive(self, tokens, phrase):
        assert find_occurrences(tokens, phrase) == contains_at(tokens, phrase)
