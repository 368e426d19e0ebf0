import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polywn.align import (
    BASIC_FEATURES,
    Dataset,
    EmbeddingTable,
    Entity,
    Facet,
    apply_lens,
    containment,
    dice,
    embedding_similarity,
    extract_basic_features,
    feature_schema,
    jaccard,
    levenshtein,
    pair_features,
    parse_embeddings,
    parse_entities,
    smoothed_jaccard,
    smoothed_jaccard_sets,
)
from polywn.align.lenses import CONCATENATED_LABELS, DESCRIPTION, MOST_SIMILAR_LABELS, SUPERTERMS

from oracles import naive_levenshtein

BANK = Entity("wn:bank", labels={"en": ["bank", "banking company"]}, descriptions={"en": ["a financial institution"]})
WP_BANK = Entity("wp:Bank", labels={"en": ["Bank"]})


def facet(a, b):
    return Facet(a, b, "test")


class TestLevenshtein:
    @pytest.mark.parametrize("a, b, d", [("abc", "abc", 0), ("", "abc", 3), ("kitten", "sitting", 3), ("río", "rio", 1)])
    def test_examples(self, a, b, d):
        assert levenshtein(a, b) == d

    @settings(max_examples=200, deadline=None)
    @given(st.text(alphabet="abcñ", max_size=8), st.text(alphabet="abcñ", max_size=8))
    def test_dp_oracle(self, a, b):
        assert levenshtein(a, b) == naive_levenshtein(a, b) == levenshtein(b, a)


class TestLenses:
    def test_most_similar(self):
        f = apply_lens(MOST_SIMILAR_LABELS, BANK, Entity("x", labels={"en": ["bank"]}))
        assert (f.left_text, f.right_text) == ("bank", "bank")

    def test_most_similar_case_insensitive(self):
        f = apply_lens(MOST_SIMILAR_LABELS, BANK, WP_BANK)
        assert (f.left_text, f.right_text) == ("bank", "Bank")

    def test_concatenated(self):
        f = apply_lens(CONCATENATED_LABELS, BANK, Entity("x", labels={"en": ["bank"]}))
        assert (f.left_text, f.right_text) == ("bank banking company", "bank")

    def test_description_absent(self):
        assert apply_lens(DESCRIPTION, BANK, WP_BANK) is None

    def test_description_first(self):
        e2 = Entity("x", descriptions={"en": ["First sentence.", "Second."]})
        assert apply_lens(DESCRIPTION, BANK, e2).right_text == "First sentence."

    def test_superterms(self):
        left = Dataset([
            Entity("wn:dog", labels={"en": ["dog"]}, relations=(("hypernym", "wn:canine"),)),
            Entity("wn:canine", labels={"en": ["canine"]}, relations=(("hypernym", "wn:animal"),)),
            Entity("wn:animal", labels={"en": ["animal"]}),
        ])
        right = Dataset([Entity("wp:Dog", labels={"en": ["Dog"]}, relations=(("hypernym", "Animals"),))])
        f = apply_lens(SUPERTERMS, left["wn:dog"], right["wp:Dog"], left, right)
        assert (f.left_text, f.right_text) == ("animal", "Animals")

    def test_superterms_needs_graphs(self):
        with pytest.raises(ValueError):
            apply_lens(SUPERTERMS, BANK, WP_BANK)

    def test_superterms_absent(self):
        d = Dataset([BANK, WP_BANK])
        assert apply_lens(SUPERTERMS, BANK, WP_BANK, d, d) is None

    def test_language_selection(self):
        e1 = Entity("a", labels={"en": ["dog"], "fr": ["chien"]})
        e2 = Entity("b", labels={"fr": ["chien"]})
        assert apply_lens(CONCATENATED_LABELS, e1, e2, lang="en") is None
        assert apply_lens(CONCATENATED_LABELS, e1, e2, lang="fr").left_text == "chien"


class TestBasicFeatures:
    def test_big_cat_big_dog(self):
        f = extract_basic_features(facet("big cat", "big dog"))
        assert f["jaccard.word"] == pytest.approx(1 / 3)
        assert f["dice.word"] == pytest.approx(1 / 2)
        assert f["containment.word"] == pytest.approx(1 / 2)
        assert f["length_ratio"] == 1.0

    def test_char_level(self):
        f = extract_basic_features(facet("ab", "bc"))
        assert f["jaccard.char"] == pytest.approx(1 / 3)

    def test_negation(self):
        assert extract_basic_features(facet("not good", "good"))["negation"] == 0.0
        assert extract_basic_features(facet("good", "nice"))["negation"] == 1.0
        assert extract_basic_features(facet("isn't good", "never good"))["negation"] == 1.0

    def test_number(self):
        assert extract_basic_features(facet("6 cats", "6 dogs"))["number"] == 1.0
        assert extract_basic_features(facet("6 cats", "7 cats"))["number"] == 0.0
        assert extract_basic_features(facet("6 6 cats", "6 cats"))["number"] == 0.0

    def test_avg_word_length(self):
        assert extract_basic_features(facet("ab ab", "abcd"))["avg_word_length_ratio"] == 0.5

    def test_absent_facet_zero(self):
        assert extract_basic_features(None) == dict.fromkeys(BASIC_FEATURES, 0.0)

    def test_empty_conventions(self):
        assert jaccard(set(), set()) == dice(set(), set()) == containment(set(), set()) == 0.0
        assert containment({"a"}, set()) == 0.0

    @settings(max_examples=200, deadline=None)
    @given(st.text(alphabet="ab c6 not", max_size=12), st.text(alphabet="ab c6 not", max_size=12))
    def test_identities_and_symmetry(self, a, b):
        f = extract_basic_features(facet(a, b))
        g = extract_basic_features(facet(b, a))
        assert f == g
        for level in ("word", "char"):
            j, d, c = f[f"jaccard.{level}"], f[f"dice.{level}"], f[f"containment.{level}"]
            assert j <= d + 1e-12 <= 1 + 1e-12
            assert j <= c + 1e-12
        for name in ("negation", "number"):
            assert f[name] in (0.0, 1.0)
        assert all(math.isfinite(v) for v in f.values())


class TestSmoothedJaccard:
    def test_identical(self):
        for alpha in (1e-3, 0.5, 1.0, 7.0):
            assert smoothed_jaccard(facet("big cat", "cat big"), alpha) == pytest.approx(1.0)

    def test_worked_example(self):
        expected = (1 - math.exp(-1)) / (2 * (1 - math.exp(-2)) - (1 - math.exp(-1)))
        got = smoothed_jaccard(facet("big cat", "big dog"), 1.0)
        assert got == pytest.approx(expected, abs=1e-15)
        assert round(got, 4) == 0.5761

    def test_alpha_must_be_positive(self):
        with pytest.raises(ValueError):
            smoothed_jaccard(facet("a", "a"), 0.0)

    def test_empty(self):
        assert smoothed_jaccard_sets(set(), set(), 1.0) == 0.0
        assert smoothed_jaccard(None, 1.0) == 0.0

    @settings(max_examples=200, deadline=None)
    @given(
        st.sets(st.integers(0, 12), max_size=10),
        st.sets(st.integers(0, 12), max_size=10),
        # alpha * size stays far below ~36, where 1 - exp(-x) rounds to 1.0 in doubles
        st.floats(1e-4, 2.0),
    )
    def test_range_and_equality(self, a, b, alpha):
        v = smoothed_jaccard_sets(a, b, alpha)
        assert 0.0 <= v <= 1.0 + 1e-12
        assert v == smoothed_jaccard_sets(b, a, alpha)
        if a == b and a:
            assert v == pytest.approx(1.0)
        else:
            assert v < 1.0

    @settings(max_examples=100, deadline=None)
    @given(st.sets(st.integers(0, 12), max_size=10), st.sets(st.integers(0, 12), max_size=10))
    def test_limit(self, a, b):
        assert abs(smoothed_jaccard_sets(a, b, 1e-6) - jaccard(a, b)) <= 1e-4


TOY = "cat 1 0\ndog 0.6 0.8\nfish 0 1\n"


@pytest.fixture(scope="module")
def table():
    return parse_embeddings(io.StringIO(TOY))


class TestEmbeddings:
    def test_self(self, table):
        assert embedding_similarity(facet("cat", "cat"), table) == pytest.approx(1.0)

    def test_two_words(self, table):
        assert embedding_similarity(facet("cat dog", "cat"), table) == pytest.approx((1 + 0.6) / 2)

    def test_directional(self, table):
        assert embedding_similarity(facet("cat", "cat dog"), table) == pytest.approx(1.0)

    def test_missing_left(self, table):
        assert embedding_similarity(facet("zebra", "cat"), table) == 0.0

    def test_missing_right_word(self, table):
        assert embedding_similarity(facet("dog", "zebra"), table) == 0.0

    def test_no_table(self):
        assert embedding_similarity(facet("cat", "cat"), None) == 0.0

    def test_word2vec_header(self):
        t = parse_embeddings(io.StringIO("3 2\n" + TOY))
        assert len(t) == 3 and t.dim == 2

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            parse_embeddings(io.StringIO("cat 1 0\ndog 1 0 0\n"))
        with pytest.raises(ValueError):
            EmbeddingTable({"a": [1.0], "b": [1.0, 2.0]})

    def test_zero_vector(self):
        t = EmbeddingTable({"nil": [0.0, 0.0], "cat": [1.0, 0.0]})
        assert embedding_similarity(facet("nil", "cat"), t) == 0.0
        assert np.all(np.isfinite(t.unit("nil")))


class TestLadder:
    @pytest.mark.parametrize("setting, size", [(1, 1), (2, 1), (3, 11), (4, 21), (5, 23), (6, 24), (7, 34), (8, 35)])
    def test_schema_sizes(self, setting, size):
        assert len(feature_schema(setting)) == size
        assert len(set(feature_schema(setting))) == size

    def test_schema_nesting(self):
        for lo, hi in ((2, 3), (3, 4), (4, 5), (5, 6), (5, 7), (7, 8)):
            assert set(feature_schema(lo)) <= set(feature_schema(hi))

    def test_lstm_slot_zero(self):
        d = Dataset([BANK, WP_BANK])
        for s in (6, 8):
            assert pair_features(BANK, WP_BANK, s, d, d)["lstm"] == 0.0

    def test_bad_setting(self):
        with pytest.raises(ValueError):
            feature_schema(9)

    def test_pair_features_keys_and_finite(self, alignment_fixture):
        fx = alignment_fixture
        e1, e2 = fx["left"].entities[0], fx["right"].entities[0]
        for s in range(1, 9):
            f = pair_features(e1, e2, s, fx["left"], fx["right"], fx["table"])
            assert tuple(f) == feature_schema(s)
            assert all(math.isfinite(v) for v in f.values())

    def test_entity_json(self):
        line = '{"id": "a", "labels": {"en": ["x"]}, "relations": [["hypernym", "b"]], "type": "n"}\n'
        (e,) = parse_entities(io.StringIO(line))
        assert e.relations == (("hypernym", "b"),) and e.entity_type == "n"
        with pytest.raises(ValueError, match="duplicate"):
            parse_entities(io.StringIO(line + line))
