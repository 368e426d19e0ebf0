"""Feature extractors over facets and the feature ladder of settings 1-8."""

from __future__ import annotations

import math
import re
from collections import Counter
from collections.abc import Iterable, Set
from typing import Optional


from ..corpus import tokenize
from . import lenses
from .entities import Dataset, EmbeddingTable, Entity
from .lenses import Facet, apply_lens

NEGATION_WORDS = frozenset({"not", "never", "no", "none", "nor", "n't"})

BASIC_FEATURES = (
    "jaccard.word", "dice.word", "containment.word",
    "jaccard.char", "dice.char", "containment.char",
    "length_ratio", "avg_word_length_ratio", "negation", "number",
)

_NUMBER_RE = re.compile(r"\d+")


def jaccard(a: Set, b: Set) -> float:
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def dice(a: Set, b: Set) -> float:
    total = len(a) + len(b)
    return 2 * len(a & b) / total if total else 0.0


def containment(a: Set, b: Set) -> float:
    smaller = min(len(a), len(b))
    return len(a & b) / smaller if smaller else 0.0


def ratio(x: float, y: float) -> float:
    """min/max, 0 when either side is 0."""
    hi = max(x, y)
    return min(x, y) / hi if hi > 0 else 0.0


def word_set(text: str) -> set[str]:
    return set(tokenize(text).tokens)


def char_set(text: str) -> set[str]:
    return {c for c in text.lower() if not c.isspace()}


def _has_negation(tokens: Iterable[str], words: Set[str]) -> bool:
    return any(t in words or (t.endswith("n't") and "n't" in words) for t in tokens)


def _numbers(text: str) -> Counter:
    return Counter(_NUMBER_RE.findall(text))


def extract_basic_features(facet: Optional[Facet], negation_words: Set[str] = NEGATION_WORDS) -> dict[str, float]:
    """The ten basic string features of a facet; all zeros for an absent facet."""
    if facet is None:
        return dict.fromkeys(BASIC_FEATURES, 0.0)
    a_tok = tokenize(facet.left_text).tokens
    b_tok = tokenize(facet.right_text).tokens
    aw, bw = set(a_tok), set(b_tok)
    ac, bc = char_set(facet.left_text), char_set(facet.right_text)
    avg_a = sum(map(len, a_tok)) / len(a_tok) if a_tok else 0.0
    avg_b = sum(map(len, b_tok)) / len(b_tok) if b_tok else 0.0
    neg_a = _has_negation(a_tok, negation_words)
    neg_b = _has_negation(b_tok, negation_words)
    return {
        "jaccard.word": jaccard(aw, bw),
        "dice.word": dice(aw, bw),
        "containment.word": containment(aw, bw),
        "jaccard.char": jaccard(ac, bc),
        "dice.char": dice(ac, bc),
        "containment.char": containment(ac, bc),
        "length_ratio": ratio(len(a_tok), len(b_tok)),
        "avg_word_length_ratio": ratio(avg_a, avg_b),
        "negation": float(neg_a == neg_b),
        "number": float(_numbers(facet.left_text) == _numbers(facet.right_text)),
    }


def smoothed_jaccard_sets(a: Set, b: Set, alpha: float = 1.0) -> float:
    """Jaccard with set sizes passed through 1 - exp(-alpha * x)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if not a and not b:
        return 0.0

    def squash(x: int) -> float:
        return -math.expm1(-alpha * x)

    inter = squash(len(a & b))
    denom = squash(len(a)) + squash(len(b)) - inter
    return inter / denom if denom > 0 else 0.0


def smoothed_jaccard(facet: Optional[Facet], alpha: float = 1.0) -> float:
    """Word-level smoothed Jaccard of a (concatenated labels) facet."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if facet is None:
        return 0.0
    return smoothed_jaccard_sets(word_set(facet.left_text), word_set(facet.right_text), alpha)


def embedding_similarity(facet: Optional[Facet], table: Optional[EmbeddingTable]) -> float:
    """Mean over left words of the best cosine against any right word.

    Directional: the left (wordnet) text sets the denominator.  Words missing
    from the table have cosine 0 with everything.
    """
    if facet is None or table is None:
        return 0.0
    left = tokenize(facet.left_text).tokens
    if not left:
        return 0.0
    right = [table.unit(w) for w in tokenize(facet.right_text).tokens]
    best = []
    for w in left:
        u = table.unit(w)
        if u is None or not right:
            best.append(0.0)
        else:
            best.append(max(float(v @ u) if v is not None else 0.0 for v in right))
    return math.fsum(best) / len(left)


# --- feature ladder -----------------------------------------------------------

LSTM_SLOT = "lstm"
SETTINGS = tuple(range(1, 9))

_LENS_PREFIX = {
    lenses.MOST_SIMILAR_LABELS: "label",
    lenses.DESCRIPTION: "desc",
    lenses.SUPERTERMS: "super",
}


def _basic_names(prefix: str) -> list[str]:
    return [f"{prefix}.{name}" for name in BASIC_FEATURES]


def feature_schema(setting: int) -> tuple[str, ...]:
    """Ordered feature names used by `setting`.

    1 concatenated-label Jaccard; 2 concatenated-label smoothed Jaccard;
    3 adds basic features of the closest labels; 4 adds basic features of the
    descriptions; 5 adds embedding similarity on both; 6 is 5 plus the
    reserved (always zero) LSTM slot; 7 is 5 plus basic and embedding
    features of the superterms; 8 is 7 plus the reserved slot.
    """
    if setting not in SETTINGS:
        raise ValueError(f"setting must be 1..8, got {setting}")
    if setting == 1:
        return ("concat.jaccard.word",)
    names = ["concat.smoothed_jaccard"]
    if setting >= 3:
        names += _basic_names("label")
    if setting >= 4:
        names += _basic_names("desc")
    if setting >= 5:
        names += ["label.embedding", "desc.embedding"]
    if setting in (7, 8):
        names += _basic_names("super") + ["super.embedding"]
    if setting in (6, 8):
        names.append(LSTM_SLOT)
    return tuple(names)


def pair_features(
    e1: Entity,
    e2: Entity,
    setting: int,
    left: Optional[Dataset] = None,
    right: Optional[Dataset] = None,
    table: Optional[EmbeddingTable] = None,
    alpha: float = 1.0,
    lang: str = "en",
    negation_words: Set[str] = NEGATION_WORDS,
) -> dict[str, float]:
    """Feature dict for one entity pair under `setting`, keyed by :func:`feature_schema`."""
    schema = feature_schema(setting)
    out: dict[str, float] = {}
    concat = apply_lens(lenses.CONCATENATED_LABELS, e1, e2, lang=lang)
    if setting == 1:
        out["concat.jaccard.word"] = 0.0 if concat is None else jaccard(word_set(concat.left_text), word_set(concat.right_text))
        return out
    out["concat.smoothed_jaccard"] = smoothed_jaccard(concat, alpha)
    kinds = []
    if setting >= 3:
        kinds.append(lenses.MOST_SIMILAR_LABELS)
    if setting >= 4:
        kinds.append(lenses.DESCRIPTION)
    if setting in (7, 8):
        kinds.append(lenses.SUPERTERMS)
    for kind in kinds:
        facet = apply_lens(kind, e1, e2, left, right, lang)
        prefix = _LENS_PREFIX[kind]
        for name, value in extract_basic_features(facet, negation_words).items():
            out[f"{prefix}.{name}"] = value
        if setting >= 5:
            out[f"{prefix}.embedding"] = embedding_similarity(facet, table)
    if setting in (6, 8):
        out[LSTM_SLOT] = 0.0
    return {name: out[name] for name in schema}
