"""Lenses: extract a comparable pair of texts (a facet) from an entity pair."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

from .entities import Dataset, Entity

MOST_SIMILAR_LABELS = "most_similar_labels"
CONCATENATED_LABELS = "concatenated_labels"
DESCRIPTION = "description"
SUPERTERMS = "superterms"

LENSES = (MOST_SIMILAR_LABELS, CONCATENATED_LABELS, DESCRIPTION, SUPERTERMS)


@dataclass(frozen=True)
class Facet:
    left_text: str
    right_text: str
    lens_id: str


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance over code points."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def closest_pair(left: Sequence[str], right: Sequence[str]) -> Optional[tuple[str, str]]:
    """The (left, right) label pair with the smallest case-insensitive edit distance.

    Ties keep the earliest pair in left-major order.
    """
    best = None
    best_d = None
    for a in left:
        la = a.lower()
        for b in right:
            d = levenshtein(la, b.lower())
            if best_d is None or d < best_d:
                best, best_d = (a, b), d
                if d == 0:
                    return best
    return best


def apply_lens(
    kind: str,
    e1: Entity,
    e2: Entity,
    left: Optional[Dataset] = None,
    right: Optional[Dataset] = None,
    lang: str = "en",
) -> Optional[Facet]:
    """Facet for `kind`, or None when either side lacks the material.

    The superterms lens needs the datasets of both entities to walk their
    broader concepts.
    """
    if kind == MOST_SIMILAR_LABELS:
        pair = closest_pair(e1.labels_in(lang), e2.labels_in(lang))
        return None if pair is None else Facet(pair[0], pair[1], kind)
    if kind == CONCATENATED_LABELS:
        a, b = e1.labels_in(lang), e2.labels_in(lang)
        if not a or not b:
            return None
        return Facet(" ".join(a), " ".join(b), kind)
    if kind == DESCRIPTION:
        a, b = e1.descriptions_in(lang), e2.descriptions_in(lang)
        if not a or not b:
            return None
        return Facet(a[0], b[0], kind)
    if kind == SUPERTERMS:
        if left is None or right is None:
            raise ValueError("the superterms lens needs both datasets")
        pair = closest_pair(left.superterm_labels(e1.id, lang), right.superterm_labels(e2.id, lang))
        return None if pair is None else Facet(pair[0], pair[1], kind)
    raise ValueError(f"unknown lens {kind!r}")
