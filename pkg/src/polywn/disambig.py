"""Disambiguated contexts for English senses.

An English sentence is a disambiguated context for a sense when its parallel
translations in at least ``n_min`` other languages contain a lemma of the
sense's synset in that language.  The languages that do are the witnesses.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import IO, Optional

from .corpus import PIVOT, ParallelCorpus, PhraseIndex, find_occurrences, tokenize
from .lexicon import MultilingualWordnet, Sense


@dataclass(frozen=True)
class DisambiguatedContext:
    tuple_id: int
    focus_span: tuple[int, int]
    witnesses: frozenset[str]

    @property
    def score(self) -> int:
        return len(self.witnesses)


@dataclass(frozen=True)
class DisambigConfig:
    n_min: int = 2
    m: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.n_min < 1:
            raise ValueError("n_min must be >= 1")
        if self.m < 1:
            raise ValueError("m must be >= 1")


def phrase_tuples(index: PhraseIndex, corpus: ParallelCorpus, lang: str, tokens: Sequence[str]) -> frozenset[int]:
    """Tuples containing `tokens` in `lang`; scans the corpus for phrases the index is too short for."""
    if not tokens:
        return frozenset()
    if len(tokens) <= index.max_n:
        return frozenset(index.lookup(lang, tokens))
    return frozenset(
        t.id for t in corpus.tuples if lang in t.sentences and find_occurrences(t.sentences[lang].tokens, tokens)
    )


def disambiguated_contexts(
    wn: MultilingualWordnet,
    corpus: ParallelCorpus,
    index: PhraseIndex,
    sense: Sense,
    n_min: int = 2,
    witness_languages: Optional[Iterable[str]] = None,
) -> list[DisambiguatedContext]:
    """Every (tuple, focus occurrence) of `sense` witnessed in >= `n_min` languages.

    Contexts come back ordered by tuple id and span start.  By default every
    non-English corpus language may act as a witness.
    """
    if sense.language != PIVOT:
        raise ValueError(f"senses to disambiguate must be English, got {sense.language!r}")
    focus = tokenize(sense.lemma).tokens
    if not focus:
        return []
    langs = [lang for lang in corpus.languages if lang != PIVOT]
    if witness_languages is not None:
        allowed = set(witness_languages)
        langs = [lang for lang in langs if lang in allowed]

    support: dict[str, frozenset[int]] = {}
    for lang in langs:
        hits: set[int] = set()
        for lemma in wn.lemmas_of(sense.synset, lang):
            hits |= phrase_tuples(index, corpus, lang, tokenize(lemma).tokens)
        if hits:
            support[lang] = frozenset(hits)
    if len(support) < n_min:
        return []

    out = []
    for tid in sorted(phrase_tuples(index, corpus, PIVOT, focus)):
        witnesses = frozenset(lang for lang, ids in support.items() if tid in ids)
        if len(witnesses) < n_min:
            continue
        for start in find_occurrences(corpus.tuples[tid].sentences[PIVOT].tokens, focus):
            out.append(DisambiguatedContext(tid, (start, start + len(focus)), witnesses))
    return out


def select_top_m(contexts: Sequence[DisambiguatedContext], cfg: DisambigConfig) -> list[DisambiguatedContext]:
    """The `cfg.m` best contexts by witness count, ties in seeded random order."""
    rng = random.Random(cfg.seed)
    base = sorted(contexts, key=lambda c: (c.tuple_id, c.focus_span))
    keys = [rng.random() for _ in base]
    ranked = sorted(zip(base, keys), key=lambda ck: (-ck[0].score, ck[1]))
    return [c for c, _ in ranked[: cfg.m]]


def write_context_dump(rows: Iterable[tuple[Sense, DisambiguatedContext]], fp: IO[str]) -> None:
    """TSV: synset, lemma, tuple id, span start, span end, comma-separated witnesses."""
    for sense, ctx in rows:
        start, end = ctx.focus_span
        langs = ",".join(sorted(ctx.witnesses))
        fp.write(f"{sense.synset}\t{sense.lemma}\t{ctx.tuple_id}\t{start}\t{end}\t{langs}\n")
