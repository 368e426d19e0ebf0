"""Translation backends and the context-voting wordnet translation pipeline.

Each English sense is translated by handing its top ``m`` disambiguated
contexts to a backend that returns the ``t`` best candidates for the focus
phrase.  The ``t * m`` pooled candidates are voted on; senses without
contexts fall back to translating the bare lemma.
"""

from __future__ import annotations

import abc
import json
import logging
import math
import random
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import IO, Optional

from .corpus import PIVOT, ParallelCorpus, PhraseIndex, TokenizedSentence, tokenize
from .disambig import DisambigConfig, disambiguated_contexts, select_top_m
from .lexicon import MultilingualWordnet, Sense, Synset, SynsetId, check_language

log = logging.getLogger(__name__)

SEPARATOR = " ||| "


@dataclass(frozen=True)
class TranslationCandidate:
    target_phrase: str
    model_score: float
    full_translation: str = ""

    def __post_init__(self):
        if not self.target_phrase.strip():
            raise ValueError("empty target phrase")
        if not math.isfinite(self.model_score):
            raise ValueError("model score must be finite")


class TranslationBackend(abc.ABC):
    """Translates an English sentence and reports the output aligned to a focus span.

    Implementations return at most `t` candidates sorted by descending model
    score and must be deterministic.  Set ``thread_safe = False`` if calls
    must not overlap.
    """

    target_language: str
    supports_focus_alignment = True
    thread_safe = True

    @abc.abstractmethod
    def translate(self, sentence: TokenizedSentence, focus_span: tuple[int, int], t: int) -> list[TranslationCandidate]:
        ...


def _sort_entries(entries: Iterable[tuple[str, float]]) -> list[tuple[str, float]]:
    return sorted(entries, key=lambda e: (-e[1], e[0]))


class PhraseTableBackend(TranslationBackend):
    """Looks up the focus phrase in a source -> [(target, probability)] table.

    The rest of the sentence is ignored.
    """

    def __init__(self, table: dict[str, Sequence[tuple[str, float]]], target_language: str):
        self.target_language = check_language(target_language)
        self.table: dict[str, list[tuple[str, float]]] = {}
        for source, entries in table.items():
            key = " ".join(tokenize(source).tokens)
            for target, prob in entries:
                if not 0.0 < prob <= 1.0:
                    raise ValueError(f"probability for {source!r} -> {target!r} outside (0, 1]: {prob}")
            merged = self.table.setdefault(key, [])
            merged.extend((" ".join(target.split()), float(p)) for target, p in entries)
        for key in self.table:
            self.table[key] = _sort_entries(self.table[key])

    def _candidates(self, sentence: TokenizedSentence, focus_span: tuple[int, int]) -> list[tuple[str, float]]:
        start, end = focus_span
        return self.table.get(" ".join(sentence.tokens[start:end]), [])

    def translate(self, sentence, focus_span, t):
        return [TranslationCandidate(target, prob) for target, prob in self._candidates(sentence, focus_span)[:t]]


@dataclass(frozen=True)
class _ContextRule:
    left: tuple[str, ...]
    focus: tuple[str, ...]
    right: tuple[str, ...]

    def matches(self, tokens: Sequence[str], span: tuple[int, int]) -> bool:
        start, end = span
        if tuple(tokens[start:end]) != self.focus:
            return False
        if len(self.left) > start or len(self.right) > len(tokens) - end:
            return False
        return tuple(tokens[start - len(self.left):start]) == self.left and tuple(tokens[end:end + len(self.right)]) == self.right

    @property
    def width(self) -> int:
        return len(self.left) + len(self.right)


class ContextPhraseTableBackend(PhraseTableBackend):
    """Phrase table whose source side may carry context around a bracketed focus.

    A row ``[bank] of the river ||| orilla ||| 0.9`` fires when the focus is
    "bank" and is followed by "of the river".  When several rules fire, the
    ones with the widest context win, as longer phrase pairs win in
    phrase-based decoding; otherwise the plain row for the focus is used.
    """

    def __init__(self, table, target_language, context_rules: dict[tuple, Sequence[tuple[str, float]]]):
        super().__init__(table, target_language)
        self.rules: dict[_ContextRule, list[tuple[str, float]]] = {}
        for (left, focus, right), entries in context_rules.items():
            for target, prob in entries:
                if not 0.0 < prob <= 1.0:
                    raise ValueError(f"probability for context rule {focus!r} -> {target!r} outside (0, 1]: {prob}")
            rule = _ContextRule(tuple(left), tuple(focus), tuple(right))
            self.rules.setdefault(rule, []).extend((" ".join(t.split()), float(p)) for t, p in entries)

    def _candidates(self, sentence, focus_span):
        fired = [r for r in self.rules if r.matches(sentence.tokens, focus_span)]
        if not fired:
            return super()._candidates(sentence, focus_span)
        widest = max(r.width for r in fired)
        pooled: dict[str, float] = {}
        for rule in fired:
            if rule.width == widest:
                for target, prob in self.rules[rule]:
                    pooled[target] = max(prob, pooled.get(target, 0.0))
        return _sort_entries(pooled.items())


def _parse_source(source: str):
    """Split ``left [focus] right`` into token tuples; None when unbracketed."""
    open_at = source.find("[")
    if open_at < 0:
        return None
    close_at = source.find("]", open_at)
    if close_at < 0:
        raise ValueError(f"unbalanced bracket in source phrase {source!r}")
    focus = tokenize(source[open_at + 1:close_at]).tokens
    if not focus:
        raise ValueError(f"empty focus in source phrase {source!r}")
    return tokenize(source[:open_at]).tokens, focus, tokenize(source[close_at + 1:]).tokens


def parse_phrase_table(stream: Iterable[str], target_language: str) -> PhraseTableBackend:
    """Read ``source ||| target ||| probability`` lines into a backend.

    Returns a :class:`ContextPhraseTableBackend` when any source phrase has a
    bracketed focus, else a plain :class:`PhraseTableBackend`.
    """
    table: dict[str, list[tuple[str, float]]] = {}
    rules: dict[tuple, list[tuple[str, float]]] = {}
    for lineno, line in enumerate(stream, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split(SEPARATOR)
        if len(parts) < 3:
            raise ValueError(f"phrase table line {lineno}: expected 'source ||| target ||| probability'")
        source, target, score = parts[0], parts[1], parts[2]
        try:
            prob = float(score.split()[0])
        except (ValueError, IndexError):
            raise ValueError(f"phrase table line {lineno}: bad probability {score!r}") from None
        if not 0.0 < prob <= 1.0:
            raise ValueError(f"phrase table line {lineno}: probability {prob} outside (0, 1]")
        if not target.strip():
            raise ValueError(f"phrase table line {lineno}: empty target phrase")
        try:
            ctx = _parse_source(source)
        except ValueError as exc:
            raise ValueError(f"phrase table line {lineno}: {exc}") from None
        if ctx is None:
            table.setdefault(source, []).append((target, prob))
        else:
            rules.setdefault(ctx, []).append((target, prob))
    if rules:
        return ContextPhraseTableBackend(table, target_language, rules)
    return PhraseTableBackend(table, target_language)


def load_phrase_table(path, target_language: str) -> PhraseTableBackend:
    with open(path, encoding="utf-8") as fh:
        return parse_phrase_table(fh, target_language)


def translate_with_focus(
    backend: TranslationBackend, sentence: TokenizedSentence, focus_span: tuple[int, int], t: int
) -> list[TranslationCandidate]:
    """At most `t` candidates for the focus phrase, best first."""
    start, end = focus_span
    if not 0 <= start < end <= len(sentence.tokens):
        raise ValueError(f"focus span {focus_span} invalid for a {len(sentence.tokens)}-token sentence")
    if t < 1:
        raise ValueError("t must be >= 1")
    cands = backend.translate(sentence, focus_span, t)
    return sorted(cands, key=lambda c: -c.model_score)[:t]


def vote(per_context: Sequence[Sequence[TranslationCandidate]]) -> Optional[str]:
    """Most frequent target phrase over all pooled candidates.

    Ties go to the larger summed model score, then to the smaller phrase.
    """
    scores: dict[str, list[float]] = {}
    for cands in per_context:
        for c in cands:
            scores.setdefault(c.target_phrase, []).append(c.model_score)
    if not scores:
        return None
    # fsum keeps the summed-score tie-break independent of pooling order
    totals = {p: math.fsum(v) for p, v in scores.items()}
    return min(scores, key=lambda p: (-len(scores[p]), -totals[p], p))


@dataclass(frozen=True)
class TranslatedSense:
    """Outcome for one English sense; ``target_lemma`` is None when untranslated."""

    synset: SynsetId
    source_lemma: str
    target_lemma: Optional[str]
    contexts_used: int
    candidates_seen: int
    fallback: bool

    @property
    def translated(self) -> bool:
        return self.target_lemma is not None


def _sense_seed(seed: int, sense: Sense) -> int:
    return random.Random(f"{seed}|{sense.synset}|{sense.lemma}").getrandbits(64)


def translate_sense(
    wn: MultilingualWordnet,
    corpus: ParallelCorpus,
    index: PhraseIndex,
    backend: TranslationBackend,
    sense: Sense,
    cfg: DisambigConfig = DisambigConfig(),
    t: int = 5,
    disambiguate: bool = True,
    witness_languages: Optional[Iterable[str]] = None,
) -> TranslatedSense:
    """Translate one English sense by voting over its disambiguated contexts.

    With ``disambiguate=False`` the context search is skipped and the bare
    lemma is translated directly.
    """
    if sense.language != PIVOT:
        raise ValueError(f"only English senses can be translated, got {sense.language!r}")
    pooled: list[list[TranslationCandidate]] = []
    if disambiguate:
        contexts = disambiguated_contexts(wn, corpus, index, sense, cfg.n_min, witness_languages)
        chosen = select_top_m(contexts, replace(cfg, seed=_sense_seed(cfg.seed, sense)))
        for ctx in chosen:
            sentence = corpus.tuples[ctx.tuple_id].sentences[PIVOT]
            pooled.append(translate_with_focus(backend, sentence, ctx.focus_span, t))
        winner = vote(pooled)
        if winner is not None:
            seen = sum(len(c) for c in pooled)
            return TranslatedSense(sense.synset, sense.lemma, winner, len(chosen), seen, False)

    bare = tokenize(sense.lemma)
    target = None
    fallback_cands: list[TranslationCandidate] = []
    if bare.tokens:
        fallback_cands = translate_with_focus(backend, bare, (0, len(bare.tokens)), t)
        if fallback_cands:
            target = fallback_cands[0].target_phrase
    seen = sum(len(c) for c in pooled) + len(fallback_cands)
    return TranslatedSense(sense.synset, sense.lemma, target, len(pooled), seen, True)


@dataclass
class TranslationRun:
    lexicon: MultilingualWordnet
    senses: list[TranslatedSense]
    language: str

    @property
    def report(self) -> dict:
        untranslated = [s for s in self.senses if not s.translated]
        return {
            "translated": sum(1 for s in self.senses if s.translated),
            "fallback": sum(1 for s in self.senses if s.translated and s.fallback),
            "untranslated": len(untranslated),
            "untranslated_ids": [str(s.synset) for s in untranslated],
        }

    def write_report(self, fp: IO[str]) -> None:
        json.dump(self.report, fp, indent=2, sort_keys=True)
        fp.write("\n")


def translate_wordnet(
    wn: MultilingualWordnet,
    corpus: ParallelCorpus,
    index: PhraseIndex,
    backend: TranslationBackend,
    language: str,
    cfg: DisambigConfig = DisambigConfig(),
    t: int = 5,
    jobs: int = 1,
    disambiguate: bool = True,
    witness_languages: Optional[Iterable[str]] = None,
) -> TranslationRun:
    """Translate every English sense of `wn` into `language`.

    Results are independent of `jobs`: senses are processed in (synset id,
    lemma order) and each draws its tie-breaking seed from its own identity.
    """
    check_language(language)
    if getattr(backend, "target_language", language) != language:
        raise ValueError(f"backend translates into {backend.target_language!r}, not {language!r}")
    senses = list(wn.senses(PIVOT))
    witnesses = None if witness_languages is None else tuple(witness_languages)

    def work(sense: Sense) -> TranslatedSense:
        return translate_sense(wn, corpus, index, backend, sense, cfg, t, disambiguate, witnesses)

    if jobs > 1 and backend.thread_safe and len(senses) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, senses))
    else:
        results = [work(s) for s in senses]

    synsets: dict[SynsetId, Synset] = {}
    for res in results:
        if not res.translated:
            continue
        ss = synsets.setdefault(res.synset, Synset(res.synset))
        lemmas = ss.lemmas.setdefault(language, [])
        if res.target_lemma not in lemmas:
            lemmas.append(res.target_lemma)
    run = TranslationRun(MultilingualWordnet(synsets), results, language)
    rep = run.report
    log.info("translated %d senses into %s (%d by fallback, %d untranslated)",
             rep["translated"], language, rep["fallback"], rep["untranslated"])
    return run
