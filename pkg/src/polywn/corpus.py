"""Line-aligned parallel corpora and an inverted n-gram index over them."""

from __future__ import annotations

import json
import os
import unicodedata
import zlib
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import BinaryIO

from .lexicon import check_language

PIVOT = "en"
DEFAULT_MAX_N = 4

INDEX_MAGIC = b"POLYWN-PHRASE-INDEX"
INDEX_VERSION = 1


class CorpusError(ValueError):
    pass


class PhraseTooLongError(ValueError):
    pass


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _strip_punct(token: str) -> str:
    start, end = 0, len(token)
    while start < end and _is_punct(token[start]):
        start += 1
    while end > start and _is_punct(token[end - 1]):
        end -= 1
    return token[start:end]


@dataclass(frozen=True)
class TokenizedSentence:
    tokens: tuple[str, ...]
    raw: str = ""

    def __len__(self) -> int:
        return len(self.tokens)


def tokenize(text: str) -> TokenizedSentence:
    """Lowercase, split on whitespace and trim punctuation from both token ends.

    >>> tokenize("The Bank!").tokens
    ('the', 'bank')
    """
    tokens = []
    for piece in text.lower().split():
        piece = _strip_punct(piece)
        if piece:
            tokens.append(piece)
    return TokenizedSentence(tuple(tokens), text)


def find_occurrences(tokens: Sequence[str], phrase: Sequence[str]) -> list[int]:
    """Start offsets of every contiguous (possibly overlapping) match of `phrase`."""
    n = len(phrase)
    if n == 0 or n > len(tokens):
        return []
    phrase = tuple(phrase)
    first = phrase[0]
    return [i for i in range(len(tokens) - n + 1) if tokens[i] == first and tuple(tokens[i:i + n]) == phrase]


@dataclass(frozen=True)
class ParallelTuple:
    id: int
    sentences: Mapping[str, TokenizedSentence]

    def __getitem__(self, lang: str) -> TokenizedSentence:
        return self.sentences[lang]


@dataclass(frozen=True)
class ParallelCorpus:
    languages: tuple[str, ...]
    tuples: tuple[ParallelTuple, ...]

    def __len__(self) -> int:
        return len(self.tuples)

    def __getitem__(self, i: int) -> ParallelTuple:
        return self.tuples[i]

    @property
    def pivot(self) -> str:
        return self.languages[0]


def _order_languages(langs: Iterable[str]) -> tuple[str, ...]:
    langs = sorted(set(langs))
    if PIVOT not in langs:
        raise CorpusError(f"a parallel corpus needs the pivot language {PIVOT!r}")
    if len(langs) < 2:
        raise CorpusError("a parallel corpus needs at least two languages")
    langs.remove(PIVOT)
    return (PIVOT, *langs)


def load_parallel(files: Mapping[str, Iterable[str]]) -> ParallelCorpus:
    """Build a corpus with tuple ``i`` taken from line ``i`` of every stream.

    The pivot language ``en`` comes first; the others follow sorted.
    """
    for lang in files:
        check_language(lang)
    languages = _order_languages(files)
    lines = {lang: [line.rstrip("\r\n") for line in files[lang]] for lang in languages}
    counts = {lang: len(v) for lang, v in lines.items()}
    if len(set(counts.values())) > 1:
        detail = ", ".join(f"{lang}={n}" for lang, n in counts.items())
        raise CorpusError(f"line counts differ across languages: {detail}")
    n = counts[PIVOT]
    tuples = tuple(
        ParallelTuple(i, {lang: tokenize(lines[lang][i]) for lang in languages})
        for i in range(n)
    )
    return ParallelCorpus(languages, tuples)


def load_parallel_dir(directory, languages: Sequence[str]) -> ParallelCorpus:
    """Read ``corpus.<lang>.txt`` for each language from `directory`."""
    files = {}
    for lang in languages:
        path = os.path.join(directory, f"corpus.{lang}.txt")
        with open(path, encoding="utf-8", newline="\n") as fh:
            files[lang] = fh.read().split("\n")
        if files[lang] and files[lang][-1] == "":
            files[lang].pop()
    return load_parallel(files)


class PhraseIndex:
    """Inverted index from (language, token n-gram) to sorted tuple ids."""

    def __init__(self, max_n: int, n_tuples: int, postings: dict[str, dict[tuple[str, ...], tuple[int, ...]]]):
        self.max_n = max_n
        self.n_tuples = n_tuples
        self.postings = postings

    def languages(self) -> list[str]:
        return sorted(self.postings)

    def lookup(self, lang: str, tokens: Sequence[str]) -> tuple[int, ...]:
        tokens = tuple(tokens)
        if not tokens:
            raise ValueError("cannot look up an empty phrase")
        if len(tokens) > self.max_n:
            raise PhraseTooLongError(
                f"phrase has {len(tokens)} tokens but the index holds n-grams up to "
                f"{self.max_n}; rebuild the index with max_n >= {len(tokens)}"
            )
        return self.postings.get(lang, {}).get(tokens, ())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhraseIndex):
            return NotImplemented
        return (self.max_n, self.n_tuples, self.postings) == (other.max_n, other.n_tuples, other.postings)


def build_index(corpus: ParallelCorpus, max_n: int = DEFAULT_MAX_N) -> PhraseIndex:
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    postings: dict[str, dict[tuple[str, ...], list[int]]] = {lang: {} for lang in corpus.languages}
    for tup in corpus.tuples:
        for lang in corpus.languages:
            toks = tup.sentences[lang].tokens
            table = postings[lang]
            seen = set()
            for n in range(1, max_n + 1):
                for i in range(len(toks) - n + 1):
                    gram = toks[i:i + n]
                    if gram not in seen:
                        seen.add(gram)
                        table.setdefault(gram, []).append(tup.id)
    # tuples are visited in id order, so posting lists are already sorted
    frozen = {lang: {g: tuple(ids) for g, ids in table.items()} for lang, table in postings.items()}
    return PhraseIndex(max_n, len(corpus), frozen)


def find_phrase(index: PhraseIndex, lang: str, phrase: str) -> frozenset[int]:
    """Ids of tuples whose `lang` sentence contains `phrase` as contiguous tokens."""
    return frozenset(index.lookup(lang, tokenize(phrase).tokens))


def save_index(index: PhraseIndex, fp: BinaryIO) -> None:
    """Serialize `index`; identical indexes give identical bytes."""
    payload = {
        "max_n": index.max_n,
        "n_tuples": index.n_tuples,
        "postings": {
            lang: [[" ".join(g), list(ids)] for g, ids in sorted(index.postings[lang].items())]
            for lang in sorted(index.postings)
        },
    }
    body = json.dumps(payload, ensure_ascii=False, separators=(",", ":"), sort_keys=True).encode("utf-8")
    fp.write(INDEX_MAGIC + b"\t" + str(INDEX_VERSION).encode() + b"\n")
    fp.write(zlib.compress(body, 9))


def load_index(fp: BinaryIO) -> PhraseIndex:
    header = fp.readline().rstrip(b"\n")
    magic, _, version = header.partition(b"\t")
    if magic != INDEX_MAGIC:
        raise ValueError("not a phrase index file")
    if version != str(INDEX_VERSION).encode():
        raise ValueError(f"unsupported phrase index version {version.decode(errors='replace')}")
    payload = json.loads(zlib.decompress(fp.read()).decode("utf-8"))
    postings = {
        lang: {tuple(g.split(" ")): tuple(ids) for g, ids in rows}
        for lang, rows in payload["postings"].items()
    }
    return PhraseIndex(payload["max_n"], payload["n_tuples"], postings)
