"""Multilingual wordnet data model, TSV ingestion and graph queries.

Three line-oriented UTF-8 files describe a wordnet::

    lemmas       synset_id <TAB> lang <TAB> lemma
    definitions  synset_id <TAB> lang <TAB> definition
    relations    synset_id <TAB> relation <TAB> synset_id

Lines starting with ``#`` and blank lines are ignored.  Synset ids have the
form ``NNNNNNNN-p`` with ``p`` one of ``n``, ``v``, ``a``, ``r``.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Hashable, Iterable, Iterator
from dataclasses import dataclass, field
from typing import IO, Optional, TypeVar

HYPERNYM = "hypernym"
HYPONYM = "hyponym"

POS_TAGS = frozenset("nvar")

_LANG_RE = re.compile(r"^[a-z]{2,3}$")
_SYNSET_RE = re.compile(r"^(\d{8})-([nvar])$")

T = TypeVar("T", bound=Hashable)


class WordnetFormatError(ValueError):
    """Raised for a malformed row in a wordnet TSV stream."""

    def __init__(self, message: str, lineno: Optional[int] = None, source: str = ""):
        self.lineno = lineno
        self.source = source
        where = f"{source} line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)


def check_language(code: str) -> str:
    """Return `code` if it is a lowercase ISO-639-1/3 code, else raise ValueError."""
    if not isinstance(code, str) or not _LANG_RE.match(code):
        raise ValueError(f"invalid language code: {code!r}")
    return code


@dataclass(frozen=True, order=True)
class SynsetId:
    offset: str
    pos: str

    def __post_init__(self):
        if len(self.offset) != 8 or not self.offset.isascii() or not self.offset.isdigit():
            raise ValueError(f"synset offset must be 8 digits: {self.offset!r}")
        if self.pos not in POS_TAGS:
            raise ValueError(f"invalid part of speech: {self.pos!r}")

    @classmethod
    def parse(cls, text: str) -> "SynsetId":
        m = _SYNSET_RE.match(text)
        if m is None:
            raise ValueError(f"invalid synset id: {text!r}")
        return cls(m.group(1), m.group(2))

    def __str__(self) -> str:
        return f"{self.offset}-{self.pos}"


@dataclass(frozen=True, order=True)
class Sense:
    """A (synset, language, lemma) triple."""

    synset: SynsetId
    language: str
    lemma: str


@dataclass
class Synset:
    id: SynsetId
    lemmas: dict[str, list[str]] = field(default_factory=dict)
    definitions: dict[str, str] = field(default_factory=dict)
    relations: list[tuple[str, SynsetId]] = field(default_factory=list)


def transitive_closure(start: T, successors: Callable[[T], Iterable[T]]) -> set[T]:
    """Nodes reachable from `start` (excluded) through `successors`.

    Safe on cyclic graphs; `start` is left out even when a cycle leads back.
    """
    seen: set[T] = set()
    stack = list(successors(start))
    while stack:
        node = stack.pop()
        if node in seen or node == start:
            continue
        seen.add(node)
        stack.extend(successors(node))
    return seen


class MultilingualWordnet:
    """Synsets with per-language lemma lists and a lemma index.

    Treat instances as immutable once built; all queries are read-only.
    """

    def __init__(self, synsets: Optional[dict[SynsetId, Synset]] = None):
        self.synsets: dict[SynsetId, Synset] = dict(synsets or {})
        self._index: dict[str, dict[str, list[SynsetId]]] = {}
        self._hypernyms: dict[SynsetId, list[SynsetId]] = {}
        self._reindex()

    def _reindex(self) -> None:
        index: dict[str, dict[str, list[SynsetId]]] = {}
        hypernyms: dict[SynsetId, list[SynsetId]] = {}
        for sid in sorted(self.synsets):
            ss = self.synsets[sid]
            for lang, lemmas in ss.lemmas.items():
                by_lemma = index.setdefault(lang, {})
                for lemma in lemmas:
                    by_lemma.setdefault(lemma, []).append(sid)
            for kind, target in ss.relations:
                # "x hyponym y" also states that x is a hypernym of y
                if kind == HYPERNYM:
                    hypernyms.setdefault(sid, []).append(target)
                elif kind == HYPONYM:
                    hypernyms.setdefault(target, []).append(sid)
        self._index = index
        self._hypernyms = hypernyms

    def __len__(self) -> int:
        return len(self.synsets)

    def __contains__(self, sid: object) -> bool:
        return sid in self.synsets

    def languages(self) -> list[str]:
        return sorted(lang for lang, idx in self._index.items() if idx)

    def lemmas_of(self, sid: SynsetId, lang: str) -> list[str]:
        ss = self.synsets.get(sid)
        if ss is None:
            return []
        return list(ss.lemmas.get(lang, ()))

    def synsets_for(self, lemma: str, lang: str) -> list[SynsetId]:
        """Synsets having `lemma` in `lang`, in id order."""
        return list(self._index.get(lang, {}).get(lemma, ()))

    def senses(self, lang: str) -> Iterator[Sense]:
        """All senses for `lang`, ordered by synset id then lemma list order."""
        for sid in sorted(self.synsets):
            for lemma in self.synsets[sid].lemmas.get(lang, ()):
                yield Sense(sid, lang, lemma)

    def hypernyms(self, sid: SynsetId) -> list[SynsetId]:
        return list(self._hypernyms.get(sid, ()))

    def hypernym_closure(self, sid: SynsetId) -> set[SynsetId]:
        return transitive_closure(sid, lambda s: self._hypernyms.get(s, ()))

    def stats(self, lang: str) -> dict[str, int]:
        """Counts of synsets, distinct words and (synset, lemma) senses in `lang`."""
        synsets = 0
        senses = 0
        for ss in self.synsets.values():
            lemmas = ss.lemmas.get(lang)
            if lemmas:
                synsets += 1
                senses += len(lemmas)
        words = len(self._index.get(lang, {}))
        return {"synsets": synsets, "words": words, "senses": senses}

    def restrict(self, languages: Iterable[str]) -> "MultilingualWordnet":
        """Copy keeping only lemmas and definitions of `languages`."""
        keep = set(languages)
        out = {}
        for sid, ss in self.synsets.items():
            out[sid] = Synset(
                sid,
                {k: list(v) for k, v in ss.lemmas.items() if k in keep},
                {k: v for k, v in ss.definitions.items() if k in keep},
                list(ss.relations),
            )
        return MultilingualWordnet(out)


def _rows(stream: Iterable[str], source: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, line in enumerate(stream, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise WordnetFormatError(f"expected 3 tab-separated columns, got {len(cols)}", lineno, source)
        yield lineno, cols


def _synset_id(text: str, lineno: int, source: str) -> SynsetId:
    try:
        return SynsetId.parse(text.strip())
    except ValueError as exc:
        raise WordnetFormatError(str(exc), lineno, source) from None


def _language(text: str, lineno: int, source: str) -> str:
    try:
        return check_language(text.strip())
    except ValueError as exc:
        raise WordnetFormatError(str(exc), lineno, source) from None


def parse_wordnet_tsv(
    lemma_stream: Iterable[str],
    definitions_stream: Optional[Iterable[str]] = None,
    relations_stream: Optional[Iterable[str]] = None,
    strict: bool = False,
) -> MultilingualWordnet:
    """Load a wordnet from lemma, definition and relation TSV streams.

    Duplicate lemma rows collapse onto the first occurrence.  Only the first
    definition per (synset, language) is kept.  With ``strict=True`` every
    relation target must be a known synset.
    """
    synsets: dict[SynsetId, Synset] = {}

    def get(sid: SynsetId) -> Synset:
        ss = synsets.get(sid)
        if ss is None:
            ss = synsets[sid] = Synset(sid)
        return ss

    for lineno, (sid_text, lang_text, lemma) in _rows(lemma_stream, "lemmas"):
        sid = _synset_id(sid_text, lineno, "lemmas")
        lang = _language(lang_text, lineno, "lemmas")
        lemma = lemma.strip()
        if not lemma:
            raise WordnetFormatError("empty lemma", lineno, "lemmas")
        lemmas = get(sid).lemmas.setdefault(lang, [])
        if lemma not in lemmas:
            lemmas.append(lemma)

    if definitions_stream is not None:
        for lineno, (sid_text, lang_text, text) in _rows(definitions_stream, "definitions"):
            sid = _synset_id(sid_text, lineno, "definitions")
            lang = _language(lang_text, lineno, "definitions")
            get(sid).definitions.setdefault(lang, text.strip())

    targets = []
    if relations_stream is not None:
        for lineno, (src_text, kind, dst_text) in _rows(relations_stream, "relations"):
            src = _synset_id(src_text, lineno, "relations")
            dst = _synset_id(dst_text, lineno, "relations")
            kind = kind.strip()
            if not kind:
                raise WordnetFormatError("empty relation tag", lineno, "relations")
            rel = (kind, dst)
            ss = get(src)
            if rel not in ss.relations:
                ss.relations.append(rel)
            targets.append((lineno, dst))

    if strict:
        for lineno, dst in targets:
            if dst not in synsets:
                raise WordnetFormatError(f"unresolved relation target {dst}", lineno, "relations")

    return MultilingualWordnet(synsets)


def write_wordnet_tsv(
    wn: MultilingualWordnet,
    lemma_stream: IO[str],
    definitions_stream: Optional[IO[str]] = None,
    relations_stream: Optional[IO[str]] = None,
    languages: Optional[Iterable[str]] = None,
) -> None:
    """Write `wn` in the TSV layout read by :func:`parse_wordnet_tsv`.

    Output is sorted by synset id then language, so it is byte-stable.
    """
    keep = None if languages is None else set(languages)
    for sid in sorted(wn.synsets):
        ss = wn.synsets[sid]
        for lang in sorted(ss.lemmas):
            if keep is not None and lang not in keep:
                continue
            for lemma in ss.lemmas[lang]:
                lemma_stream.write(f"{sid}\t{lang}\t{lemma}\n")
        if definitions_stream is not None:
            for lang in sorted(ss.definitions):
                if keep is None or lang in keep:
                    definitions_stream.write(f"{sid}\t{lang}\t{ss.definitions[lang]}\n")
        if relations_stream is not None:
            for kind, dst in ss.relations:
                relations_stream.write(f"{sid}\t{kind}\t{dst}\n")


def load_wordnet(lemmas_path, definitions_path=None, relations_path=None, strict=False) -> MultilingualWordnet:
    """Convenience wrapper around :func:`parse_wordnet_tsv` for file paths."""
    files = []
    try:
        streams = []
        for path in (lemmas_path, definitions_path, relations_path):
            if path is None:
                streams.append(None)
            else:
                fh = open(path, encoding="utf-8", newline="\n")
                files.append(fh)
                streams.append(fh)
        return parse_wordnet_tsv(*streams, strict=strict)
    finally:
        for fh in files:
            fh.close()
