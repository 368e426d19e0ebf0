"""Entities to be aligned, gold links and word embedding tables."""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import IO, Optional

import numpy as np

from ..lexicon import HYPERNYM, HYPONYM, transitive_closure


@dataclass(frozen=True)
class Entity:
    id: str
    labels: Mapping[str, Sequence[str]] = field(default_factory=dict)
    descriptions: Mapping[str, Sequence[str]] = field(default_factory=dict)
    relations: Sequence[tuple[str, str]] = ()
    entity_type: Optional[str] = None

    def labels_in(self, lang: str) -> list[str]:
        return list(self.labels.get(lang, ()))

    def descriptions_in(self, lang: str) -> list[str]:
        return list(self.descriptions.get(lang, ()))


def entity_from_json(obj: dict) -> Entity:
    if "id" not in obj:
        raise ValueError("entity object without an 'id'")
    rels = []
    for rel in obj.get("relations", []):
        if len(rel) != 2:
            raise ValueError(f"entity {obj['id']!r}: relation must be [kind, id], got {rel!r}")
        rels.append((str(rel[0]), str(rel[1])))
    return Entity(
        id=str(obj["id"]),
        labels={k: list(v) for k, v in obj.get("labels", {}).items()},
        descriptions={k: list(v) for k, v in obj.get("descriptions", {}).items()},
        relations=tuple(rels),
        entity_type=obj.get("type"),
    )


def entity_to_json(e: Entity) -> dict:
    return {
        "id": e.id,
        "labels": {k: list(v) for k, v in e.labels.items()},
        "descriptions": {k: list(v) for k, v in e.descriptions.items()},
        "relations": [list(r) for r in e.relations],
        "type": e.entity_type,
    }


def parse_entities(stream: Iterable[str]) -> list[Entity]:
    """Entities from JSON-lines; ids must be unique."""
    out = []
    seen = set()
    for lineno, line in enumerate(stream, 1):
        if not line.strip():
            continue
        try:
            e = entity_from_json(json.loads(line))
        except (json.JSONDecodeError, ValueError, TypeError) as exc:
            raise ValueError(f"entity line {lineno}: {exc}") from None
        if e.id in seen:
            raise ValueError(f"entity line {lineno}: duplicate id {e.id!r}")
        seen.add(e.id)
        out.append(e)
    return out


def load_entities(path) -> list[Entity]:
    with open(path, encoding="utf-8") as fh:
        return parse_entities(fh)


def write_entities(entities: Iterable[Entity], fp: IO[str]) -> None:
    for e in entities:
        fp.write(json.dumps(entity_to_json(e), ensure_ascii=False, sort_keys=True) + "\n")


def parse_gold_links(stream: Iterable[str]) -> set[tuple[str, str]]:
    links = set()
    for lineno, line in enumerate(stream, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise ValueError(f"gold link line {lineno}: expected left_id<TAB>right_id")
        links.add((cols[0], cols[1]))
    return links


def load_gold_links(path) -> set[tuple[str, str]]:
    with open(path, encoding="utf-8") as fh:
        return parse_gold_links(fh)


class Dataset:
    """An ordered entity list with id lookup and cached hypernym closures.

    A hyponym edge counts as the reverse hypernym edge.  Relation targets
    that are not entities of the dataset (e.g. category names) are kept as
    leaf ids and labelled by their id.
    """

    def __init__(self, entities: Iterable[Entity]):
        self.entities = list(entities)
        self.by_id: dict[str, Entity] = {}
        for e in self.entities:
            if e.id in self.by_id:
                raise ValueError(f"duplicate entity id {e.id!r}")
            self.by_id[e.id] = e
        self._up: dict[str, list[str]] = {}
        for e in self.entities:
            for kind, target in e.relations:
                if kind == HYPERNYM:
                    self._up.setdefault(e.id, []).append(target)
                elif kind == HYPONYM:
                    self._up.setdefault(target, []).append(e.id)
        self._closures: dict[str, frozenset[str]] = {}

    def __len__(self) -> int:
        return len(self.entities)

    def __iter__(self):
        return iter(self.entities)

    def __getitem__(self, eid: str) -> Entity:
        return self.by_id[eid]

    @property
    def ids(self) -> list[str]:
        return [e.id for e in self.entities]

    def broader(self, eid: str) -> frozenset[str]:
        got = self._closures.get(eid)
        if got is None:
            got = self._closures[eid] = frozenset(transitive_closure(eid, lambda x: self._up.get(x, ())))
        return got

    def labels_of(self, eid: str, lang: str) -> list[str]:
        e = self.by_id.get(eid)
        if e is None:
            return [eid]
        return e.labels_in(lang)

    def superterm_labels(self, eid: str, lang: str) -> list[str]:
        """Labels of every broader concept, in sorted id order."""
        out = []
        for up in sorted(self.broader(eid)):
            out.extend(self.labels_of(up, lang))
        return out


class EmbeddingTable:
    """Word vectors of one fixed dimension."""

    def __init__(self, vectors: Mapping[str, Sequence[float]]):
        words = list(vectors)
        dims = {len(vectors[w]) for w in words}
        if len(dims) > 1:
            raise ValueError(f"embedding vectors have mixed dimensions {sorted(dims)}")
        self.dim = dims.pop() if dims else 0
        self._row = {w: i for i, w in enumerate(words)}
        self._matrix = np.asarray([vectors[w] for w in words], dtype=np.float64).reshape(len(words), self.dim)
        norms = np.linalg.norm(self._matrix, axis=1, keepdims=True)
        with np.errstate(invalid="ignore", divide="ignore"):
            self._unit = np.where(norms > 0, self._matrix / norms, 0.0)

    def __contains__(self, word: str) -> bool:
        return word in self._row

    def __len__(self) -> int:
        return len(self._row)

    def vector(self, word: str) -> Optional[np.ndarray]:
        i = self._row.get(word)
        return None if i is None else self._matrix[i]

    def unit(self, word: str) -> Optional[np.ndarray]:
        i = self._row.get(word)
        return None if i is None else self._unit[i]


def parse_embeddings(stream: Iterable[str]) -> EmbeddingTable:
    """Text layout ``word v1 ... vd``; the first occurrence of a word wins.

    A leading word2vec ``count dim`` header line is skipped.
    """
    vectors: dict[str, list[float]] = {}
    dim = None
    for lineno, line in enumerate(stream, 1):
        parts = line.rstrip("\r\n").split(" ")
        if not parts or not parts[0]:
            continue
        word, values = parts[0], parts[1:]
        if lineno == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
            continue
        try:
            vec = [float(v) for v in values]
        except ValueError:
            raise ValueError(f"embedding line {lineno}: non-numeric component") from None
        if dim is None:
            dim = len(vec)
        elif len(vec) != dim:
            raise ValueError(f"embedding line {lineno}: dimension {len(vec)} != {dim}")
        vectors.setdefault(word, vec)
    return EmbeddingTable(vectors)


def load_embeddings(path) -> EmbeddingTable:
    with open(path, encoding="utf-8") as fh:
        return parse_embeddings(fh)
