"""Greedy constrained matching, link-set evaluation and k-fold cross-validation."""

from __future__ import annotations

import json
import logging
import math
import random
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Optional, Union

import numpy as np

from .classifier import SimilarityModel, fit_logistic
from .entities import Dataset, EmbeddingTable, Entity
from .features import NEGATION_WORDS, feature_schema, pair_features

log = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.5


@dataclass
class Matching:
    links: list[tuple[str, str, float]] = field(default_factory=list)
    score: float = 0.0

    def pairs(self) -> set[tuple[str, str]]:
        return {(a, b) for a, b, _ in self.links}

    def __len__(self) -> int:
        return len(self.links)


class BipartiteConstraint:
    """Admits a link only if neither endpoint is linked yet; scores by summed similarity."""

    def __init__(self):
        self.left: set[str] = set()
        self.right: set[str] = set()

    def can_add(self, a: str, b: str) -> bool:
        return a not in self.left and b not in self.right

    def add(self, a: str, b: str) -> None:
        self.left.add(a)
        self.right.add(b)


def _ident(x) -> str:
    return x.id if isinstance(x, Entity) else str(x)


SimSource = Union[Callable[[str, str], float], np.ndarray, Sequence[Sequence[float]]]


def greedy_match(left: Sequence, right: Sequence, sim: SimSource, threshold: float = DEFAULT_THRESHOLD) -> Matching:
    """Visit pairs by descending similarity and keep each one the bipartite constraint admits.

    `sim` is either a ``len(left) x len(right)`` matrix or a callable on
    (left id, right id).  Pairs below `threshold` are never considered;
    equal similarities are visited in (left id, right id) order.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    lids = [_ident(x) for x in left]
    rids = [_ident(x) for x in right]
    if callable(sim):
        grid = [[float(sim(a, b)) for b in rids] for a in lids]
    else:
        grid = np.asarray(sim, dtype=np.float64).reshape(len(lids), len(rids)).tolist()
    cands = [
        (s, a, b)
        for a, row in zip(lids, grid)
        for b, s in zip(rids, row)
        if s >= threshold
    ]
    cands.sort(key=lambda c: (-c[0], c[1], c[2]))
    constraint = BipartiteConstraint()
    out = Matching()
    for s, a, b in cands:
        if constraint.can_add(a, b):
            constraint.add(a, b)
            out.links.append((a, b, s))
            out.score += s
    return out


def evaluate_matching(predicted: Union[Matching, Iterable[tuple[str, str]]], gold: Iterable[tuple[str, str]]) -> dict[str, float]:
    """Set-based precision, recall and F1 over link pairs.

    Undefined ratios are 0, except that an empty prediction of an empty
    gold set scores 1 throughout.
    """
    pred = predicted.pairs() if isinstance(predicted, Matching) else {(a, b) for a, b, *_ in predicted}
    gold = set(gold)
    if not pred and not gold:
        return {"precision": 1.0, "recall": 1.0, "f1": 1.0}
    hit = len(pred & gold)
    p = hit / len(pred) if pred else 0.0
    r = hit / len(gold) if gold else 0.0
    f = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return {"precision": p, "recall": r, "f1": f}


def write_alignment(matching: Matching, fp: IO[str]) -> None:
    for a, b, s in matching.links:
        fp.write(f"{a}\t{b}\t{s:.6f}\n")


def feature_tensor(
    left: Dataset,
    right: Dataset,
    setting: int,
    table: Optional[EmbeddingTable] = None,
    alpha: float = 1.0,
    lang: str = "en",
    negation_words=NEGATION_WORDS,
    jobs: int = 1,
) -> np.ndarray:
    """Array of shape (len(left), len(right), n_features) in schema order."""
    schema = feature_schema(setting)

    def row(e1: Entity) -> list[list[float]]:
        out = []
        for e2 in right:
            f = pair_features(e1, e2, setting, left, right, table, alpha, lang, negation_words)
            out.append([f[n] for n in schema])
        return out

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(row, left.entities))
    else:
        rows = [row(e) for e in left.entities]
    return np.asarray(rows, dtype=np.float64).reshape(len(left), len(right), len(schema))


def similarity_matrix(model: SimilarityModel, tensor: np.ndarray) -> np.ndarray:
    n, m, d = tensor.shape
    return model.predict_matrix(tensor.reshape(n * m, d)).reshape(n, m)


def align(
    left: Dataset,
    right: Dataset,
    model: SimilarityModel,
    setting: int,
    threshold: float = DEFAULT_THRESHOLD,
    table: Optional[EmbeddingTable] = None,
    alpha: float = 1.0,
    lang: str = "en",
    jobs: int = 1,
) -> Matching:
    """Score every pair with `model` and match greedily."""
    if tuple(model.feature_names) != feature_schema(setting):
        raise ValueError(f"model features do not match setting {setting}")
    sims = similarity_matrix(model, feature_tensor(left, right, setting, table, alpha, lang, jobs=jobs))
    return greedy_match(left.ids, right.ids, sims, threshold)


def train_on_gold(
    left: Dataset,
    right: Dataset,
    gold: Iterable[tuple[str, str]],
    setting: int,
    table: Optional[EmbeddingTable] = None,
    alpha: float = 1.0,
    lang: str = "en",
    jobs: int = 1,
) -> SimilarityModel:
    """Train on all left x right pairs, labelled positive iff linked in `gold`."""
    tensor = feature_tensor(left, right, setting, table, alpha, lang, jobs=jobs)
    labels = _label_grid(left, right, set(gold))
    n, m, d = tensor.shape
    return fit_logistic(tensor.reshape(n * m, d), labels.reshape(-1), feature_schema(setting))


def _label_grid(left: Dataset, right: Dataset, gold: set[tuple[str, str]]) -> np.ndarray:
    rpos = {rid: j for j, rid in enumerate(right.ids)}
    y = np.zeros((len(left), len(right)))
    for i, lid in enumerate(left.ids):
        for a, b in gold:
            if a == lid and b in rpos:
                y[i, rpos[b]] = 1.0
    return y


@dataclass
class CVReport:
    setting: int
    k: int
    seed: int
    precision: float
    recall: float
    f1: float
    folds: list[dict[str, float]]
    refolds: int = 0

    def to_json(self) -> dict:
        return {
            "setting": self.setting,
            "k": self.k,
            "seed": self.seed,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "refolds": self.refolds,
            "folds": self.folds,
        }

    def write(self, fp: IO[str]) -> None:
        json.dump(self.to_json(), fp, indent=2, sort_keys=True)
        fp.write("\n")


def _assign_folds(ids: Sequence[str], k: int, seed: int) -> list[list[int]]:
    order = list(range(len(ids)))
    order.sort(key=lambda i: ids[i])
    random.Random(seed).shuffle(order)
    return [sorted(order[f::k]) for f in range(k)]


def kfold_evaluate(
    left: Dataset,
    right: Dataset,
    gold: Iterable[tuple[str, str]],
    setting: int,
    k: int = 10,
    seed: int = 0,
    threshold: float = DEFAULT_THRESHOLD,
    table: Optional[EmbeddingTable] = None,
    alpha: float = 1.0,
    lang: str = "en",
    jobs: int = 1,
    max_refolds: int = 100,
) -> CVReport:
    """k-fold cross-validation of the alignment over the left entities.

    Left entities are split into `k` seeded folds.  For each fold a model is
    trained on the pairs of the other folds (against every right entity),
    the held-out entities are matched against every right entity, and the
    matching is scored against the gold links of those entities.  P, R and
    F are unweighted means over folds.  If a training split lacks one of the
    classes, folds are redrawn with the next seed; the report counts redraws.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if len(left) < k:
        raise ValueError(f"cannot split {len(left)} left entities into {k} folds")
    gold = set(gold)
    tensor = feature_tensor(left, right, setting, table, alpha, lang, jobs=jobs)
    labels = _label_grid(left, right, gold)
    schema = feature_schema(setting)
    n, m, d = tensor.shape
    lids, rids = left.ids, right.ids

    refolds = 0
    while True:
        folds = _assign_folds(lids, k, seed + refolds)
        usable = True
        for held in folds:
            train_rows = sorted(set(range(n)) - set(held))
            y = labels[train_rows].reshape(-1)
            if y.min() == y.max():
                usable = False
                break
        if usable:
            break
        refolds += 1
        if refolds > max_refolds:
            raise ValueError("could not find folds whose training splits contain both classes")
        log.info("refolding: a training split had a single class")

    results = []
    for held in folds:
        train_rows = sorted(set(range(n)) - set(held))
        model = fit_logistic(tensor[train_rows].reshape(-1, d), labels[train_rows].reshape(-1), schema)
        sims = model.predict_matrix(tensor[held].reshape(-1, d)).reshape(len(held), m)
        held_ids = [lids[i] for i in held]
        matching = greedy_match(held_ids, rids, sims, threshold)
        held_set = set(held_ids)
        fold_gold = {(a, b) for a, b in gold if a in held_set}
        results.append(evaluate_matching(matching, fold_gold))

    def mean(key: str) -> float:
        return math.fsum(r[key] for r in results) / len(results)

    return CVReport(setting, k, seed, mean("precision"), mean("recall"), mean("f1"), results, refolds)
