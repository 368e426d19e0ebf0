"""Translation metrics for short lexicon entries and the per-language evaluation.

BLEU-1 is scored against every gold lemma of a synset; METEOR (exact-match
module only) and chrF against the first-listed gold lemma, which stands in
for the synset's most frequent member.  Sentence-level scores are averaged
over the evaluated senses.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import asdict, dataclass
from typing import IO

from .lexicon import MultilingualWordnet

METEOR_ALPHA = 0.9
METEOR_BETA = 3.0
METEOR_GAMMA = 0.5

CHRF_ORDER = 6
CHRF_BETA = 3.0


def bleu1(candidate: Sequence[str], references: Sequence[Sequence[str]], brevity_penalty: bool = True) -> float:
    """Unigram BLEU with clipped counts over multiple references, on a 0-100 scale."""
    if not references:
        raise ValueError("bleu1 needs at least one reference")
    c = len(candidate)
    if c == 0:
        return 0.0
    max_ref: Counter = Counter()
    for ref in references:
        for tok, n in Counter(ref).items():
            if n > max_ref[tok]:
                max_ref[tok] = n
    clipped = sum(min(n, max_ref[tok]) for tok, n in Counter(candidate).items())
    precision = clipped / c
    bp = 1.0
    if brevity_penalty:
        r = min((len(ref) for ref in references), key=lambda n: (abs(n - c), n))
        if c < r:
            bp = math.exp(1.0 - r / c)
    return 100.0 * precision * bp


def _align(candidate: Sequence[str], reference: Sequence[str]) -> tuple[int, int]:
    """(matches, chunks) of the in-order exact alignment with most matches, then fewest chunks."""
    n, m = len(candidate), len(reference)
    # best[i][j]: best (matches, -chunks) over prefixes; ending[i][j]: same, with (i-1, j-1) aligned
    worst = (-1, 0)
    best = [[(0, 0)] * (m + 1) for _ in range(n + 1)]
    ending = [[worst] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            if candidate[i - 1] == reference[j - 1]:
                extend = ending[i - 1][j - 1]
                cont = (extend[0] + 1, extend[1]) if extend != worst else worst
                prev = best[i - 1][j - 1]
                fresh = (prev[0] + 1, prev[1] - 1)
                ending[i][j] = max(cont, fresh)
            best[i][j] = max(ending[i][j], best[i - 1][j], best[i][j - 1])
    matches, neg_chunks = best[n][m]
    return matches, -neg_chunks


def meteor_lite(
    candidate: Sequence[str],
    reference: Sequence[str],
    alpha: float = METEOR_ALPHA,
    beta: float = METEOR_BETA,
    gamma: float = METEOR_GAMMA,
) -> float:
    """METEOR with exact matching only, on a 0-100 scale."""
    matches, chunks = _align(candidate, reference)
    if matches == 0:
        return 0.0
    p = matches / len(candidate)
    r = matches / len(reference)
    fmean = p * r / (alpha * p + (1.0 - alpha) * r)
    penalty = gamma * (chunks / matches) ** beta
    return 100.0 * fmean * (1.0 - penalty)


def _char_ngrams(text: str, n: int) -> Counter:
    return Counter(text[i:i + n] for i in range(len(text) - n + 1))


def chrf(candidate: str, reference: str, max_n: int = CHRF_ORDER, beta: float = CHRF_BETA) -> float:
    """Character n-gram F-score, 0-100, whitespace ignored.

    Precision and recall are averaged over the orders for which both strings
    have n-grams before the F-beta combination.
    """
    hyp = "".join(candidate.split())
    ref = "".join(reference.split())
    sum_p = sum_r = 0.0
    orders = 0
    for n in range(1, max_n + 1):
        h, r = _char_ngrams(hyp, n), _char_ngrams(ref, n)
        h_total, r_total = sum(h.values()), sum(r.values())
        if h_total == 0 or r_total == 0:
            continue
        match = sum((h & r).values())
        sum_p += match / h_total
        sum_r += match / r_total
        orders += 1
    if orders == 0:
        return 0.0
    p, r = sum_p / orders, sum_r / orders
    if p + r == 0:
        return 0.0
    b2 = beta * beta
    return 100.0 * (1 + b2) * p * r / (b2 * p + r)


@dataclass(frozen=True)
class EvalRow:
    language: str
    bleu1: float
    meteor: float
    chrf: float
    senses_evaluated: int

    def tsv(self) -> str:
        return f"{self.language}\t{self.bleu1:.1f}\t{self.meteor:.1f}\t{self.chrf:.1f}\t{self.senses_evaluated}"

    def to_json(self) -> dict:
        d = asdict(self)
        for key in ("bleu1", "meteor", "chrf"):
            d[key] = round(d[key], 1)
        return d


TSV_HEADER = "lang\tbleu1\tmeteor\tchrf\tsenses"


def write_eval_rows(rows: Sequence[EvalRow], tsv: IO[str], js: IO[str] | None = None) -> None:
    tsv.write(TSV_HEADER + "\n")
    for row in rows:
        tsv.write(row.tsv() + "\n")
    if js is not None:
        json.dump([row.to_json() for row in rows], js, indent=2, sort_keys=True)
        js.write("\n")


def evaluate_lexicon(
    hypothesis: MultilingualWordnet,
    gold: MultilingualWordnet,
    language: str,
    brevity_penalty: bool = True,
) -> EvalRow:
    """Score every hypothesis (synset, lemma) in `language` whose synset has gold lemmas.

    Tokens for BLEU-1 and METEOR are whitespace-separated, case-sensitive.
    """
    bleus, meteors, chrfs = [], [], []
    for sid in sorted(hypothesis.synsets):
        hyps = hypothesis.lemmas_of(sid, language)
        refs = gold.lemmas_of(sid, language)
        if not hyps or not refs:
            continue
        ref_tokens = [r.split() for r in refs]
        first = refs[0]
        for h in hyps:
            toks = h.split()
            bleus.append(bleu1(toks, ref_tokens, brevity_penalty))
            meteors.append(meteor_lite(toks, ref_tokens[0]))
            chrfs.append(chrf(h, first))
    if not bleus:
        raise ValueError(f"no senses in {language!r} shared by hypothesis and gold")
    n = len(bleus)
    return EvalRow(language, math.fsum(bleus) / n, math.fsum(meteors) / n, math.fsum(chrfs) / n, n)
