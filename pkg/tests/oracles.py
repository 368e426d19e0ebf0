"""Deliberately naive reference implementations used as test oracles.

Nothing here shares code with the package beyond tokenization; each routine
is the most literal reading of its definition, picked for obviousness over
speed.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from polywn.corpus import tokenize


def contains_at(tokens, phrase):
    return [i for i in range(len(tokens) - len(phrase) + 1) if list(tokens[i:i + len(phrase)]) == list(phrase)]


def brute_force_phrase(corpus, lang, phrase_tokens):
    return {t.id for t in corpus.tuples if contains_at(t.sentences[lang].tokens, phrase_tokens)}


def brute_force_contexts(wn, corpus, sense, n_min):
    """Set of (tuple id, span, witnesses) by nested scan over tuples x languages x lemmas."""
    focus = list(tokenize(sense.lemma).tokens)
    out = set()
    for tup in corpus.tuples:
        witnesses = set()
        for lang in corpus.languages:
            if lang == "en":
                continue
            for lemma in wn.lemmas_of(sense.synset, lang):
                toks = list(tokenize(lemma).tokens)
                if toks and contains_at(tup.sentences[lang].tokens, toks):
                    witnesses.add(lang)
        if len(witnesses) < n_min:
            continue
        for i in contains_at(tup.sentences["en"].tokens, focus):
            out.add((tup.id, (i, i + len(focus)), frozenset(witnesses)))
    return out


def naive_bleu1(cand, refs):
    if not cand:
        return 0.0
    hits = 0
    for word in set(cand):
        best = max(ref.count(word) for ref in refs)
        hits += min(cand.count(word), best)
    c = len(cand)
    lengths = sorted(len(r) for r in refs)
    r = lengths[0]
    for n in lengths:
        if abs(n - c) < abs(r - c):
            r = n
    bp = 1.0 if c >= r else math.exp(1 - r / c)
    return 100.0 * hits / c * bp


def naive_meteor(cand, ref, alpha=0.9, beta=3.0, gamma=0.5):
    """Enumerate every in-order one-to-one exact alignment; keep most matches, then fewest chunks."""

    def alignments(i, j):
        # all strictly increasing lists of (cand index, ref index) pairs starting at or after (i, j)
        yield []
        for a in range(i, len(cand)):
            for b in range(j, len(ref)):
                if cand[a] == ref[b]:
                    for rest in alignments(a + 1, b + 1):
                        yield [(a, b)] + rest

    best = (0, 0)
    for al in alignments(0, 0):
        if not al:
            continue
        chunks = 1 + sum(1 for x, y in zip(al, al[1:]) if not (y[0] == x[0] + 1 and y[1] == x[1] + 1))
        if len(al) > best[0] or (len(al) == best[0] and chunks < best[1]):
            best = (len(al), chunks)
    m, chunks = best
    if m == 0:
        return 0.0
    p, r = m / len(cand), m / len(ref)
    fmean = p * r / (alpha * p + (1 - alpha) * r)
    return 100.0 * fmean * (1 - gamma * (chunks / m) ** beta)


def naive_chrf(cand, ref, max_n=6, beta=3.0):
    hyp = cand.replace(" ", "").replace("\t", "").replace("\n", "")
    gold = ref.replace(" ", "").replace("\t", "").replace("\n", "")
    ps, rs = [], []
    for n in range(1, max_n + 1):
        hg = [hyp[i:i + n] for i in range(len(hyp) - n + 1)]
        rg = [gold[i:i + n] for i in range(len(gold) - n + 1)]
        if not hg or not rg:
            continue
        pool = list(rg)
        match = 0
        for g in hg:
            if g in pool:
                pool.remove(g)
                match += 1
        ps.append(match / len(hg))
        rs.append(match / len(rg))
    if not ps:
        return 0.0
    p, r = sum(ps) / len(ps), sum(rs) / len(rs)
    if p == 0 and r == 0:
        return 0.0
    return 100.0 * (1 + beta ** 2) * p * r / (beta ** 2 * p + r)


def naive_greedy(lids, rids, sims, threshold):
    """Repeatedly take the best admissible remaining pair (no presorting)."""
    used_l, used_r = set(), set()
    links = []
    remaining = {(a, b): sims[i][j] for i, a in enumerate(lids) for j, b in enumerate(rids) if sims[i][j] >= threshold}
    while True:
        admissible = [(s, a, b) for (a, b), s in remaining.items() if a not in used_l and b not in used_r]
        if not admissible:
            return links
        s, a, b = min(admissible, key=lambda x: (-x[0], x[1], x[2]))
        links.append((a, b, s))
        used_l.add(a)
        used_r.add(b)
        del remaining[(a, b)]


def best_matching_score(sims):
    """Optimal bipartite matching score by enumerating permutations (square, small)."""
    n = len(sims)
    return max(sum(sims[i][p[i]] for i in range(n)) for p in itertools.permutations(range(n)))


def naive_levenshtein(a, b):
    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (a[i - 1] != b[j - 1]))

    return d(len(a), len(b))
