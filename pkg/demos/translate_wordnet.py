"""Translate the ten-synset fixture wordnet into Spanish, with and without context voting."""

from polywn import fixtures
from polywn.corpus import build_index, find_phrase, load_parallel_dir
from polywn.disambig import DisambigConfig, disambiguated_contexts
from polywn.lexicon import Sense, SynsetId, load_wordnet
from polywn.metrics import evaluate_lexicon
from polywn.translate import load_phrase_table, translate_wordnet

d = fixtures.path("translation")
wn = load_wordnet(fixtures.path("translation", "lemmas.tsv"))
gold = load_wordnet(fixtures.path("translation", "gold.es.tsv"))
corpus = load_parallel_dir(d, ["en", "fr", "de"])
index = build_index(corpus, max_n=4)
backend = load_phrase_table(fixtures.path("translation", "phrase_table.en-es.txt"), "es")

print(wn.stats("en"))  # two synsets share "bank", so 9 words but 10 senses
print(len(corpus), "tuples in", corpus.languages)

# every English sentence with "bank", whatever the sense
print(sorted(find_phrase(index, "en", "bank")))

# a context counts for a sense only if a French or German lemma of the same synset shows up in parallel
for offset, name in (("08420278-n", "financial"), ("09213565-n", "riverbank")):
    sense = Sense(SynsetId.parse(offset), "en", "bank")
    contexts = disambiguated_contexts(wn, corpus, index, sense, n_min=2)
    print(name, [(c.tuple_id, sorted(c.witnesses)) for c in contexts])
    for c in contexts[:1]:
        print("   ", corpus[c.tuple_id].sentences["en"].raw, "|", corpus[c.tuple_id].sentences["fr"].raw)

cfg = DisambigConfig(n_min=2, m=10, seed=13)
voted = translate_wordnet(wn, corpus, index, backend, "es", cfg, t=5)
direct = translate_wordnet(wn, corpus, index, backend, "es", cfg, t=5, disambiguate=False)

riverbank = SynsetId.parse("09213565-n")
print("voted:  riverbank ->", voted.lexicon.lemmas_of(riverbank, "es"))
print("direct: riverbank ->", direct.lexicon.lemmas_of(riverbank, "es"))  # the bare lemma gets the dominant sense

print(voted.report)
print("lang bleu1 meteor chrf senses")
print(evaluate_lexicon(voted.lexicon, gold, "es").tsv())
print(evaluate_lexicon(direct.lexicon, gold, "es").tsv())
# METEOR tops out at 50 for one-word entries: one chunk over one match still pays the full fragmentation penalty
