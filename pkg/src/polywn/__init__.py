"""Context-aware wordnet translation, lexicon evaluation and wordnet-to-encyclopedia alignment."""

from .corpus import (
    ParallelCorpus,
    PhraseIndex,
    TokenizedSentence,
    build_index,
    find_phrase,
    load_parallel,
    load_parallel_dir,
    tokenize,
)
from .disambig import DisambigConfig, DisambiguatedContext, disambiguated_contexts, select_top_m
from .lexicon import MultilingualWordnet, Sense, Synset, SynsetId, load_wordnet, parse_wordnet_tsv
from .metrics import EvalRow, bleu1, chrf, evaluate_lexicon, meteor_lite
from .translate import (
    ContextPhraseTableBackend,
    PhraseTableBackend,
    TranslationBackend,
    TranslationCandidate,
    load_phrase_table,
    translate_sense,
    translate_wordnet,
    translate_with_focus,
    vote,
)

__version__ = "0.1.0"
