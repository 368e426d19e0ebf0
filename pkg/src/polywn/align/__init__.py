"""Dataset alignment: lenses, features, similarity classifier and greedy matching."""

from .classifier import SimilarityModel, load_model, predict_similarity, train_similarity_model
from .entities import (
    Dataset,
    EmbeddingTable,
    Entity,
    load_embeddings,
    load_entities,
    load_gold_links,
    parse_embeddings,
    parse_entities,
    parse_gold_links,
    write_entities,
)
from .features import (
    BASIC_FEATURES,
    NEGATION_WORDS,
    containment,
    dice,
    embedding_similarity,
    extract_basic_features,
    feature_schema,
    jaccard,
    pair_features,
    smoothed_jaccard,
    smoothed_jaccard_sets,
)
from .lenses import LENSES, Facet, apply_lens, levenshtein
from .matching import (
    CVReport,
    Matching,
    align,
    evaluate_matching,
    feature_tensor,
    greedy_match,
    kfold_evaluate,
    similarity_matrix,
    train_on_gold,
    write_alignment,
)
