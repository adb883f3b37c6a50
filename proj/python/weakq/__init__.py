"""Python bindings for the weakq query toolkit."""

from ._weakq import (
    DegenerateSampleError,
    Error,
    Index,
    InvalidInputError,
    InvalidWindowError,
    IoError,
    KnowledgeBase,
    LoadError,
    NotFoundError,
    Query,
    average_precision,
    build_query,
    chunk_pairs,
    detect_topic,
    evaluate,
    is_stopword,
    normalize_surface,
    parse_query,
    paired_t_test,
    resolve,
    run_experiment,
    tokenize,
    wilcoxon,
)

__all__ = [name for name in dir() if not name.startswith("_")]
