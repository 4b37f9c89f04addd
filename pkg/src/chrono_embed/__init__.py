"""Diachronic embedding toolkit: token-balanced time bins, per-bin
skip-gram training, neighborhood-drift and antonym-axis bias series."""

from .bias import (
    AntonymPair,
    BiasSeries,
    Stream,
    bias_axis,
    bias_series,
    cumulative_bias,
    default_streams,
    load_streams,
    mean_bias,
    project,
    stream_variance,
)
from .corpus import (
    Document,
    KeywordSet,
    TimeBin,
    bin_report,
    default_keywords,
    filter_documents,
    plan_bins,
)
from .drift import (
    DriftSeries,
    SecondOrderVector,
    drift_series,
    local_change,
    neighbor_diff,
    second_order_vectors,
)
from .freq import FrequencySeries, frequency_series
from .sgns import EmbeddingModel, TrainConfig, objective_and_gradient, train
from .store import EmbeddingArchive, Neighbor, cosine_sim, knn, load, save
from .text import Vocabulary, build_vocab, tokenize

__version__ = "0.1.0"

__all__ = [
    "AntonymPair",
    "BiasSeries",
    "Document",
    "DriftSeries",
    "EmbeddingArchive",
    "EmbeddingModel",
    "FrequencySeries",
    "KeywordSet",
    "Neighbor",
    "SecondOrderVector",
    "Stream",
    "TimeBin",
    "TrainConfig",
    "Vocabulary",
    "bias_axis",
    "bias_series",
    "bin_report",
    "build_vocab",
    "cosine_sim",
    "cumulative_bias",
    "default_keywords",
    "default_streams",
    "drift_series",
    "filter_documents",
    "frequency_series",
    "knn",
    "load",
    "load_streams",
    "local_change",
    "mean_bias",
    "neighbor_diff",
    "objective_and_gradient",
    "plan_bins",
    "project",
    "save",
    "second_order_vectors",
    "stream_variance",
    "tokenize",
    "train",
]
