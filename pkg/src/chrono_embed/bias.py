"""Antonym-axis bias measurement.

Each stream is a named family of antonym pairs. A pair's axis is the
difference of its L2-normalized pole vectors, negative minus positive, so
a positive projection means bias toward the negative pole: adverse. The
mean bias of a word under a stream is the arithmetic mean of its
projections on the stream's usable axes.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, DataError, NoUsableAxisError, OOVError, PairSkip
from .sgns import EmbeddingModel

log = logging.getLogger(__name__)

DEFAULT_STREAM_NAMES = (
    "religious",
    "economic",
    "socio-political",
    "racial",
    "conspiratorial",
    "ethic",
)


class ZeroAxisSignal(PairSkip):
    """Both poles have the same unit vector; the axis carries no direction."""


@dataclass(frozen=True)
class AntonymPair:
    positive: str
    negative: str

    def __post_init__(self):
        if self.positive == self.negative:
            raise ConfigError(
                f"antonym pair poles must differ, got {self.positive!r} twice"
            )


@dataclass
class Stream:
    name: str
    seed: AntonymPair
    pairs: list[AntonymPair]

    def __post_init__(self):
        if not self.pairs:
            raise ConfigError(f"stream {self.name!r} has no antonym pairs")


@dataclass
class BiasSeries:
    word: str
    stream: str
    points: list[tuple[int, float, int]]  # (bin index, mean bias, usable pairs)
    years: dict[int, tuple[int, int]] = field(default_factory=dict)
    skipped_bins: list[int] = field(default_factory=list)


def bias_axis(model: EmbeddingModel, pair: AntonymPair) -> np.ndarray:
    """Axis g = unit(w_negative) - unit(w_positive). Raises PairSkip when a
    pole is OOV and ZeroAxisSignal when the poles coincide."""
    unit = model.unit_vectors()
    rows = []
    for word in (pair.negative, pair.positive):
        idx = model.vocab.id_of.get(word)
        if idx is None:
            raise PairSkip(
                f"pole {word!r} not in bin {model.bin_index} vocabulary", word=word
            )
        rows.append(unit[idx])
    g = rows[0] - rows[1]
    if not np.any(g):
        raise ZeroAxisSignal(
            f"poles {pair.negative!r}/{pair.positive!r} have identical vectors"
        )
    return g


def project(model: EmbeddingModel, word: str, g: np.ndarray) -> float:
    """Dot product of the word's unit vector with axis g (g is used as-is,
    never re-normalized)."""
    idx = model.vocab.id_of.get(word)
    if idx is None:
        raise OOVError(word, model.bin_index)
    return float(model.unit_vectors()[idx] @ g)


def usable_axes(model: EmbeddingModel, stream: Stream) -> tuple[list[np.ndarray], list[AntonymPair]]:
    """Axes of the stream's pairs that can be built in this model, with the
    skipped pairs. Skips are logged, never fatal: historical bins
    legitimately lack words."""
    axes: list[np.ndarray] = []
    skipped: list[AntonymPair] = []
    for pair in stream.pairs:
        try:
            axes.append(bias_axis(model, pair))
        except PairSkip as skip:
            skipped.append(pair)
            log.info(
                "stream %r: pair (%s, %s) skipped in bin %d: %s",
                stream.name,
                pair.positive,
                pair.negative,
                model.bin_index,
                skip,
            )
    return axes, skipped


def mean_bias(model: EmbeddingModel, word: str, stream: Stream) -> tuple[float, int]:
    """Arithmetic mean of the word's projections on the stream's usable
    axes. Returns (b, usable pair count); positive b is adverse."""
    if word not in model.vocab:
        raise OOVError(word, model.bin_index)
    axes, _ = usable_axes(model, stream)
    if not axes:
        raise NoUsableAxisError(
            f"stream {stream.name!r} has no usable pair in bin {model.bin_index}"
        )
    total = 0.0
    for g in axes:
        total += project(model, word, g)
    return total / len(axes), len(axes)


def stream_variance(model: EmbeddingModel, stream: Stream) -> np.ndarray:
    """Explained-variance fractions of the principal components of the
    stream's usable axes, descending.

    Axes are stacked as rows and mean-centered; fractions are the
    covariance eigenvalues over their sum. When every axis is identical the
    centered matrix is zero and the spectrum carries no information; that
    degenerate case reports full concentration: [1, 0, ..., 0].
    """
    axes, _ = usable_axes(model, stream)
    if len(axes) < 2:
        raise DataError(
            f"stream {stream.name!r} has {len(axes)} usable axes in bin "
            f"{model.bin_index}; variance needs at least 2"
        )
    stacked = np.vstack(axes)
    centered = stacked - stacked.mean(axis=0)
    singular = np.linalg.svd(centered, compute_uv=False)
    power = singular**2
    total = power.sum()
    if total <= 1e-30:
        fractions = np.zeros(min(stacked.shape), dtype=np.float64)
        fractions[0] = 1.0
        return fractions
    return power / total


def cumulative_bias(model: EmbeddingModel, word: str, streams: list[Stream]) -> float:
    """Sum of the word's mean biases over all streams in one bin."""
    return sum(mean_bias(model, word, stream)[0] for stream in streams)


def bias_series(
    word: str, stream: Stream, models: list[EmbeddingModel]
) -> BiasSeries:
    """Chronological (bin, mean bias, usable pairs) points. Bins where the
    word is OOV are skipped with a warning; a word OOV everywhere is an
    error."""
    ordered = sorted(models, key=lambda m: m.bin_index)
    series = BiasSeries(word=word, stream=stream.name, points=[])
    for model in ordered:
        if word not in model.vocab:
            series.skipped_bins.append(model.bin_index)
            log.warning(
                "word %r not in bin %d vocabulary; bin skipped", word, model.bin_index
            )
            continue
        b, usable = mean_bias(model, word, stream)
        series.points.append((model.bin_index, b, usable))
        series.years[model.bin_index] = (model.start_year, model.end_year)
    if not series.points:
        raise OOVError(word)
    return series


def load_streams(path: str | Path) -> list[Stream]:
    """Read a stream config file:
    {"streams": [{"name": ..., "seed_pos": ..., "seed_neg": ...,
                  "pairs": [{"pos": ..., "neg": ...}, ...]}, ...]}"""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    streams = []
    names = set()
    for entry in raw["streams"]:
        name = entry["name"]
        if name in names:
            raise ConfigError(f"duplicate stream name {name!r}")
        names.add(name)
        streams.append(
            Stream(
                name=name,
                seed=AntonymPair(entry["seed_pos"], entry["seed_neg"]),
                pairs=[AntonymPair(p["pos"], p["neg"]) for p in entry["pairs"]],
            )
        )
    if not streams:
        raise ConfigError("stream config defines no streams")
    return streams


def default_streams() -> list[Stream]:
    return load_streams(Path(__file__).parent / "data" / "streams_default.json")


def series_rows(series: BiasSeries) -> list[dict]:
    rows = []
    for bin_index, b, usable in series.points:
        start_year, end_year = series.years[bin_index]
        rows.append(
            {
                "word": series.word,
                "stream": series.stream,
                "bin_index": bin_index,
                "start_year": start_year,
                "end_year": end_year,
                "mean_bias": b,
                "usable_pairs": usable,
            }
        )
    return rows


BIAS_CSV_FIELDS = [
    "word",
    "stream",
    "bin_index",
    "start_year",
    "end_year",
    "mean_bias",
    "usable_pairs",
]
