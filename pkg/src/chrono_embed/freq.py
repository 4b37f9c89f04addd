"""Relative-frequency time series for target words.

Counts come from the per-bin vocabulary's exact corpus counts (taken before
any training-time subsampling); the denominator is the bin's total token
count. A word absent from a bin (unattested or below the vocabulary cutoff)
reads as frequency 0 there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError
from .sgns import EmbeddingModel


@dataclass
class FrequencySeries:
    word: str
    points: list[tuple[int, int, float]]  # (bin index, count, relative frequency)
    years: dict[int, tuple[int, int]] = field(default_factory=dict)


def frequency_series(
    word: str,
    models: list[EmbeddingModel],
    token_counts: dict[int, int],
) -> FrequencySeries:
    """Per-bin count of the (lowercased) token over the bin's token total.

    token_counts maps bin index -> total tokens in that bin.
    """
    target = word.lower()
    series = FrequencySeries(word=target, points=[])
    for model in sorted(models, key=lambda m: m.bin_index):
        total = token_counts[model.bin_index]
        if total <= 0:
            raise ConfigError(f"bin {model.bin_index} has token count {total}")
        count = model.vocab.count(target)
        series.points.append((model.bin_index, count, count / total))
        series.years[model.bin_index] = (model.start_year, model.end_year)
    return series


def series_rows(series: FrequencySeries) -> list[dict]:
    rows = []
    for bin_index, count, freq in series.points:
        start_year, end_year = series.years[bin_index]
        rows.append(
            {
                "word": series.word,
                "bin_index": bin_index,
                "start_year": start_year,
                "end_year": end_year,
                "count": count,
                "relative_frequency": freq,
            }
        )
    return rows


FREQ_CSV_FIELDS = [
    "word",
    "bin_index",
    "start_year",
    "end_year",
    "count",
    "relative_frequency",
]
