"""Local neighborhood change between time bins.

For a target word and two models, build one second-order vector per model:
the target's cosine similarities to every word in the union of the two
models' k-NN sets. The local change is the cosine distance between those
two vectors. It needs no cross-bin alignment because only within-model
similarities enter the computation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import DataError, DegenerateInputError, OOVError
from .sgns import EmbeddingModel
from .store import DEFAULT_K, Neighbor, knn

log = logging.getLogger(__name__)

DriftMode = Literal["vs_first", "vs_previous"]


@dataclass
class SecondOrderVector:
    """Similarities of one target word to a fixed support word list within
    one model. Two vectors being compared always share the same support in
    the same order."""

    word: str
    support: list[str]
    values: np.ndarray  # float64, one entry per support word


@dataclass
class DriftSeries:
    word: str
    mode: DriftMode
    points: list[tuple[int, float]]  # (bin index, distance)
    years: dict[int, tuple[int, int]] = field(default_factory=dict)
    skipped_bins: list[int] = field(default_factory=list)


def _require_in_vocab(model: EmbeddingModel, word: str) -> int:
    idx = model.vocab.id_of.get(word)
    if idx is None:
        raise OOVError(word, model.bin_index)
    return idx


def _similarities_to_support(
    model: EmbeddingModel, word: str, support: list[str]
) -> np.ndarray:
    """Cosine of `word` to each support word; 0.0 where the support word is
    OOV in this model (no measurable similarity)."""
    target = model.unit_vectors()[_require_in_vocab(model, word)]
    values = np.zeros(len(support), dtype=np.float64)
    for j, sup in enumerate(support):
        idx = model.vocab.id_of.get(sup)
        if idx is None:
            log.info(
                "support word %r not in bin %d vocabulary; using similarity 0",
                sup,
                model.bin_index,
            )
            continue
        values[j] = model.unit_vectors()[idx] @ target
    np.clip(values, -1.0, 1.0, out=values)
    return values


def second_order_vectors(
    model_a: EmbeddingModel,
    model_b: EmbeddingModel,
    word: str,
    k: int = DEFAULT_K,
) -> tuple[SecondOrderVector, SecondOrderVector]:
    """Second-order vectors of `word` in two models over the union of their
    k-NN sets, support sorted lexicographically (any shared fixed order
    leaves the cosine unchanged)."""
    neighbors_a = knn(model_a, word, k)
    neighbors_b = knn(model_b, word, k)
    support = sorted({n.word for n in neighbors_a} | {n.word for n in neighbors_b})
    return (
        SecondOrderVector(word, support, _similarities_to_support(model_a, word, support)),
        SecondOrderVector(word, support, _similarities_to_support(model_b, word, support)),
    )


def local_change(
    word: str,
    model_a: EmbeddingModel,
    model_b: EmbeddingModel,
    k: int = DEFAULT_K,
) -> float:
    """Cosine distance (1 - cos) between the two second-order vectors of
    `word`. Ranges over [0, 2]; 0 when the models are identical."""
    vec_a, vec_b = second_order_vectors(model_a, model_b, word, k)
    norm_a = np.linalg.norm(vec_a.values)
    norm_b = np.linalg.norm(vec_b.values)
    if norm_a == 0.0 or norm_b == 0.0:
        raise DegenerateInputError(
            f"second-order vector of {word!r} has zero norm; "
            "the word has no measurable neighborhood"
        )
    cos = float(vec_a.values @ vec_b.values) / float(norm_a * norm_b)
    return min(max(1.0 - cos, 0.0), 2.0)


def drift_series(
    word: str,
    models: list[EmbeddingModel],
    k: int = DEFAULT_K,
    mode: DriftMode = "vs_first",
) -> DriftSeries:
    """Change series across bins: each usable bin compared to the earliest
    usable bin (vs_first) or to its usable predecessor (vs_previous). Bins
    where the word is OOV are skipped with a warning."""
    if mode not in ("vs_first", "vs_previous"):
        raise DataError(f"unknown drift mode {mode!r}")
    ordered = sorted(models, key=lambda m: m.bin_index)
    usable: list[EmbeddingModel] = []
    skipped: list[int] = []
    for model in ordered:
        if word in model.vocab:
            usable.append(model)
        else:
            skipped.append(model.bin_index)
            log.warning("word %r not in bin %d vocabulary; bin skipped", word, model.bin_index)
    if len(usable) < 2:
        raise DataError(
            f"word {word!r} usable in {len(usable)} bins; need at least 2"
        )

    series = DriftSeries(word=word, mode=mode, points=[], skipped_bins=skipped)
    for model in usable:
        series.years[model.bin_index] = (model.start_year, model.end_year)

    if mode == "vs_first":
        reference = usable[0]
        for model in usable:
            series.points.append(
                (model.bin_index, local_change(word, reference, model, k))
            )
    else:
        for prev, cur in zip(usable, usable[1:]):
            series.points.append((cur.bin_index, local_change(word, prev, cur, k)))
    return series


def neighbor_diff(
    word: str,
    model_a: EmbeddingModel,
    model_b: EmbeddingModel,
    k: int = DEFAULT_K,
) -> tuple[list[Neighbor], list[Neighbor]]:
    """Neighbors introduced (in b's k-NN but not a's) and eliminated (in a's
    but not b's), each ordered by cosine similarity to the target within the
    model that contains them."""
    neighbors_a = knn(model_a, word, k)
    neighbors_b = knn(model_b, word, k)
    words_a = {n.word for n in neighbors_a}
    words_b = {n.word for n in neighbors_b}
    introduced = [n for n in neighbors_b if n.word not in words_a]
    eliminated = [n for n in neighbors_a if n.word not in words_b]
    return introduced, eliminated


def series_rows(series: DriftSeries) -> list[dict]:
    rows = []
    for bin_index, distance in series.points:
        start_year, end_year = series.years[bin_index]
        rows.append(
            {
                "word": series.word,
                "mode": series.mode,
                "bin_index": bin_index,
                "start_year": start_year,
                "end_year": end_year,
                "distance": distance,
            }
        )
    return rows


def diff_rows(
    word: str, introduced: list[Neighbor], eliminated: list[Neighbor]
) -> list[dict]:
    rows = []
    for direction, neighbors in (("introduced", introduced), ("eliminated", eliminated)):
        for n in neighbors:
            rows.append(
                {
                    "word": word,
                    "direction": direction,
                    "neighbor": n.word,
                    "cosine": n.similarity,
                }
            )
    return rows


DRIFT_CSV_FIELDS = ["word", "mode", "bin_index", "start_year", "end_year", "distance"]
DIFF_CSV_FIELDS = ["word", "direction", "neighbor", "cosine"]
