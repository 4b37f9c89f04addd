"""Skip-gram negative-sampling training, one embedding model per time bin.

The inner loop is the classic asynchronous-SGD word2vec recipe: dynamic
windows (uniform 1..window per position), frequent-word subsampling,
negatives drawn from the unigram distribution raised to a power, linear
learning-rate decay. It runs as a numba kernel over an int32 id stream;
multiple workers may update the shared matrices without synchronization
(lost updates are tolerated). With workers=1 runs are bit-reproducible
for a fixed seed, which is what every verification test relies on.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numba import njit

from .errors import ConfigError, DataError
from .text import DEFAULT_MIN_COUNT, Vocabulary

DEFAULT_DIM = 300
DEFAULT_WINDOW = 5

# 64-bit LCG (Knuth MMIX constants); top 53 bits give the uniform draw.
_MULT = np.uint64(6364136223846793005)
_INC = np.uint64(1442695040888963407)
_SHIFT = np.uint64(11)
_U53 = np.float64(1.0 / (1 << 53))

# Tokens per inner block: alpha is constant within a block and context
# windows do not cross block boundaries.
_BLOCK = 10_000


@dataclass
class TrainConfig:
    dim: int = DEFAULT_DIM
    window: int = DEFAULT_WINDOW
    min_count: int = DEFAULT_MIN_COUNT
    negatives: int = 5
    epochs: int = 5
    initial_lr: float = 0.025
    subsample_threshold: float = 1e-3
    unigram_power: float = 0.75
    seed: int = 1
    dynamic_window: bool = True  # False: every context uses the full window
    workers: int = 1  # 1 == deterministic mode

    def __post_init__(self):
        if self.dim < 1:
            raise ConfigError(f"dim must be >= 1, got {self.dim}")
        if self.window < 1:
            raise ConfigError(f"window must be >= 1, got {self.window}")
        if self.negatives < 1:
            raise ConfigError(f"negatives must be >= 1, got {self.negatives}")
        if self.epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {self.epochs}")
        if self.min_count < 1:
            raise ConfigError(f"min_count must be >= 1, got {self.min_count}")
        if self.initial_lr < 0:
            raise ConfigError(f"initial_lr must be >= 0, got {self.initial_lr}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "window": self.window,
            "min_count": self.min_count,
            "negatives": self.negatives,
            "epochs": self.epochs,
            "initial_lr": self.initial_lr,
            "subsample_threshold": self.subsample_threshold,
            "unigram_power": self.unigram_power,
            "seed": self.seed,
            "dynamic_window": self.dynamic_window,
            "workers": self.workers,
        }


@dataclass
class EmbeddingModel:
    """Per-bin vocabulary plus dense vectors.

    input_vectors drive all downstream analysis; output_vectors exist only
    to resume or inspect training and may be absent on loaded models.
    """

    vocab: Vocabulary
    input_vectors: np.ndarray  # |V| x dim float32
    output_vectors: np.ndarray | None
    bin_index: int
    start_year: int = 0
    end_year: int = 0
    epoch_losses: list[float] = field(default_factory=list, repr=False)
    _unit: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.input_vectors.shape[1]

    def year_label(self) -> str:
        if self.start_year == self.end_year:
            return str(self.start_year)
        return f"{self.start_year}-{self.end_year}"

    def unit_vectors(self) -> np.ndarray:
        """L2-normalized input vectors in float64, computed once per model.
        Zero rows stay zero."""
        if self._unit is None:
            vecs = self.input_vectors.astype(np.float64)
            norms = np.linalg.norm(vecs, axis=1, keepdims=True)
            norms[norms == 0.0] = 1.0
            self._unit = vecs / norms
        return self._unit


def _sigmoid(x: np.ndarray | float) -> np.ndarray | float:
    return 1.0 / (1.0 + np.exp(-x))


def _log_sigmoid(x: np.ndarray | float) -> np.ndarray | float:
    # stable -softplus(-x)
    return np.where(x >= 0, -np.log1p(np.exp(-np.abs(x))), x - np.log1p(np.exp(-np.abs(x))))


def objective_and_gradient(
    center: int,
    context: int,
    negatives: Sequence[int],
    model: EmbeddingModel,
) -> tuple[float, np.ndarray, dict[int, np.ndarray]]:
    """Negative-sampling loss of one (center, context) pair and its exact
    gradients, in double precision.

    loss = -log s(w.v_o) - sum_j log s(-w.v_nj)  with w the center's input
    row and v_* output rows. Returns (loss, d loss/d w, {output row id:
    d loss/d row}); a duplicated negative id contributes one loss term per
    occurrence and its row gradient is the sum over occurrences.
    """
    if model.output_vectors is None:
        raise DataError("model has no output vectors; was it saved without them?")
    n_rows = model.input_vectors.shape[0]
    for idx in (center, context, *negatives):
        if not 0 <= idx < n_rows:
            raise IndexError(f"id {idx} out of vocabulary range [0, {n_rows})")

    w = model.input_vectors[center].astype(np.float64)
    grad_center = np.zeros_like(w)
    grads_out: dict[int, np.ndarray] = {}

    def accumulate(row_id: int, label: float) -> float:
        v = model.output_vectors[row_id].astype(np.float64)
        x = float(w @ v)
        sig = _sigmoid(x)
        # d loss / d x = sig - label  (label 1 for the observed pair, 0 for noise)
        coeff = sig - label
        grad_center_term = coeff * v
        grad_row_term = coeff * w
        grad_center[:] += grad_center_term
        if row_id in grads_out:
            grads_out[row_id] += grad_row_term
        else:
            grads_out[row_id] = grad_row_term
        return -float(_log_sigmoid(x if label == 1.0 else -x))

    loss = accumulate(context, 1.0)
    for neg in negatives:
        loss += accumulate(neg, 0.0)
    return loss, grad_center, grads_out


@njit(cache=True, nogil=True, boundscheck=False)
def _train_worker(
    ids,
    syn0,
    syn1,
    window,
    dynamic_window,
    negatives,
    cum_table,
    keep_prob,
    alpha0,
    tokens_done,
    tokens_total,
    state_arr,
):  # pragma: no cover - exercised through train()
    state = state_arr[0]
    dim = syn0.shape[1]
    n = ids.shape[0]
    vocab_size = syn0.shape[0]
    table_total = cum_table[cum_table.shape[0] - 1]
    alpha_floor = alpha0 * 1e-4

    kept = np.empty(_BLOCK, dtype=np.int32)
    neu1e = np.zeros(dim, dtype=np.float32)

    pair_count = 0
    loss_sum = 0.0
    raw_done = tokens_done

    block_start = 0
    while block_start < n:
        block_end = min(block_start + _BLOCK, n)

        alpha = alpha0 * (1.0 - raw_done / tokens_total)
        if alpha < alpha_floor:
            alpha = alpha_floor

        # frequent-word subsampling, re-drawn on every pass
        m = 0
        for i in range(block_start, block_end):
            word = ids[i]
            kp = keep_prob[word]
            if kp < 1.0:
                state = state * _MULT + _INC
                if np.float64(state >> _SHIFT) * _U53 >= kp:
                    continue
            kept[m] = word
            m += 1
        raw_done += block_end - block_start

        for pos in range(m):
            center = kept[pos]
            if dynamic_window:
                state = state * _MULT + _INC
                b = np.int64(state % np.uint64(window)) + 1  # 1..window
            else:
                b = window
            lo = pos - b
            if lo < 0:
                lo = 0
            hi = pos + b
            if hi >= m:
                hi = m - 1

            w_row = syn0[center]
            for pos2 in range(lo, hi + 1):
                if pos2 == pos:
                    continue
                context = kept[pos2]

                for d in range(dim):
                    neu1e[d] = 0.0
                for k in range(negatives + 1):
                    if k == 0:
                        target = context
                        label = 1.0
                    else:
                        label = 0.0
                        target = context
                        for _attempt in range(8):
                            state = state * _MULT + _INC
                            u = np.float64(state >> _SHIFT) * _U53 * table_total
                            lo_i = 0
                            hi_i = vocab_size - 1
                            while lo_i < hi_i:
                                mid = (lo_i + hi_i) >> 1
                                if cum_table[mid] <= u:
                                    lo_i = mid + 1
                                else:
                                    hi_i = mid
                            target = lo_i
                            if target != context or vocab_size == 1:
                                break
                    v_row = syn1[target]
                    x = 0.0
                    for d in range(dim):
                        x += w_row[d] * v_row[d]
                    sig = 1.0 / (1.0 + np.exp(-x))
                    if label == 1.0:
                        if x >= 0.0:
                            loss_sum += np.log1p(np.exp(-x))
                        else:
                            loss_sum += -x + np.log1p(np.exp(x))
                    else:
                        if x >= 0.0:
                            loss_sum += x + np.log1p(np.exp(-x))
                        else:
                            loss_sum += np.log1p(np.exp(x))
                    g = (label - sig) * alpha
                    for d in range(dim):
                        neu1e[d] += np.float32(g) * v_row[d]
                    for d in range(dim):
                        v_row[d] += np.float32(g) * w_row[d]
                for d in range(dim):
                    w_row[d] += neu1e[d]
                pair_count += 1

        block_start = block_end

    state_arr[0] = state
    return pair_count, loss_sum


def _token_ids(tokens: Iterable[str], vocab: Vocabulary) -> np.ndarray:
    id_of = vocab.id_of
    return np.fromiter(
        (id_of[t] for t in tokens if t in id_of), dtype=np.int32
    )


def _noise_cdf(vocab: Vocabulary, power: float) -> np.ndarray:
    counts = np.asarray(vocab.counts, dtype=np.float64)
    return np.cumsum(counts**power)


def _keep_probabilities(vocab: Vocabulary, threshold: float) -> np.ndarray:
    counts = np.asarray(vocab.counts, dtype=np.float64)
    if threshold <= 0 or counts.size == 0:
        return np.ones_like(counts)
    threshold_count = threshold * counts.sum()
    with np.errstate(divide="ignore"):
        keep = (np.sqrt(counts / threshold_count) + 1.0) * threshold_count / counts
    return np.minimum(keep, 1.0)


def train(
    tokens: Iterable[str],
    vocab: Vocabulary,
    cfg: TrainConfig,
    bin_index: int = 0,
    start_year: int = 0,
    end_year: int = 0,
) -> EmbeddingModel:
    """Train one model on a bin's token stream.

    The vocabulary must come from the same stream with the same min_count.
    OOV tokens are dropped from the stream before windowing.
    """
    if len(vocab) == 0:
        raise DataError("cannot train on an empty vocabulary")

    ids = _token_ids(tokens, vocab)
    rng = np.random.default_rng(cfg.seed)
    input_vectors = (
        (rng.random((len(vocab), cfg.dim), dtype=np.float32) - 0.5) / cfg.dim
    ).astype(np.float32)
    output_vectors = np.zeros((len(vocab), cfg.dim), dtype=np.float32)

    model = EmbeddingModel(
        vocab=vocab,
        input_vectors=input_vectors,
        output_vectors=output_vectors,
        bin_index=bin_index,
        start_year=start_year,
        end_year=end_year,
    )
    if ids.size == 0:
        return model

    cum_table = _noise_cdf(vocab, cfg.unigram_power)
    keep_prob = _keep_probabilities(vocab, cfg.subsample_threshold)
    tokens_total = cfg.epochs * ids.size

    if cfg.workers == 1:
        state = np.random.SeedSequence(cfg.seed).generate_state(1, dtype=np.uint64)
        done = 0
        for _epoch in range(cfg.epochs):
            pairs, loss_sum = _train_worker(
                ids,
                input_vectors,
                output_vectors,
                cfg.window,
                cfg.dynamic_window,
                cfg.negatives,
                cum_table,
                keep_prob,
                cfg.initial_lr,
                done,
                tokens_total,
                state,
            )
            done += ids.size
            model.epoch_losses.append(loss_sum / pairs if pairs else 0.0)
    else:
        chunks = np.array_split(ids, cfg.workers)
        for epoch in range(cfg.epochs):
            results: list[tuple[int, float]] = [(0, 0.0)] * cfg.workers
            threads = []
            for w, chunk in enumerate(chunks):
                if chunk.size == 0:
                    continue
                seq = np.random.SeedSequence(cfg.seed, spawn_key=(epoch, w))
                state = seq.generate_state(1, dtype=np.uint64)

                def run(w=w, chunk=chunk, state=state):
                    pairs, loss_sum = _train_worker(
                        chunk,
                        input_vectors,
                        output_vectors,
                        cfg.window,
                        cfg.dynamic_window,
                        cfg.negatives,
                        cum_table,
                        keep_prob,
                        cfg.initial_lr,
                        epoch * chunk.size,
                        cfg.epochs * chunk.size,
                        state,
                    )
                    results[w] = (pairs, loss_sum)

                t = threading.Thread(target=run)
                t.start()
                threads.append(t)
            for t in threads:
                t.join()
            pairs = sum(p for p, _ in results)
            loss_sum = sum(l for _, l in results)
            model.epoch_losses.append(loss_sum / pairs if pairs else 0.0)

    if not np.isfinite(input_vectors).all() or not np.isfinite(output_vectors).all():
        raise DataError("training produced non-finite values; lower initial_lr")
    return model
