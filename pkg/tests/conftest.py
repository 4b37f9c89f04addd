import numpy as np
import pytest

from chrono_embed.sgns import EmbeddingModel
from chrono_embed.text import Vocabulary


def make_model(
    words,
    vectors,
    bin_index=0,
    start_year=1789,
    end_year=1789,
    counts=None,
    output_vectors=None,
    dtype=np.float32,
):
    """Model with hand-set input vectors; counts default to a strictly
    descending sequence so the given word order is a valid id order."""
    vecs = np.asarray(vectors, dtype=dtype)
    if counts is None:
        counts = list(range(100 + len(words), 100, -1))
    vocab = Vocabulary(words=list(words), counts=list(counts), min_count=1)
    out = None if output_vectors is None else np.asarray(output_vectors, dtype=dtype)
    return EmbeddingModel(
        vocab=vocab,
        input_vectors=vecs,
        output_vectors=out,
        bin_index=bin_index,
        start_year=start_year,
        end_year=end_year,
    )


def random_model(rng, vocab_size, dim, bin_index=0, dtype=np.float32, with_output=False):
    words = [f"w{i:04d}" for i in range(vocab_size)]
    vecs = rng.normal(size=(vocab_size, dim)).astype(dtype)
    out = rng.normal(size=(vocab_size, dim)).astype(dtype) if with_output else None
    return make_model(
        words, vecs, bin_index=bin_index, output_vectors=out, dtype=dtype
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
