import pytest

from chrono_embed.errors import ConfigError
from chrono_embed.freq import frequency_series, series_rows
from chrono_embed.sgns import TrainConfig, train
from chrono_embed.text import build_vocab

from conftest import make_model


def trained_bin(tokens, bin_index=0, min_count=1, start_year=1800, end_year=1800):
    vocab = build_vocab(tokens, min_count)
    return train(
        tokens,
        vocab,
        TrainConfig(dim=4, min_count=min_count, epochs=1, seed=1),
        bin_index=bin_index,
        start_year=start_year,
        end_year=end_year,
    )


def test_four_token_bin():
    model = trained_bin("a b a c".split())
    series = frequency_series("a", [model], {0: 4})
    assert series.points == [(0, 2, 0.5)]


def test_absent_word_reads_zero():
    model = trained_bin("a b a c".split())
    series = frequency_series("zz", [model], {0: 4})
    assert series.points == [(0, 0, 0.0)]


def test_word_lowercased_before_lookup():
    model = trained_bin("a b a c".split())
    series = frequency_series("A", [model], {0: 4})
    assert series.points[0][2] == 0.5


def test_below_cutoff_word_reads_zero():
    model = trained_bin(["a"] * 5 + ["rare"], min_count=2)
    series = frequency_series("rare", [model], {0: 6})
    assert series.points == [(0, 0, 0.0)]


def test_vocabulary_frequencies_sum_below_one():
    tokens = ["a"] * 10 + ["b"] * 5 + ["rare"]  # "rare" falls below the cutoff
    model = trained_bin(tokens, min_count=2)
    total = sum(
        frequency_series(w, [model], {0: len(tokens)}).points[0][2]
        for w in model.vocab.words
    )
    assert total == pytest.approx(15 / 16)
    assert total <= 1.0


def test_multi_bin_series_ordered():
    models = [
        trained_bin("a a b".split(), bin_index=1, start_year=1810, end_year=1815),
        trained_bin("a b b b".split(), bin_index=0, start_year=1800, end_year=1805),
    ]
    series = frequency_series("a", models, {0: 4, 1: 3})
    assert [p[0] for p in series.points] == [0, 1]
    assert series.points[0][2] == pytest.approx(0.25)
    assert series.points[1][2] == pytest.approx(2 / 3)
    rows = series_rows(series)
    assert rows[0]["start_year"] == 1800
    assert rows[1]["end_year"] == 1815


def test_zero_token_count_rejected():
    model = make_model(["a"], [[1.0, 0.0]])
    with pytest.raises(ConfigError):
        frequency_series("a", [model], {0: 0})
