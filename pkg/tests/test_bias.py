import numpy as np
import pytest

from chrono_embed.bias import (
    AntonymPair,
    Stream,
    ZeroAxisSignal,
    bias_axis,
    bias_series,
    cumulative_bias,
    default_streams,
    load_streams,
    mean_bias,
    project,
    stream_variance,
)
from chrono_embed.errors import ConfigError, DataError, NoUsableAxisError, OOVError, PairSkip
from chrono_embed.sgns import TrainConfig, train
from chrono_embed.synth import BIAS_CONTROL, BIAS_TARGET, bias_bin_tokens, planted_stream
from chrono_embed.text import build_vocab

from conftest import make_model, random_model
from oracles import direct_mean_bias, eigen_variance_fractions


def pairs_of(words, rng, n):
    picks = rng.choice(len(words), size=(n, 2), replace=True)
    out = []
    for pos_i, neg_i in picks:
        if pos_i == neg_i:
            neg_i = (neg_i + 1) % len(words)
        out.append(AntonymPair(words[pos_i], words[neg_i]))
    return out


class TestTypes:
    def test_identical_poles_rejected(self):
        with pytest.raises(ConfigError):
            AntonymPair("même", "même")

    def test_empty_stream_rejected(self):
        with pytest.raises(ConfigError):
            Stream(name="vide", seed=AntonymPair("a", "b"), pairs=[])


class TestBiasAxis:
    def test_hand_computed(self):
        model = make_model(["neg", "pos"], [[0.0, 1.0], [1.0, 0.0]], dtype=np.float64)
        g = bias_axis(model, AntonymPair(positive="pos", negative="neg"))
        np.testing.assert_allclose(g, [-1.0, 1.0], atol=1e-15)

    def test_antisymmetry(self, rng):
        model = random_model(rng, 10, 5)
        forward = bias_axis(model, AntonymPair("w0001", "w0002"))
        backward = bias_axis(model, AntonymPair("w0002", "w0001"))
        np.testing.assert_allclose(forward, -backward, atol=1e-15)

    def test_oov_pole_signals_skip_with_word(self, rng):
        model = random_model(rng, 6, 4)
        with pytest.raises(PairSkip) as excinfo:
            bias_axis(model, AntonymPair("w0001", "manquant"))
        assert excinfo.value.word == "manquant"

    def test_identical_vectors_signal_zero_axis(self):
        model = make_model(["un", "deux"], [[1.0, 2.0], [1.0, 2.0]])
        with pytest.raises(ZeroAxisSignal):
            bias_axis(model, AntonymPair("un", "deux"))


class TestProject:
    def test_hand_computed(self):
        model = make_model(["w"], [[1.0, 0.0]], dtype=np.float64)
        assert project(model, "w", np.array([-1.0, 1.0])) == pytest.approx(-1.0, abs=1e-15)

    def test_orthogonal_word_projects_to_zero(self):
        model = make_model(
            ["w", "pos", "neg"],
            [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            dtype=np.float64,
        )
        g = bias_axis(model, AntonymPair("pos", "neg"))
        assert project(model, "w", g) == pytest.approx(0.0, abs=1e-15)

    def test_negative_pole_projects_adversely(self, rng):
        model = random_model(rng, 12, 6)
        g = bias_axis(model, AntonymPair("w0003", "w0007"))
        value = project(model, "w0007", g)
        # unit(neg).(unit(neg) - unit(pos)) = 1 - cos(neg, pos) >= 0
        assert value >= 0.0

    def test_oov_word(self, rng):
        model = random_model(rng, 6, 4)
        with pytest.raises(OOVError):
            project(model, "absent", np.zeros(4))


class TestMeanBias:
    def test_single_pair_equals_projection(self, rng):
        model = random_model(rng, 10, 5)
        pair = AntonymPair("w0001", "w0002")
        stream = Stream("solo", pair, [pair])
        b, usable = mean_bias(model, "w0005", stream)
        assert usable == 1
        assert b == pytest.approx(
            project(model, "w0005", bias_axis(model, pair)), abs=1e-15
        )

    def test_matches_direct_summation_oracle(self, rng):
        for _ in range(20):
            model = random_model(rng, 50, 10)
            pairs = pairs_of(model.vocab.words, rng, 5)
            stream = Stream("aléatoire", pairs[0], pairs)
            word = model.vocab.words[int(rng.integers(50))]
            b, usable = mean_bias(model, word, stream)
            want_b, want_usable = direct_mean_bias(
                model, word, [(p.positive, p.negative) for p in pairs]
            )
            assert usable == want_usable
            assert b == pytest.approx(want_b, abs=1e-12)

    def test_oov_pairs_skipped_and_counted(self, rng):
        model = random_model(rng, 10, 4)
        stream = Stream(
            "partiel",
            AntonymPair("w0001", "w0002"),
            [
                AntonymPair("w0001", "w0002"),
                AntonymPair("w0003", "absent"),
                AntonymPair("w0004", "w0005"),
            ],
        )
        _, usable = mean_bias(model, "w0000", stream)
        assert usable == 2

    def test_no_usable_pairs(self, rng):
        model = random_model(rng, 5, 4)
        stream = Stream("inconnu", AntonymPair("x", "y"), [AntonymPair("x", "y")])
        with pytest.raises(NoUsableAxisError):
            mean_bias(model, "w0000", stream)

    def test_oov_word_reported_before_stream_problems(self, rng):
        model = random_model(rng, 5, 4)
        stream = Stream("inconnu", AntonymPair("x", "y"), [AntonymPair("x", "y")])
        with pytest.raises(OOVError):
            mean_bias(model, "absent", stream)

    def test_linearity_equals_projection_on_mean_axis(self, rng):
        model = random_model(rng, 30, 8)
        pairs = pairs_of(model.vocab.words, rng, 6)
        stream = Stream("lin", pairs[0], pairs)
        b, _ = mean_bias(model, "w0010", stream)
        mean_axis = np.mean([bias_axis(model, p) for p in pairs], axis=0)
        assert b == pytest.approx(project(model, "w0010", mean_axis), abs=1e-12)

    def test_swapping_poles_negates_bias(self, rng):
        model = random_model(rng, 20, 6)
        pairs = pairs_of(model.vocab.words, rng, 4)
        swapped = [AntonymPair(p.negative, p.positive) for p in pairs]
        b_forward, _ = mean_bias(model, "w0009", Stream("s", pairs[0], pairs))
        b_backward, _ = mean_bias(model, "w0009", Stream("s", swapped[0], swapped))
        assert b_forward == pytest.approx(-b_backward, abs=1e-15)


class TestStreamVariance:
    def test_identical_axes_fully_concentrated(self):
        # two pairs built from the same pole vectors produce identical axes
        vecs = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
        model = make_model(["p1", "n1", "p2", "n2"], vecs, dtype=np.float64)
        stream = Stream(
            "dub", AntonymPair("p1", "n1"), [AntonymPair("p1", "n1"), AntonymPair("p2", "n2")]
        )
        fractions = stream_variance(model, stream)
        assert fractions[0] == pytest.approx(1.0, abs=1e-9)
        assert fractions.sum() == pytest.approx(1.0, abs=1e-9)

    def test_random_axes_match_eigen_oracle(self, rng):
        model = random_model(rng, 20, 10)
        pairs = pairs_of(model.vocab.words, rng, 3)
        stream = Stream("r", pairs[0], pairs)
        got = stream_variance(model, stream)
        axes = [bias_axis(model, p) for p in pairs]
        want = eigen_variance_fractions(axes)
        np.testing.assert_allclose(got, want, atol=1e-6)

    def test_fractions_descending_nonnegative_sum_one(self, rng):
        model = random_model(rng, 30, 8)
        pairs = pairs_of(model.vocab.words, rng, 6)
        fractions = stream_variance(model, Stream("p", pairs[0], pairs))
        assert np.all(fractions >= 0)
        assert np.all(np.diff(fractions) <= 1e-12)
        assert fractions.sum() == pytest.approx(1.0, abs=1e-9)

    def test_needs_two_usable_axes(self, rng):
        model = random_model(rng, 10, 4)
        stream = Stream(
            "mince",
            AntonymPair("w0001", "w0002"),
            [AntonymPair("w0001", "w0002"), AntonymPair("w0003", "absent")],
        )
        with pytest.raises(DataError):
            stream_variance(model, stream)


class TestCumulativeBias:
    def test_equals_direct_sum(self, rng):
        model = random_model(rng, 30, 6)
        streams = []
        for s in range(4):
            pairs = pairs_of(model.vocab.words, rng, 3)
            streams.append(Stream(f"s{s}", pairs[0], pairs))
        total = cumulative_bias(model, "w0011", streams)
        want = sum(mean_bias(model, "w0011", s)[0] for s in streams)
        assert total == pytest.approx(want, abs=1e-12)

    def test_zero_biases_sum_to_zero(self):
        # word orthogonal to every pole: all projections vanish
        vecs = np.eye(5, dtype=np.float64)
        model = make_model(["w", "p1", "n1", "p2", "n2"], vecs, dtype=np.float64)
        streams = [
            Stream("a", AntonymPair("p1", "n1"), [AntonymPair("p1", "n1")]),
            Stream("b", AntonymPair("p2", "n2"), [AntonymPair("p2", "n2")]),
        ]
        assert cumulative_bias(model, "w", streams) == pytest.approx(0.0, abs=1e-15)


class TestBiasSeries:
    def test_single_bin_single_point(self, rng):
        model = random_model(rng, 20, 5)
        pairs = pairs_of(model.vocab.words, rng, 3)
        series = bias_series("w0004", Stream("s", pairs[0], pairs), [model])
        assert len(series.points) == 1

    def test_identical_models_constant_series(self, rng):
        base = random_model(rng, 20, 5)
        models = []
        for i in range(4):
            m = make_model(base.vocab.words, base.input_vectors, bin_index=i)
            models.append(m)
        pairs = pairs_of(base.vocab.words, rng, 3)
        series = bias_series("w0004", Stream("s", pairs[0], pairs), models)
        values = [b for _, b, _ in series.points]
        assert max(values) - min(values) == pytest.approx(0.0, abs=1e-15)

    def test_oov_bins_skipped(self, rng):
        models = [random_model(rng, 20, 5, bin_index=0)]
        models.append(make_model(["autre", "chose", "ici"], np.eye(3), bin_index=1))
        pairs = [AntonymPair("w0001", "w0002")]
        series = bias_series("w0004", Stream("s", pairs[0], pairs), models)
        assert series.skipped_bins == [1]
        assert len(series.points) == 1

    def test_oov_everywhere_raises(self, rng):
        models = [random_model(rng, 10, 4, bin_index=0)]
        pairs = [AntonymPair("w0001", "w0002")]
        with pytest.raises(OOVError):
            bias_series("absent", Stream("s", pairs[0], pairs), models)


class TestSignConvention:
    def test_word_at_negative_pole_is_adverse(self):
        vecs = [[0.0, 1.0], [1.0, 0.0], [0.0, 1.0]]
        model = make_model(["mauvais", "bon", "cible"], vecs, dtype=np.float64)
        stream = Stream(
            "seul",
            AntonymPair(positive="bon", negative="mauvais"),
            [AntonymPair(positive="bon", negative="mauvais")],
        )
        b, _ = mean_bias(model, "cible", stream)
        assert b >= 0.0
        assert b == pytest.approx(1.0, abs=1e-12)  # 1 - cos(neg, pos), poles orthogonal


class TestStreamConfig:
    def test_default_streams_shape(self):
        streams = default_streams()
        assert [s.name for s in streams] == [
            "religious",
            "economic",
            "socio-political",
            "racial",
            "conspiratorial",
            "ethic",
        ]
        assert [len(s.pairs) for s in streams] == [12, 5, 9, 14, 11, 10]
        religious = streams[0]
        assert religious.seed == AntonymPair("believer", "unbeliever")

    def test_duplicate_names_rejected(self, tmp_path):
        cfg = {
            "streams": [
                {"name": "x", "seed_pos": "a", "seed_neg": "b", "pairs": [{"pos": "a", "neg": "b"}]},
                {"name": "x", "seed_pos": "c", "seed_neg": "d", "pairs": [{"pos": "c", "neg": "d"}]},
            ]
        }
        path = tmp_path / "streams.json"
        import json

        path.write_text(json.dumps(cfg), encoding="utf-8")
        with pytest.raises(ConfigError):
            load_streams(path)

    def test_round_trips_through_loader(self, tmp_path):
        import json

        cfg = {
            "streams": [
                {
                    "name": "petit",
                    "seed_pos": "bien",
                    "seed_neg": "mal",
                    "pairs": [{"pos": "bien", "neg": "mal"}],
                }
            ]
        }
        path = tmp_path / "streams.json"
        path.write_text(json.dumps(cfg), encoding="utf-8")
        streams = load_streams(path)
        assert streams[0].pairs == [AntonymPair("bien", "mal")]


def test_planted_bias_two_phase_series_increases():
    rng = np.random.default_rng(17)
    stream = planted_stream()
    models = []
    for i, fraction in enumerate((0.1, 0.9)):
        toks = bias_bin_tokens(rng, 60_000, fraction)
        cfg = TrainConfig(dim=32, window=5, min_count=15, epochs=3, seed=17 + i)
        models.append(train(toks, build_vocab(toks, 15), cfg, bin_index=i))
    series = bias_series(BIAS_TARGET, stream, models)
    values = [b for _, b, _ in series.points]
    assert values[1] > values[0]

    adverse_model = models[1]
    b_target, _ = mean_bias(adverse_model, BIAS_TARGET, stream)
    b_control, _ = mean_bias(adverse_model, BIAS_CONTROL, stream)
    assert b_target > 0
    assert b_target > b_control
