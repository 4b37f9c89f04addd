"""Command-line pipeline: ingest -> train -> drift / bias / freq.

Exit codes: 0 success, 1 usage error, 2 data error. Failures emit one
machine-readable JSON line on stderr. Every command writes a manifest named
manifest_<command>.json into its output directory; CSVs are the
authoritative outputs and SVG charts render the same series.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bias as bias_mod
from . import corpus as corpus_mod
from . import drift as drift_mod
from . import freq as freq_mod
from . import reportio, store, svgplot
from .errors import ChronoEmbedError, ConfigError, DataError
from .manifest import RunManifest, file_sha256
from .sgns import TrainConfig, train
from .text import TOKENIZER_SPEC, build_vocab, tokenize

THREADS_ENV = "CHRONO_EMBED_THREADS"


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage problems; the pipeline reserves 2 for
    data errors, so remap usage to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        _emit_error("usage", message)
        sys.exit(1)


def _emit_error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def _cap_workers(requested: int) -> int:
    cap = os.environ.get(THREADS_ENV)
    if cap is not None:
        try:
            return max(1, min(requested, int(cap)))
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {cap!r}")
    return requested


def _split_words(raw: str) -> list[str]:
    words = [w.strip() for w in raw.split(",") if w.strip()]
    return list(dict.fromkeys(words))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chrono-embed", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", help="filter a JSONL corpus and plan time bins")
    p.add_argument("--input", required=True, help="JSON Lines corpus file")
    p.add_argument("--keywords", help="keyword file, one per line (default: shipped list)")
    p.add_argument("--min-ocr", type=float, default=corpus_mod.DEFAULT_MIN_OCR)
    p.add_argument(
        "--target-tokens", type=int, default=corpus_mod.DEFAULT_TARGET_TOKENS
    )
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("train", help="train one embedding model per bin")
    p.add_argument("--bins", required=True, help="directory produced by ingest")
    p.add_argument("--out", required=True, help="archive directory")
    p.add_argument("--dim", type=int, default=TrainConfig.dim)
    p.add_argument("--window", type=int, default=TrainConfig.window)
    p.add_argument("--min-count", type=int, default=TrainConfig.min_count)
    p.add_argument("--negatives", type=int, default=TrainConfig.negatives)
    p.add_argument("--epochs", type=int, default=TrainConfig.epochs)
    p.add_argument("--lr", type=float, default=TrainConfig.initial_lr)
    p.add_argument("--subsample", type=float, default=TrainConfig.subsample_threshold)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument(
        "--deterministic",
        action="store_true",
        help="force single-worker bit-reproducible training",
    )
    p.add_argument("--fixed-window", action="store_true", help="disable dynamic windows")
    p.add_argument(
        "--save-output-vectors",
        action="store_true",
        help="persist context matrices next to the input matrices",
    )

    p = sub.add_parser("drift", help="neighborhood change series for one word")
    p.add_argument("--archive", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--k", type=int, default=store.DEFAULT_K)
    p.add_argument("--mode", choices=("vs_first", "vs_previous"), default="vs_first")
    p.add_argument(
        "--diff",
        metavar="A:B",
        help="also write introduced/eliminated neighbors between bins A and B",
    )
    p.add_argument("--out", required=True)

    p = sub.add_parser("bias", help="stream-bias series for words")
    p.add_argument("--archive", required=True)
    p.add_argument("--streams", help="stream config JSON (default: shipped six streams)")
    p.add_argument("--words", required=True, help="comma-separated target words")
    p.add_argument(
        "--cumulative",
        action="store_true",
        help="also sum each word's bias over all streams per bin",
    )
    p.add_argument("--out", required=True)

    p = sub.add_parser("freq", help="relative-frequency series for words")
    p.add_argument("--archive", required=True)
    p.add_argument("--words", required=True, help="comma-separated target words")
    p.add_argument("--out", required=True)

    return parser


def _cmd_ingest(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(
        command="ingest",
        config={
            "input": args.input,
            "keywords": args.keywords,
            "min_ocr": args.min_ocr,
            "target_tokens": args.target_tokens,
            "tokenizer": TOKENIZER_SPEC,
        },
    )
    manifest.hash_input(args.input)
    if args.keywords:
        kw = corpus_mod.KeywordSet.load(args.keywords)
        manifest.hash_input(args.keywords)
    else:
        kw = corpus_mod.default_keywords()

    docs, warnings = corpus_mod.read_jsonl(args.input)
    for w in warnings:
        manifest.warn(w)
    kept = list(corpus_mod.filter_documents(docs, kw, args.min_ocr))
    manifest.warn(
        f"{len(docs) - len(kept)} of {len(docs)} parsed documents dropped by filter"
    )
    bins = corpus_mod.plan_bins(kept, args.target_tokens)

    with open(out / "filtered.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        for doc in kept:
            fh.write(
                json.dumps(
                    {
                        "id": doc.id,
                        "year": doc.year,
                        "kind": doc.kind,
                        "ocr_quality": doc.ocr_quality,
                        "text": doc.text,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
    corpus_mod.save_bin_plan(bins, out / "bin_plan.json")
    reportio.write_csv(
        out / "bin_report.csv",
        ["index", "start_year", "end_year", "token_count", "doc_count"],
        corpus_mod.bin_report(bins),
    )
    manifest.write(out / "manifest_ingest.json")
    return 0


def _cmd_train(args) -> int:
    bins_dir = Path(args.bins)
    plan_path = bins_dir / "bin_plan.json"
    docs_path = bins_dir / "filtered.jsonl"
    if not plan_path.exists():
        raise DataError(f"missing bin plan {plan_path}")
    if not docs_path.exists():
        raise DataError(f"missing filtered corpus {docs_path}")

    cfg = TrainConfig(
        dim=args.dim,
        window=args.window,
        min_count=args.min_count,
        negatives=args.negatives,
        epochs=args.epochs,
        initial_lr=args.lr,
        subsample_threshold=args.subsample,
        seed=args.seed,
        dynamic_window=not args.fixed_window,
        workers=1 if args.deterministic else _cap_workers(args.workers),
    )
    manifest = RunManifest(
        command="train",
        config={
            **cfg.to_dict(),
            "deterministic": args.deterministic or cfg.workers == 1,
            "tokenizer": TOKENIZER_SPEC,
        },
    )
    manifest.inputs["corpus_hash"] = file_sha256(docs_path)
    manifest.hash_input(plan_path)

    bins = corpus_mod.load_bin_plan(plan_path)
    docs, warnings = corpus_mod.read_jsonl(docs_path)
    for w in warnings:
        manifest.warn(w)
    text_of = {doc.id: doc.text for doc in docs}

    archive = store.EmbeddingArchive(args.out)
    for tbin in bins:
        tokens: list[str] = []
        for doc_id in tbin.doc_ids:
            if doc_id not in text_of:
                raise DataError(f"bin {tbin.index} references unknown document {doc_id!r}")
            tokens.extend(tokenize(text_of[doc_id]))
        vocab = build_vocab(tokens, cfg.min_count)
        if len(vocab) == 0:
            manifest.warn(
                f"bin {tbin.index} ({tbin.year_label()}): no word reaches "
                f"min_count={cfg.min_count}; bin skipped"
            )
            continue
        model = train(
            tokens,
            vocab,
            cfg,
            bin_index=tbin.index,
            start_year=tbin.start_year,
            end_year=tbin.end_year,
        )
        archive.add(model, token_count=tbin.token_count, include_output=args.save_output_vectors)
    manifest.write(Path(args.out) / "manifest_train.json")
    return 0


def _year_ticks(years: dict[int, tuple[int, int]]) -> list[tuple[float, str]]:
    ticks = []
    for bin_index in sorted(years):
        y0, y1 = years[bin_index]
        label = str(y0) if y0 == y1 else f"{y0}-{y1}"
        ticks.append((float(bin_index), label))
    return ticks


def _cmd_drift(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(
        command="drift",
        config={"word": args.word, "k": args.k, "mode": args.mode, "diff": args.diff},
    )
    archive = store.EmbeddingArchive(args.archive)
    models = archive.load_all()
    series = drift_mod.drift_series(args.word, models, k=args.k, mode=args.mode)
    for bin_index in series.skipped_bins:
        manifest.warn(f"word {args.word!r} OOV in bin {bin_index}; bin skipped")

    stem = f"drift_{args.word}_{args.mode}"
    reportio.write_csv(
        out / f"{stem}.csv", drift_mod.DRIFT_CSV_FIELDS, drift_mod.series_rows(series)
    )
    svgplot.line_chart(
        out / f"{stem}.svg",
        f"Local neighborhood change: {args.word} ({args.mode})",
        [(args.mode, [(float(b), d) for b, d in series.points])],
        x_ticks=_year_ticks(series.years),
        y_label="cosine distance",
    )

    if args.diff:
        try:
            a_str, b_str = args.diff.split(":")
            bin_a, bin_b = int(a_str), int(b_str)
        except ValueError:
            raise ConfigError(f"--diff expects A:B bin indices, got {args.diff!r}")
        introduced, eliminated = drift_mod.neighbor_diff(
            args.word, archive.load_bin(bin_a), archive.load_bin(bin_b), k=args.k
        )
        reportio.write_csv(
            out / f"diff_{args.word}_{bin_a}_{bin_b}.csv",
            drift_mod.DIFF_CSV_FIELDS,
            drift_mod.diff_rows(args.word, introduced, eliminated),
        )
    manifest.write(out / "manifest_drift.json")
    return 0


def _cmd_bias(args) -> int:
    words = _split_words(args.words)
    if not words:
        raise ConfigError("--words must name at least one word")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(
        command="bias",
        config={
            "words": words,
            "streams": args.streams,
            "cumulative": args.cumulative,
        },
    )
    if args.streams:
        streams = bias_mod.load_streams(args.streams)
        manifest.hash_input(args.streams)
    else:
        streams = bias_mod.default_streams()

    archive = store.EmbeddingArchive(args.archive)
    models = archive.load_all()

    rows = []
    per_word_series: dict[str, list[bias_mod.BiasSeries]] = {}
    for word in words:
        for stream in streams:
            series = bias_mod.bias_series(word, stream, models)
            for bin_index in series.skipped_bins:
                manifest.warn(f"word {word!r} OOV in bin {bin_index}; bin skipped")
            rows.extend(bias_mod.series_rows(series))
            per_word_series.setdefault(word, []).append(series)
    reportio.write_csv(out / "bias.csv", bias_mod.BIAS_CSV_FIELDS, rows)

    for word, series_list in per_word_series.items():
        svgplot.line_chart(
            out / f"bias_{word}.svg",
            f"Stream bias: {word} (positive = adverse)",
            [
                (s.stream, [(float(b), v) for b, v, _ in s.points])
                for s in series_list
            ],
            x_ticks=_year_ticks(series_list[0].years),
            y_label="mean bias",
            zero_line=True,
        )

    if args.cumulative:
        cum_rows = []
        cum_series = []
        for word, series_list in per_word_series.items():
            totals: dict[int, float] = {}
            years: dict[int, tuple[int, int]] = {}
            usable: dict[int, bool] = {}
            for s in series_list:
                for bin_index, value, _ in s.points:
                    totals[bin_index] = totals.get(bin_index, 0.0) + value
                    usable[bin_index] = usable.get(bin_index, True)
                years.update(s.years)
            pts = sorted(totals.items())
            cum_series.append((word, [(float(b), v) for b, v in pts]))
            for bin_index, value in pts:
                y0, y1 = years[bin_index]
                cum_rows.append(
                    {
                        "word": word,
                        "bin_index": bin_index,
                        "start_year": y0,
                        "end_year": y1,
                        "cumulative_bias": value,
                    }
                )
        reportio.write_csv(
            out / "cumulative.csv",
            ["word", "bin_index", "start_year", "end_year", "cumulative_bias"],
            cum_rows,
        )
        all_years: dict[int, tuple[int, int]] = {}
        for series_list in per_word_series.values():
            for s in series_list:
                all_years.update(s.years)
        svgplot.line_chart(
            out / "cumulative.svg",
            "Cumulative bias (positive = adverse)",
            cum_series,
            x_ticks=_year_ticks(all_years),
            y_label="sum of stream biases",
            zero_line=True,
        )
    manifest.write(out / "manifest_bias.json")
    return 0


def _cmd_freq(args) -> int:
    words = _split_words(args.words)
    if not words:
        raise ConfigError("--words must name at least one word")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(command="freq", config={"words": words})
    archive = store.EmbeddingArchive(args.archive)
    models = archive.load_all()
    token_counts = {e["index"]: e["token_count"] for e in archive.iter_entries()}

    rows = []
    chart_series = []
    years: dict[int, tuple[int, int]] = {}
    for word in words:
        series = freq_mod.frequency_series(word, models, token_counts)
        rows.extend(freq_mod.series_rows(series))
        chart_series.append(
            (word, [(float(b), f) for b, _, f in series.points])
        )
        years.update(series.years)
    reportio.write_csv(out / "freq.csv", freq_mod.FREQ_CSV_FIELDS, rows)
    svgplot.line_chart(
        out / "freq.svg",
        "Relative frequency",
        chart_series,
        x_ticks=_year_ticks(years),
        y_label="count / bin tokens",
    )
    manifest.write(out / "manifest_freq.json")
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "train": _cmd_train,
    "drift": _cmd_drift,
    "bias": _cmd_bias,
    "freq": _cmd_freq,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        _emit_error("usage", str(exc))
        return 1
    except (ChronoEmbedError, OSError) as exc:
        _emit_error("data", str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
