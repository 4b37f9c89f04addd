#!/usr/bin/env python3
"""End-to-end demo on a synthetic planted-bias corpus.

Generates a four-bin corpus whose target word drifts toward the planted
stream's negative poles, runs ingest -> train -> drift/bias/freq, and
prints the headline numbers. Everything lands under --workdir.

    python scripts/demo_pipeline.py --workdir demo_run
"""

import argparse
import csv
import json
import subprocess
import sys
from pathlib import Path

from chrono_embed.synth import BIAS_CONTROL, BIAS_TARGET


def run(cmd: list[str]) -> None:
    print("+", " ".join(cmd))
    subprocess.run(cmd, check=True)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workdir", required=True)
    parser.add_argument("--tokens-per-bin", type=int, default=100_000)
    parser.add_argument("--dim", type=int, default=48)
    parser.add_argument("--epochs", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    work = Path(args.workdir)
    work.mkdir(parents=True, exist_ok=True)
    here = Path(__file__).parent

    run(
        [
            sys.executable,
            str(here / "make_synthetic_corpus.py"),
            "--kind", "bias",
            "--tokens-per-bin", str(args.tokens_per_bin),
            "--seed", str(args.seed),
            "--out", str(work / "corpus"),
        ]
    )
    run(
        [
            "chrono-embed", "ingest",
            "--input", str(work / "corpus" / "corpus.jsonl"),
            "--keywords", str(work / "corpus" / "keywords.txt"),
            "--target-tokens", str(args.tokens_per_bin),
            "--out", str(work / "bins"),
        ]
    )
    run(
        [
            "chrono-embed", "train",
            "--bins", str(work / "bins"),
            "--out", str(work / "archive"),
            "--dim", str(args.dim),
            "--window", "5",
            "--min-count", "25",
            "--epochs", str(args.epochs),
            "--seed", str(args.seed),
            "--deterministic",
        ]
    )
    run(
        [
            "chrono-embed", "drift",
            "--archive", str(work / "archive"),
            "--word", BIAS_TARGET,
            "--k", "20",
            "--mode", "vs_first",
            "--diff", "0:3",
            "--out", str(work / "drift"),
        ]
    )
    run(
        [
            "chrono-embed", "bias",
            "--archive", str(work / "archive"),
            "--streams", str(work / "corpus" / "streams.json"),
            "--words", f"{BIAS_TARGET},{BIAS_CONTROL}",
            "--cumulative",
            "--out", str(work / "bias"),
        ]
    )
    run(
        [
            "chrono-embed", "freq",
            "--archive", str(work / "archive"),
            "--words", f"{BIAS_TARGET},{BIAS_CONTROL}",
            "--out", str(work / "freq"),
        ]
    )

    with open(work / "bias" / "bias.csv", encoding="utf-8") as fh:
        rows = [r for r in csv.DictReader(fh) if r["word"] == BIAS_TARGET]
    print("\nmean bias of the planted target per bin (positive = adverse):")
    for row in rows:
        print(
            f"  bin {row['bin_index']} ({row['start_year']}-{row['end_year']}): "
            f"{float(row['mean_bias']):+.3f} over {row['usable_pairs']} pairs"
        )
    plan = json.loads((work / "bins" / "bin_plan.json").read_text())
    print(f"\n{len(plan['bins'])} bins; outputs under {work}/: drift/, bias/, freq/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
