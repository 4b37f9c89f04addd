#!/usr/bin/env python3
"""Generate a synthetic planted-effect corpus for pipeline experiments.

Writes a JSON Lines corpus plus the matching keyword file and, for the bias
variant, the planted stream config:

    python scripts/make_synthetic_corpus.py --kind drift --out demo_corpus
    python scripts/make_synthetic_corpus.py --kind bias --tokens-per-bin 100000 --out demo_corpus
"""

import argparse
import json
from pathlib import Path

from chrono_embed.synth import (
    BIAS_TARGET,
    DRIFT_TARGET,
    planted_bias_docs,
    planted_drift_docs,
    planted_stream,
)


def write_jsonl(path: Path, docs) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
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


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kind", choices=("drift", "bias"), default="drift")
    parser.add_argument("--tokens-per-bin", type=int, default=200_000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--out", required=True, help="output directory")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    if args.kind == "drift":
        docs = planted_drift_docs(seed=args.seed, tokens_per_bin=args.tokens_per_bin)
        keyword = DRIFT_TARGET
    else:
        docs = planted_bias_docs(
            seed=args.seed,
            tokens_per_bin=args.tokens_per_bin,
            adverse_fractions=(0.1, 0.3, 0.6, 0.9),
        )
        keyword = BIAS_TARGET
        stream = planted_stream()
        (out / "streams.json").write_text(
            json.dumps(
                {
                    "streams": [
                        {
                            "name": stream.name,
                            "seed_pos": stream.seed.positive,
                            "seed_neg": stream.seed.negative,
                            "pairs": [
                                {"pos": p.positive, "neg": p.negative}
                                for p in stream.pairs
                            ],
                        }
                    ]
                },
                indent=1,
            )
            + "\n",
            encoding="utf-8",
        )

    write_jsonl(out / "corpus.jsonl", docs)
    (out / "keywords.txt").write_text(keyword + "\n", encoding="utf-8")
    print(f"wrote {len(docs)} documents under {out}/")
    print(f"  corpus.jsonl, keywords.txt" + (", streams.json" if args.kind == "bias" else ""))
    print(f"suggested next step:")
    print(
        f"  chrono-embed ingest --input {out}/corpus.jsonl "
        f"--keywords {out}/keywords.txt --target-tokens {args.tokens_per_bin} "
        f"--out {out}/bins"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
