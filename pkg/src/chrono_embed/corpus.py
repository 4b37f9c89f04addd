"""Document ingestion, keyword/OCR filtering and token-balanced time binning.

Input corpora are JSON Lines, one document per line:

    {"id": "...", "year": 1886, "kind": "book", "ocr_quality": 0.99, "text": "..."}

Unknown fields are ignored. Binning is a greedy chronological fold: whole
years are appended to the current bin until its token count first reaches
the target, so every bin except possibly the last holds at least
`target_tokens` tokens and a year is never split across bins.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ConfigError, DataError
from .text import tokenize

DEFAULT_MIN_OCR = 0.98
DEFAULT_TARGET_TOKENS = 450_000_000

DOC_KINDS = ("book", "periodical")


@dataclass
class Document:
    id: str
    year: int
    kind: str  # "book" | "periodical"
    ocr_quality: float
    text: str

    def __post_init__(self):
        if self.kind not in DOC_KINDS:
            raise DataError(f"document {self.id!r}: unknown kind {self.kind!r}")
        if not 0.0 <= self.ocr_quality <= 1.0:
            raise DataError(
                f"document {self.id!r}: ocr_quality {self.ocr_quality} outside [0, 1]"
            )


@dataclass
class KeywordSet:
    """Keywords for corpus selection. Matching is whole-token and
    case-insensitive but diacritics-sensitive ("israël" does not match
    "israel")."""

    keywords: list[str]

    def __post_init__(self):
        if not self.keywords:
            raise ConfigError("keyword set must not be empty")
        self._lowered = frozenset(k.lower() for k in self.keywords)

    def __len__(self) -> int:
        return len(self.keywords)

    def matches(self, text: str) -> bool:
        return any(tok in self._lowered for tok in tokenize(text))

    @classmethod
    def load(cls, path: str | Path) -> "KeywordSet":
        """One keyword per line; blank lines and '#' comments skipped."""
        kws = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                kws.append(line)
        return cls(kws)


def default_keywords() -> KeywordSet:
    return KeywordSet.load(Path(__file__).parent / "data" / "keywords_default.txt")


@dataclass
class TimeBin:
    index: int
    start_year: int
    end_year: int
    token_count: int
    doc_ids: list[str] = field(default_factory=list)

    def year_label(self) -> str:
        if self.start_year == self.end_year:
            return str(self.start_year)
        return f"{self.start_year}-{self.end_year}"


def filter_documents(
    docs: Iterable[Document], kw: KeywordSet, min_ocr: float = DEFAULT_MIN_OCR
) -> Iterator[Document]:
    """Yield the docs with ocr_quality >= min_ocr containing >= 1 keyword,
    preserving input order."""
    if not 0.0 <= min_ocr <= 1.0:
        raise ConfigError(f"min_ocr must be in [0, 1], got {min_ocr}")
    if len(kw) == 0:
        raise ConfigError("keyword set must not be empty")
    for doc in docs:
        if doc.ocr_quality >= min_ocr and kw.matches(doc.text):
            yield doc


def plan_bins(docs: Iterable[Document], target_tokens: int) -> list[TimeBin]:
    """Partition `docs` into chronological bins of >= target_tokens tokens.

    All docs of one year land in one bin; the last bin may be short. An
    empty stream yields an empty plan.
    """
    if target_tokens <= 0:
        raise ConfigError(f"target_tokens must be > 0, got {target_tokens}")

    tokens_of_year: dict[int, int] = {}
    ids_of_year: dict[int, list[str]] = {}
    for doc in docs:
        n_tokens = len(tokenize(doc.text))
        tokens_of_year[doc.year] = tokens_of_year.get(doc.year, 0) + n_tokens
        ids_of_year.setdefault(doc.year, []).append(doc.id)

    bins: list[TimeBin] = []
    current: TimeBin | None = None
    for year in sorted(tokens_of_year):
        year_tokens, year_ids = tokens_of_year[year], ids_of_year[year]
        if current is None:
            current = TimeBin(
                index=len(bins), start_year=year, end_year=year, token_count=0
            )
        current.end_year = year
        current.token_count += year_tokens
        current.doc_ids.extend(year_ids)
        if current.token_count >= target_tokens:
            bins.append(current)
            current = None
    if current is not None:
        bins.append(current)
    return bins


def bin_report(bins: list[TimeBin]) -> list[dict]:
    """One CSV-serializable row per bin."""
    return [
        {
            "index": b.index,
            "start_year": b.start_year,
            "end_year": b.end_year,
            "token_count": b.token_count,
            "doc_count": len(b.doc_ids),
        }
        for b in bins
    ]


def save_bin_plan(bins: list[TimeBin], path: str | Path) -> None:
    payload = {
        "bins": [
            {
                "index": b.index,
                "start_year": b.start_year,
                "end_year": b.end_year,
                "token_count": b.token_count,
                "doc_ids": b.doc_ids,
            }
            for b in bins
        ]
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, indent=1)
        fh.write("\n")


def load_bin_plan(path: str | Path) -> list[TimeBin]:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    return [
        TimeBin(
            index=entry["index"],
            start_year=entry["start_year"],
            end_year=entry["end_year"],
            token_count=entry["token_count"],
            doc_ids=list(entry["doc_ids"]),
        )
        for entry in payload["bins"]
    ]


def read_jsonl(path: str | Path) -> tuple[list[Document], list[str]]:
    """Parse a JSON Lines corpus file.

    Returns (documents, warnings). Malformed lines and documents with a
    missing or unparseable year are skipped, each with a warning; they never
    abort the run.
    """
    docs: list[Document] = []
    warnings: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                warnings.append(f"line {lineno}: malformed JSON ({exc.msg})")
                continue
            year = raw.get("year")
            if not isinstance(year, int) or isinstance(year, bool):
                warnings.append(
                    f"line {lineno}: document {raw.get('id')!r} rejected, "
                    f"missing or unparseable year {year!r}"
                )
                continue
            if not isinstance(raw.get("text"), str):
                warnings.append(
                    f"line {lineno}: document {raw.get('id')!r} rejected, "
                    "text field missing or not a string"
                )
                continue
            try:
                docs.append(
                    Document(
                        id=str(raw["id"]),
                        year=year,
                        kind=raw["kind"],
                        ocr_quality=float(raw["ocr_quality"]),
                        text=raw["text"],
                    )
                )
            except (KeyError, TypeError, ValueError, DataError) as exc:
                warnings.append(f"line {lineno}: document rejected ({exc})")
    return docs, warnings
