"""Tokenization and per-bin vocabulary construction.

The tokenizer is deliberately simple: lowercase, keep only runs of Unicode
letters. That splits on whitespace and punctuation, breaks apostrophe
elisions ("l'usurier" -> "l", "usurier"), drops digits and pure-punctuation
tokens, and preserves diacritics ("antisémitisme" stays intact).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import ConfigError

DEFAULT_MIN_COUNT = 25

# Recorded in every run manifest so archives document their own tokenization.
TOKENIZER_SPEC = "lowercase; Unicode letter runs; elisions split; digits and punctuation dropped"

# Runs of Unicode letters: \w minus digits and underscore.
_LETTER_RUN = re.compile(r"[^\W\d_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercase `text` and return its letter-run tokens."""
    return _LETTER_RUN.findall(text.lower())


@dataclass
class Vocabulary:
    """Immutable word <-> id mapping with exact corpus counts.

    Ids are contiguous 0..|V|-1, assigned by descending count with
    lexicographic tie-break, so identical corpora always produce identical
    vocabularies (archives are byte-reproducible).
    """

    words: list[str]
    counts: list[int]
    min_count: int
    id_of: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.id_of = {w: i for i, w in enumerate(self.words)}

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.id_of

    def word_of(self, idx: int) -> str:
        return self.words[idx]

    def count(self, word: str) -> int:
        idx = self.id_of.get(word)
        return 0 if idx is None else self.counts[idx]

    def total_count(self) -> int:
        return sum(self.counts)

    def save_sidecar(self, path: str | Path) -> None:
        """Write the sidecar file: one "word<TAB>count" line per entry, id order."""
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for word, cnt in zip(self.words, self.counts):
                fh.write(f"{word}\t{cnt}\n")

    @classmethod
    def load_sidecar(cls, path: str | Path, min_count: int | None = None) -> "Vocabulary":
        """Read a sidecar file. min_count is not stored in the sidecar; pass it
        (e.g. from an archive index) or it is inferred as the smallest count."""
        words: list[str] = []
        counts: list[int] = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                word, cnt = line.split("\t")
                words.append(word)
                counts.append(int(cnt))
        if min_count is None:
            min_count = min(counts) if counts else 1
        return cls(words=words, counts=counts, min_count=min_count)


def build_vocab(tokens: Iterable[str], min_count: int = DEFAULT_MIN_COUNT) -> Vocabulary:
    """Count `tokens` and keep exactly those with frequency >= min_count."""
    if min_count < 1:
        raise ConfigError(f"min_count must be >= 1, got {min_count}")
    raw = Counter(tokens)
    kept = [(w, c) for w, c in raw.items() if c >= min_count]
    kept.sort(key=lambda wc: (-wc[1], wc[0]))
    return Vocabulary(
        words=[w for w, _ in kept],
        counts=[c for _, c in kept],
        min_count=min_count,
    )


def merge_counts(parts: Iterable[Counter]) -> Counter:
    """Associatively combine per-shard token counts."""
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return total
