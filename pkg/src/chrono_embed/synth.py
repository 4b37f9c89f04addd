"""Synthetic corpora with planted effects.

Desk-scale stand-ins for the full historical corpus: small vocabularies of
filler and context-group words, with one target word whose context group
swaps between bins (drift experiments) or gravitates toward a stream's
negative poles (bias experiments), next to a stable control word. Used by
the verification suite and the scripts/ demos.
"""

from __future__ import annotations

import numpy as np

from .bias import AntonymPair, Stream
from .corpus import Document

DRIFT_TARGET = "cible"
DRIFT_CONTROL = "temoin"
BIAS_TARGET = "cible"
BIAS_CONTROL = "temoin"


def _suffix(i: int) -> str:
    # letters only: the tokenizer drops digits, so word ids must survive it
    return chr(97 + i // 26) + chr(97 + i % 26)


_FILLERS = [f"mot{_suffix(i)}" for i in range(150)]
_GROUP_A = [f"ancien{_suffix(i)}" for i in range(15)]
_GROUP_B = [f"nouveau{_suffix(i)}" for i in range(15)]
_GROUP_C = [f"stable{_suffix(i)}" for i in range(15)]

_POS_POLES = [f"clair{_suffix(i)}" for i in range(5)]
_NEG_POLES = [f"sombre{_suffix(i)}" for i in range(5)]
_LIGHT_CTX = [f"doux{_suffix(i)}" for i in range(10)]
_DARK_CTX = [f"amer{_suffix(i)}" for i in range(10)]


def planted_stream() -> Stream:
    """Five-pair stream whose poles the bias corpora plant."""
    return Stream(
        name="planted",
        seed=AntonymPair(_POS_POLES[0], _NEG_POLES[0]),
        pairs=[AntonymPair(p, n) for p, n in zip(_POS_POLES, _NEG_POLES)],
    )


def _sentence(rng: np.random.Generator, focus: str, group: list[str]) -> list[str]:
    ctx = rng.choice(len(group), size=4)
    return [group[ctx[0]], group[ctx[1]], focus, group[ctx[2]], group[ctx[3]]]


def _background(
    rng: np.random.Generator, n: int = 8, sprinkle: list[str] | None = None
) -> list[str]:
    """Filler sentence; with a small rate, draws from `sprinkle` so those
    words stay above the vocabulary cutoff in every bin."""
    picks = rng.choice(len(_FILLERS), size=n)
    out = [_FILLERS[i] for i in picks]
    if sprinkle is not None and rng.random() < 0.25:
        out[int(rng.integers(n))] = sprinkle[int(rng.integers(len(sprinkle)))]
    return out


def drift_bin_tokens(
    rng: np.random.Generator, n_tokens: int, swapped: bool
) -> list[str]:
    """One bin's token stream. The target's contexts come from group A, or
    from group B when swapped; the control always uses group C."""
    target_group = _GROUP_B if swapped else _GROUP_A
    groups = _GROUP_A + _GROUP_B + _GROUP_C
    out: list[str] = []
    while len(out) < n_tokens:
        roll = rng.random()
        if roll < 0.10:
            out.extend(_sentence(rng, DRIFT_TARGET, target_group))
        elif roll < 0.20:
            out.extend(_sentence(rng, DRIFT_CONTROL, _GROUP_C))
        else:
            out.extend(_background(rng, sprinkle=groups))
    return out[:n_tokens]


def bias_bin_tokens(
    rng: np.random.Generator, n_tokens: int, adverse_fraction: float
) -> list[str]:
    """One bin's token stream. With probability adverse_fraction a target
    sentence surrounds the target with the planted stream's negative poles,
    otherwise with neutral light-context words. Pole words also occur in
    their own contexts so every axis is buildable."""
    poles = _POS_POLES + _NEG_POLES
    out: list[str] = []
    while len(out) < n_tokens:
        roll = rng.random()
        if roll < 0.10:
            if rng.random() < adverse_fraction:
                out.extend(_sentence(rng, BIAS_TARGET, _NEG_POLES))
            else:
                out.extend(_sentence(rng, BIAS_TARGET, _LIGHT_CTX))
        elif roll < 0.20:
            out.extend(_sentence(rng, BIAS_CONTROL, _FILLERS[:20]))
        elif roll < 0.30:
            pole = _POS_POLES[rng.integers(len(_POS_POLES))]
            out.extend(_sentence(rng, pole, _LIGHT_CTX))
        elif roll < 0.40:
            pole = _NEG_POLES[rng.integers(len(_NEG_POLES))]
            out.extend(_sentence(rng, pole, _DARK_CTX))
        else:
            out.extend(_background(rng, sprinkle=poles))
    return out[:n_tokens]


def _tokens_to_docs(
    tokens: list[str], year: int, docs_per_bin: int, id_prefix: str
) -> list[Document]:
    """Split a bin stream into documents. Every document carries the target
    word so keyword filtering keeps the whole corpus."""
    chunk = max(1, len(tokens) // docs_per_bin)
    docs = []
    for d in range(docs_per_bin):
        part = tokens[d * chunk : (d + 1) * chunk] if d < docs_per_bin - 1 else tokens[(docs_per_bin - 1) * chunk :]
        docs.append(
            Document(
                id=f"{id_prefix}-{year}-{d:02d}",
                year=year,
                kind="book" if d % 2 == 0 else "periodical",
                ocr_quality=0.99,
                text=" ".join([DRIFT_TARGET] + part),
            )
        )
    return docs


def planted_drift_docs(
    seed: int,
    tokens_per_bin: int = 200_000,
    years: tuple[int, int] = (1789, 1800),
    docs_per_bin: int = 10,
) -> list[Document]:
    """Two-bin corpus: the target's context group swaps in the second bin."""
    rng = np.random.default_rng(seed)
    docs = _tokens_to_docs(
        drift_bin_tokens(rng, tokens_per_bin, swapped=False), years[0], docs_per_bin, "drift"
    )
    docs += _tokens_to_docs(
        drift_bin_tokens(rng, tokens_per_bin, swapped=True), years[1], docs_per_bin, "drift"
    )
    return docs


def planted_bias_docs(
    seed: int,
    tokens_per_bin: int = 200_000,
    adverse_fractions: tuple[float, ...] = (0.1, 0.9),
    start_year: int = 1789,
    years_apart: int = 11,
    docs_per_bin: int = 10,
) -> list[Document]:
    """One bin per adverse fraction; later bins push the target toward the
    planted stream's negative poles."""
    rng = np.random.default_rng(seed)
    docs: list[Document] = []
    for i, fraction in enumerate(adverse_fractions):
        year = start_year + i * years_apart
        docs += _tokens_to_docs(
            bias_bin_tokens(rng, tokens_per_bin, fraction), year, docs_per_bin, "bias"
        )
    return docs
