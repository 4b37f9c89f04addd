"""Persistence and query layer for per-bin embedding models.

Model file layout (little-endian):

    magic "DWE1" | u32 dim | u64 vocab size | u32 bin index |
    i32 start_year | i32 end_year | vocab_size x dim float32 rows
    (id order) | u32 CRC32 of all preceding bytes

The vocabulary travels in a "<model>.vocab" sidecar (word<TAB>count lines,
id order); output vectors, when persisted, use the same binary layout in a
"<model>.out" sibling. An archive is a directory of such files plus an
index.json keyed by bin index.
"""

from __future__ import annotations

import json
import struct
import zlib
from pathlib import Path
from typing import Iterator, NamedTuple

import numpy as np

from .errors import ConfigError, DataError, ModelFormatError, OOVError
from .sgns import EmbeddingModel
from .text import Vocabulary

MAGIC = b"DWE1"
_HEADER = struct.Struct("<IQIii")  # dim, vocab_size, bin_index, start_year, end_year

DEFAULT_K = 100


class Neighbor(NamedTuple):
    word: str
    similarity: float


def _write_matrix_file(
    path: Path,
    matrix: np.ndarray,
    bin_index: int,
    start_year: int,
    end_year: int,
) -> str:
    payload = MAGIC + _HEADER.pack(
        matrix.shape[1], matrix.shape[0], bin_index, start_year, end_year
    )
    payload += np.ascontiguousarray(matrix, dtype="<f4").tobytes()
    crc = zlib.crc32(payload) & 0xFFFFFFFF
    path.write_bytes(payload + struct.pack("<I", crc))
    return f"{crc:08x}"


def _read_matrix_file(path: Path) -> tuple[np.ndarray, int, int, int, str]:
    blob = Path(path).read_bytes()
    if len(blob) < len(MAGIC) + _HEADER.size + 4:
        raise ModelFormatError(f"{path}: truncated file ({len(blob)} bytes)")
    if blob[: len(MAGIC)] != MAGIC:
        raise ModelFormatError(f"{path}: magic mismatch, not a model file")
    dim, vocab_size, bin_index, start_year, end_year = _HEADER.unpack_from(
        blob, len(MAGIC)
    )
    matrix_start = len(MAGIC) + _HEADER.size
    matrix_bytes = vocab_size * dim * 4
    expected = matrix_start + matrix_bytes + 4
    if len(blob) != expected:
        raise ModelFormatError(
            f"{path}: truncated payload, expected {expected} bytes, got {len(blob)}"
        )
    (stored_crc,) = struct.unpack_from("<I", blob, expected - 4)
    actual_crc = zlib.crc32(blob[: expected - 4]) & 0xFFFFFFFF
    if stored_crc != actual_crc:
        raise ModelFormatError(
            f"{path}: checksum mismatch (stored {stored_crc:08x}, "
            f"computed {actual_crc:08x})"
        )
    matrix = (
        np.frombuffer(blob, dtype="<f4", count=vocab_size * dim, offset=matrix_start)
        .reshape(vocab_size, dim)
        .copy()
    )
    return matrix, bin_index, start_year, end_year, f"{stored_crc:08x}"


def save(model: EmbeddingModel, path: str | Path, include_output: bool = False) -> str:
    """Write a model (and its vocabulary sidecar) to `path`.

    Returns the hex CRC32 of the input-vector file. include_output also
    writes the context matrix to "<path>.out".
    """
    path = Path(path)
    crc = _write_matrix_file(
        path, model.input_vectors, model.bin_index, model.start_year, model.end_year
    )
    model.vocab.save_sidecar(str(path) + ".vocab")
    if include_output:
        if model.output_vectors is None:
            raise DataError("model has no output vectors to save")
        _write_matrix_file(
            Path(str(path) + ".out"),
            model.output_vectors,
            model.bin_index,
            model.start_year,
            model.end_year,
        )
    return crc


def load(path: str | Path, min_count: int | None = None) -> EmbeddingModel:
    """Read a model saved by save(). Loads output vectors if the ".out"
    sibling exists. min_count is inferred from the sidecar when not given."""
    path = Path(path)
    matrix, bin_index, start_year, end_year, _ = _read_matrix_file(path)
    sidecar = Path(str(path) + ".vocab")
    if not sidecar.exists():
        raise ModelFormatError(f"{sidecar}: vocabulary sidecar missing")
    vocab = Vocabulary.load_sidecar(sidecar, min_count=min_count)
    if len(vocab) != matrix.shape[0]:
        raise ModelFormatError(
            f"{path}: sidecar lists {len(vocab)} words but matrix has "
            f"{matrix.shape[0]} rows"
        )
    out_path = Path(str(path) + ".out")
    output = None
    if out_path.exists():
        output, _, _, _, _ = _read_matrix_file(out_path)
    return EmbeddingModel(
        vocab=vocab,
        input_vectors=matrix,
        output_vectors=output,
        bin_index=bin_index,
        start_year=start_year,
        end_year=end_year,
    )


def cosine_sim(model: EmbeddingModel, word_a: str, word_b: str) -> float:
    """Dot product of the L2-normalized input vectors of two words."""
    unit = model.unit_vectors()
    ids = []
    for word in (word_a, word_b):
        idx = model.vocab.id_of.get(word)
        if idx is None:
            raise OOVError(word, model.bin_index)
        ids.append(idx)
    return float(np.clip(unit[ids[0]] @ unit[ids[1]], -1.0, 1.0))


def knn(model: EmbeddingModel, word: str, k: int = DEFAULT_K) -> list[Neighbor]:
    """Exact top-k neighbors of `word` by cosine over the full vocabulary.

    The query word is excluded; ties break by ascending vocabulary id.
    """
    vocab_size = len(model.vocab)
    if not 1 <= k < vocab_size:
        raise ConfigError(f"k must satisfy 1 <= k < |V|={vocab_size}, got {k}")
    idx = model.vocab.id_of.get(word)
    if idx is None:
        raise OOVError(word, model.bin_index)
    unit = model.unit_vectors()
    sims = unit @ unit[idx]
    np.clip(sims, -1.0, 1.0, out=sims)
    sims[idx] = -np.inf
    order = np.lexsort((np.arange(vocab_size), -sims))[:k]
    return [Neighbor(model.vocab.word_of(i), float(sims[i])) for i in order]


class EmbeddingArchive:
    """Directory of per-bin model files with an index.json.

    Index entries record year range, relative path, the model file's CRC32,
    the vocabulary cutoff and the bin's total token count. Loaded models are
    immutable; any number of readers may share them.
    """

    INDEX_NAME = "index.json"

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self._entries: dict[int, dict] = {}
        index = self.root / self.INDEX_NAME
        if index.exists():
            with open(index, encoding="utf-8") as fh:
                raw = json.load(fh)
            for entry in raw["bins"]:
                self._entries[entry["index"]] = entry

    def __len__(self) -> int:
        return len(self._entries)

    def bin_indices(self) -> list[int]:
        return sorted(self._entries)

    def entry(self, bin_index: int) -> dict:
        if bin_index not in self._entries:
            raise DataError(f"archive has no bin {bin_index}")
        return self._entries[bin_index]

    def add(
        self,
        model: EmbeddingModel,
        token_count: int,
        include_output: bool = False,
    ) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        name = f"bin_{model.bin_index:03d}.dwe"
        crc = save(model, self.root / name, include_output=include_output)
        self._entries[model.bin_index] = {
            "index": model.bin_index,
            "start_year": model.start_year,
            "end_year": model.end_year,
            "path": name,
            "checksum": crc,
            "min_count": model.vocab.min_count,
            "token_count": token_count,
        }
        self._write_index()
        return self.root / name

    def _write_index(self) -> None:
        payload = {"bins": [self._entries[i] for i in sorted(self._entries)]}
        with open(self.root / self.INDEX_NAME, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, ensure_ascii=False, indent=1)
            fh.write("\n")

    def load_bin(self, bin_index: int) -> EmbeddingModel:
        entry = self.entry(bin_index)
        path = self.root / entry["path"]
        model = load(path, min_count=entry["min_count"])
        with open(path, "rb") as fh:
            fh.seek(-4, 2)
            (crc,) = struct.unpack("<I", fh.read(4))
        if f"{crc:08x}" != entry["checksum"]:
            raise ModelFormatError(
                f"{path}: checksum {crc:08x} does not match index entry "
                f"{entry['checksum']}"
            )
        return model

    def load_all(self) -> list[EmbeddingModel]:
        return [self.load_bin(i) for i in self.bin_indices()]

    def token_count(self, bin_index: int) -> int:
        return self.entry(bin_index)["token_count"]

    def iter_entries(self) -> Iterator[dict]:
        for i in self.bin_indices():
            yield self._entries[i]
