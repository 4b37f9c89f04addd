"""Run manifests: every CLI command records what it did and from what.

A manifest holds the resolved configuration, content hashes of the inputs,
tool version, timestamps and accumulated warnings (dropped documents, OOV
skips). Rerunning a command with the flags recorded in its manifest, in
deterministic mode, reproduces the outputs byte for byte; the manifest
itself carries the timestamps and is the one output allowed to differ.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path


def _version() -> str:
    try:
        from importlib.metadata import version

        return version("chrono-embed")
    except Exception:
        return "unknown"


def file_sha256(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass
class RunManifest:
    command: str
    config: dict
    argv: list[str] = field(default_factory=lambda: list(sys.argv[1:]))
    inputs: dict[str, str] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    started_at: float = field(default_factory=time.time)

    def hash_input(self, path: str | Path) -> None:
        self.inputs[str(path)] = file_sha256(path)

    def warn(self, message: str) -> None:
        self.warnings.append(message)

    def write(self, path: str | Path) -> None:
        finished = time.time()
        payload = {
            "tool": "chrono-embed",
            "version": _version(),
            "command": self.command,
            "argv": self.argv,
            "config": self.config,
            "inputs": self.inputs,
            "warnings": self.warnings,
            "started_at": self.started_at,
            "finished_at": finished,
            "wall_time_s": finished - self.started_at,
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, ensure_ascii=False, indent=1)
            fh.write("\n")
