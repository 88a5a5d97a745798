"""Reproducible run manifests embedded in every CLI output.

Rerunning the same command on the same inputs reproduces the output byte for
byte apart from the timestamp field, which comparison tools should strip.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, Optional, Sequence

VERSION = "0.1.0"


@dataclass(frozen=True)
class RunManifest:
    command: str
    input_hashes: Dict[str, str]
    version: str
    bounds: Dict[str, Any]
    seed: Optional[int]
    timestamp: str = field(default="")

    def to_json(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "input_hashes": dict(sorted(self.input_hashes.items())),
            "version": self.version,
            "bounds": dict(sorted(self.bounds.items())),
            "seed": self.seed,
            "timestamp": self.timestamp,
        }


def file_hash(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def build_manifest(argv: Sequence[str], inputs: Dict[str, str],
                   bounds: Dict[str, Any], seed: Optional[int] = None) -> RunManifest:
    hashes = {name: file_hash(path) for name, path in inputs.items()}
    return RunManifest(
        command=" ".join(argv),
        input_hashes=hashes,
        version=VERSION,
        bounds=bounds,
        seed=seed,
        timestamp=datetime.now(timezone.utc).isoformat(),
    )
