"""Run manifests: content hashes of inputs plus the effective config.

A manifest pins everything that determines a command's outputs, so a rerun
with equal manifest hashes is guaranteed byte-identical.  Manifests contain
no timestamps for exactly that reason.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from . import __version__
from .jsonio import write_json


def file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(out_dir, command: str, inputs: dict, config: dict) -> Path:
    """inputs maps logical name -> file path; missing files are recorded as
    null hashes (useful for optional inputs)."""
    manifest = {
        "command": command,
        "tool_version": __version__,
        "inputs": {
            name: (file_sha256(p) if p and Path(p).exists() else None)
            for name, p in inputs.items()
        },
        "config": config,
    }
    path = Path(out_dir) / f"manifest.{command}.json"
    write_json(path, manifest)
    return path
