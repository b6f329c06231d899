"""Reading tagged instance files and their tagging manifests."""

import json
from dataclasses import dataclass
from pathlib import Path

from .config import TrainerError

REQUIRED_FIELDS = ("pair_id", "sequence", "label")


@dataclass(frozen=True)
class Instance:
    pair_id: str
    sequence: str
    label: bool


def load_instances(path) -> list[Instance]:
    path = Path(path)
    if not path.exists():
        raise TrainerError(f"tagged file not found: {path}")
    out = []
    with open(path, encoding="utf-8") as f:
        for n, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as e:
                raise TrainerError(f"{path}:{n}: bad JSON ({e})") from None
            missing = [k for k in REQUIRED_FIELDS if k not in row]
            if missing:
                raise TrainerError(f"{path}:{n}: missing fields {missing}")
            if row["label"] not in ("true", "false"):
                raise TrainerError(
                    f"{path}:{n}: label must be 'true' or 'false', "
                    f"got {row['label']!r}"
                )
            out.append(Instance(row["pair_id"], row["sequence"],
                                row["label"] == "true"))
    if not out:
        raise TrainerError(f"no instances in {path}")
    return out


def load_tagging_meta(path) -> dict:
    """The tagger's sidecar manifest: variation, profile, max_len."""
    path = Path(path)
    if not path.exists():
        raise TrainerError(f"tagging manifest not found: {path}")
    meta = json.loads(path.read_text(encoding="utf-8"))
    for key in ("variation", "profile"):
        if key not in meta:
            raise TrainerError(f"{path}: manifest lacks {key!r}")
    return meta


def meta_path_for(tagged_path) -> Path:
    """tagged.v1.jsonl -> tagged.v1.meta.json next to it."""
    p = Path(tagged_path)
    return p.with_name(p.name.replace(".jsonl", ".meta.json"))
