import json
import random
from pathlib import Path

import pytest

from glosspairs_trainer.encoder import build_tiny_encoder

WORDS = ["كتاب", "قلم", "باب", "بيت", "ماء", "شمس", "قمر", "بحر",
         "جبل", "شجرة", "ولد", "بنت", "مدينة", "طريق", "سوق", "نور"]

# label-bearing cue: True instances share this word across both sides
CUE = "علامة"


def toy_instances(n: int, seed: int = 0) -> list[dict]:
    """Learnable toy set: the label is True iff the cue word appears on
    both sides of the separator."""
    rng = random.Random(seed)
    rows = []
    for i in range(n):
        label = i % 2 == 0
        ctx = rng.sample(WORDS, 3)
        gloss = rng.sample(WORDS, 3)
        if label:
            ctx.insert(rng.randrange(len(ctx)), CUE)
            gloss.insert(rng.randrange(len(gloss)), CUE)
        rows.append({
            "pair_id": f"toy{i:05d}",
            "sequence": " ".join(ctx) + " [SEP] " + " ".join(gloss),
            "label": "true" if label else "false",
            "truncated": False,
            "token_budget_used": len(ctx) + len(gloss) + 1,
        })
    return rows


def write_tagged(path: Path, rows, variation="v1", profile="none") -> Path:
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False) + "\n")
    meta = path.with_name(path.name.replace(".jsonl", ".meta.json"))
    meta.write_text(json.dumps({
        "variation": variation, "profile": profile, "max_len": 512,
        "instances": len(rows), "truncated": 0,
    }), encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def tiny_encoder(tmp_path_factory) -> Path:
    out = tmp_path_factory.mktemp("encoder")
    corpus = [r["sequence"] for r in toy_instances(50)]
    return build_tiny_encoder(out, corpus)


@pytest.fixture(scope="session")
def toy_train_file(tmp_path_factory) -> Path:
    d = tmp_path_factory.mktemp("toy")
    return write_tagged(d / "tagged.v1.jsonl", toy_instances(1000, seed=1))


@pytest.fixture(scope="session")
def toy_test_file(tmp_path_factory) -> Path:
    d = tmp_path_factory.mktemp("toy_test")
    return write_tagged(d / "tagged.v1.jsonl", toy_instances(200, seed=2))
