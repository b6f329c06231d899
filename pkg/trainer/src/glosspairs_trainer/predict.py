"""Inference: one prediction per tagged instance, evaluator-compatible."""

import json
from pathlib import Path

import torch
from transformers import AutoModelForSequenceClassification, AutoTokenizer

from .config import TrainerError
from .data import load_instances, load_tagging_meta, meta_path_for


def _check_manifests(model_dir: Path, test_meta: dict) -> None:
    manifest_path = model_dir / "train_manifest.json"
    if not manifest_path.exists():
        raise TrainerError(f"no train manifest in {model_dir}")
    trained = json.loads(manifest_path.read_text(encoding="utf-8"))
    for key in ("variation", "profile"):
        if trained[key] != test_meta[key]:
            raise TrainerError(
                f"{key} mismatch: model was trained on {trained[key]!r} "
                f"but the test file is {test_meta[key]!r}"
            )


def predict(model_dir, test_file, out_path, meta_file=None,
            batch_size=32) -> list[dict]:
    """Write preds.jsonl for a tagged test file; returns the rows.

    predicted is the argmax over the two logits, score_true the softmax
    probability of the True class.  Refuses to run when the test file was
    tagged with a different variation or normalization profile than the
    model was trained on.
    """
    model_dir = Path(model_dir)
    instances = load_instances(test_file)
    test_meta = load_tagging_meta(meta_file or meta_path_for(test_file))
    _check_manifests(model_dir, test_meta)

    tokenizer = AutoTokenizer.from_pretrained(model_dir)
    model = AutoModelForSequenceClassification.from_pretrained(model_dir)
    max_length = json.loads(
        (model_dir / "train_manifest.json").read_text(encoding="utf-8")
    )["max_length"]

    model.eval()
    rows = []
    with torch.no_grad():
        for start in range(0, len(instances), batch_size):
            chunk = instances[start:start + batch_size]
            enc = tokenizer(
                [inst.sequence for inst in chunk],
                truncation=True,
                padding="max_length",
                max_length=max_length,
                return_tensors="pt",
            )
            logits = model(input_ids=enc["input_ids"],
                           attention_mask=enc["attention_mask"]).logits
            probs = torch.softmax(logits, dim=-1)
            choices = torch.argmax(logits, dim=-1)
            for inst, choice, prob in zip(chunk, choices, probs):
                rows.append({
                    "pair_id": inst.pair_id,
                    "predicted": "true" if int(choice) == 1 else "false",
                    "score_true": float(prob[1]),
                })

    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False, sort_keys=True,
                               separators=(",", ":")) + "\n")
    return rows
