"""Fine-tuning loop: binary classification over the pooled [CLS] state."""

import json
import random
from pathlib import Path

import torch
from torch.utils.data import DataLoader, TensorDataset
from transformers import AutoModelForSequenceClassification, AutoTokenizer, \
    get_linear_schedule_with_warmup

from .config import TrainConfig, TrainerError
from .data import load_instances, load_tagging_meta, meta_path_for


def _encode(tokenizer, instances, max_length):
    enc = tokenizer(
        [inst.sequence for inst in instances],
        truncation=True,
        padding="max_length",
        max_length=max_length,
        return_tensors="pt",
    )
    labels = torch.tensor([int(inst.label) for inst in instances])
    return TensorDataset(enc["input_ids"], enc["attention_mask"], labels)


def _seed_everything(seed: int) -> None:
    random.seed(seed)
    torch.manual_seed(seed)


def fine_tune(train_file, config: TrainConfig, out_dir,
              meta_file=None) -> dict:
    """Train a two-way classifier head on tagged instances.

    Returns the training log: per-epoch mean loss plus the first-batch
    loss (useful for determinism checks).  The model, tokenizer, and a
    train manifest carrying the tagging variation/profile are written to
    out_dir.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    instances = load_instances(train_file)
    meta = load_tagging_meta(meta_file or meta_path_for(train_file))

    _seed_everything(config.seed)
    tokenizer = AutoTokenizer.from_pretrained(config.model)
    model = AutoModelForSequenceClassification.from_pretrained(
        config.model, num_labels=2)
    limit = model.config.max_position_embeddings
    if config.max_length > limit:
        raise TrainerError(
            f"max_length {config.max_length} exceeds encoder limit {limit}")

    dataset = _encode(tokenizer, instances, config.max_length)
    generator = torch.Generator().manual_seed(config.seed)
    loader = DataLoader(dataset, batch_size=config.batch_size,
                        shuffle=True, generator=generator)

    optimizer = torch.optim.AdamW(model.parameters(),
                                  lr=config.learning_rate)
    total_steps = len(loader) * config.epochs
    scheduler = get_linear_schedule_with_warmup(
        optimizer, num_warmup_steps=config.warmup_steps,
        num_training_steps=total_steps)

    model.train()
    epoch_losses = []
    first_batch_loss = None
    for _epoch in range(config.epochs):
        total = 0.0
        for input_ids, attention_mask, labels in loader:
            optimizer.zero_grad()
            out = model(input_ids=input_ids, attention_mask=attention_mask,
                        labels=labels)
            out.loss.backward()
            optimizer.step()
            scheduler.step()
            if first_batch_loss is None:
                first_batch_loss = out.loss.item()
            total += out.loss.item()
        epoch_losses.append(total / len(loader))

    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    log = {
        "epoch_losses": epoch_losses,
        "first_batch_loss": first_batch_loss,
        "instances": len(instances),
        "config": config.to_json(),
    }
    (out_dir / "train_log.json").write_text(
        json.dumps(log, indent=2), encoding="utf-8")
    (out_dir / "train_manifest.json").write_text(
        json.dumps({"variation": meta["variation"],
                    "profile": meta["profile"],
                    "max_length": config.max_length}, indent=2),
        encoding="utf-8")
    return log
