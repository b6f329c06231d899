"""Rendering labeled pairs into classifier-ready sequences.

Four sequence variations: V1 leaves the pair intact; V2 surrounds the target
word with single quotes; V3 with [UNUSED0] on both sides; V4 with [UNUSED0]
before and [UNUSED1] after.  V2-V4 also prefix the gloss with the target
word and a colon.  Context and gloss are joined by a single [SEP].

Length is enforced with a whitespace-token proxy (the model-side trainer
re-enforces it with its real subword tokenizer): the gloss tail is dropped
first, then the context tail, never the target word or its marks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import arabic
from .errors import (
    ConfigError,
    MalformedSequenceError,
    UnannotatedContextError,
)

SEP = "[SEP]"


@dataclass(frozen=True)
class SignalVariation:
    id: str
    context_open_mark: str
    context_close_mark: str
    gloss_prefix_enabled: bool


VARIATIONS = {
    "v1": SignalVariation("v1", "", "", False),
    "v2": SignalVariation("v2", "'", "'", True),
    "v3": SignalVariation("v3", "[UNUSED0]", "[UNUSED0]", True),
    "v4": SignalVariation("v4", "[UNUSED0]", "[UNUSED1]", True),
}


def get_variation(name_or_variation) -> SignalVariation:
    if isinstance(name_or_variation, SignalVariation):
        return name_or_variation
    try:
        return VARIATIONS[str(name_or_variation).lower()]
    except KeyError:
        raise ConfigError(
            f"unknown variation {name_or_variation!r} (known: v1, v2, v3, v4)"
        ) from None


@dataclass(frozen=True)
class TaggedInstance:
    pair_id: str
    sequence: str
    label: bool
    truncated: bool
    token_budget_used: int

    def to_json(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "sequence": self.sequence,
            "label": "true" if self.label else "false",
            "truncated": self.truncated,
            "token_budget_used": self.token_budget_used,
        }

    @classmethod
    def from_json(cls, d: dict) -> "TaggedInstance":
        return cls(
            pair_id=d["pair_id"],
            sequence=d["sequence"],
            label=d["label"] == "true",
            truncated=d["truncated"],
            token_budget_used=d["token_budget_used"],
        )


def _usable(annotation) -> bool:
    return annotation is not None and annotation.status in (
        "AUTO", "VERIFIED", "CORRECTED"
    ) and annotation.chosen_index is not None


def render(pair, annotation, variation, profile, max_len: int = 512) -> TaggedInstance:
    """Render one pair into a tagged sequence.

    Normalization applies to context and gloss text only, never to the marks
    or the separator.  Refuses pairs whose context is not yet annotated.
    """
    variation = get_variation(variation)
    prof = arabic.get_profile(profile)
    if not _usable(annotation):
        raise UnannotatedContextError([pair.context_id])

    context = prof.apply(pair.context_text)
    gloss = prof.apply(pair.gloss_text)
    tokens = arabic.tokenize(context)
    idx = annotation.chosen_index
    if not (0 <= idx < len(tokens)):
        raise UnannotatedContextError([pair.context_id])
    target, offset = tokens[idx]

    if variation.context_open_mark:
        marked_context = (
            context[:offset]
            + f"{variation.context_open_mark} {target} {variation.context_close_mark}"
            + context[offset + len(target):]
        )
    else:
        marked_context = context
    gloss_part = f"{target} : {gloss}" if variation.gloss_prefix_enabled else gloss
    sequence = f"{marked_context} {SEP} {gloss_part}"

    budget = len(sequence.split())
    truncated = False
    if budget > max_len:
        truncated = True
        ctx_tokens = marked_context.split()
        gloss_tokens = gloss_part.split()
        # the marked region (and for V1 the bare target) is untouchable
        if variation.context_open_mark:
            close_pos = max(
                i for i, t in enumerate(ctx_tokens)
                if t == variation.context_close_mark
            )
        else:
            close_pos = _target_token_pos(ctx_tokens, context, offset)
        min_gloss = 2 if variation.gloss_prefix_enabled else 0
        min_ctx = close_pos + 1

        over = budget - max_len
        drop = min(over, len(gloss_tokens) - min_gloss)
        if drop > 0:
            gloss_tokens = gloss_tokens[: len(gloss_tokens) - drop]
            over -= drop
        if over > 0:
            drop = min(over, len(ctx_tokens) - min_ctx)
            if drop > 0:
                ctx_tokens = ctx_tokens[: len(ctx_tokens) - drop]
                over -= drop
        if over > 0:
            # target sits deep in an overlong context: drop from the head,
            # still keeping the marked region itself
            droppable = max(len(ctx_tokens) - _region_len(variation), 0)
            ctx_tokens = ctx_tokens[min(over, droppable):]
        sequence = " ".join([*ctx_tokens, SEP, *gloss_tokens])
        budget = len(sequence.split())

    _require_single_sep(sequence)
    return TaggedInstance(pair.pair_id, sequence, pair.label, truncated, budget)


def _region_len(variation: SignalVariation) -> int:
    return 3 if variation.context_open_mark else 1


def _target_token_pos(ctx_tokens, context, offset: int) -> int:
    # whitespace-token position containing the char offset
    pos = 0
    for i, tok in enumerate(ctx_tokens):
        pos = context.index(tok, pos)
        if pos <= offset < pos + len(tok):
            return i
        pos += len(tok)
    return len(ctx_tokens) - 1


def _require_single_sep(sequence: str) -> None:
    if sequence.split().count(SEP) != 1:
        raise MalformedSequenceError(
            f"sequence must contain exactly one {SEP}: {sequence!r}"
        )


def render_corpus(pairs, annotations, variation, profile, max_len: int = 512):
    """Render many pairs; aborts listing every unannotated context id.

    ``annotations`` maps context_id -> ContextAnnotation.  Returns
    (instances, summary) with instances in input order.
    """
    missing = sorted(
        {p.context_id for p in pairs if not _usable(annotations.get(p.context_id))}
    )
    if missing:
        raise UnannotatedContextError(missing)
    instances = [
        render(p, annotations[p.context_id], variation, profile, max_len)
        for p in pairs
    ]
    summary = {
        "instances": len(instances),
        "truncated": sum(1 for t in instances if t.truncated),
        "max_len": max_len,
    }
    return instances, summary


def strip_signals(instance: TaggedInstance, variation) -> tuple[str, str]:
    """Undo the tagging of an untruncated instance, returning the
    V1-equivalent (context, gloss)."""
    variation = get_variation(variation)
    seq = instance.sequence
    if seq.split().count(SEP) != 1:
        raise MalformedSequenceError(
            f"expected exactly one {SEP} in {seq!r}"
        )
    context_part, _, gloss_part = seq.partition(f" {SEP} ")
    if variation.context_open_mark:
        pattern = (
            re.escape(variation.context_open_mark)
            + r" (.*?) "
            + re.escape(variation.context_close_mark)
        )
        context_part = re.sub(pattern, r"\1", context_part, count=1)
    if variation.gloss_prefix_enabled:
        _, sep, rest = gloss_part.partition(" : ")
        if not sep:
            raise MalformedSequenceError(
                f"missing gloss prefix in {gloss_part!r}"
            )
        gloss_part = rest
    return context_part, gloss_part
