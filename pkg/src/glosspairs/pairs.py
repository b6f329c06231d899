"""Context-gloss pair materialization.

True pairs come straight from the extracted senses (one per gloss-context
combination).  False pairs are generated by cross-relating each lemma's
contexts with its *other* glosses, exhaustively.  Pair ids are content
hashes so regeneration is stable across runs.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass


@dataclass(frozen=True)
class ContextGlossPair:
    pair_id: str
    lemma_key: str
    context_id: str
    context_text: str
    gloss_id: str
    gloss_text: str
    label: bool

    def to_json(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "lemma_key": self.lemma_key,
            "context_id": self.context_id,
            "context_text": self.context_text,
            "gloss_id": self.gloss_id,
            "gloss_text": self.gloss_text,
            "label": "true" if self.label else "false",
        }

    @classmethod
    def from_json(cls, d: dict) -> "ContextGlossPair":
        return cls(
            pair_id=d["pair_id"],
            lemma_key=d["lemma_key"],
            context_id=d["context_id"],
            context_text=d["context_text"],
            gloss_id=d["gloss_id"],
            gloss_text=d["gloss_text"],
            label=d["label"] == "true",
        )


def pair_id_for(lemma_key: str, context_id: str, gloss_id: str, label: bool) -> str:
    payload = "\x1f".join(
        ("pair", lemma_key, context_id, gloss_id, "true" if label else "false")
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def context_id_for(sense_id: str, index: int) -> str:
    return f"{sense_id}.c{index}"


def make_pair(lemma_key, context_id, context_text, gloss_id, gloss_text, label):
    return ContextGlossPair(
        pair_id=pair_id_for(lemma_key, context_id, gloss_id, label),
        lemma_key=lemma_key,
        context_id=context_id,
        context_text=context_text,
        gloss_id=gloss_id,
        gloss_text=gloss_text,
        label=label,
    )


def build_true_pairs(senses) -> list[ContextGlossPair]:
    """One True pair per (gloss, context) combination within each sense."""
    out = []
    for s in senses:
        for i, ctx in enumerate(s.contexts):
            out.append(
                make_pair(s.lemma_key, context_id_for(s.sense_id, i), ctx,
                          s.sense_id, s.gloss, True)
            )
    out.sort(key=lambda p: p.pair_id)
    return out


def build_false_pairs(true_pairs) -> list[ContextGlossPair]:
    """Cross-relate each lemma's contexts with its other glosses.

    A lemma with g glosses and contexts (c_1..c_g per gloss) yields exactly
    (sum c_k) * (g - 1) False pairs; single-gloss lemmas contribute nothing.
    Cross-relation is by gloss identity, never by gloss text.
    """
    assert all(p.label for p in true_pairs), "input must be True pairs"
    by_lemma: dict[str, list[ContextGlossPair]] = {}
    for p in true_pairs:
        by_lemma.setdefault(p.lemma_key, []).append(p)
    out = []
    for lemma_key, group in by_lemma.items():
        gloss_text = {}
        for p in group:
            gloss_text.setdefault(p.gloss_id, p.gloss_text)
        if len(gloss_text) < 2:
            continue
        for p in group:
            for gid, gtext in gloss_text.items():
                if gid == p.gloss_id:
                    continue
                out.append(
                    make_pair(lemma_key, p.context_id, p.context_text,
                              gid, gtext, False)
                )
    out.sort(key=lambda p: p.pair_id)
    return out


def pair_stats(pairs) -> dict:
    true_count = sum(1 for p in pairs if p.label)
    return {
        "true_pairs": true_count,
        "false_pairs": len(pairs) - true_count,
        "total_pairs": len(pairs),
    }
