"""Target-word identification and the human review queue.

Four independent methods locate the target word inside a context: substring
match, character-level cosine similarity (threshold strictly above 0.75),
closest word by edit distance, and dictionary-backed lemma lookup.  Their
candidates are merged, ranked by agreement, and queued for a linguist to
confirm or correct.  Only one target word per context is kept, earliest
preferred.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from . import arabic
from .errors import InvalidReviewError, ReviewConflictError, UnknownContextError
from .jsonio import append_jsonl, write_jsonl

METHOD_SUBSTRING = "SUBSTRING"
METHOD_COSINE = "COSINE"
METHOD_LEVENSHTEIN = "LEVENSHTEIN"
METHOD_LEMMATIZER = "LEMMATIZER"

COSINE_THRESHOLD = 0.75  # exclusive: a score of exactly 0.75 is rejected

STATUS_PENDING = "PENDING"
STATUS_AUTO = "AUTO"
STATUS_VERIFIED = "VERIFIED"
STATUS_CORRECTED = "CORRECTED"


@dataclass
class CandidateTarget:
    token_index: int
    surface: str
    method_hits: set
    cosine_score: float | None = None
    edit_distance: int | None = None

    def to_json(self) -> dict:
        return {
            "token_index": self.token_index,
            "surface": self.surface,
            "method_hits": sorted(self.method_hits),
            "cosine_score": self.cosine_score,
            "edit_distance": self.edit_distance,
        }

    @classmethod
    def from_json(cls, d: dict) -> "CandidateTarget":
        return cls(
            token_index=d["token_index"],
            surface=d["surface"],
            method_hits=set(d["method_hits"]),
            cosine_score=d.get("cosine_score"),
            edit_distance=d.get("edit_distance"),
        )


class LemmaTable:
    """Surface form -> set of lemma keys, all undiacritized."""

    def __init__(self, entries=None):
        self.entries: dict[str, set] = {}
        for surface, lemma in entries or ():
            self.add(surface, lemma)

    def add(self, surface: str, lemma: str) -> None:
        self.entries.setdefault(arabic.undiacritize(surface), set()).add(
            arabic.undiacritize(lemma)
        )

    def lemmas_of(self, surface: str):
        return self.entries.get(arabic.undiacritize(surface), set())

    @classmethod
    def load(cls, path) -> "LemmaTable":
        table = cls()
        for raw in Path(path).read_text(encoding="utf-8-sig").splitlines():
            if not raw.strip() or raw.lstrip().startswith("#"):
                continue
            surface, sep, lemma = raw.partition("\t")
            if sep and surface and lemma:
                table.add(surface.strip(), lemma.strip())
        return table


def _word_tokens(context: str):
    """(index, surface, undiacritized) over the context's tokens."""
    return [
        (i, tok, arabic.undiacritize(tok))
        for i, (tok, _) in enumerate(arabic.tokenize(context))
    ]


def method_substring(lemma_key: str, context: str) -> list[CandidateTarget]:
    """Every token containing the lemma as a contiguous substring."""
    return [
        CandidateTarget(i, surface, {METHOD_SUBSTRING})
        for i, surface, plain in _word_tokens(context)
        if lemma_key and lemma_key in plain
    ]


def method_cosine(lemma_key: str, context: str) -> CandidateTarget | None:
    """The token with maximal character-cosine against the lemma, returned
    only when its score is strictly above the 0.75 threshold."""
    best = None
    for i, surface, plain in _word_tokens(context):
        if not plain:
            continue
        try:
            score = arabic.char_cosine(lemma_key, plain)
        except Exception:
            continue
        if best is None or score > best.cosine_score:
            best = CandidateTarget(i, surface, {METHOD_COSINE}, cosine_score=score)
    if best is None or best.cosine_score <= COSINE_THRESHOLD:
        return None
    return best


def method_levenshtein(lemma_key: str, context: str) -> CandidateTarget | None:
    """The token closest to the lemma by edit distance (ties: earliest).

    Returns None only for contexts without any token.
    """
    best = None
    for i, surface, plain in _word_tokens(context):
        d = arabic.levenshtein(lemma_key, plain)
        if best is None or d < best.edit_distance:
            best = CandidateTarget(i, surface, {METHOD_LEVENSHTEIN}, edit_distance=d)
    return best


def method_lemmatize(lemma_key: str, context: str, table: LemmaTable):
    """Every token whose dictionary lemma set contains the lemma."""
    return [
        CandidateTarget(i, surface, {METHOD_LEMMATIZER})
        for i, surface, plain in _word_tokens(context)
        if lemma_key in table.lemmas_of(plain)
    ]


def _rank_key(c: CandidateTarget):
    return (
        -len(c.method_hits),
        -(c.cosine_score if c.cosine_score is not None else 0.0),
        c.edit_distance if c.edit_distance is not None else float("inf"),
        c.token_index,
    )


def combine_candidates(substring, cosine, lev, lemmatized) -> list[CandidateTarget]:
    """Merge per-method candidates by token index and rank by certainty.

    Ranking: more agreeing methods first, then higher cosine, then lower edit
    distance, then earlier position.  The output is a permutation of the
    union of the method outputs.
    """
    merged: dict[int, CandidateTarget] = {}
    singles = list(substring) + list(lemmatized)
    for extra in (cosine, lev):
        if extra is not None:
            singles.append(extra)
    for c in singles:
        cur = merged.get(c.token_index)
        if cur is None:
            merged[c.token_index] = CandidateTarget(
                c.token_index, c.surface, set(c.method_hits),
                c.cosine_score, c.edit_distance,
            )
        else:
            cur.method_hits |= c.method_hits
            if c.cosine_score is not None:
                cur.cosine_score = c.cosine_score
            if c.edit_distance is not None:
                cur.edit_distance = c.edit_distance
    return sorted(merged.values(), key=_rank_key)


def find_candidates(lemma_key: str, context: str, table: LemmaTable):
    return combine_candidates(
        method_substring(lemma_key, context),
        method_cosine(lemma_key, context),
        method_levenshtein(lemma_key, context),
        method_lemmatize(lemma_key, context, table),
    )


@dataclass
class ContextAnnotation:
    context_id: str
    lemma_key: str
    context_text: str
    candidates: list[CandidateTarget] = field(default_factory=list)
    chosen_index: int | None = None
    status: str = STATUS_PENDING
    multi_occurrence: bool = False
    revision: int = 0
    audit: list = field(default_factory=list)

    @property
    def tokens(self) -> list[str]:
        return [t for t, _ in arabic.tokenize(self.context_text)]

    def to_json(self) -> dict:
        return {
            "context_id": self.context_id,
            "lemma_key": self.lemma_key,
            "context_text": self.context_text,
            "candidates": [c.to_json() for c in self.candidates],
            "chosen_index": self.chosen_index,
            "status": self.status,
            "multi_occurrence": self.multi_occurrence,
            "revision": self.revision,
            "audit": list(self.audit),
        }

    @classmethod
    def from_json(cls, d: dict) -> "ContextAnnotation":
        return cls(
            context_id=d["context_id"],
            lemma_key=d["lemma_key"],
            context_text=d["context_text"],
            candidates=[CandidateTarget.from_json(c) for c in d["candidates"]],
            chosen_index=d.get("chosen_index"),
            status=d["status"],
            multi_occurrence=d.get("multi_occurrence", False),
            revision=d.get("revision", 0),
            audit=list(d.get("audit", ())),
        )


def annotate_context(context_id, lemma_key, context_text, table) -> ContextAnnotation:
    candidates = find_candidates(lemma_key, context_text, table)
    plains = [arabic.undiacritize(c.surface) for c in candidates]
    multi = len(plains) != len(set(plains))
    if candidates:
        return ContextAnnotation(
            context_id, lemma_key, context_text, candidates,
            chosen_index=candidates[0].token_index, status=STATUS_AUTO,
            multi_occurrence=multi,
        )
    return ContextAnnotation(
        context_id, lemma_key, context_text, candidates,
        chosen_index=None, status=STATUS_PENDING, multi_occurrence=multi,
    )


def auto_annotate(pairs, table: LemmaTable) -> list[ContextAnnotation]:
    """Annotate each unique context once, regardless of how many glosses it
    is paired with.  Deterministic and idempotent over a fixed input set."""
    seen: dict[str, ContextAnnotation] = {}
    for p in pairs:
        if p.context_id in seen:
            continue
        seen[p.context_id] = annotate_context(
            p.context_id, p.lemma_key, p.context_text, table
        )
    return [seen[cid] for cid in sorted(seen)]


def queue_sort_key(a: ContextAnnotation):
    """Review queue order: multi-occurrence traps first, then ascending
    certainty (fewest agreeing methods on the top candidate)."""
    top_hits = len(a.candidates[0].method_hits) if a.candidates else 0
    return (not a.multi_occurrence, top_hits, a.context_id)


class AnnotationStore:
    """Annotations keyed by context id, persisted to JSONL with an
    append-only audit log.  Writes are atomic (temp file + rename)."""

    def __init__(self, path=None, audit_path=None):
        self.path = Path(path) if path else None
        if audit_path is None and self.path is not None:
            audit_path = self.path.with_suffix(".audit.jsonl")
        self.audit_path = Path(audit_path) if audit_path else None
        self.items: dict[str, ContextAnnotation] = {}

    @classmethod
    def load(cls, path, audit_path=None) -> "AnnotationStore":
        from .jsonio import read_jsonl

        store = cls(path, audit_path)
        for row in read_jsonl(path):
            ann = ContextAnnotation.from_json(row)
            store.items[ann.context_id] = ann
        return store

    def put_all(self, annotations) -> None:
        for ann in annotations:
            self.items[ann.context_id] = ann

    def get(self, context_id: str) -> ContextAnnotation:
        try:
            return self.items[context_id]
        except KeyError:
            raise UnknownContextError(f"no annotation for context {context_id!r}") from None

    def queue(self, status=None, limit=None) -> list[ContextAnnotation]:
        items = [
            a for a in self.items.values() if status is None or a.status == status
        ]
        items.sort(key=queue_sort_key)
        return items[:limit] if limit else items

    def progress(self) -> dict:
        counts = {s: 0 for s in (STATUS_PENDING, STATUS_AUTO,
                                 STATUS_VERIFIED, STATUS_CORRECTED)}
        for a in self.items.values():
            counts[a.status] = counts.get(a.status, 0) + 1
        return counts

    def apply_review(self, context_id, action, reviewer,
                     token_index=None, expected_revision=None) -> ContextAnnotation:
        """Confirm or correct one annotation.

        ``expected_revision``, when given, enables optimistic concurrency:
        a stale revision raises ReviewConflictError.
        """
        ann = self.get(context_id)
        if expected_revision is not None and expected_revision != ann.revision:
            raise ReviewConflictError(
                f"context {context_id}: revision {expected_revision} is stale "
                f"(current {ann.revision})"
            )
        if not reviewer:
            raise InvalidReviewError("reviewer id is required")
        if action == "confirm":
            if ann.chosen_index is None:
                raise InvalidReviewError(
                    f"context {context_id}: nothing to confirm (no chosen token)"
                )
            event = {"action": "confirm", "reviewer": reviewer,
                     "previous_index": ann.chosen_index,
                     "previous_status": ann.status}
            ann.status = STATUS_VERIFIED
        elif action == "correct":
            n_tokens = len(ann.tokens)
            if token_index is None or not (0 <= token_index < n_tokens):
                raise InvalidReviewError(
                    f"context {context_id}: token_index {token_index!r} out of "
                    f"range [0, {n_tokens})"
                )
            event = {"action": "correct", "reviewer": reviewer,
                     "previous_index": ann.chosen_index,
                     "previous_status": ann.status,
                     "new_index": token_index}
            ann.chosen_index = token_index
            ann.status = STATUS_CORRECTED
        else:
            raise InvalidReviewError(f"unknown review action {action!r}")
        ann.revision += 1
        event["revision"] = ann.revision
        event["context_id"] = context_id
        ann.audit.append(event)
        if self.audit_path:
            append_jsonl(self.audit_path, event)
        self.save()
        return ann

    def save(self) -> None:
        if self.path:
            write_jsonl(
                self.path,
                (self.items[cid].to_json() for cid in sorted(self.items)),
            )
