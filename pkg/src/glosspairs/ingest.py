"""Lexicon dump ingestion.

Parses raw lexicon dumps (TSV) into definitions, extracts glosses and their
example contexts with per-lexicon parser specs, and applies the selection
criteria that decide which senses make it into the dataset:

  (a) one-word glosses and contexts are dropped,
  (b) a lemma is dropped entirely if any of its glosses has no context,
  (c) when a lemma appears in several lexicons, the lexicon offering the
      most glosses wins; ties go to the more renowned lexicon (a configured
      rank list),
  (d) multi-word lemmas are dropped.

Every destructive step writes its casualties to a sidecar report rather
than silently discarding them.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path

from . import arabic
from .errors import HeaderMismatchError, MissingParserSpecError, ParseError
from .jsonio import read_json

DUMP_COLUMNS = ("lexicon_id", "lemma_diacritized", "definition_text")

REASON_NO_MARKERS = "NO_MARKERS"
REASON_NO_CONTEXT = "NO_CONTEXT"


@dataclass(frozen=True)
class LexiconDefinition:
    """One raw dictionary definition tied to a lemma and source lexicon."""

    lexicon_id: str
    lemma_diacritized: str
    lemma_key: str
    raw_text: str

    @classmethod
    def make(cls, lexicon_id: str, lemma_diacritized: str, raw_text: str):
        return cls(
            lexicon_id=lexicon_id,
            lemma_diacritized=lemma_diacritized,
            lemma_key=arabic.undiacritize(lemma_diacritized),
            raw_text=raw_text,
        )


@dataclass
class SenseRecord:
    """A gloss plus its example contexts for one lemma."""

    sense_id: str
    lemma_key: str
    lemma_diacritized: str
    gloss: str
    contexts: list[str]
    lexicon_id: str

    def to_json(self) -> dict:
        return {
            "sense_id": self.sense_id,
            "lemma_key": self.lemma_key,
            "lemma_diacritized": self.lemma_diacritized,
            "gloss": self.gloss,
            "contexts": list(self.contexts),
            "lexicon_id": self.lexicon_id,
        }

    @classmethod
    def from_json(cls, d: dict) -> "SenseRecord":
        return cls(
            sense_id=d["sense_id"],
            lemma_key=d["lemma_key"],
            lemma_diacritized=d["lemma_diacritized"],
            gloss=d["gloss"],
            contexts=list(d["contexts"]),
            lexicon_id=d["lexicon_id"],
        )


@dataclass(frozen=True)
class ParserSpec:
    """Structure and text markers of one lexicon's definitions.

    ``context_open``/``context_close`` delimit context regions; alternatively
    ``context_prefix`` marks a context running to the end of its sense
    segment.  ``pre_structured`` lexicons are guaranteed well-formed and skip
    the marker-detectability gate.
    """

    lexicon_id: str
    sense_split_markers: tuple[str, ...] = ()
    context_open: str = ""
    context_close: str = ""
    context_prefix: str = ""
    cleanup_rules: tuple[tuple[str, str], ...] = ()
    pre_structured: bool = False

    def __post_init__(self):
        markers = [m for m in (*self.sense_split_markers, self.context_open,
                               self.context_close, self.context_prefix) if m]
        if bool(self.context_open) != bool(self.context_close):
            raise ParseError(
                f"spec {self.lexicon_id}: context_open/context_close must be paired"
            )
        if not (self.context_open or self.context_prefix):
            raise ParseError(f"spec {self.lexicon_id}: no context markers defined")
        for a in markers:
            for b in markers:
                if a != b and a in b:
                    raise ParseError(
                        f"spec {self.lexicon_id}: marker {a!r} overlaps {b!r}"
                    )

    @classmethod
    def from_json(cls, lexicon_id: str, d: dict) -> "ParserSpec":
        return cls(
            lexicon_id=lexicon_id,
            sense_split_markers=tuple(d.get("sense_split_markers", ())),
            context_open=d.get("context_open", ""),
            context_close=d.get("context_close", ""),
            context_prefix=d.get("context_prefix", ""),
            cleanup_rules=tuple((p, r) for p, r in d.get("cleanup_rules", ())),
            pre_structured=bool(d.get("pre_structured", False)),
        )


def load_parser_specs(path) -> dict[str, ParserSpec]:
    """Load a JSON file mapping lexicon_id -> parser spec fields."""
    doc = read_json(path)
    return {lx: ParserSpec.from_json(lx, d) for lx, d in doc.items()}


def _unescape(field_text: str) -> str:
    return field_text.replace("\\t", "\t").replace("\\n", "\n")


def load_definitions(path):
    """Parse a lexicon dump TSV into definitions plus a rejects report.

    Returns (definitions, rejects); each reject records the 1-based line
    number, a reason code and the offending raw line.
    """
    text = Path(path).read_text(encoding="utf-8-sig")
    lines = text.splitlines()
    if not lines:
        raise HeaderMismatchError(f"{path}: empty file, expected header row")
    header = tuple(lines[0].split("\t"))
    if header != DUMP_COLUMNS:
        raise HeaderMismatchError(
            f"{path}: header {header!r} does not match {DUMP_COLUMNS!r}"
        )
    defs: list[LexiconDefinition] = []
    rejects: list[dict] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != len(DUMP_COLUMNS):
            rejects.append({"line": lineno, "reason": "BAD_COLUMN_COUNT", "raw": line})
            continue
        lexicon_id, lemma, definition = (_unescape(f).strip() for f in fields)
        if not lexicon_id or not lemma:
            rejects.append({"line": lineno, "reason": "EMPTY_KEY_FIELD", "raw": line})
            continue
        if not definition:
            rejects.append({"line": lineno, "reason": "EMPTY_DEFINITION", "raw": line})
            continue
        defs.append(LexiconDefinition.make(lexicon_id, lemma, definition))
    return defs, rejects


def _context_regions(text: str, spec: ParserSpec) -> list[tuple[int, int, str]]:
    """Locate context regions as (start, end, inner_text) spans over text.

    start/end cover the markers themselves.  Raises ParseError on unbalanced
    open/close delimiters.
    """
    regions = []
    if spec.context_open:
        pos = 0
        while True:
            o = text.find(spec.context_open, pos)
            c = text.find(spec.context_close, pos)
            if o == -1:
                if c != -1:
                    raise ParseError("close delimiter without open")
                break
            c = text.find(spec.context_close, o + len(spec.context_open))
            if c == -1:
                raise ParseError("open delimiter without close")
            inner = text[o + len(spec.context_open): c]
            regions.append((o, c + len(spec.context_close), inner))
            pos = c + len(spec.context_close)
    elif spec.context_prefix:
        p = text.find(spec.context_prefix)
        if p != -1:
            inner = text[p + len(spec.context_prefix):]
            regions.append((p, len(text), inner))
    return regions


def _clean(text: str, spec: ParserSpec) -> str:
    for pattern, repl in spec.cleanup_rules:
        text = re.sub(pattern, repl, text)
    return " ".join(text.split())


def sense_id_for(lexicon_id: str, lemma_diacritized: str, gloss: str) -> str:
    h = hashlib.sha256(
        "\x1f".join(("sense", lexicon_id, lemma_diacritized, gloss)).encode("utf-8")
    )
    return h.hexdigest()[:12]


def has_detectable_markers(definition: LexiconDefinition, spec: ParserSpec) -> bool:
    text = definition.raw_text
    if any(m in text for m in spec.sense_split_markers):
        return True
    if spec.context_open and spec.context_open in text and spec.context_close in text:
        return True
    if spec.context_prefix and spec.context_prefix in text:
        return True
    return False


def select_candidates(defs, specs):
    """Partition definitions into parse candidates and excluded ones.

    A definition is a candidate iff its markers are detectable (pre-structured
    lexicons skip that gate) and at least one context region is present.
    Returns (candidates, excluded) where each exclusion carries a reason code.
    """
    candidates: list[LexiconDefinition] = []
    excluded: list[dict] = []
    for d in defs:
        spec = specs.get(d.lexicon_id)
        if spec is None:
            raise MissingParserSpecError(
                f"no parser spec for lexicon {d.lexicon_id!r}"
            )
        if not spec.pre_structured and not has_detectable_markers(d, spec):
            excluded.append(_exclusion(d, REASON_NO_MARKERS))
            continue
        try:
            regions = _context_regions(d.raw_text, spec)
        except ParseError:
            # markers are clearly there; the imbalance is reported as a
            # parse error at extraction time
            candidates.append(d)
            continue
        if not regions:
            excluded.append(_exclusion(d, REASON_NO_CONTEXT))
            continue
        candidates.append(d)
    return candidates, excluded


def _exclusion(d: LexiconDefinition, reason: str) -> dict:
    return {
        "lexicon_id": d.lexicon_id,
        "lemma_diacritized": d.lemma_diacritized,
        "reason": reason,
        "raw_text": d.raw_text,
    }


def _split_on_markers(text: str, markers) -> list[str]:
    segments = [text]
    for m in markers:
        segments = [part for seg in segments for part in seg.split(m)]
    return segments


def extract_senses(definition: LexiconDefinition, spec: ParserSpec) -> list[SenseRecord]:
    """Split one candidate definition into glosses and their contexts.

    Raises ParseError on unbalanced context delimiters.
    """
    senses = []
    for segment in _split_on_markers(definition.raw_text, spec.sense_split_markers):
        regions = _context_regions(segment, spec)
        contexts = [_clean(inner, spec) for _, _, inner in regions]
        contexts = [c for c in contexts if c]
        gloss_text = segment
        for start, end, _ in reversed(regions):
            gloss_text = gloss_text[:start] + " " + gloss_text[end:]
        gloss = _clean(gloss_text, spec)
        if not gloss and not contexts:
            continue
        senses.append(
            SenseRecord(
                sense_id=sense_id_for(definition.lexicon_id,
                                      definition.lemma_diacritized, gloss),
                lemma_key=definition.lemma_key,
                lemma_diacritized=definition.lemma_diacritized,
                gloss=gloss,
                contexts=contexts,
                lexicon_id=definition.lexicon_id,
            )
        )
    return senses


def extract_all(candidates, specs):
    """extract_senses over many definitions; parse failures are recorded and
    the definition skipped.  Returns (senses, parse_errors)."""
    senses: list[SenseRecord] = []
    errors: list[dict] = []
    for d in candidates:
        spec = specs[d.lexicon_id]
        try:
            extracted = extract_senses(d, spec)
        except ParseError as e:
            errors.append({**_exclusion(d, "PARSE_ERROR"), "detail": e.message})
            continue
        senses.extend(extracted)
    return senses, errors


def _token_count(text: str) -> int:
    # word tokens only; detached punctuation does not make a context "long"
    return len([t for t, _ in arabic.tokenize(text)
                if any(not arabic.is_punct(ch) for ch in t)])


def apply_selection_criteria(senses, lexicon_rank):
    """Apply the four selection rules, in order; returns (kept, dropped).

    Each dropped record carries a reason code: SHORT_GLOSS, GLOSS_WITHOUT_CONTEXT
    (lemma-level), LOST_LEXICON_COMPETITION, MULTIWORD_LEMMA.
    """
    rank_index = {lx: i for i, lx in enumerate(lexicon_rank)}
    missing = {s.lexicon_id for s in senses} - set(rank_index)
    if missing:
        raise MissingParserSpecError(
            f"lexicon_rank does not cover: {sorted(missing)}"
        )

    dropped: list[dict] = []

    def drop(sense, reason):
        dropped.append({"sense": sense.to_json(), "reason": reason})

    # (a) one-word glosses/contexts
    surviving: list[SenseRecord] = []
    for s in senses:
        contexts = [c for c in s.contexts if _token_count(c) >= 2]
        if _token_count(s.gloss) < 2:
            drop(s, "SHORT_GLOSS")
            continue
        surviving.append(
            SenseRecord(s.sense_id, s.lemma_key, s.lemma_diacritized,
                        s.gloss, contexts, s.lexicon_id)
        )

    # merge exact-duplicate gloss strings within one (lemma, lexicon)
    merged: dict[tuple, SenseRecord] = {}
    order: list[tuple] = []
    for s in surviving:
        key = (s.lemma_key, s.lexicon_id, s.gloss)
        if key in merged:
            keeper = merged[key]
            for c in s.contexts:
                if c not in keeper.contexts:
                    keeper.contexts.append(c)
        else:
            merged[key] = s
            order.append(key)
    surviving = [merged[k] for k in order]

    # (b) lemma dropped if any of its glosses has no context
    by_lemma: dict[str, list[SenseRecord]] = {}
    for s in surviving:
        by_lemma.setdefault(s.lemma_key, []).append(s)
    kept_lemmas: dict[str, list[SenseRecord]] = {}
    for lemma, group in by_lemma.items():
        if any(not s.contexts for s in group):
            for s in group:
                drop(s, "GLOSS_WITHOUT_CONTEXT")
        else:
            kept_lemmas[lemma] = group

    # (c) per lemma, keep the lexicon with the most glosses; ties by rank
    kept: list[SenseRecord] = []
    for lemma, group in kept_lemmas.items():
        by_lexicon: dict[str, list[SenseRecord]] = {}
        for s in group:
            by_lexicon.setdefault(s.lexicon_id, []).append(s)
        winner = min(
            by_lexicon,
            key=lambda lx: (-len(by_lexicon[lx]), rank_index[lx]),
        )
        for lx, lx_senses in by_lexicon.items():
            if lx == winner:
                kept.extend(lx_senses)
            else:
                for s in lx_senses:
                    drop(s, "LOST_LEXICON_COMPETITION")

    # (d) multi-word lemmas out
    final = []
    for s in kept:
        if len(s.lemma_diacritized.strip().split()) > 1:
            drop(s, "MULTIWORD_LEMMA")
        else:
            final.append(s)

    final.sort(key=lambda s: (s.lemma_key, s.sense_id))
    check_invariants(final)
    return final, dropped


def check_invariants(senses) -> None:
    """Re-check SenseRecord invariants after selection; raises on violation."""
    lexicon_of: dict[str, str] = {}
    glosses_of: dict[str, set[str]] = {}
    for s in senses:
        assert _token_count(s.gloss) >= 2, f"short gloss survived: {s.sense_id}"
        assert s.contexts, f"contextless sense survived: {s.sense_id}"
        for c in s.contexts:
            assert _token_count(c) >= 2, f"short context survived: {s.sense_id}"
        assert s.lemma_key == arabic.undiacritize(s.lemma_diacritized)
        assert " " not in s.lemma_diacritized.strip()
        prev = lexicon_of.setdefault(s.lemma_key, s.lexicon_id)
        assert prev == s.lexicon_id, f"lemma {s.lemma_key} spans lexicons"
        seen = glosses_of.setdefault(s.lemma_key, set())
        assert s.gloss not in seen, f"duplicate gloss for {s.lemma_key}"
        seen.add(s.gloss)


def dataset_stats(senses) -> dict:
    """Corpus-level statistics: the upper half of the dataset summary table."""
    lemmas = {s.lemma_key for s in senses}
    gloss_count = len(senses)
    context_instances = sum(len(s.contexts) for s in senses)
    unique_contexts = {c for s in senses for c in s.contexts}
    return {
        "unique_lemmas": len(lemmas),
        "unique_glosses": gloss_count,
        "unique_contexts": len(unique_contexts),
        "context_instances": context_instances,
        "avg_glosses_per_lemma": (gloss_count / len(lemmas)) if lemmas else 0.0,
        "avg_contexts_per_gloss": (context_instances / gloss_count) if gloss_count else 0.0,
    }
