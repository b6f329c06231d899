"""Unicode-aware Arabic text primitives.

Undiacritization, orthographic normalization profiles, whitespace
tokenization with punctuation detachment, character-occurrence vectors with
cosine similarity, and Levenshtein edit distance.  Everything here is a pure
function over immutable values; safe for unrestricted parallel use.
"""

from __future__ import annotations

import math
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import UndefinedSimilarityError, UnknownProfileError

# The eight Arabic harakat: tanwin fath/damm/kasr, fatha, damma, kasra,
# shadda, sukun (U+064B..U+0652).
DIACRITICS = frozenset(chr(cp) for cp in range(0x064B, 0x0653))

_DIACRITIC_TABLE = {ord(c): None for c in DIACRITICS}


def undiacritize(text: str) -> str:
    """Remove Arabic diacritic marks, preserving all other codepoints."""
    return text.translate(_DIACRITIC_TABLE)


@dataclass(frozen=True)
class NormProfile:
    """A named orthographic normalization: optional undiacritization plus an
    ordered list of single-codepoint replacement rules."""

    name: str
    strip_diacritics: bool
    char_map: tuple[tuple[str, str], ...] = ()

    def apply(self, text: str) -> str:
        if self.strip_diacritics:
            text = undiacritize(text)
        for src, dst in self.char_map:
            text = text.replace(src, dst)
        return text


def load_rule_table(path) -> tuple[tuple[str, str], ...]:
    """Read replacement rules from a TSV file: ``source<TAB>target`` per line.

    Blank lines and lines starting with ``#`` are skipped.
    """
    rules = []
    for raw in Path(path).read_text(encoding="utf-8-sig").splitlines():
        line = raw.strip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        src, sep, dst = line.partition("\t")
        if not sep or not src:
            raise UnknownProfileError(f"bad rule line in {path!s}: {raw!r}")
        rules.append((src, dst))
    return tuple(rules)


def _camel_rules() -> tuple[tuple[str, str], ...]:
    ref = resources.files(__package__).joinpath("data/camel_rules.tsv")
    with resources.as_file(ref) as p:
        return load_rule_table(p)


# `none` is the identity; `camel` follows the CAMeLBERT preprocessing
# convention (alif variants, alif maksura, teh marbuta + undiacritization).
# The rule table is shipped as a versioned TSV so other components can load
# the exact same mappings.
PROFILES: dict[str, NormProfile] = {}


def register_profile(profile: NormProfile) -> NormProfile:
    PROFILES[profile.name] = profile
    return profile


register_profile(NormProfile(name="none", strip_diacritics=False))
register_profile(
    NormProfile(name="camel", strip_diacritics=True, char_map=_camel_rules())
)


def get_profile(name_or_profile) -> NormProfile:
    if isinstance(name_or_profile, NormProfile):
        return name_or_profile
    try:
        return PROFILES[name_or_profile]
    except KeyError:
        known = ", ".join(sorted(PROFILES))
        raise UnknownProfileError(
            f"unknown normalization profile {name_or_profile!r} (known: {known})"
        ) from None


def normalize(text: str, profile) -> str:
    """Apply a registered normalization profile (or a NormProfile) to text."""
    return get_profile(profile).apply(text)


@dataclass(frozen=True)
class CharVector:
    """Character-occurrence counts of an undiacritized string."""

    counts: dict[str, int] = field(default_factory=dict)

    @classmethod
    def of(cls, text: str) -> "CharVector":
        return cls(dict(Counter(undiacritize(text))))

    def dot(self, other: "CharVector") -> float:
        a, b = self.counts, other.counts
        if len(b) < len(a):
            a, b = b, a
        return float(sum(n * b[c] for c, n in a.items() if c in b))

    def norm(self) -> float:
        return math.sqrt(sum(n * n for n in self.counts.values()))


def char_cosine(a: str, b: str) -> float:
    """Cosine similarity of the character-occurrence vectors of two strings.

    Inputs are undiacritized defensively.  Raises UndefinedSimilarityError
    when either string is empty after undiacritization.
    """
    va, vb = CharVector.of(a), CharVector.of(b)
    if not va.counts or not vb.counts:
        raise UndefinedSimilarityError(
            f"cosine undefined for empty text: {a!r} vs {b!r}"
        )
    return va.dot(vb) / (va.norm() * vb.norm())


def levenshtein(a: str, b: str) -> int:
    """Minimum number of single-character edits transforming a into b."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(
                min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb))
            )
        prev = cur
    return prev[-1]


def is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(text: str) -> list[tuple[str, int]]:
    """Split text into (token, char_offset) pairs.

    Splits on whitespace and detaches terminal punctuation characters into
    their own tokens.  Each token equals text[offset:offset+len(token)].
    """
    tokens: list[tuple[str, int]] = []
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace():
            j += 1
        chunk = text[i:j]
        # peel trailing punctuation, one token per char
        k = len(chunk)
        while k > 0 and is_punct(chunk[k - 1]):
            k -= 1
        if k > 0:
            tokens.append((chunk[:k], i))
        for p in range(k, len(chunk)):
            tokens.append((chunk[p], i + p))
        i = j
    return tokens


def token_texts(text: str) -> list[str]:
    return [t for t, _ in tokenize(text)]
