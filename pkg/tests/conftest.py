import random
from pathlib import Path

import pytest

from glosspairs import pairs as pairs_mod
from glosspairs.ingest import SenseRecord, sense_id_for

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# small Arabic word pool for randomized sense inventories
WORDS = [
    "كتاب", "قلم", "باب", "بيت", "ماء", "شمس", "قمر", "بحر", "جبل", "شجرة",
    "ولد", "بنت", "مدينة", "طريق", "سوق", "خبز", "لبن", "عمل", "علم", "نور",
]


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def make_sense(lemma: str, gloss: str, contexts, lexicon="lex") -> SenseRecord:
    return SenseRecord(
        sense_id=sense_id_for(lexicon, lemma, gloss),
        lemma_key=lemma,
        lemma_diacritized=lemma,
        gloss=gloss,
        contexts=list(contexts),
        lexicon_id=lexicon,
    )


def random_sense_inventory(rng: random.Random, max_lemmas=100,
                           max_glosses=5, max_contexts=4):
    """Randomized lemma/gloss/context inventory for oracle comparisons."""
    senses = []
    n_lemmas = rng.randint(1, max_lemmas)
    for li in range(n_lemmas):
        lemma = f"lemma{li}"
        for gi in range(rng.randint(1, max_glosses)):
            words = rng.sample(WORDS, 3)
            gloss = f"{words[0]} {words[1]} {gi}"
            contexts = [
                f"{rng.choice(WORDS)} {lemma} {rng.choice(WORDS)} {ci}"
                for ci in range(rng.randint(1, max_contexts))
            ]
            senses.append(make_sense(lemma, gloss, contexts))
    return senses


def brute_force_false_pairs(true_pairs):
    """Independent enumeration: per lemma, the full gloss x context matrix
    minus the True diagonal, as a set of (context_id, gloss_id) keys."""
    by_lemma = {}
    for p in true_pairs:
        by_lemma.setdefault(p.lemma_key, []).append(p)
    expected = set()
    for lemma, group in by_lemma.items():
        contexts = {(p.context_id, p.context_text) for p in group}
        glosses = {(p.gloss_id, p.gloss_text) for p in group}
        true_keys = {(p.context_id, p.gloss_id) for p in group}
        for (cid, _) in contexts:
            for (gid, _) in glosses:
                if (cid, gid) not in true_keys:
                    expected.add((lemma, cid, gid))
    return expected


def full_pair_set(senses):
    true_pairs = pairs_mod.build_true_pairs(senses)
    false_pairs = pairs_mod.build_false_pairs(true_pairs)
    return true_pairs, false_pairs
