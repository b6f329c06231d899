import random

import pytest

from glosspairs import pairs as pairs_mod
from conftest import (
    brute_force_false_pairs,
    make_sense,
    random_sense_inventory,
)


def test_true_pairs_one_per_context():
    s = make_sense("m", "معنى جيد", ["مثال أول", "مثال ثان", "مثال ثالث"])
    true_pairs = pairs_mod.build_true_pairs([s])
    assert len(true_pairs) == 3
    assert all(p.label for p in true_pairs)
    assert len({p.pair_id for p in true_pairs}) == 3


def test_true_pairs_empty_input():
    assert pairs_mod.build_true_pairs([]) == []


def test_false_pairs_paper_example():
    # (context1, gloss1) and (context2, gloss2) cross to
    # (context1, gloss2) and (context2, gloss1)
    senses = [
        make_sense("m", "المعنى الأول", ["المثال الأول"]),
        make_sense("m", "المعنى الثاني", ["المثال الثاني"]),
    ]
    true_pairs = pairs_mod.build_true_pairs(senses)
    false_pairs = pairs_mod.build_false_pairs(true_pairs)
    assert len(false_pairs) == 2
    assert all(not p.label for p in false_pairs)
    got = {(p.context_text, p.gloss_text) for p in false_pairs}
    assert got == {
        ("المثال الأول", "المعنى الثاني"),
        ("المثال الثاني", "المعنى الأول"),
    }


def test_false_pairs_derived_count():
    # 2 glosses with contexts (2, 1): every context crosses the 1 other
    # gloss -> 3 False pairs
    senses = [
        make_sense("m", "المعنى الأول", ["مثال أ", "مثال ب"]),
        make_sense("m", "المعنى الثاني", ["مثال ج"]),
    ]
    false_pairs = pairs_mod.build_false_pairs(pairs_mod.build_true_pairs(senses))
    assert len(false_pairs) == 3


def test_single_gloss_lemma_contributes_nothing():
    senses = [make_sense("m", "معنى وحيد", ["مثال أول", "مثال ثان"])]
    assert pairs_mod.build_false_pairs(pairs_mod.build_true_pairs(senses)) == []


def test_false_pairs_match_brute_force_oracle_randomized():
    rng = random.Random(99)
    for _ in range(25):
        senses = random_sense_inventory(rng, max_lemmas=20)
        true_pairs = pairs_mod.build_true_pairs(senses)
        false_pairs = pairs_mod.build_false_pairs(true_pairs)
        got = {(p.lemma_key, p.context_id, p.gloss_id) for p in false_pairs}
        assert got == brute_force_false_pairs(true_pairs)
        assert len(got) == len(false_pairs)  # no duplicates


def test_per_lemma_count_formula():
    rng = random.Random(7)
    senses = random_sense_inventory(rng, max_lemmas=30)
    true_pairs = pairs_mod.build_true_pairs(senses)
    false_pairs = pairs_mod.build_false_pairs(true_pairs)
    per_lemma_false = {}
    for p in false_pairs:
        per_lemma_false[p.lemma_key] = per_lemma_false.get(p.lemma_key, 0) + 1
    by_lemma = {}
    for s in senses:
        by_lemma.setdefault(s.lemma_key, []).append(s)
    for lemma, group in by_lemma.items():
        g = len(group)
        total_contexts = sum(len(s.contexts) for s in group)
        assert per_lemma_false.get(lemma, 0) == total_contexts * (g - 1)


def test_no_false_pair_duplicates_true_key():
    rng = random.Random(3)
    senses = random_sense_inventory(rng, max_lemmas=15)
    true_pairs = pairs_mod.build_true_pairs(senses)
    false_pairs = pairs_mod.build_false_pairs(true_pairs)
    true_keys = {(p.context_id, p.gloss_id) for p in true_pairs}
    assert all((p.context_id, p.gloss_id) not in true_keys for p in false_pairs)


def test_false_pairs_never_cross_lemma():
    rng = random.Random(4)
    senses = random_sense_inventory(rng, max_lemmas=15)
    true_pairs = pairs_mod.build_true_pairs(senses)
    gloss_lemma = {p.gloss_id: p.lemma_key for p in true_pairs}
    context_lemma = {p.context_id: p.lemma_key for p in true_pairs}
    for p in pairs_mod.build_false_pairs(true_pairs):
        assert gloss_lemma[p.gloss_id] == p.lemma_key
        assert context_lemma[p.context_id] == p.lemma_key


def test_cross_relation_by_identity_not_text():
    # two glosses with identical text remain distinct cross partners
    senses = [
        make_sense("m", "نفس النص تماما", ["مثال أول"], lexicon="lexA"),
        make_sense("m", "نفس النص تماما", ["مثال ثان"], lexicon="lexB"),
    ]
    true_pairs = pairs_mod.build_true_pairs(senses)
    false_pairs = pairs_mod.build_false_pairs(true_pairs)
    assert len(false_pairs) == 2


def test_pair_ids_stable_across_runs():
    senses = [make_sense("m", "معنى جيد", ["مثال أول"])]
    a = pairs_mod.build_true_pairs(senses)
    b = pairs_mod.build_true_pairs(senses)
    assert [p.pair_id for p in a] == [p.pair_id for p in b]


def test_pair_stats():
    senses = [
        make_sense("m", "المعنى الأول", ["مثال أ", "مثال ب"]),
        make_sense("m", "المعنى الثاني", ["مثال ج"]),
    ]
    true_pairs = pairs_mod.build_true_pairs(senses)
    all_pairs = true_pairs + pairs_mod.build_false_pairs(true_pairs)
    assert pairs_mod.pair_stats(all_pairs) == {
        "true_pairs": 3, "false_pairs": 3, "total_pairs": 6
    }
    assert pairs_mod.pair_stats([]) == {
        "true_pairs": 0, "false_pairs": 0, "total_pairs": 0
    }


def test_label_serialization_roundtrip():
    senses = [make_sense("m", "معنى جيد", ["مثال أول"])]
    p = pairs_mod.build_true_pairs(senses)[0]
    d = p.to_json()
    assert d["label"] == "true"
    assert pairs_mod.ContextGlossPair.from_json(d) == p
