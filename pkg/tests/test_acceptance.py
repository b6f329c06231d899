"""End-to-end acceptance gate.

Each test covers one release criterion and prints a single PASS/FAIL line
(visible with ``pytest -s`` or in captured output on failure).  Tolerances
are stated inline; everything not given an epsilon is exact.
"""

import copy
import json
import random
import time
from functools import lru_cache

import pytest

from glosspairs import annotate as ann
from glosspairs import arabic, cli, evaluate, split as split_mod, tagging
from glosspairs import pairs as pairs_mod
from conftest import FIXTURES, WORDS, brute_force_false_pairs, \
    random_sense_inventory


def _gate(tag: str, body) -> None:
    """Run one criterion, always printing a verdict line."""
    try:
        body()
    except BaseException:
        print(f"{tag}: FAIL")
        raise
    print(f"{tag}: PASS")


# --- 1. false-pair generation equivalence ------------------------------------

def test_false_pair_equivalence_vs_bruteforce():
    def body():
        rng = random.Random(20260826)
        start = time.process_time()
        for _ in range(200):
            senses = random_sense_inventory(rng, max_lemmas=100,
                                            max_glosses=5, max_contexts=4)
            true_pairs = pairs_mod.build_true_pairs(senses)
            false_pairs = pairs_mod.build_false_pairs(true_pairs)
            got = {(p.lemma_key, p.context_id, p.gloss_id) for p in false_pairs}
            assert got == brute_force_false_pairs(true_pairs)
            # per-lemma count formula: (sum of context counts) * (glosses - 1)
            by_lemma = {}
            for p in true_pairs:
                by_lemma.setdefault(p.lemma_key, []).append(p)
            for lemma, group in by_lemma.items():
                n_ctx = len({p.context_id for p in group})
                n_gloss = len({p.gloss_id for p in group})
                expected = n_ctx * (n_gloss - 1)
                actual = sum(1 for p in false_pairs if p.lemma_key == lemma)
                assert actual == expected, lemma
        elapsed = time.process_time() - start
        assert elapsed < 5.0, f"took {elapsed:.2f}s, budget 5s"

    _gate("acceptance[false-pair-equivalence, 200 inventories, exact, <5s]",
          body)


# --- 2. split soundness -------------------------------------------------------

def _inventory_pairs(rng):
    senses = random_sense_inventory(rng, max_lemmas=25, max_glosses=4,
                                    max_contexts=3)
    true_pairs = pairs_mod.build_true_pairs(senses)
    return true_pairs + pairs_mod.build_false_pairs(true_pairs)


def test_split_soundness_and_fault_detection():
    def body():
        rng = random.Random(7)
        start = time.process_time()
        for seed in range(100):
            pairs = _inventory_pairs(rng)
            result = split_mod.split(pairs, seed)
            checks = split_mod.verify_split(pairs, result)
            assert checks["all_passed"], (seed, checks)

        # injected faults must be caught
        pairs = _inventory_pairs(random.Random(99))
        clean = split_mod.split(pairs, 0)

        leaked = copy.deepcopy(clean)
        leaked.train.append(leaked.test[0])
        assert not split_mod.verify_split(pairs, leaked)["all_passed"]

        dropped = copy.deepcopy(clean)
        dropped.test.pop()
        assert not split_mod.verify_split(pairs, dropped)["all_passed"]

        moved = copy.deepcopy(clean)
        moved.test.append(moved.train.pop(0))
        assert not split_mod.verify_split(pairs, moved)["all_passed"]

        elapsed = time.process_time() - start
        assert elapsed < 10.0, f"took {elapsed:.2f}s, budget 10s"

    _gate("acceptance[split-soundness, 100 seeds + injected faults, exact, "
          "<10s]", body)


# --- 3. split report at desk scale ---------------------------------------------

def test_mini_lexicon_split_counts(tmp_path):
    # Published corpus-scale counts (55,585/96,450 train, 4,738/10,434 test)
    # need the proprietary source lexicons and are reference-only; the gate
    # checks the same bookkeeping on the bundled synthetic mini-lexicon.
    def body():
        base = ("--out-dir", str(tmp_path))
        assert cli.main(["ingest", "--dump", str(FIXTURES / "mini_lexicon.tsv"),
                         "--parser-specs", str(FIXTURES / "parser_specs.json"),
                         *base]) == 0
        assert cli.main(["pairs", *base]) == 0
        assert cli.main(["split", "--seed", "0", *base]) == 0
        report = json.loads(
            (tmp_path / "split.json").read_text("utf-8"))["report"]
        assert report["train"] == {"true": 9, "false": 6, "total": 15}
        assert report["test"] == {"true": 4, "false": 3, "total": 7}

    _gate("acceptance[mini-lexicon split counts, hand-enumerated, exact]",
          body)


# --- 4. string-metric oracles ---------------------------------------------------

@lru_cache(maxsize=None)
def _lev_oracle(a: str, b: str) -> int:
    if not a:
        return len(b)
    if not b:
        return len(a)
    cost = a[-1] != b[-1]
    return min(_lev_oracle(a[:-1], b) + 1,
               _lev_oracle(a, b[:-1]) + 1,
               _lev_oracle(a[:-1], b[:-1]) + cost)


def _cosine_oracle(a: str, b: str) -> float:
    from collections import Counter
    ca, cb = Counter(a), Counter(b)
    dot = sum(ca[ch] * cb[ch] for ch in ca)
    na = sum(v * v for v in ca.values()) ** 0.5
    nb = sum(v * v for v in cb.values()) ** 0.5
    return dot / (na * nb)


def test_string_metric_oracles():
    def body():
        rng = random.Random(13)
        alphabet = "ابتثجحخدذرزسشصضطظعغفقكلمنهوي"
        for _ in range(1000):
            a = "".join(rng.choices(alphabet, k=rng.randint(1, 8)))
            b = "".join(rng.choices(alphabet, k=rng.randint(1, 8)))
            assert arabic.levenshtein(a, b) == _lev_oracle(a, b)
            assert abs(arabic.char_cosine(a, b) - _cosine_oracle(a, b)) < 1e-9
        # exactly 0.75 must be rejected (threshold is exclusive)
        assert abs(arabic.char_cosine("ابجد", "ابجه") - 0.75) < 1e-12
        assert ann.method_cosine("ابجد", "ابجه") is None
        assert ann.method_cosine("ابجد", "ابجد") is not None

    _gate("acceptance[string-metric oracles, 1000 pairs, lev exact / "
          "cosine 1e-9, 0.75 exclusive]", body)


# --- 5. target annotation on gold fixtures --------------------------------------

def _gold_fixture_set():
    """50 contexts with known gold target positions.

    30 exact-match, 10 repeated-word traps (gold at the first occurrence),
    10 inflected with a definite-article prefix.
    """
    lemmas = ["ذهب", "كتب", "عين", "قمر", "بحر"]
    fillers = ["استقبل", "مستشفى", "الطائرة", "مفاوضات", "يتحدثون",
               "اجتماع", "الصحيفة", "وصلوا"]
    rng = random.Random(42)
    cases = []
    for i in range(30):
        lemma = lemmas[i % len(lemmas)]
        tokens = rng.sample(fillers, 4)
        gold = rng.randrange(5)
        tokens.insert(gold, lemma)
        cases.append((lemma, " ".join(tokens), gold, False))
    for i in range(10):
        lemma = lemmas[i % len(lemmas)]
        tokens = rng.sample(fillers, 3)
        first = rng.randrange(3)
        tokens.insert(first, lemma)
        tokens.append(lemma)  # second occurrence, always later
        cases.append((lemma, " ".join(tokens), first, True))
    for i in range(10):
        lemma = lemmas[i % len(lemmas)]
        tokens = rng.sample(fillers, 4)
        gold = rng.randrange(5)
        tokens.insert(gold, "ال" + lemma)
        cases.append((lemma, " ".join(tokens), gold, False))
    return cases


def _methods_firing_at(lemma, context, table, gold):
    fired = 0
    if any(c.token_index == gold for c in ann.method_substring(lemma, context)):
        fired += 1
    for method in (ann.method_cosine, ann.method_levenshtein):
        c = method(lemma, context)
        if c is not None and c.token_index == gold:
            fired += 1
    if any(c.token_index == gold
           for c in ann.method_lemmatize(lemma, context, table)):
        fired += 1
    return fired


def test_target_annotation_gold_fixtures():
    def body():
        table = ann.LemmaTable.load(FIXTURES / "lemma_table.tsv")
        cases = _gold_fixture_set()
        assert len(cases) == 50
        checked = 0
        for n, (lemma, context, gold, is_trap) in enumerate(cases):
            a = ann.annotate_context(f"gold.c{n}", lemma, context, table)
            if _methods_firing_at(lemma, context, table, gold) >= 2:
                assert a.chosen_index == gold, (lemma, context, gold)
                checked += 1
            assert a.multi_occurrence == is_trap, (lemma, context)
        # the condition must actually bite on most of the set
        assert checked >= 40, f"only {checked} contexts had >=2 methods agree"

    _gate("acceptance[target annotation, 50 gold contexts incl. traps, "
          "exact]", body)


# --- 6. tagging golden files ------------------------------------------------------

def test_tagging_golden_and_invariants():
    def body():
        golden_dir = FIXTURES / "golden"
        rows = json.loads((golden_dir / "pairs.json").read_text("utf-8"))
        gold_pairs = [pairs_mod.ContextGlossPair.from_json(d) for d in rows]
        assert len(gold_pairs) == 20
        table = ann.LemmaTable.load(FIXTURES / "lemma_table.tsv")
        annotations = {a.context_id: a
                       for a in ann.auto_annotate(gold_pairs, table)}
        for variation in ("v1", "v2", "v3", "v4"):
            instances, _ = tagging.render_corpus(gold_pairs, annotations,
                                                 variation, "camel")
            rendered = "".join(
                json.dumps(t.to_json(), ensure_ascii=False, sort_keys=True,
                           separators=(",", ":")) + "\n"
                for t in instances
            )
            expected = (golden_dir / f"tagged.{variation}.jsonl").read_text("utf-8")
            assert rendered == expected, variation
            for t in instances:
                assert t.sequence.count("[SEP]") == 1, t.pair_id
                if not t.truncated:
                    ctx, gloss = tagging.strip_signals(t, variation)
                    pair = next(p for p in gold_pairs if p.pair_id == t.pair_id)
                    prof = arabic.get_profile("camel")
                    assert ctx == prof.apply(pair.context_text)
                    assert gloss == prof.apply(pair.gloss_text)

    _gate("acceptance[tagging, golden byte-exact x4 variations + round "
          "trip + single SEP]", body)


# --- 7. evaluator vs published row -------------------------------------------------

def test_evaluator_reproduces_published_row():
    # Confusion matrix derived offline: the lexicographically smallest of
    # the 48,019 integer matrices over 15,172 test pairs whose half-up
    # rounded metrics equal the published row.
    def body():
        start = time.process_time()
        tp, fn, fp, tn = 3114, 1640, 748, 9670
        gold, preds = [], []
        spec_rows = [(True, True, tp), (True, False, fn),
                     (False, True, fp), (False, False, tn)]
        i = 0
        for actual, predicted, count in spec_rows:
            for _ in range(count):
                p = pairs_mod.make_pair(f"l{i}", f"c{i}", "س", f"g{i}", "ش",
                                        actual)
                gold.append(p)
                preds.append(evaluate.Prediction(p.pair_id, predicted))
                i += 1
        assert len(gold) == 15172
        report = evaluate.evaluate(gold, preds)
        assert report.rounded() == {
            "true": {"precision": 81, "recall": 66, "f1": 72},
            "false": {"precision": 85, "recall": 93, "f1": 89},
            "accuracy": 84,
        }
        elapsed = time.process_time() - start
        assert elapsed < 1.0, f"took {elapsed:.2f}s, budget 1s"

    _gate("acceptance[evaluator reproduces published row from derived "
          "matrix (3114,1640,748,9670), exact, <1s]", body)


# --- 8. CLI determinism -----------------------------------------------------------

def _run_chain(out_dir):
    base = ("--out-dir", str(out_dir))
    for argv in (
        ["ingest", "--dump", str(FIXTURES / "mini_lexicon.tsv"),
         "--parser-specs", str(FIXTURES / "parser_specs.json"), *base],
        ["pairs", *base],
        ["annotate", "--lemma-table", str(FIXTURES / "lemma_table.tsv"), *base],
        ["tag", "--variation", "v3", "--profile", "camel", *base],
        ["split", "--seed", "7", *base],
        ["baseline", "--profile", "camel", *base],
        ["eval", *base],
    ):
        assert cli.main(argv) == 0


def test_cli_determinism(tmp_path):
    def body():
        a, b = tmp_path / "a", tmp_path / "b"
        _run_chain(a)
        _run_chain(b)
        names = sorted(p.name for p in a.iterdir())
        assert names == sorted(p.name for p in b.iterdir())
        for name in names:
            assert (a / name).read_bytes() == (b / name).read_bytes(), name
        # manifest hash equality implies matching inputs at every stage
        for mf in sorted(a.glob("manifest.*.json")):
            ma = json.loads(mf.read_text("utf-8"))
            mb = json.loads((b / mf.name).read_text("utf-8"))
            assert ma["inputs"] == mb["inputs"], mf.name

    _gate("acceptance[CLI determinism, rerun byte-identical, exact]", body)
