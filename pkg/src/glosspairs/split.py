"""Leakage-free train/test splitting.

The test set is built in three steps: restrict to True pairs whose gloss has
at least two contexts, draw one such pair per gloss (seeded), then take the
cross-relation of the drawn contexts with the other glosses of the same
lemma as the test False pairs.  Everything else trains, except False pairs
touching a test context, which are dropped so that no context ever appears
on both sides.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import EmptyTestSetError


@dataclass
class SplitResult:
    train: list
    test: list
    seed: int
    report: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "train": list(self.train),
            "test": list(self.test),
            "report": dict(self.report),
        }

    @classmethod
    def from_json(cls, d: dict) -> "SplitResult":
        return cls(train=list(d["train"]), test=list(d["test"]),
                   seed=d["seed"], report=dict(d.get("report", {})))


def _counts(pairs, ids):
    by_id = {p.pair_id: p for p in pairs}
    true_n = sum(1 for pid in ids if by_id[pid].label)
    return {"true": true_n, "false": len(ids) - true_n, "total": len(ids)}


def split(pairs, seed: int) -> SplitResult:
    """Deterministic, leakage-free split of a full pair set."""
    true_pairs = [p for p in pairs if p.label]
    false_pairs = [p for p in pairs if not p.label]

    by_gloss: dict[str, list] = {}
    for p in true_pairs:
        by_gloss.setdefault(p.gloss_id, []).append(p)

    multi_context = {g: ps for g, ps in by_gloss.items() if len(ps) > 1}
    if not multi_context:
        raise EmptyTestSetError(
            "no gloss has two or more contexts; the test set would be empty"
        )

    rng = random.Random(seed)
    test_true = []
    for gloss_id in sorted(multi_context):
        group = sorted(multi_context[gloss_id], key=lambda p: p.pair_id)
        test_true.append(rng.choice(group))

    test_contexts = {p.context_id for p in test_true}
    test_true_ids = {p.pair_id for p in test_true}

    # test False pairs: cross-relation closure of the drawn contexts with the
    # other glosses of the same lemma (all such pairs exist in the input)
    test_false_ids = {
        p.pair_id for p in false_pairs if p.context_id in test_contexts
    }

    train_ids = [p.pair_id for p in true_pairs if p.pair_id not in test_true_ids]
    train_ids += [p.pair_id for p in false_pairs if p.context_id not in test_contexts]
    test_ids = sorted(test_true_ids | test_false_ids)
    train_ids.sort()

    result = SplitResult(train=train_ids, test=test_ids, seed=seed)
    result.report = {
        "train": _counts(pairs, train_ids),
        "test": _counts(pairs, test_ids),
    }
    return result


def verify_split(pairs, result: SplitResult) -> dict:
    """Independent checks over a SplitResult; returns {check_name: bool}."""
    by_id = {p.pair_id: p for p in pairs}
    train = [by_id[pid] for pid in result.train]
    test = [by_id[pid] for pid in result.test]

    checks: dict[str, bool] = {}

    checks["disjoint_pairs"] = not (set(result.train) & set(result.test))

    train_contexts = {p.context_id for p in train}
    test_contexts = {p.context_id for p in test}
    checks["no_context_overlap"] = not (train_contexts & test_contexts)

    by_gloss: dict[str, set] = {}
    for p in by_id.values():
        if p.label:
            by_gloss.setdefault(p.gloss_id, set()).add(p.context_id)
    train_true_glosses = {p.gloss_id for p in train if p.label}
    test_true_glosses = [p.gloss_id for p in test if p.label]
    multi = {g for g, ctxs in by_gloss.items() if len(ctxs) > 1}
    single = set(by_gloss) - multi
    checks["multi_context_gloss_in_both"] = all(
        g in train_true_glosses and g in set(test_true_glosses) for g in multi
    )
    checks["one_test_true_per_gloss"] = (
        sorted(test_true_glosses) == sorted(multi)
    )
    checks["single_context_gloss_in_train_only"] = all(
        g in train_true_glosses and g not in set(test_true_glosses)
        for g in single
    )

    reported = result.report or {}
    checks["report_counts_match"] = (
        reported.get("train") == _counts(pairs, result.train)
        and reported.get("test") == _counts(pairs, result.test)
    )

    # closure: test False pairs are exactly the False pairs of the input that
    # touch a test True context
    test_true_contexts = {p.context_id for p in test if p.label}
    expected_false = {
        p.pair_id
        for p in by_id.values()
        if not p.label and p.context_id in test_true_contexts
    }
    actual_false = {p.pair_id for p in test if not p.label}
    checks["test_false_is_cross_relation_closure"] = expected_false == actual_false

    all_ids = set(by_id)
    used = set(result.train) | set(result.test)
    dropped = {
        pid for pid in all_ids - used
        if not by_id[pid].label and by_id[pid].context_id in test_true_contexts
    }
    checks["no_pair_lost_except_leaky_false"] = (all_ids - used) == dropped

    checks["all_passed"] = all(checks.values())
    return checks
