"""Scoring prediction files against labeled pairs.

Produces per-class precision/recall/F1 plus overall accuracy, with the True
class as the positive class of the confusion matrix.  Display values are
rounded half-up to integer percentages; the JSON report keeps full
precision.  Also provides a model-free lexical-overlap baseline so the
pipeline can run end-to-end without a trained model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from . import arabic
from .errors import DataError, PredictionCoverageError, ReportMismatchError

METRICS = ("precision", "recall", "f1")
CLASSES = ("true", "false")


@dataclass(frozen=True)
class Prediction:
    pair_id: str
    predicted: bool
    score_true: float | None = None

    def to_json(self) -> dict:
        d = {"pair_id": self.pair_id,
             "predicted": "true" if self.predicted else "false"}
        if self.score_true is not None:
            d["score_true"] = self.score_true
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Prediction":
        return cls(
            pair_id=d["pair_id"],
            predicted=d["predicted"] == "true",
            score_true=d.get("score_true"),
        )


def round_half_up(x: float) -> int:
    return int(Decimal(repr(x)).quantize(Decimal("1"), rounding=ROUND_HALF_UP))


@dataclass
class EvalReport:
    confusion: dict  # keys tp, fn, fp, tn (positive class = True)
    per_class: dict = field(init=False)
    accuracy: float = field(init=False)

    def __post_init__(self):
        tp, fn = self.confusion["tp"], self.confusion["fn"]
        fp, tn = self.confusion["fp"], self.confusion["tn"]
        total = tp + fn + fp + tn
        if total == 0:
            raise DataError("empty evaluation")
        self.per_class = {
            "true": _prf(tp, fp, fn),
            "false": _prf(tn, fn, fp),
        }
        self.accuracy = 100.0 * (tp + tn) / total

    @property
    def total(self) -> int:
        return sum(self.confusion.values())

    def rounded(self) -> dict:
        out = {
            cls: {m: round_half_up(v) for m, v in vals.items()}
            for cls, vals in self.per_class.items()
        }
        out["accuracy"] = round_half_up(self.accuracy)
        return out

    def to_json(self) -> dict:
        return {
            "confusion": dict(self.confusion),
            "per_class": {c: dict(v) for c, v in self.per_class.items()},
            "accuracy": self.accuracy,
            "rounded": self.rounded(),
        }

    def render_text(self) -> str:
        """Row layout of the results tables: metrics x classes + accuracy."""
        r = self.rounded()
        lines = [f"{'':12}{'True':>8}{'False':>8}"]
        for metric, label in (("precision", "Precision"),
                              ("recall", "Recall"), ("f1", "F1-score")):
            lines.append(
                f"{label:12}{r['true'][metric]:>8}{r['false'][metric]:>8}"
            )
        lines.append(f"{'Accuracy':12}{r['accuracy']:>8}")
        return "\n".join(lines) + "\n"


def _prf(hit: int, false_alarm: int, miss: int) -> dict:
    """Precision/recall/F1 (as percentages) for one class.

    hit = correctly assigned to the class, false_alarm = wrongly assigned to
    it, miss = class members assigned elsewhere.
    """
    precision = hit / (hit + false_alarm) if hit + false_alarm else 0.0
    recall = hit / (hit + miss) if hit + miss else 0.0
    f1 = (2 * precision * recall / (precision + recall)
          if precision + recall else 0.0)
    return {"precision": 100 * precision, "recall": 100 * recall, "f1": 100 * f1}


def evaluate(gold, preds) -> EvalReport:
    """Score predictions against gold pairs.

    Predictions must cover every gold pair exactly once; anything missing,
    duplicated, or unknown is an error.
    """
    gold_by_id = {p.pair_id: p for p in gold}
    seen = set()
    tp = fn = fp = tn = 0
    for pred in preds:
        if pred.pair_id not in gold_by_id:
            raise PredictionCoverageError(f"unknown pair_id {pred.pair_id!r}")
        if pred.pair_id in seen:
            raise PredictionCoverageError(f"duplicate pair_id {pred.pair_id!r}")
        seen.add(pred.pair_id)
        actual = gold_by_id[pred.pair_id].label
        if actual and pred.predicted:
            tp += 1
        elif actual and not pred.predicted:
            fn += 1
        elif not actual and pred.predicted:
            fp += 1
        else:
            tn += 1
    missing = set(gold_by_id) - seen
    if missing:
        raise PredictionCoverageError(
            f"{len(missing)} gold pairs without predictions, e.g. "
            f"{sorted(missing)[:3]}"
        )
    return EvalReport(confusion={"tp": tp, "fn": fn, "fp": fp, "tn": tn})


def baseline_overlap(pair, profile, threshold: float) -> Prediction:
    """Token-overlap scorer: True iff the fraction of distinct gloss tokens
    also present in the context reaches the threshold (inclusive)."""
    prof = arabic.get_profile(profile)
    ctx_tokens = set(arabic.token_texts(prof.apply(pair.context_text)))
    gloss_tokens = set(arabic.token_texts(prof.apply(pair.gloss_text)))
    if not gloss_tokens:
        raise DataError(f"pair {pair.pair_id}: empty gloss after normalization")
    ratio = len(ctx_tokens & gloss_tokens) / len(gloss_tokens)
    score = min(max(ratio, 0.0), 1.0)
    return Prediction(pair.pair_id, score >= threshold, score_true=score)


def compare_reports(a: EvalReport, b: EvalReport) -> dict:
    """Signed per-metric differences (a - b) between two reports over the
    same split."""
    if a.total != b.total:
        raise ReportMismatchError(
            f"reports cover different splits ({a.total} vs {b.total} pairs)"
        )
    delta = {
        cls: {m: a.per_class[cls][m] - b.per_class[cls][m] for m in METRICS}
        for cls in CLASSES
    }
    delta["accuracy"] = a.accuracy - b.accuracy
    return delta
