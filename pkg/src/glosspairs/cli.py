"""Command-line pipeline orchestration.

Subcommands read and write only the documented flat files under the output
directory, and every run drops a manifest (input hashes + effective config)
so identical reruns produce byte-identical artifacts.

Exit codes: 0 success, 1 usage/config error, 2 data error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import annotate as ann_mod
from . import arabic, evaluate, ingest, pairs as pairs_mod, split as split_mod
from . import tagging
from .errors import ConfigError, DataError, GlossPairsError
from .jsonio import read_json, read_jsonl, write_json, write_jsonl
from .manifest import write_manifest

DEFAULTS = {
    "dump": None,
    "parser_specs": None,
    "lemma_table": None,
    "out_dir": "out",
    "lexicon_rank": [],
    "variation": "v1",
    "profile": "none",
    "max_len": 512,
    "seed": 0,
    "threshold": 0.5,
    "port": 8000,
    "static_dir": None,
    "preds": None,
    "split_side": "test",
}

CONFIG_FLAGS = (
    "dump", "parser_specs", "lemma_table", "out_dir", "variation",
    "profile", "max_len", "seed", "threshold", "port", "static_dir",
    "preds", "split_side",
)


def load_config(args) -> dict:
    config = dict(DEFAULTS)
    if args.config:
        config.update(read_json(args.config))
    for key in CONFIG_FLAGS:
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            config[key] = value
    if args.lexicon_rank:
        config["lexicon_rank"] = [s for s in args.lexicon_rank.split(",") if s]
    if config["max_len"] < 16:
        raise ConfigError(f"max_len must be >= 16, got {config['max_len']}")
    arabic.get_profile(config["profile"])
    tagging.get_variation(config["variation"])
    return config


def _out(config) -> Path:
    out = Path(config["out_dir"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _require(config, *keys):
    for key in keys:
        if not config.get(key):
            raise ConfigError(f"missing required setting: {key}")
        if not Path(config[key]).exists():
            raise DataError(f"input file not found: {config[key]}")


def _artifact(out: Path, name: str, producer: str) -> Path:
    path = out / name
    if not path.exists():
        raise DataError(f"{name} not found in {out}; run '{producer}' first")
    return path


def _load_pairs(path):
    return [pairs_mod.ContextGlossPair.from_json(d) for d in read_jsonl(path)]


def cmd_ingest(config) -> None:
    _require(config, "dump", "parser_specs")
    out = _out(config)
    specs = ingest.load_parser_specs(config["parser_specs"])
    defs, rejects = ingest.load_definitions(config["dump"])
    candidates, excluded = ingest.select_candidates(defs, specs)
    senses, parse_errors = ingest.extract_all(candidates, specs)
    rank = config["lexicon_rank"] or sorted({d.lexicon_id for d in defs})
    kept, dropped = ingest.apply_selection_criteria(senses, rank)
    write_jsonl(out / "senses.jsonl", (s.to_json() for s in kept))
    write_jsonl(out / "rejects.jsonl",
                rejects + excluded + parse_errors + dropped)
    write_json(out / "stats.json", ingest.dataset_stats(kept))
    write_manifest(out, "ingest",
                   {"dump": config["dump"], "parser_specs": config["parser_specs"]},
                   {"lexicon_rank": rank})
    print(f"ingest: kept {len(kept)} senses "
          f"({len(rejects)} rejected lines, {len(excluded)} excluded "
          f"definitions, {len(parse_errors)} parse errors, "
          f"{len(dropped)} dropped senses)")


def cmd_pairs(config) -> None:
    out = _out(config)
    senses_path = _artifact(out, "senses.jsonl", "ingest")
    senses = [ingest.SenseRecord.from_json(d) for d in read_jsonl(senses_path)]
    true_pairs = pairs_mod.build_true_pairs(senses)
    false_pairs = pairs_mod.build_false_pairs(true_pairs)
    all_pairs = sorted(true_pairs + false_pairs, key=lambda p: p.pair_id)
    write_jsonl(out / "pairs.jsonl", (p.to_json() for p in all_pairs))
    write_manifest(out, "pairs", {"senses": senses_path}, {})
    print(f"pairs: {pairs_mod.pair_stats(all_pairs)}")


def cmd_annotate(config) -> None:
    _require(config, "lemma_table")
    out = _out(config)
    table = ann_mod.LemmaTable.load(config["lemma_table"])
    all_pairs = _load_pairs(_artifact(out, "pairs.jsonl", "pairs"))
    annotations = ann_mod.auto_annotate(all_pairs, table)
    store = ann_mod.AnnotationStore(out / "annotations.jsonl",
                                    out / "annotations.audit.jsonl")
    store.put_all(annotations)
    store.save()
    write_manifest(out, "annotate",
                   {"pairs": out / "pairs.jsonl",
                    "lemma_table": config["lemma_table"]}, {})
    print(f"annotate: {store.progress()}")


def cmd_review_serve(config) -> None:
    import uvicorn

    from .review_api import make_app

    out = _out(config)
    store = ann_mod.AnnotationStore.load(
        _artifact(out, "annotations.jsonl", "annotate"))
    app = make_app(store, static_dir=config.get("static_dir"))
    uvicorn.run(app, host="127.0.0.1", port=int(config["port"]))


def cmd_tag(config) -> None:
    out = _out(config)
    all_pairs = _load_pairs(_artifact(out, "pairs.jsonl", "pairs"))
    store = ann_mod.AnnotationStore.load(
        _artifact(out, "annotations.jsonl", "annotate"))
    variation = config["variation"]
    instances, summary = tagging.render_corpus(
        all_pairs, store.items, variation, config["profile"],
        int(config["max_len"]),
    )
    name = f"tagged.{variation}.jsonl"
    write_jsonl(out / name, (t.to_json() for t in instances))
    write_json(out / f"tagged.{variation}.meta.json",
               {"variation": variation, "profile": config["profile"],
                "max_len": int(config["max_len"]), **summary})
    write_manifest(out, f"tag-{variation}",
                   {"pairs": out / "pairs.jsonl",
                    "annotations": out / "annotations.jsonl"},
                   {"variation": variation, "profile": config["profile"],
                    "max_len": int(config["max_len"])})
    print(f"tag: {summary}")


def cmd_split(config) -> None:
    out = _out(config)
    all_pairs = _load_pairs(_artifact(out, "pairs.jsonl", "pairs"))
    result = split_mod.split(all_pairs, int(config["seed"]))
    checks = split_mod.verify_split(all_pairs, result)
    if not checks["all_passed"]:
        raise DataError(f"split verification failed: {checks}")
    write_json(out / "split.json", result.to_json())
    by_id = {p.pair_id: p for p in all_pairs}
    write_jsonl(out / "train.jsonl", (by_id[i].to_json() for i in result.train))
    write_jsonl(out / "test.jsonl", (by_id[i].to_json() for i in result.test))
    write_manifest(out, "split", {"pairs": out / "pairs.jsonl"},
                   {"seed": int(config["seed"])})
    print(f"split: {result.report}")


def cmd_stats(config) -> None:
    out = _out(config)
    senses = [ingest.SenseRecord.from_json(d)
              for d in read_jsonl(_artifact(out, "senses.jsonl", "ingest"))]
    stats = ingest.dataset_stats(senses)
    pairs_path = out / "pairs.jsonl"
    if pairs_path.exists():
        stats.update(pairs_mod.pair_stats(_load_pairs(pairs_path)))
    write_json(out / "stats.json", stats)
    print(f"stats: {stats}")


def cmd_baseline(config) -> None:
    out = _out(config)
    side = config["split_side"]
    eval_pairs = _load_pairs(_artifact(out, f"{side}.jsonl", "split"))
    preds = [
        evaluate.baseline_overlap(p, config["profile"],
                                  float(config["threshold"]))
        for p in eval_pairs
    ]
    write_jsonl(out / "preds.jsonl", (p.to_json() for p in preds))
    write_manifest(out, "baseline", {"pairs": out / f"{side}.jsonl"},
                   {"profile": config["profile"],
                    "threshold": float(config["threshold"]),
                    "split_side": side})
    print(f"baseline: wrote {len(preds)} predictions")


def cmd_eval(config) -> None:
    out = _out(config)
    side = config["split_side"]
    gold = _load_pairs(_artifact(out, f"{side}.jsonl", "split"))
    preds_path = Path(config["preds"]) if config["preds"] \
        else _artifact(out, "preds.jsonl", "baseline")
    if not preds_path.exists():
        raise DataError(f"prediction file not found: {preds_path}")
    preds = [evaluate.Prediction.from_json(d) for d in read_jsonl(preds_path)]
    report = evaluate.evaluate(gold, preds)
    write_json(out / "report.json", report.to_json())
    text = report.render_text()
    (out / "report.txt").write_text(text, encoding="utf-8")
    write_manifest(out, "eval",
                   {"gold": out / f"{side}.jsonl", "preds": preds_path},
                   {"split_side": side})
    print(text, end="")


COMMANDS = {
    "ingest": cmd_ingest,
    "pairs": cmd_pairs,
    "annotate": cmd_annotate,
    "review-serve": cmd_review_serve,
    "tag": cmd_tag,
    "split": cmd_split,
    "stats": cmd_stats,
    "baseline": cmd_baseline,
    "eval": cmd_eval,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glosspairs",
        description="Build and evaluate labeled Arabic context-gloss pair "
                    "datasets for word sense disambiguation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--dump", help="lexicon dump TSV")
        p.add_argument("--parser-specs", dest="parser_specs",
                       help="JSON file of per-lexicon parser specs")
        p.add_argument("--lemma-table", dest="lemma_table",
                       help="TSV surface<TAB>lemma table")
        p.add_argument("--out-dir", dest="out_dir", help="artifact directory")
        p.add_argument("--lexicon-rank", dest="lexicon_rank",
                       help="comma-separated lexicon ids, most renowned first")
        p.add_argument("--variation", choices=["v1", "v2", "v3", "v4"])
        p.add_argument("--profile", choices=sorted(arabic.PROFILES))
        p.add_argument("--max-len", dest="max_len", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--threshold", type=float)
        p.add_argument("--port", type=int)
        p.add_argument("--static-dir", dest="static_dir",
                       help="frontend assets served by review-serve")
        p.add_argument("--preds", help="prediction file for eval")
        p.add_argument("--split-side", dest="split_side",
                       choices=["train", "test"])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args)
        COMMANDS[args.command](config)
        return 0
    except ConfigError as e:
        print(f"ERROR {e}", file=sys.stderr)
        return 1
    except GlossPairsError as e:
        print(f"ERROR {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
