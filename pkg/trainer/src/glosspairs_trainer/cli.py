import argparse
import sys

from .config import TrainConfig, TrainerError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="glosspairs-train",
        description="Fine-tune and run a binary context-gloss classifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init-encoder",
                       help="build a tiny random-weight encoder locally")
    p.add_argument("--out", required=True)
    p.add_argument("--corpus", help="tagged JSONL whose characters seed "
                                    "the vocabulary")
    p.add_argument("--hidden-size", type=int, default=32)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("train")
    p.add_argument("--train-file", required=True)
    p.add_argument("--model", required=True,
                   help="checkpoint directory or hub id")
    p.add_argument("--out", required=True)
    p.add_argument("--meta", help="tagging manifest (default: sidecar of "
                                  "the train file)")
    p.add_argument("--learning-rate", type=float, default=2e-5)
    p.add_argument("--warmup-steps", type=int, default=1412)
    p.add_argument("--batch-size", type=int, default=16)
    p.add_argument("--epochs", type=int, default=4)
    p.add_argument("--max-length", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("predict")
    p.add_argument("--model", required=True)
    p.add_argument("--test-file", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--meta", help="tagging manifest of the test file")
    p.add_argument("--batch-size", type=int, default=32)

    args = parser.parse_args(argv)
    try:
        if args.command == "init-encoder":
            from .data import load_instances
            from .encoder import build_tiny_encoder

            corpus = None
            if args.corpus:
                corpus = [i.sequence for i in load_instances(args.corpus)]
            build_tiny_encoder(args.out, corpus,
                               hidden_size=args.hidden_size,
                               num_layers=args.layers, seed=args.seed)
            print(f"encoder written to {args.out}")
        elif args.command == "train":
            from .train import fine_tune

            config = TrainConfig(
                model=args.model,
                learning_rate=args.learning_rate,
                warmup_steps=args.warmup_steps,
                batch_size=args.batch_size,
                epochs=args.epochs,
                max_length=args.max_length,
                seed=args.seed,
            )
            log = fine_tune(args.train_file, config, args.out,
                            meta_file=args.meta)
            losses = ", ".join(f"{x:.4f}" for x in log["epoch_losses"])
            print(f"trained on {log['instances']} instances; "
                  f"epoch losses: {losses}")
        else:
            from .predict import predict

            rows = predict(args.model, args.test_file, args.out,
                           meta_file=args.meta, batch_size=args.batch_size)
            print(f"wrote {len(rows)} predictions to {args.out}")
        return 0
    except TrainerError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
