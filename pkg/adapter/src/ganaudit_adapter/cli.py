"""Adapter CLI: init-checkpoint | infer | finetune."""

from __future__ import annotations

import argparse
import sys

from .finetune import TrainConfig, finetune
from .infer import infer
from .models import ARCHITECTURES, ModelSpec, init_checkpoint


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ganaudit-adapter",
        description="Run or fine-tune ViT/CvT/Swin GAN-vs-Real classifiers over a corpus "
                    "manifest, emitting ganaudit prediction files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_init = sub.add_parser("init-checkpoint",
                            help="write a randomly initialized checkpoint (offline smoke runs)")
    p_init.add_argument("--arch", required=True, choices=sorted(ARCHITECTURES))
    p_init.add_argument("--out", required=True)
    p_init.add_argument("--size", choices=["tiny", "paper"], default="tiny")
    p_init.add_argument("--seed", type=int, default=0)

    p_infer = sub.add_parser("infer", help="predict every manifest image")
    p_infer.add_argument("--arch", required=True, choices=sorted(ARCHITECTURES))
    p_infer.add_argument("--checkpoint", required=True)
    p_infer.add_argument("--manifest", required=True)
    p_infer.add_argument("--out", required=True)
    p_infer.add_argument("--model-id", dest="model_id")
    p_infer.add_argument("--setting", help="override the manifest's setting tag")
    p_infer.add_argument("--batch-size", dest="batch_size", type=int, default=8)

    p_tune = sub.add_parser("finetune", help="fine-tune a checkpoint on a labeled manifest")
    p_tune.add_argument("--arch", required=True, choices=sorted(ARCHITECTURES))
    p_tune.add_argument("--checkpoint", required=True, help="starting (pretrained) checkpoint")
    p_tune.add_argument("--manifest", required=True)
    p_tune.add_argument("--out", required=True, help="directory for the tuned checkpoint")
    p_tune.add_argument("--learning-rate", type=float, default=TrainConfig.learning_rate)
    p_tune.add_argument("--batch-size", type=int, default=TrainConfig.batch_size)
    p_tune.add_argument("--epochs", type=int, default=TrainConfig.epochs)
    p_tune.add_argument("--seed", type=int, default=TrainConfig.seed)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "init-checkpoint":
            path = init_checkpoint(args.arch, args.out, size=args.size, seed=args.seed)
            print(f"checkpoint written to {path}")
        elif args.command == "infer":
            spec = ModelSpec(architecture=args.arch, checkpoint=args.checkpoint)
            result = infer(spec, args.manifest, args.out, model_id=args.model_id,
                           setting=args.setting, batch_size=args.batch_size)
            print(f"{result.written} prediction(s) -> {result.prediction_path}"
                  + (f"; {len(result.errors)} image error(s)" if result.errors else ""))
        else:
            spec = ModelSpec(architecture=args.arch, checkpoint=args.checkpoint)
            cfg = TrainConfig(learning_rate=args.learning_rate, batch_size=args.batch_size,
                              epochs=args.epochs, seed=args.seed)
            path, metrics = finetune(spec, args.manifest, args.out, cfg)
            last = metrics["epochs"][-1]
            print(f"checkpoint -> {path}; final val accuracy "
                  f"{last['val_accuracy']}; test accuracy {metrics['test_accuracy']}")
        return 0
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
