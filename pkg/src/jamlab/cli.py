"""Command line entry point: serve the demo, train a model, or eval one.

Directory and port defaults can be overridden by flags or by the
JAMLAB_PORT / JAMLAB_WEIGHTS_DIR / JAMLAB_CORPUS_DIR / JAMLAB_STATIC_DIR
environment variables (flags win).
"""
from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

import numpy as np

from .corpus import load_jsonl
from .models import drum_vae, harmonizer, leadsheet_vae
from .nn import load_weights

DEFAULT_PORT = 8080
DEFAULT_WEIGHTS_DIR = "artifacts/weights"
DEFAULT_CORPUS_DIR = "artifacts/corpus"
DEFAULT_STATIC_DIR = "artifacts/static"

MODEL_NAMES = ("drum", "leadsheet", "harmonizer")
WEIGHT_FILES = {
    "drum": "drum-vae.weights",
    "leadsheet": "leadsheet-vae.weights",
    "harmonizer": "harmonizer.weights",
}


def _env(name: str, fallback: str) -> str:
    return os.environ.get(name, fallback)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jamlab")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the demo server")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int,
                       default=int(_env("JAMLAB_PORT", str(DEFAULT_PORT))))
    serve.add_argument("--weights-dir", type=Path,
                       default=Path(_env("JAMLAB_WEIGHTS_DIR", DEFAULT_WEIGHTS_DIR)))
    serve.add_argument("--corpus-dir", type=Path,
                       default=Path(_env("JAMLAB_CORPUS_DIR", DEFAULT_CORPUS_DIR)))
    serve.add_argument("--static-dir", type=Path,
                       default=Path(_env("JAMLAB_STATIC_DIR", DEFAULT_STATIC_DIR)))

    train = sub.add_parser("train", help="train a model from a JSONL corpus")
    train.add_argument("model", choices=MODEL_NAMES)
    train.add_argument("--corpus", type=Path, required=True)
    train.add_argument("--out", type=Path, required=True)
    train.add_argument("--seed", type=int, default=None)
    train.add_argument("--epochs", type=int, default=None)
    train.add_argument("--beta", type=float, default=None)
    train.add_argument("--lr", type=float, default=None)

    eval_ = sub.add_parser("eval", help="print a trained model's metrics")
    eval_.add_argument("model", choices=MODEL_NAMES)
    eval_.add_argument("--corpus", type=Path, required=True)
    eval_.add_argument("--weights", type=Path, default=None,
                       help="weight file (default: the standard name under "
                            "the weights dir)")
    return parser


def _progress(entry: dict) -> None:
    epoch = entry["epoch"]
    if epoch % 10 == 0 or epoch == 1:
        losses = ", ".join(f"{k}={v:.4f}" for k, v in entry.items()
                           if k not in ("epoch", "beta"))
        print(f"epoch {epoch}: {losses}", flush=True)


def _build_config(args, default_config):
    train_cfg = default_config.train
    updates = {}
    if args.epochs is not None:
        updates["epochs"] = args.epochs
    if args.beta is not None:
        updates["beta"] = args.beta
    if args.lr is not None:
        updates["learning_rate"] = args.lr
    if updates:
        train_cfg = dataclasses.replace(train_cfg, **updates)
    config = dataclasses.replace(default_config, train=train_cfg)
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    return config


def cmd_train(args) -> int:
    examples = load_jsonl(args.corpus)
    if args.model == "drum":
        config = _build_config(args, drum_vae.DrumVaeConfig())
        drum_vae.train_drum_vae(examples, config, out_path=args.out,
                                epoch_callback=_progress)
    elif args.model == "leadsheet":
        config = _build_config(args, leadsheet_vae.LeadSheetVaeConfig())
        leadsheet_vae.train_leadsheet_vae(examples, config, out_path=args.out,
                                          epoch_callback=_progress)
    else:
        config = _build_config(args, harmonizer.HarmonizerConfig())
        harmonizer.train_harmonizer(examples, config, out_path=args.out,
                                    epoch_callback=_progress)
    print(f"saved {args.out}")
    return 0


def cmd_eval(args) -> int:
    weights_path = args.weights
    if weights_path is None:
        weights_dir = Path(_env("JAMLAB_WEIGHTS_DIR", DEFAULT_WEIGHTS_DIR))
        weights_path = weights_dir / WEIGHT_FILES[args.model]
    examples = load_jsonl(args.corpus)
    weights = load_weights(weights_path)
    if args.model == "drum":
        model = drum_vae.DrumVae.from_weights(weights)
        print(f"reconstruction_f1: {drum_vae.reconstruction_f1(model, examples):.4f}")
        print(f"kl_per_dim: {drum_vae.mean_kl_per_dim(model, examples):.4f}")
        density = drum_vae.prior_sample_density(
            model, np.random.default_rng(0), draws=100)
        print(f"prior_sample_density: {density:.4f}")
    elif args.model == "leadsheet":
        model = leadsheet_vae.LeadSheetVae.from_weights(weights)
        print(f"melody_token_accuracy: "
              f"{leadsheet_vae.melody_token_accuracy(model, examples):.4f}")
        print(f"chord_accuracy: {leadsheet_vae.chord_accuracy(model, examples):.4f}")
        print(f"kl_per_dim: {leadsheet_vae.mean_kl_per_dim(model, examples):.4f}")
    else:
        model = harmonizer.Harmonizer.from_weights(weights)
        print(f"chord_accuracy: {harmonizer.chord_accuracy(model, examples):.4f}")
        print(f"function_accuracy: {harmonizer.function_accuracy(model, examples):.4f}")
        consistency = harmonizer.function_consistency(
            model, [sheet.melody for sheet in examples])
        print(f"function_consistency: {consistency:.4f}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import DemoConfig, create_app

    static_dir = args.static_dir if args.static_dir.is_dir() else None
    app = create_app(DemoConfig(weights_dir=args.weights_dir,
                                corpus_dir=args.corpus_dir,
                                static_dir=static_dir))
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return cmd_serve(args)
    if args.command == "train":
        return cmd_train(args)
    return cmd_eval(args)


if __name__ == "__main__":
    sys.exit(main())
