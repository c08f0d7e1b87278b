"""Train every model the demo server needs and write the practice plan.

Produces under the weights dir: drum-vae.weights, leadsheet-vae.weights,
leadsheet-vae-alt.weights (a second checkpoint for A/B interpolation),
and harmonizer.weights. Also writes practice_levels.json next to the
corpora: six levels sorted easiest first, where difficulty is the
fraction of half-bar slots on which the model's harmonization agrees
with the corpus reference (identical clips are hardest to tell apart).
"""
import argparse
import dataclasses
import json
from pathlib import Path

from jamlab.corpus import load_jsonl
from jamlab.models.harmonizer import HarmonizerConfig, harmonize, train_harmonizer
from jamlab.models.harmonizer import chord_accuracy as harmonizer_chord_accuracy
from jamlab.models.harmonizer import function_accuracy, function_consistency
from jamlab.models.drum_vae import mean_kl_per_dim, reconstruction_f1, train_drum_vae
from jamlab.models.leadsheet_vae import (
    LeadSheetVaeConfig,
    chord_accuracy,
    melody_token_accuracy,
    train_leadsheet_vae,
)
from jamlab.server.sessions import PRACTICE_LEVELS

HARMONIZER_TRAIN_SPLIT = 96


def progress(entry: dict) -> None:
    if entry["epoch"] % 25 == 0:
        print(f"  epoch {entry['epoch']}: total={entry['total']:.4f}", flush=True)


def slot_agreement(model, sheet) -> float:
    predicted, _, _ = harmonize(model, sheet.melody)
    hits = sum(p == t for p, t in zip(predicted.chords, sheet.chords.chords))
    return hits / len(predicted.chords)


def pick_practice_levels(model, sheets) -> list[dict]:
    """Six sheet ids spread easy to hard by model/reference agreement."""
    ranked = sorted(range(len(sheets)),
                    key=lambda i: slot_agreement(model, sheets[i]))
    picks = [ranked[(k * (len(ranked) - 1)) // (PRACTICE_LEVELS - 1)]
             for k in range(PRACTICE_LEVELS)]
    return [{"sheet_id": sheet_id, "seed": level}
            for level, sheet_id in enumerate(picks)]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus-dir", type=Path, default=Path("artifacts/corpus"))
    parser.add_argument("--weights-dir", type=Path, default=Path("artifacts/weights"))
    args = parser.parse_args()
    args.weights_dir.mkdir(parents=True, exist_ok=True)

    drums = load_jsonl(args.corpus_dir / "drums.jsonl")
    sheets = load_jsonl(args.corpus_dir / "leadsheets.jsonl")

    print(f"training drum VAE on {len(drums)} patterns")
    drum, _ = train_drum_vae(drums, out_path=args.weights_dir / "drum-vae.weights",
                          epoch_callback=progress)
    print(f"  reconstruction_f1={reconstruction_f1(drum, drums):.4f} "
          f"kl_per_dim={mean_kl_per_dim(drum, drums):.4f}")

    print(f"training lead-sheet VAE on {len(sheets)} sheets")
    sheet_model, _ = train_leadsheet_vae(
        sheets, out_path=args.weights_dir / "leadsheet-vae.weights",
        epoch_callback=progress)
    print(f"  melody_acc={melody_token_accuracy(sheet_model, sheets):.4f} "
          f"chord_acc={chord_accuracy(sheet_model, sheets):.4f}")

    print("training alternate lead-sheet VAE checkpoint")
    alt_config = dataclasses.replace(LeadSheetVaeConfig(), seed=2402)
    alt, _ = train_leadsheet_vae(
        sheets, alt_config, out_path=args.weights_dir / "leadsheet-vae-alt.weights",
        epoch_callback=progress)
    print(f"  melody_acc={melody_token_accuracy(alt, sheets):.4f} "
          f"chord_acc={chord_accuracy(alt, sheets):.4f}")

    train_sheets = sheets[:HARMONIZER_TRAIN_SPLIT]
    held_out = sheets[HARMONIZER_TRAIN_SPLIT:]
    print(f"training harmonizer on {len(train_sheets)} sheets "
          f"({len(held_out)} held out)")
    harm, _ = train_harmonizer(
        train_sheets, out_path=args.weights_dir / "harmonizer.weights",
        epoch_callback=progress)
    print(f"  held-out chord_acc={harmonizer_chord_accuracy(harm, held_out):.4f} "
          f"function_acc={function_accuracy(harm, held_out):.4f} "
          f"consistency={function_consistency(harm, [s.melody for s in held_out]):.4f}")

    levels = pick_practice_levels(harm, sheets)
    plan_path = args.corpus_dir / "practice_levels.json"
    with open(plan_path, "w", encoding="utf-8") as fh:
        json.dump({"levels": levels}, fh, indent=2)
        fh.write("\n")
    print(f"wrote {plan_path}")


if __name__ == "__main__":
    main()
