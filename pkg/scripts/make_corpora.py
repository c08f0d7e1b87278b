"""Generate the bundled drum and lead-sheet corpora as JSONL files."""
import argparse
from pathlib import Path

from jamlab.corpus import make_drum_corpus, make_leadsheet_corpus, save_jsonl


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("artifacts/corpus"))
    parser.add_argument("--drums", type=int, default=64)
    parser.add_argument("--sheets", type=int, default=128)
    parser.add_argument("--drum-seed", type=int, default=11)
    parser.add_argument("--sheet-seed", type=int, default=13)
    args = parser.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    drums = make_drum_corpus(args.drums, seed=args.drum_seed)
    sheets = make_leadsheet_corpus(args.sheets, seed=args.sheet_seed)
    save_jsonl(args.out_dir / "drums.jsonl", drums)
    save_jsonl(args.out_dir / "leadsheets.jsonl", sheets)
    print(f"wrote {len(drums)} drum patterns and {len(sheets)} lead sheets "
          f"to {args.out_dir}")


if __name__ == "__main__":
    main()
