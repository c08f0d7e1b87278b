"""Bundled corpus generators: validity, variety, and JSONL persistence."""
import numpy as np

from jamlab.corpus import (
    load_jsonl,
    make_drum_corpus,
    make_leadsheet_corpus,
    save_jsonl,
)
from jamlab.music import (
    DRUM_STEPS,
    DRUM_TRACKS,
    HALF_BARS,
    DrumPattern,
    LeadSheet,
    is_diatonic,
)


def test_drum_corpus_size_and_validity():
    patterns = make_drum_corpus(64, seed=11)
    assert len(patterns) == 64
    for p in patterns:
        assert isinstance(p, DrumPattern)
        assert len(p.grid) == DRUM_TRACKS
        assert all(len(row) == DRUM_STEPS for row in p.grid)


def test_drum_corpus_is_seeded_and_varied():
    a = make_drum_corpus(16, seed=3)
    b = make_drum_corpus(16, seed=3)
    c = make_drum_corpus(16, seed=4)
    assert a == b
    assert a != c
    assert len(set(a)) > 1


def test_drum_corpus_densities_are_mixable():
    densities = [p.density() for p in make_drum_corpus(64, seed=11)]
    assert 0.02 < float(np.mean(densities)) < 0.5
    assert min(densities) > 0.0


def test_leadsheet_corpus_is_valid_and_diatonic():
    sheets = make_leadsheet_corpus(128, seed=13)
    assert len(sheets) == 128
    for sheet in sheets:
        assert isinstance(sheet, LeadSheet)
        assert sheet.key == 0
        for chord in sheet.chords.chords:
            assert chord.is_no_chord or is_diatonic(chord, sheet.key)
        assert len(sheet.chords.chords) == HALF_BARS


def test_leadsheet_corpus_has_sounding_music():
    sheets = make_leadsheet_corpus(32, seed=13)
    assert len(set(sheets)) > 1
    for sheet in sheets:
        sounding = [t for t in sheet.melody.tokens if t >= 2]
        assert sounding, "every sheet should contain at least one onset"


def test_jsonl_round_trip(tmp_path):
    drums = make_drum_corpus(8, seed=1)
    sheets = make_leadsheet_corpus(8, seed=2)
    drum_path = tmp_path / "drums.jsonl"
    sheet_path = tmp_path / "sheets.jsonl"
    save_jsonl(drum_path, drums)
    save_jsonl(sheet_path, sheets)
    assert load_jsonl(drum_path) == drums
    assert load_jsonl(sheet_path) == sheets
    assert len(drum_path.read_text().strip().splitlines()) == 8
