"""Behavioral tests for the melody harmonizer and progression annotation."""
import numpy as np
import pytest

from jamlab.models.harmonizer import (
    FUNCTION_ORDER,
    Harmonizer,
    HarmonizerConfig,
    annotate_progression,
    harmonize,
    train_harmonizer,
)
from jamlab.music import (
    HALF_BARS,
    MELODY_STEPS,
    ChordSequence,
    ChordSymbol,
    HarmonicFunction,
    LeadSheet,
    MelodyLine,
    circle_of_fifths_index,
    repair_melody_tokens,
)
from jamlab.nn import TrainConfig, load_weights, save_weights

T = HarmonicFunction.TONIC
S = HarmonicFunction.SUBDOMINANT
D = HarmonicFunction.DOMINANT


@pytest.fixture(scope="module")
def model():
    return Harmonizer(HarmonizerConfig(), np.random.default_rng(5))


def random_melody(rng):
    return MelodyLine(repair_melody_tokens(rng.integers(0, 51, size=MELODY_STEPS)))


def progression(*symbols):
    return ChordSequence.from_chords(list(symbols))


# -- annotate_progression -----------------------------------------------------

def test_annotation_labels_the_classic_cadence():
    chords = progression(
        ChordSymbol(0, "maj"), ChordSymbol(7, "maj"),
        ChordSymbol(9, "min"), ChordSymbol(5, "maj"),
        ChordSymbol(0, "maj"), ChordSymbol(7, "maj"),
        ChordSymbol(9, "min"), ChordSymbol(5, "maj"),
    )
    assert annotate_progression(chords, key=0) == [
        (T, 0), (D, 1), (T, 3), (S, 11),
        (T, 0), (D, 1), (T, 3), (S, 11),
    ]


def test_annotation_covers_nc_and_foreign_chords():
    chords = progression(
        ChordSymbol.no_chord(),      # silence: nothing to annotate
        ChordSymbol(6, "maj"),       # F# major is foreign to C major
        ChordSymbol(2, "min"),       # ii
        ChordSymbol(4, "min"),       # iii
        ChordSymbol(11, "min"),      # vii stand-in
        ChordSymbol(0, "min"),       # parallel minor tonic: foreign
        ChordSymbol(0, "maj"),
        ChordSymbol(5, "maj"),
    )
    annotated = annotate_progression(chords, key=0)
    assert annotated[0] == (None, None)
    assert annotated[1] == (None, circle_of_fifths_index(6))
    assert annotated[2] == (S, circle_of_fifths_index(2))
    assert annotated[3] == (T, circle_of_fifths_index(4))
    assert annotated[4] == (D, circle_of_fifths_index(11))
    assert annotated[5] == (None, circle_of_fifths_index(0))
    assert annotated[6] == (T, 0)
    assert annotated[7] == (S, 11)


def test_annotation_transposes_with_the_key():
    for key in range(12):
        chords = progression(*([ChordSymbol((key + 7) % 12, "maj")] * HALF_BARS))
        annotated = annotate_progression(chords, key=key)
        assert all(fn is D for fn, _ in annotated)


# -- harmonize ----------------------------------------------------------------

def test_harmonize_fills_every_half_bar(model):
    rng = np.random.default_rng(21)
    for _ in range(50):
        chords, functions, probabilities = harmonize(model, random_melody(rng))
        assert len(chords.chords) == HALF_BARS
        assert len(functions) == HALF_BARS
        assert len(probabilities) == HALF_BARS
        for chord, fn in zip(chords.chords, functions):
            if chord.is_no_chord:
                assert fn is None
            else:
                assert fn is None or isinstance(fn, HarmonicFunction)


def test_harmonize_is_deterministic(model):
    melody = random_melody(np.random.default_rng(22))
    first = harmonize(model, melody)
    second = harmonize(model, melody)
    assert first[0] == second[0]
    assert first[1] == second[1]


def test_silent_half_bars_get_no_chord(model):
    slot_width = MELODY_STEPS // HALF_BARS
    tokens = (0,) * slot_width + (2,) * (MELODY_STEPS - slot_width)
    chords, functions, _ = harmonize(model, MelodyLine(tokens))
    assert chords.chords[0].is_no_chord
    assert functions[0] is None


def test_an_all_rest_melody_is_all_nc(model):
    chords, functions, _ = harmonize(model, MelodyLine((0,) * MELODY_STEPS))
    assert all(c.is_no_chord for c in chords.chords)
    assert functions == (None,) * HALF_BARS


def test_probability_heads_are_normalized(model):
    melody = random_melody(np.random.default_rng(23))
    chord_probs, func_probs = model.slot_probabilities(melody)
    assert chord_probs.shape == (HALF_BARS, 25)
    assert func_probs.shape == (HALF_BARS, len(FUNCTION_ORDER))
    for probs in (chord_probs, func_probs):
        assert np.all(probs > 0.0)
        np.testing.assert_allclose(probs.sum(axis=1), 1.0, rtol=0.0, atol=1e-9)
    _, _, per_slot = harmonize(model, melody)
    assert per_slot[0]["chord"].shape == (25,)
    assert per_slot[0]["function"].shape == (len(FUNCTION_ORDER),)


# -- persistence --------------------------------------------------------------

def test_weight_round_trip_is_bit_exact(model, tmp_path):
    path = tmp_path / "harmonizer.weights"
    save_weights(model.to_weights(), path)
    loaded = load_weights(path)
    assert loaded.model_kind == "harmonizer"
    clone = Harmonizer.from_weights(loaded)
    melody = random_melody(np.random.default_rng(24))
    chords_a, funcs_a = model.slot_probabilities(melody)
    chords_b, funcs_b = clone.slot_probabilities(melody)
    assert chords_a.tobytes() == chords_b.tobytes()
    assert funcs_a.tobytes() == funcs_b.tobytes()


def test_from_weights_rejects_other_model_kinds(model):
    weights = model.to_weights()
    weights.model_kind = "drum-vae"
    with pytest.raises(ValueError, match="expected harmonizer"):
        Harmonizer.from_weights(weights)


# -- training guards ----------------------------------------------------------

def fast_config():
    return HarmonizerConfig(
        encoder_hidden=8,
        slot_hidden=8,
        train=TrainConfig(epochs=1, batch_size=8, learning_rate=1e-3),
    )


def poison(sheet):
    foreign = ChordSequence.from_chords([ChordSymbol(6, "maj")] * HALF_BARS)
    return LeadSheet(sheet.melody, foreign, key=sheet.key)


def test_training_rejects_a_tiny_corpus(sheet_corpus):
    with pytest.raises(ValueError, match="too small"):
        train_harmonizer(sheet_corpus[:8])


def test_training_warns_about_excluded_sheets(sheet_corpus):
    sheets = [poison(s) for s in sheet_corpus[:2]] + list(sheet_corpus[2:34])
    with pytest.warns(UserWarning, match=r"excluded 2 sheet"):
        model, log = train_harmonizer(sheets, config=fast_config())
    assert isinstance(model, Harmonizer)
    assert len(log) == 1


def test_training_rejects_a_corpus_that_shrinks_below_the_floor(sheet_corpus):
    sheets = [poison(s) for s in sheet_corpus[:2]] + list(sheet_corpus[2:33])
    with pytest.warns(UserWarning, match="excluded"):
        with pytest.raises(ValueError, match="after exclusions"):
            train_harmonizer(sheets, config=fast_config())
