"""Value types, harmony operations, and the canonical JSON wire format."""
import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jamlab import music as m

C_MAJ = m.ChordSymbol(0, "maj")
G_MAJ = m.ChordSymbol(7, "maj")
F_MAJ = m.ChordSymbol(5, "maj")
A_MIN = m.ChordSymbol(9, "min")
FSHARP_MAJ = m.ChordSymbol(6, "maj")
NC = m.ChordSymbol.no_chord()


# -- chroma -------------------------------------------------------------------

def test_chroma_c_major_triad():
    assert m.chord_to_chroma(C_MAJ) == (1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0)


def test_chroma_a_minor_triad():
    bits = m.chord_to_chroma(A_MIN)
    assert {i for i, b in enumerate(bits) if b} == {9, 0, 4}


def test_chroma_no_chord_is_silent():
    assert m.chord_to_chroma(NC) == (0,) * 12


def test_chroma_popcount_three_for_every_sounding_chord():
    for index in range(m.CHORD_VOCAB):
        chord = m.index_to_chord(index)
        expected = 0 if chord.is_no_chord else 3
        assert sum(m.chord_to_chroma(chord)) == expected


# -- circle of fifths -----------------------------------------------------------

def test_circle_anchor_points():
    assert m.circle_of_fifths_index(0) == 0
    assert m.circle_of_fifths_index(7) == 1
    assert m.circle_of_fifths_index(5) == 11


def test_circle_is_a_bijection():
    images = {m.circle_of_fifths_index(pc) for pc in range(12)}
    assert images == set(range(12))


def test_circle_rejects_bad_pitch_class():
    for bad in (-1, 12, 3.5, "C"):
        with pytest.raises(ValueError):
            m.circle_of_fifths_index(bad)


def test_harmonic_distance_examples():
    assert m.harmonic_distance(C_MAJ, G_MAJ) == 1
    assert m.harmonic_distance(C_MAJ, C_MAJ) == 0
    assert m.harmonic_distance(C_MAJ, FSHARP_MAJ) == 6


def test_harmonic_distance_is_a_metric_on_roots():
    chords = [m.ChordSymbol(r, "maj") for r in range(12)]
    for a in chords:
        for b in chords:
            d = m.harmonic_distance(a, b)
            assert 0 <= d <= 6
            assert d == m.harmonic_distance(b, a)
            assert (d == 0) == (a.root == b.root)
            for c in chords:
                assert d <= (m.harmonic_distance(a, c)
                             + m.harmonic_distance(c, b))


def test_harmonic_distance_rejects_no_chord():
    with pytest.raises(m.HarmonyError):
        m.harmonic_distance(NC, C_MAJ)
    with pytest.raises(m.HarmonyError):
        m.harmonic_distance(C_MAJ, NC)


# -- functional harmony -----------------------------------------------------------

DIATONIC_FUNCTIONS_IN_C = [
    (m.ChordSymbol(0, "maj"), m.HarmonicFunction.TONIC),
    (m.ChordSymbol(2, "min"), m.HarmonicFunction.SUBDOMINANT),
    (m.ChordSymbol(4, "min"), m.HarmonicFunction.TONIC),
    (m.ChordSymbol(5, "maj"), m.HarmonicFunction.SUBDOMINANT),
    (m.ChordSymbol(7, "maj"), m.HarmonicFunction.DOMINANT),
    (m.ChordSymbol(9, "min"), m.HarmonicFunction.TONIC),
    (m.ChordSymbol(11, "min"), m.HarmonicFunction.DOMINANT),
]


def test_function_of_all_seven_degrees_in_c():
    for chord, expected in DIATONIC_FUNCTIONS_IN_C:
        assert m.chord_function(chord, 0) is expected


def test_function_is_transposition_invariant():
    for key in range(12):
        for chord, expected in DIATONIC_FUNCTIONS_IN_C:
            moved = m.ChordSymbol((chord.root + key) % 12, chord.quality)
            assert m.chord_function(moved, key) is expected


def test_function_rejects_non_diatonic_and_no_chord():
    with pytest.raises(m.HarmonyError):
        m.chord_function(m.ChordSymbol(1, "maj"), 0)
    with pytest.raises(m.HarmonyError):
        m.chord_function(m.ChordSymbol(0, "min"), 0)
    with pytest.raises(m.HarmonyError):
        m.chord_function(NC, 0)


def test_is_diatonic_matches_the_function_table():
    for index in range(m.CHORD_VOCAB):
        chord = m.index_to_chord(index)
        if m.is_diatonic(chord, 0):
            assert m.chord_function(chord, 0) in m.HarmonicFunction
        else:
            with pytest.raises(m.HarmonyError):
                m.chord_function(chord, 0)


# -- value types ---------------------------------------------------------------

def test_drum_pattern_shape_is_enforced():
    with pytest.raises(ValueError):
        m.DrumPattern(((0,) * m.DRUM_STEPS,) * 8)
    with pytest.raises(ValueError):
        m.DrumPattern(((0,) * 95,) * 9)
    with pytest.raises(ValueError):
        m.DrumPattern.from_rows([[2] * m.DRUM_STEPS] * 9)


def test_drum_pattern_density():
    assert m.DrumPattern.zeros().density() == 0.0
    rows = [[0] * m.DRUM_STEPS for _ in range(m.DRUM_TRACKS)]
    rows[0][0] = rows[0][48] = 1
    assert m.DrumPattern.from_rows(rows).density() == pytest.approx(
        2 / (9 * 96))


def test_melody_rejects_dangling_holds():
    with pytest.raises(ValueError):
        m.MelodyLine.from_tokens([m.HOLD] + [m.REST] * 63)
    tokens = [m.pitch_to_token(60), m.REST, m.HOLD] + [m.REST] * 61
    with pytest.raises(ValueError):
        m.MelodyLine.from_tokens(tokens)


def test_repair_melody_tokens_fixes_dangling_holds():
    repaired = m.repair_melody_tokens([m.HOLD, m.HOLD] + [m.REST] * 62)
    assert repaired[0] == m.REST and repaired[1] == m.REST
    raw = [m.pitch_to_token(60), m.REST, m.HOLD] + [m.REST] * 61
    repaired = m.repair_melody_tokens(raw)
    assert repaired[2] == m.REST
    valid = [m.pitch_to_token(60), m.HOLD] + [m.REST] * 62
    assert m.repair_melody_tokens(valid) == tuple(valid)
    m.MelodyLine.from_tokens(m.repair_melody_tokens([m.HOLD] * 64))


def test_pitch_token_round_trip():
    for pitch in range(m.MELODY_MIN_PITCH, m.MELODY_MAX_PITCH + 1):
        assert m.token_to_pitch(m.pitch_to_token(pitch)) == pitch
    with pytest.raises(ValueError):
        m.pitch_to_token(47)
    with pytest.raises(ValueError):
        m.token_to_pitch(m.REST)


def test_chord_symbol_pins_no_chord_root():
    assert m.ChordSymbol(5, "nc").root == 0
    with pytest.raises(ValueError):
        m.ChordSymbol(0, "sus4")
    with pytest.raises(ValueError):
        m.ChordSymbol(12, "maj")


def test_chord_index_bijection():
    for index in range(m.CHORD_VOCAB):
        assert m.chord_index(m.index_to_chord(index)) == index
    with pytest.raises(ValueError):
        m.index_to_chord(25)


def test_chord_sequence_chroma_tracks_labels():
    seq = m.ChordSequence.from_chords([C_MAJ, G_MAJ, A_MIN, F_MAJ] * 2)
    assert seq.chroma == tuple(m.chord_to_chroma(c) for c in seq.chords)
    with pytest.raises(ValueError):
        m.ChordSequence.from_chords([C_MAJ] * 7)


def test_latent_vector_validation_and_editing():
    z = m.LatentVector.from_values(range(32))
    with pytest.raises(ValueError):
        m.LatentVector.from_values([0.0] * 31)
    with pytest.raises(ValueError):
        m.LatentVector.from_values([math.nan] + [0.0] * 31)
    edited = z.with_coordinate(3, 9.5)
    assert edited.values[3] == m.LATENT_CLAMP
    assert z.values[3] == 3.0
    assert z.with_coordinate(0, -100.0).values[0] == -m.LATENT_CLAMP
    with pytest.raises(IndexError):
        z.with_coordinate(32, 0.0)


# -- canonical JSON ---------------------------------------------------------------

def kick_pattern() -> m.DrumPattern:
    rows = [[0] * m.DRUM_STEPS for _ in range(m.DRUM_TRACKS)]
    rows[0][0] = rows[0][48] = 1
    return m.DrumPattern.from_rows(rows)


def test_wire_shapes_are_bit_exact():
    pattern = kick_pattern()
    obj = json.loads(m.serialize(pattern))
    assert obj["type"] == "drum"
    assert len(obj["grid"]) == 9 and len(obj["grid"][0]) == 96

    melody = m.MelodyLine.rest()
    assert json.loads(m.serialize(melody)) == {
        "type": "melody", "tokens": [0] * 64}

    sheet = m.LeadSheet(melody, m.ChordSequence.from_chords([C_MAJ] * 8))
    obj = json.loads(m.serialize(sheet))
    assert obj["type"] == "leadsheet" and obj["key"] == 0
    assert obj["chords"][0] == {"root": 0, "quality": "maj"}

    z = m.LatentVector.from_values([0.5] * 32)
    obj = json.loads(m.serialize(z))
    assert obj == {"type": "latent", "dim": 32, "values": [0.5] * 32}


def test_round_trip_identity_examples():
    for value in (m.DrumPattern.zeros(), kick_pattern()):
        assert m.deserialize(m.serialize(value)) == value


def test_schema_errors_name_the_offending_field():
    with pytest.raises(m.SchemaError) as err:
        m.drum_pattern_from_jsonable({"type": "drum", "grid": [[0] * 96] * 8})
    assert err.value.field == "grid"

    with pytest.raises(m.SchemaError) as err:
        m.melody_from_jsonable({"type": "melody", "tokens": [99] + [0] * 63})
    assert err.value.field == "tokens[0]"

    with pytest.raises(m.SchemaError) as err:
        m.latent_from_jsonable({"type": "latent", "dim": 32, "values": [0.0] * 31})
    assert err.value.field == "values"

    with pytest.raises(m.SchemaError) as err:
        m.chord_from_jsonable({"root": 0, "quality": "dim"})
    assert err.value.field == "quality"

    with pytest.raises(m.SchemaError) as err:
        m.leadsheet_from_jsonable({"type": "leadsheet", "melody": {
            "type": "melody", "tokens": [0] * 64}, "chords": [], "key": 0})
    assert err.value.field == "chords"


def test_deserialize_rejects_non_finite_and_malformed_documents():
    with pytest.raises(m.SchemaError):
        m.deserialize('{"type": "latent", "dim": 32, "values": ['
                      + "0.0," * 31 + "NaN]}")
    with pytest.raises(m.SchemaError):
        m.deserialize('{"type": "latent", "dim": 32, "values": ['
                      + "0.0," * 31 + "Infinity]}")
    with pytest.raises(m.SchemaError):
        m.deserialize("[1, 2, 3]")
    with pytest.raises(m.SchemaError):
        m.deserialize('{"type": "mystery"}')
    with pytest.raises(m.SchemaError):
        m.deserialize("not json")


# -- hypothesis strategies and properties ----------------------------------------

drum_patterns = st.lists(
    st.lists(st.integers(0, 1), min_size=96, max_size=96),
    min_size=9, max_size=9,
).map(m.DrumPattern.from_rows)


@st.composite
def melody_lines(draw):
    tokens = []
    prev = m.REST
    for _ in range(m.MELODY_STEPS):
        if prev == m.REST:
            token = draw(st.sampled_from(
                [m.REST] + list(range(2, m.MELODY_VOCAB))))
        else:
            token = draw(st.integers(0, m.MELODY_VOCAB - 1))
        tokens.append(token)
        prev = token
    return m.MelodyLine.from_tokens(tokens)


chord_symbols = st.integers(0, m.CHORD_VOCAB - 1).map(m.index_to_chord)

lead_sheets = st.builds(
    m.LeadSheet,
    melody=melody_lines(),
    chords=st.lists(chord_symbols, min_size=8, max_size=8).map(
        m.ChordSequence.from_chords),
    key=st.integers(0, 11),
)

latent_vectors = st.lists(
    st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False),
    min_size=32, max_size=32,
).map(m.LatentVector.from_values)


@given(drum_patterns)
def test_drum_round_trip(pattern):
    assert m.deserialize(m.serialize(pattern)) == pattern


@given(melody_lines())
def test_melody_round_trip(melody):
    assert m.deserialize(m.serialize(melody)) == melody


@given(lead_sheets)
def test_leadsheet_round_trip(sheet):
    assert m.deserialize(m.serialize(sheet)) == sheet


@given(latent_vectors)
def test_latent_round_trip(z):
    back = m.deserialize(m.serialize(z))
    assert all(abs(a - b) < 1e-9 for a, b in zip(back.values, z.values))
