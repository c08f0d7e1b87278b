"""Binary weight-file container: round trips and structured failures."""
import json
import struct

import numpy as np
import pytest

from jamlab.nn import FORMAT_VERSION, ModelWeights, WeightsError, load_weights, save_weights

RNG = np.random.default_rng(5)


def manifest() -> ModelWeights:
    return ModelWeights(
        model_kind="drum-vae",
        metadata={"latent_dim": 32, "note": "fixture"},
        tensors={
            "enc.w": RNG.standard_normal((4, 3)),
            "enc.b": RNG.standard_normal(4),
            "scalar": np.array(2.5),
        },
    )


def test_round_trip_is_bit_exact(tmp_path):
    original = manifest()
    path = tmp_path / "model.weights"
    save_weights(original, path)
    loaded = load_weights(path)
    assert loaded.model_kind == original.model_kind
    assert loaded.metadata == original.metadata
    assert list(loaded.tensors) == list(original.tensors)
    for name in original.tensors:
        assert loaded.tensors[name].shape == original.tensors[name].shape
        assert np.array_equal(loaded.tensors[name], original.tensors[name])


def test_single_tensor_round_trip(tmp_path):
    w = ModelWeights("demo", {}, {"only": np.arange(6.0).reshape(2, 3)})
    path = tmp_path / "one.weights"
    save_weights(w, path)
    assert np.array_equal(load_weights(path).tensors["only"],
                          w.tensors["only"])


def test_version_mismatch_is_named(tmp_path):
    path = tmp_path / "v2.weights"
    save_weights(manifest(), path)
    raw = bytearray(path.read_bytes())
    (header_len,) = struct.unpack("<Q", raw[:8])
    header = json.loads(raw[8:8 + header_len].decode())
    header["format_version"] = 2
    blob = json.dumps(header, separators=(",", ":")).encode()
    path.write_bytes(struct.pack("<Q", len(blob)) + bytes(blob)
                     + bytes(raw[8 + header_len:]))
    with pytest.raises(WeightsError, match="version mismatch"):
        load_weights(path)


def test_truncated_file_is_a_structured_error(tmp_path):
    path = tmp_path / "trunc.weights"
    save_weights(manifest(), path)
    raw = path.read_bytes()
    for cut in (4, 12, len(raw) - 8):
        path.write_bytes(raw[:cut])
        with pytest.raises(WeightsError, match="truncated"):
            load_weights(path)


def test_trailing_bytes_rejected(tmp_path):
    path = tmp_path / "extra.weights"
    save_weights(manifest(), path)
    path.write_bytes(path.read_bytes() + b"\x00" * 8)
    with pytest.raises(WeightsError, match="trailing"):
        load_weights(path)


def test_malformed_header_rejected(tmp_path):
    path = tmp_path / "bad.weights"
    blob = b"this is not json"
    path.write_bytes(struct.pack("<Q", len(blob)) + blob)
    with pytest.raises(WeightsError, match="malformed header"):
        load_weights(path)


def test_duplicate_tensor_names_rejected(tmp_path):
    header = {
        "format_version": FORMAT_VERSION,
        "model_kind": "demo",
        "metadata": {},
        "tensors": [{"name": "t", "shape": [1]}, {"name": "t", "shape": [1]}],
    }
    blob = json.dumps(header).encode()
    payload = np.zeros(2, dtype="<f8").tobytes()
    path = tmp_path / "dup.weights"
    path.write_bytes(struct.pack("<Q", len(blob)) + blob + payload)
    with pytest.raises(WeightsError, match="duplicate"):
        load_weights(path)


def test_manifest_rejects_non_finite_and_bad_version():
    with pytest.raises(WeightsError, match="non-finite"):
        ModelWeights("demo", {}, {"bad": np.array([np.inf])})
    with pytest.raises(WeightsError, match="format_version"):
        ModelWeights("demo", {}, {}, format_version=2)


def test_missing_tensor_and_shape_mismatch_are_named():
    w = manifest()
    with pytest.raises(WeightsError, match="missing tensor 'nope'"):
        w.tensor("nope")
    with pytest.raises(WeightsError, match="shape"):
        w.tensor("enc.w", shape=(3, 4))
