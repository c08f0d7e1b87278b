"""Versioned on-disk format for trained parameters.

Layout: 8-byte little-endian unsigned header length, UTF-8 JSON header
(names, shapes, metadata, format version), then the tensors' float64
little-endian payloads concatenated in header order.
"""
from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field

import numpy as np

FORMAT_VERSION = 1
_MAX_HEADER_BYTES = 64 * 1024 * 1024


class WeightsError(ValueError):
    """A weight file or manifest that cannot be used, with the reason."""


@dataclass
class ModelWeights:
    """Ordered named-tensor manifest for one trained model."""

    model_kind: str
    metadata: dict
    tensors: dict  # name -> float64 ndarray, insertion-ordered
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        if self.format_version != FORMAT_VERSION:
            raise WeightsError(
                f"format_version must be {FORMAT_VERSION}, got {self.format_version}"
            )
        normalized = {}
        for name, arr in self.tensors.items():
            arr = np.asarray(arr, dtype=np.float64)
            if arr.size and not np.all(np.isfinite(arr)):
                raise WeightsError(f"tensor {name!r} contains non-finite values")
            normalized[name] = arr
        self.tensors = normalized

    def tensor(self, name: str, shape=None) -> np.ndarray:
        if name not in self.tensors:
            raise WeightsError(f"missing tensor {name!r}")
        arr = self.tensors[name]
        if shape is not None and tuple(arr.shape) != tuple(shape):
            raise WeightsError(
                f"tensor {name!r} has shape {tuple(arr.shape)}, expected {tuple(shape)}"
            )
        return arr


def save_weights(weights: ModelWeights, path) -> None:
    header = {
        "format_version": weights.format_version,
        "model_kind": weights.model_kind,
        "metadata": weights.metadata,
        "tensors": [
            {"name": name, "shape": list(arr.shape)} for name, arr in weights.tensors.items()
        ],
    }
    blob = json.dumps(header, separators=(",", ":")).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(struct.pack("<Q", len(blob)))
        fh.write(blob)
        for arr in weights.tensors.values():
            fh.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())


def load_weights(path) -> ModelWeights:
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < 8:
        raise WeightsError("truncated file: missing header length")
    (header_len,) = struct.unpack("<Q", raw[:8])
    if header_len > _MAX_HEADER_BYTES or 8 + header_len > len(raw):
        raise WeightsError("truncated file: header extends past end of file")
    try:
        header = json.loads(raw[8 : 8 + header_len].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as err:
        raise WeightsError(f"malformed header: {err}") from err
    for key in ("format_version", "model_kind", "metadata", "tensors"):
        if key not in header:
            raise WeightsError(f"malformed header: missing {key!r}")
    if header["format_version"] != FORMAT_VERSION:
        raise WeightsError(
            f"version mismatch: file has format_version {header['format_version']}, "
            f"expected {FORMAT_VERSION}"
        )
    tensors = {}
    offset = 8 + header_len
    for entry in header["tensors"]:
        name, shape = entry.get("name"), entry.get("shape")
        if not isinstance(name, str) or not isinstance(shape, list):
            raise WeightsError("malformed header: bad tensor entry")
        if name in tensors:
            raise WeightsError(f"duplicate tensor {name!r}")
        count = int(np.prod(shape, dtype=np.int64)) if shape else 1
        nbytes = count * 8
        if offset + nbytes > len(raw):
            raise WeightsError(f"truncated file: payload for tensor {name!r} is incomplete")
        flat = np.frombuffer(raw[offset : offset + nbytes], dtype="<f8")
        tensors[name] = flat.reshape(shape).astype(np.float64)
        offset += nbytes
    if offset != len(raw):
        raise WeightsError(f"trailing bytes after payload: {len(raw) - offset}")
    return ModelWeights(
        model_kind=header["model_kind"],
        metadata=header["metadata"],
        tensors=tensors,
    )
