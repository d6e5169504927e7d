"""Self-describing model checkpoint container.

Layout: an 8-byte magic, a little-endian u32 header length, a JSON header
and the raw little-endian parameter bytes. The header carries the format's
semantic version, the model kind, arbitrary metadata (class orderings,
dimensions, training config, dataset fingerprint) and a parameter manifest
with offsets, so files are readable without the producing code.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

import numpy as np

MAGIC = b"EVSTCKPT"
FORMAT_VERSION = "1.0.0"


class CheckpointError(ValueError):
    """Unreadable or incompatible checkpoint file."""


@dataclass
class Checkpoint:
    kind: str
    metadata: dict[str, Any]
    params: dict[str, np.ndarray]
    format_version: str = FORMAT_VERSION


def save_checkpoint(
    path: str | Path, kind: str, params: Mapping[str, np.ndarray], metadata: dict[str, Any]
) -> None:
    manifest = []
    payload = bytearray()
    for name in sorted(params):
        arr = np.ascontiguousarray(params[name])
        raw = arr.astype(arr.dtype.newbyteorder("<"), copy=False).tobytes()
        manifest.append(
            {
                "name": name,
                "shape": list(arr.shape),
                "dtype": arr.dtype.str.replace(">", "<"),
                "offset": len(payload),
                "nbytes": len(raw),
            }
        )
        payload.extend(raw)
    header = {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "metadata": metadata,
        "params": manifest,
    }
    header_bytes = json.dumps(header, sort_keys=True, ensure_ascii=False).encode("utf-8")
    with Path(path).open("wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", len(header_bytes)))
        fh.write(header_bytes)
        fh.write(bytes(payload))


def load_checkpoint(path: str | Path) -> Checkpoint:
    raw = Path(path).read_bytes()
    if raw[: len(MAGIC)] != MAGIC:
        raise CheckpointError(f"{path}: not a checkpoint file (bad magic)")
    (header_len,) = struct.unpack_from("<I", raw, len(MAGIC))
    header_start = len(MAGIC) + 4
    header = json.loads(raw[header_start : header_start + header_len].decode("utf-8"))
    major = header["format_version"].split(".")[0]
    if major != FORMAT_VERSION.split(".")[0]:
        raise CheckpointError(
            f"{path}: unsupported format version {header['format_version']}"
        )
    payload = raw[header_start + header_len :]
    params = {}
    for entry in header["params"]:
        chunk = payload[entry["offset"] : entry["offset"] + entry["nbytes"]]
        arr = np.frombuffer(chunk, dtype=np.dtype(entry["dtype"])).reshape(entry["shape"])
        params[entry["name"]] = arr.copy()
    return Checkpoint(
        kind=header["kind"],
        metadata=header["metadata"],
        params=params,
        format_version=header["format_version"],
    )


def file_sha256(path: str | Path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()
