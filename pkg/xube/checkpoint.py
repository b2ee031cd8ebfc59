#--------------------------------------------------------------------------------------------------#
# checkpoint.py                                                                                    #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Binary checkpoint files for approximators and target snapshots                                   #
#                                                                                                  #
#   "XUBE" | u32 version | u32 header length | JSON header | arrays (little-endian) | u32 CRC32     #
#                                                                                                  #
# The CRC covers every byte before it. Files are written to a temporary name and renamed           #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.21: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

import json
import os
import struct
import tempfile
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from xube.approx import (MLP, MLPSnapshot, MLPSpec, TableSnapshot, TabularApprox, ZeroTarget)
from xube.errors import CheckpointError, CheckpointVersionError, CorruptCheckpointError

MAGIC = b"XUBE"
VERSION = 1
_U32 = struct.Struct("<I")

#--------------------------------------------------------------------------------------------------#
# Main                                                                                             #
#--------------------------------------------------------------------------------------------------#
@dataclass
class Checkpoint:
    approx: object
    kind: str
    head: str
    meta: dict = field(default_factory=dict)


def _payload(approx) -> tuple[dict, list[tuple[str, np.ndarray]]]:
    if isinstance(approx, (MLP, MLPSnapshot)):
        spec = approx.spec
        header = {"kind": "mlp", "spec": {"layer_sizes": list(spec.layer_sizes),
                                          "activation": spec.activation}}
        arrays = [("params", approx.params)]
        if isinstance(approx, MLP):
            header["optimizer"] = approx.optimizer
            header["adam"] = {"t": approx.adam.t, "beta1": approx.adam.beta1,
                              "beta2": approx.adam.beta2, "eps": approx.adam.eps}
            arrays += [("adam_m", approx.adam.m), ("adam_v", approx.adam.v)]
        return header, arrays
    if isinstance(approx, (TabularApprox, TableSnapshot)):
        table = approx.table
        keys = [np.frombuffer(k, dtype=np.float32) for k in table]
        in_dim = keys[0].size if keys else 0
        header = {"kind": "table", "out_dim": approx.out_dim, "in_dim": in_dim}
        arrays = [("keys", np.array(keys, dtype=np.float32).reshape(len(keys), in_dim)),
                  ("values", np.array(list(table.values()), dtype=np.float64).reshape(len(keys),
                                                                                      approx.out_dim))]
        return header, arrays
    if isinstance(approx, ZeroTarget):
        return {"kind": "zero", "out_dim": approx.out_dim}, []
    raise CheckpointError(f"cannot checkpoint object of type {type(approx).__name__}")


def save_checkpoint(approx, path: str | os.PathLike, head: str = "v", meta: dict | None = None) -> Path:
    """
    Write ``approx`` to ``path`` atomically

    Parameters
    ----------
    approx: `MLP`, `TabularApprox`, a snapshot of either, or `ZeroTarget`
        object to store
    path: `str` or path-like
        destination
    head: `str`
        "v" or "q", recorded so solvers can check the algorithm family
    meta: `dict` or None
        extra JSON-serialisable metadata (domain name, encoder, ...)

    Returns
    -------
    path: `Path`
        written file
    """
    path = Path(path)
    header, arrays = _payload(approx)
    header["head"] = head
    header["meta"] = meta or {}
    header["arrays"] = [{"name": name, "dtype": np.dtype(arr.dtype).newbyteorder("<").str,
                         "shape": list(arr.shape)} for name, arr in arrays]
    header_bytes = json.dumps(header, sort_keys=True).encode("utf-8")

    body = bytearray(MAGIC)
    body += _U32.pack(VERSION)
    body += _U32.pack(len(header_bytes))
    body += header_bytes
    for (_, arr), desc in zip(arrays, header["arrays"]):
        body += np.ascontiguousarray(arr, dtype=desc["dtype"]).tobytes()
    body += _U32.pack(zlib.crc32(body) & 0xFFFFFFFF)

    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(body)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    return path


def read_checkpoint(path: str | os.PathLike) -> Checkpoint:
    data = Path(path).read_bytes()
    if len(data) < 16 or data[:4] != MAGIC:
        raise CorruptCheckpointError(f"{path}: not a xube checkpoint")
    (version,) = _U32.unpack_from(data, 4)
    if version != VERSION:
        raise CheckpointVersionError(f"{path}: checkpoint version {version}, expected {VERSION}")
    (crc,) = _U32.unpack_from(data, len(data) - 4)
    if zlib.crc32(data[:-4]) & 0xFFFFFFFF != crc:
        raise CorruptCheckpointError(f"{path}: checksum mismatch (truncated or damaged file)")

    (hlen,) = _U32.unpack_from(data, 8)
    try:
        header = json.loads(data[12:12 + hlen].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise CorruptCheckpointError(f"{path}: unreadable header") from e

    arrays, pos = {}, 12 + hlen
    for desc in header["arrays"]:
        dtype = np.dtype(desc["dtype"])
        count = int(np.prod(desc["shape"], dtype=np.int64))
        end = pos + count * dtype.itemsize
        if end > len(data) - 4:
            raise CorruptCheckpointError(f"{path}: array {desc['name']} runs past end of file")
        arrays[desc["name"]] = np.frombuffer(data[pos:end], dtype=dtype).reshape(desc["shape"]).copy()
        pos = end

    kind = header["kind"]
    if kind == "mlp":
        spec = MLPSpec(tuple(header["spec"]["layer_sizes"]), header["spec"]["activation"])
        params = arrays["params"]
        approx = MLP(spec, optimizer=header.get("optimizer", "adam"), dtype=params.dtype.newbyteorder("="),
                     params=params)
        if "adam" in header:
            approx.adam.m[...] = arrays["adam_m"]
            approx.adam.v[...] = arrays["adam_v"]
            approx.adam.t = int(header["adam"]["t"])
            approx.adam.beta1 = header["adam"]["beta1"]
            approx.adam.beta2 = header["adam"]["beta2"]
            approx.adam.eps = header["adam"]["eps"]
    elif kind == "table":
        approx = TabularApprox(int(header["out_dim"]))
        for key, vals in zip(arrays["keys"], arrays["values"]):
            approx.table[key.astype(np.float32).tobytes()] = vals.astype(np.float64)
    elif kind == "zero":
        approx = ZeroTarget(int(header["out_dim"]))
    else:
        raise CorruptCheckpointError(f"{path}: unknown checkpoint kind {kind!r}")
    return Checkpoint(approx, kind, header["head"], header.get("meta", {}))


def load_checkpoint(path: str | os.PathLike):
    return read_checkpoint(path).approx
