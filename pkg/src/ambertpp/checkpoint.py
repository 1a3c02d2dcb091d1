"""Versioned JSON checkpoint format for named parameter tensors.

Layout: a header with format name/version and a model ``kind`` tag, the
model's config dict, an ordered list of named parameters (shape + row-major
data) and optional optimizer state. Floats round-trip exactly through JSON
(Python serialises them via repr).
"""

from __future__ import annotations

import json

import numpy as np

from .autodiff import Tensor
from .errors import ParseError
from .optim import AdamState

FORMAT_NAME = "ambertpp-checkpoint"
FORMAT_VERSION = 1


def _encode_array(arr: np.ndarray) -> dict:
    return {"shape": list(arr.shape), "data": np.asarray(arr, dtype=np.float64).ravel().tolist()}


def _decode_array(obj: dict) -> np.ndarray:
    return np.array(obj["data"], dtype=np.float64).reshape(obj["shape"])


def save_checkpoint(
    path,
    kind: str,
    config: dict,
    params: dict[str, Tensor],
    optimizer: AdamState | None = None,
    extra: dict | None = None,
) -> None:
    doc = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "kind": kind,
        "config": config,
        "params": [
            {"name": name, **_encode_array(p.data)} for name, p in params.items()
        ],
        "optimizer": None,
        "extra": extra or {},
    }
    if optimizer is not None:
        doc["optimizer"] = {
            "lr": optimizer.lr,
            "beta1": optimizer.beta1,
            "beta2": optimizer.beta2,
            "eps": optimizer.eps,
            "step": optimizer.step,
            "m": {n: _encode_array(v) for n, v in optimizer.m.items()},
            "v": {n: _encode_array(v) for n, v in optimizer.v.items()},
        }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)


def load_checkpoint(path) -> dict:
    """Load a checkpoint into {kind, config, params (name -> ndarray), optimizer, extra}."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format") != FORMAT_NAME:
        raise ParseError(f"not a {FORMAT_NAME} file", line=1)
    if doc.get("version") != FORMAT_VERSION:
        raise ParseError(f"unsupported checkpoint version {doc.get('version')}", line=1)
    params = {item["name"]: _decode_array(item) for item in doc["params"]}
    optimizer = None
    if doc.get("optimizer"):
        o = doc["optimizer"]
        optimizer = AdamState(
            lr=o["lr"], beta1=o["beta1"], beta2=o["beta2"], eps=o["eps"], step=o["step"],
            m={n: _decode_array(v) for n, v in o["m"].items()},
            v={n: _decode_array(v) for n, v in o["v"].items()},
        )
    return {
        "kind": doc["kind"],
        "config": doc["config"],
        "params": params,
        "optimizer": optimizer,
        "extra": doc.get("extra", {}),
    }
