"""Deterministic seed derivation.

All randomness in a run fans out from one root seed; sub-streams are
derived by hashing the root together with a purpose tag so that adding a
new consumer never shifts the draws of existing ones.
"""

from __future__ import annotations

import hashlib

import numpy as np


def derive_seed(root: int, tag: str) -> int:
    """Return a 64-bit seed derived from ``root`` and a purpose ``tag``."""
    digest = hashlib.sha256(f"{root}:{tag}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def make_rng(root: int, tag: str = "") -> np.random.Generator:
    seed = derive_seed(root, tag) if tag else root
    return np.random.Generator(np.random.PCG64(seed))
