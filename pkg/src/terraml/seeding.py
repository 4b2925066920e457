"""Deterministic seed derivation.

A single run seed fans out into independent per-component and per-event
streams. Derivation is a pure function of (seed, path), so reordering the
construction of unrelated components never shifts anybody's randomness.
String path components are hashed with SHA-256 so the mapping is stable
across processes and platforms.
"""

from __future__ import annotations

import hashlib

import numpy as np


def _as_key(part) -> int:
    if isinstance(part, (int, np.integer)):
        if part < 0:
            raise ValueError(f"seed path components must be non-negative, got {part}")
        return int(part)
    if isinstance(part, str):
        digest = hashlib.sha256(part.encode("utf-8")).digest()
        return int.from_bytes(digest[:4], "big")
    raise TypeError(f"unsupported seed path component: {part!r}")


def derive_rng(seed: int, *path) -> np.random.Generator:
    """Independent generator for the stream identified by ``path``."""
    key = tuple(_as_key(p) for p in path)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def derive_seed(seed: int, *path) -> int:
    """Collapse a derived stream to a plain integer seed."""
    key = tuple(_as_key(p) for p in path)
    return int(np.random.SeedSequence(seed, spawn_key=key).generate_state(1, np.uint32)[0])
