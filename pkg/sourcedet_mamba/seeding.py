"""Seed derivation: every random stream flows from one root seed"""

import zlib

import numpy as np


def derive_seed(root: int, purpose: str, *indices: int) -> int:
    """Derive a child seed as ``root ⊕ purpose ⊕ indices``.

    The purpose tag is hashed with CRC-32 (stable across interpreters, unlike ``hash``) and the
    resulting entropy words go through ``numpy.random.SeedSequence``.
    """
    entropy = [int(root) & 0xFFFFFFFF, zlib.crc32(purpose.encode("utf-8"))]
    entropy.extend(int(i) & 0xFFFFFFFF for i in indices)
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


def rng_for(root: int, purpose: str, *indices: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(root, purpose, *indices))


__all__ = ["derive_seed", "rng_for"]
