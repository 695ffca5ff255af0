"""Seeded generators for compactly supported random test measures.

Every sampled object owns its generator, keyed by (seed, stream name, sample
index), so parallel and serial evaluation orders draw identical values.
"""

from __future__ import annotations

import zlib

import numpy as np

from .measures import DiscreteMeasure

__all__ = ["stream_rng", "random_measure", "random_point", "MAX_ATOMS"]

MAX_ATOMS = 12


def stream_rng(seed: int, stream: str, index: int) -> np.random.Generator:
    """Independent generator for one (stream, sample-index) pair."""
    tag = zlib.crc32(stream.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence([int(seed), tag, int(index)]))


def random_measure(rng: np.random.Generator, K: float, max_atoms: int = MAX_ATOMS) -> DiscreteMeasure:
    """Random measure supported in [-K, K].

    Atom count is uniform on 1..max_atoms, positions uniform, weights from a
    flat Dirichlet draw.
    """
    n = int(rng.integers(1, max_atoms + 1))
    positions = rng.uniform(-K, K, size=n)
    weights = rng.dirichlet(np.ones(n))
    return DiscreteMeasure(positions, weights)


def random_point(rng: np.random.Generator, K: float) -> float:
    return float(rng.uniform(-K, K))
