"""Shared numerical plumbing: quadrature nodes, deterministic parallel maps,
canonical JSON."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

__all__ = ["gauss_legendre_01", "parallel_map", "canonical_json", "compensated_cumsum"]


@lru_cache(maxsize=None)
def gauss_legendre_01(order: int):
    """Gauss-Legendre nodes and weights on [0, 1].

    Cached per order; the returned arrays are read-only.
    """
    if order < 2:
        raise ValueError("quadrature order must be at least 2")
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes = 0.5 * (nodes + 1.0)
    weights = 0.5 * weights
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def parallel_map(fn, items, threads: int = 1) -> list:
    """Map `fn` over `items`, optionally on a thread pool.

    Results come back in input order and each item's computation is
    independent, so the output is identical for any thread count.
    """
    items = list(items)
    if threads is None:
        threads = 1
    if threads == 0:
        threads = os.cpu_count() or 1
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def canonical_json(obj) -> str:
    """Serialize a report deterministically (sorted keys, plain floats)."""
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":")) + "\n"


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)) and not isinstance(obj, bool):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    return obj


def compensated_cumsum(values) -> np.ndarray:
    """Running sums with Neumaier compensation.

    Keeps cumulative-distribution differences accurate to a few ulp even for
    thousands of terms, which plain ``np.cumsum`` does not guarantee.
    """
    out = np.empty(len(values))
    total = 0.0
    comp = 0.0
    for i, value in enumerate(values):
        v = float(value)
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
        out[i] = total + comp
    return out
