"""Discrete probability measures on the real line.

A measure is a finite list of weighted atoms. The Wasserstein-1 distance
between two such measures is the integral of the absolute difference of their
cumulative distribution functions, which in one dimension equals the
optimal-transport cost exactly, so no solver is involved. All weighted sums
use compensated summation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .util import compensated_cumsum

__all__ = [
    "DiscreteMeasure",
    "dirac",
    "mix",
    "integrate",
    "w1",
    "kr_lower_bound",
    "signed_difference",
    "measure_to_dict",
    "measure_from_dict",
    "measure_to_json",
    "measure_from_json",
]

# Atoms closer than this (absolute) are one atom; repeated mixtures would
# otherwise accumulate near-duplicate positions.
MERGE_TOL = 1e-12

# Constructor rejects weight totals farther than this from one.
MASS_TOL = 1e-12

# The JSON deserializer renormalizes weight totals within this, rejects beyond.
JSON_MASS_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Finitely supported probability measure on the real line.

    Parameters
    ----------
    positions : array-like
        Atom locations. Sorted at construction; positions within
        ``MERGE_TOL`` are merged (weights add, the merged atom sits at the
        weight-averaged location).
    weights : array-like
        Non-negative masses summing to one within ``MASS_TOL``. Zero-weight
        atoms are dropped.

    Instances are immutable: the stored arrays are read-only and every
    operation on measures returns a new value, so they are safe to share
    across threads.
    """

    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float).ravel()
        w = np.asarray(self.weights, dtype=float).ravel()
        if pos.size == 0 or pos.shape != w.shape:
            raise ValueError("positions and weights must be equal-length and non-empty")
        if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(w))):
            raise ValueError("positions and weights must be finite")
        if np.any(w < 0.0):
            raise ValueError("weights must be non-negative")
        total = math.fsum(w.tolist())
        if abs(total - 1.0) > MASS_TOL:
            raise ValueError(f"weights sum to {total!r}, not 1")
        order = np.argsort(pos, kind="stable")
        pos, w = _merge_atoms(pos[order], w[order])
        keep = w > 0.0
        pos, w = pos[keep], w[keep]
        if pos.size == 0:
            raise ValueError("measure has no atom with positive weight")
        pos.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "weights", w)

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return [(float(p), float(w)) for p, w in zip(self.positions, self.weights)]

    @property
    def support_bound(self) -> float:
        """Smallest K with every atom inside [-K, K]."""
        return float(max(abs(self.positions[0]), abs(self.positions[-1])))

    @property
    def total_mass(self) -> float:
        return math.fsum(self.weights.tolist())

    def __len__(self) -> int:
        return int(self.positions.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return np.array_equal(self.positions, other.positions) and np.array_equal(
            self.weights, other.weights
        )

    def allclose(self, other: "DiscreteMeasure", atol: float = 1e-12) -> bool:
        """Atom-wise comparison within an absolute tolerance."""
        return (
            len(self) == len(other)
            and bool(np.all(np.abs(self.positions - other.positions) <= atol))
            and bool(np.all(np.abs(self.weights - other.weights) <= atol))
        )

    def __repr__(self) -> str:
        return (
            f"DiscreteMeasure({len(self)} atoms on "
            f"[{self.positions[0]:g}, {self.positions[-1]:g}])"
        )


def _merge_atoms(pos: np.ndarray, w: np.ndarray):
    """Combine sorted atoms whose positions chain within MERGE_TOL."""
    if pos.size == 1 or np.all(np.diff(pos) > MERGE_TOL):
        return pos.copy(), w.copy()
    breaks = np.flatnonzero(np.diff(pos) > MERGE_TOL) + 1
    starts = np.concatenate(([0], breaks))
    ends = np.concatenate((breaks, [pos.size]))
    out_p = np.empty(starts.size)
    out_w = np.empty(starts.size)
    for g, (i, j) in enumerate(zip(starts, ends)):
        if j - i == 1:
            out_p[g], out_w[g] = pos[i], w[i]
            continue
        ww = math.fsum(w[i:j].tolist())
        out_w[g] = ww
        if pos[j - 1] == pos[i]:
            # identical positions must survive exactly (grid atoms rely on it)
            out_p[g] = pos[i]
        elif ww > 0.0:
            out_p[g] = math.fsum((pos[i:j] * w[i:j]).tolist()) / ww
        else:
            out_p[g] = float(pos[i:j].mean())
    return out_p, out_w


def dirac(x: float) -> DiscreteMeasure:
    """Unit mass at ``x``."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("dirac position must be finite")
    return DiscreteMeasure(np.array([x]), np.array([1.0]))


def mix(a: DiscreteMeasure, b: DiscreteMeasure, t: float) -> DiscreteMeasure:
    """Convex combination (1-t)*a + t*b."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError("mixture parameter must lie in [0, 1]")
    if t == 0.0:
        return a
    if t == 1.0:
        return b
    pos = np.concatenate((a.positions, b.positions))
    w = np.concatenate(((1.0 - t) * a.weights, t * b.weights))
    return DiscreteMeasure(pos, w)


def _values_at(f, xs: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on an array of points, falling back to a scalar loop."""
    try:
        vals = np.asarray(f(xs), dtype=float)
        if vals.shape == xs.shape:
            return vals
    except (TypeError, ValueError):
        pass
    return np.array([float(f(x)) for x in xs])


def integrate(m: DiscreteMeasure, f) -> float:
    """Pairing <f, m> = sum of weight * f(position), compensated."""
    vals = _values_at(f, m.positions)
    if not np.all(np.isfinite(vals)):
        bad = m.positions[~np.isfinite(vals)][0]
        raise ValueError(f"integrand is not finite at atom {bad!r}")
    return math.fsum((m.weights * vals).tolist())


def w1(a: DiscreteMeasure, b: DiscreteMeasure) -> float:
    """Exact Wasserstein-1 distance.

    Computed as the piecewise-constant integral of |F_a - F_b| over the merged
    breakpoint set, where F denotes the cumulative distribution function. In
    one dimension this integral attains the optimal-coupling infimum, and is
    symmetric and zero exactly when the measures coincide.
    """
    if a is b:
        return 0.0
    pos = np.concatenate((a.positions, b.positions))
    signed = np.concatenate((a.weights, -b.weights))
    order = np.argsort(pos, kind="stable")
    pos = pos[order]
    cdf_gap = compensated_cumsum(signed[order])
    gaps = np.diff(pos)
    if gaps.size == 0:
        return 0.0
    return math.fsum((np.abs(cdf_gap[:-1]) * gaps).tolist())


def kr_lower_bound(a: DiscreteMeasure, b: DiscreteMeasure, f) -> float:
    """Duality pairing ``integrate(a, f) - integrate(b, f)`` for 1-Lipschitz f.

    Never exceeds ``w1(a, b)``: the supremum of this pairing over all
    1-Lipschitz functions equals the distance.
    """
    bound = getattr(f, "lipschitz_bound", None)
    if bound is None or bound > 1.0 + 1e-12:
        raise ValueError("test function must declare a Lipschitz bound <= 1")
    return integrate(a, f) - integrate(b, f)


def signed_difference(a: DiscreteMeasure, b: DiscreteMeasure):
    """Atoms of the signed measure a - b.

    Returns (positions, signed_weights) over the merged support; positions
    within MERGE_TOL combine, exact cancellations are dropped.
    """
    pos = np.concatenate((a.positions, b.positions))
    signed = np.concatenate((a.weights, -b.weights))
    order = np.argsort(pos, kind="stable")
    pos, signed = pos[order], signed[order]
    breaks = np.flatnonzero(np.diff(pos) > MERGE_TOL) + 1
    starts = np.concatenate(([0], breaks))
    ends = np.concatenate((breaks, [pos.size]))
    out_p = np.empty(starts.size)
    out_w = np.empty(starts.size)
    for g, (i, j) in enumerate(zip(starts, ends)):
        if j - i == 1:
            out_p[g], out_w[g] = pos[i], signed[i]
        else:
            out_p[g] = pos[i] if pos[j - 1] == pos[i] else float(pos[i:j].mean())
            out_w[g] = math.fsum(signed[i:j].tolist())
    keep = out_w != 0.0
    return out_p[keep], out_w[keep]


def measure_to_dict(m: DiscreteMeasure) -> dict:
    return {"atoms": [[float(p), float(w)] for p, w in m.atoms]}


def measure_from_dict(data: dict) -> DiscreteMeasure:
    """Build a measure from ``{"atoms": [[pos, weight], ...]}``.

    Weight totals within JSON_MASS_TOL of one are renormalized; anything
    farther off is rejected.
    """
    if not isinstance(data, dict) or "atoms" not in data:
        raise ValueError('measure JSON must be an object with an "atoms" list')
    atoms = data["atoms"]
    if not isinstance(atoms, list) or not atoms:
        raise ValueError('"atoms" must be a non-empty list of [position, weight] pairs')
    try:
        arr = np.asarray(atoms, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError("atoms must be numeric [position, weight] pairs") from exc
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("atoms must be [position, weight] pairs")
    pos, w = arr[:, 0], arr[:, 1]
    if np.any(w < 0.0):
        raise ValueError("weights must be non-negative")
    total = math.fsum(w.tolist())
    if abs(total - 1.0) > JSON_MASS_TOL:
        raise ValueError(f"weights sum to {total!r}; beyond the renormalization tolerance")
    return DiscreteMeasure(pos, w / total)


def measure_to_json(m: DiscreteMeasure) -> str:
    return json.dumps(measure_to_dict(m))


def measure_from_json(text: str) -> DiscreteMeasure:
    return measure_from_dict(json.loads(text))
