"""Grid discretization of compactly supported measures.

A measure supported in [-K, K] is pushed onto the grid {k/n} by a partition
of unity subordinate to the open cover

    interior cells  ((k-1)/n, (k+1)/n)   for |k| <= n*K - 1,
    left tail       (-inf, (-n*K+1)/n),
    right tail      ((n*K-1)/n, +inf),

each grid point k/n receiving the mass its bump collects. Mass within a cell
moves at most 1/n to reach its grid point and each unbounded tail cell
contributes at most 1/n more, so the Wasserstein-1 distance between a measure
and its discretization is at most 3/n whenever n >= K + 1. The bound only
uses non-negativity and support containment of the bumps, so both bump
families below satisfy it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import DiscreteMeasure

__all__ = ["PartitionScheme", "bump_weight", "discretize", "BUMP_MODES"]

BUMP_MODES = ("smooth_bump", "linear_hat")

# Discretized weights below this are dropped and mass renormalized, keeping
# atom counts bounded in iterated pipelines.
WEIGHT_FLOOR = 1e-15

# Cell coordinates this close to an integer snap to it, so grid atoms
# reproduce exactly despite float rounding of k/n.
GRID_SNAP = 1e-9


@dataclass(frozen=True)
class PartitionScheme:
    """Grid resolution n, support bound K and the bump family.

    ``smooth_bump`` builds each interior bump from the mollifier
    exp(-1/(1-u^2)) on (-1, 1) and each tail from a monotone smooth ramp that
    saturates at 1 beyond [-K, K]; the raw bumps are then normalized by their
    pointwise total, which is positive everywhere. ``linear_hat`` uses
    triangular hats instead: not smooth, provided as a cross-check family
    since the 3/n guarantee does not depend on smoothness.

    Requires n >= K + 1, the regime in which the 3/n guarantee holds.
    """

    n: int
    K: int
    bump_shape: str = "smooth_bump"

    def __post_init__(self):
        if int(self.n) != self.n or int(self.K) != self.K:
            raise ValueError("n and K must be integers")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "K", int(self.K))
        if self.K < 1:
            raise ValueError("support bound K must be a positive integer")
        if self.n < self.K + 1:
            raise ValueError("grid resolution must satisfy n >= K + 1")
        if self.bump_shape not in BUMP_MODES:
            raise ValueError(f"bump_shape must be one of {BUMP_MODES}")
        N = self.n * self.K
        indices = np.arange(-N, N + 1)
        grid = indices / self.n
        indices.setflags(write=False)
        grid.setflags(write=False)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "grid", grid)

    @property
    def edge_index(self) -> int:
        return self.n * self.K

    def weight_matrix(self, xs) -> np.ndarray:
        """Bump weights at each point: rows sum to one.

        Returns an array of shape (len(xs), 2*n*K + 1) whose [i, j] entry is
        the weight of grid index j - n*K at xs[i].
        """
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        u = self.n * xs[:, None] - self.indices[None, :]
        # snap near-integer cell coordinates (see GRID_SNAP)
        nearest = np.rint(u)
        snap = np.abs(u - nearest) <= GRID_SNAP
        u = np.where(snap, nearest, u)
        N = self.edge_index
        if self.bump_shape == "smooth_bump":
            raw = _mollifier(u)
            raw[:, 0] = _smoothstep((-N + 1) - self.n * xs)
            raw[:, -1] = _smoothstep(self.n * xs - (N - 1))
        else:
            raw = np.clip(1.0 - np.abs(u), 0.0, None)
            raw[:, 0] = np.clip((-N + 1) - self.n * xs, 0.0, 1.0)
            raw[:, -1] = np.clip(self.n * xs - (N - 1), 0.0, 1.0)
        totals = raw.sum(axis=1)
        if np.any(totals <= 0.0):
            raise RuntimeError("bump family failed to cover a point")
        return raw / totals[:, None]


def _mollifier(u: np.ndarray) -> np.ndarray:
    """exp(-1/(1-u^2)) on (-1, 1), zero outside."""
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    out[inside] = np.exp(-1.0 / (1.0 - ui * ui))
    return out


def _smoothstep(u: np.ndarray) -> np.ndarray:
    """Monotone smooth ramp: 0 for u <= 0, 1 for u >= 1."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    out[u >= 1.0] = 1.0
    mid = (u > 0.0) & (u < 1.0)
    um = u[mid]
    a = np.exp(-1.0 / um)
    b = np.exp(-1.0 / (1.0 - um))
    out[mid] = a / (a + b)
    return out


def bump_weight(scheme: PartitionScheme, k: int, x: float) -> float:
    """Weight of grid index k at point x."""
    N = scheme.edge_index
    if not -N <= k <= N:
        raise ValueError(f"grid index must lie in [{-N}, {N}]")
    row = scheme.weight_matrix(np.array([float(x)]))[0]
    return float(row[k + N])


def discretize(scheme: PartitionScheme, m: DiscreteMeasure) -> DiscreteMeasure:
    """Push a measure onto the grid {k/n}.

    Grid point k/n receives the integral of bump k against the measure, an
    exact finite sum for atomic input. Requires the support to stay inside
    [-K, K]; mass outside would leak into the tail cells with the wrong
    transport length.
    """
    if m.support_bound > scheme.K:
        raise ValueError(
            f"measure support bound {m.support_bound:g} exceeds the scheme bound K={scheme.K}"
        )
    psi = scheme.weight_matrix(m.positions)
    weights = m.weights @ psi
    total = math.fsum(weights.tolist())
    if abs(total - 1.0) > 1e-10:
        raise RuntimeError(f"partition of unity leaked mass: total {total!r}")
    keep = weights > WEIGHT_FLOOR
    kept = weights[keep]
    kept = kept / math.fsum(kept.tolist())
    return DiscreteMeasure(scheme.grid[keep], kept)
