"""A family where Gromov-Hausdorff is arbitrarily smaller than Hausdorff.

In R^n take the staircase points p_j = sum_{i<=j} i*e_i for j = 1..n. The full
set keeps all n points; the subset drops the last one. Removing p_n costs n in
Hausdorff distance (p_n sits at distance exactly n from its nearest neighbor
p_{n-1}). But the cyclic coordinate isometry e_i -> e_{i+1} (indices mod n)
moves every p_j close to p_{j+1}: the image of the subset is within sqrt(n) of
the full set in Hausdorff distance, so d_GH(subset, full) <= sqrt(n) and the
ratio d_GH / d_H is at most 1/sqrt(n), arbitrarily small as n grows.

All coordinates are small integers, so every squared distance here is computed
in exact integer arithmetic; square roots are taken through math.isqrt and stay
exact on perfect squares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .manifolds import FiniteSubset, euclidean


@dataclass(frozen=True)
class RatioInstance:
    """One member of the family: the staircase in R^n and its pruned subset."""

    n: int
    full_points: np.ndarray     # int64, shape (n, n), rows p_1..p_n
    subset_points: np.ndarray   # int64, shape (n-1, n), rows p_1..p_{n-1}

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True)
class RatioReport:
    """Verified quantities for one instance; ratio_upper = gh_upper / hausdorff."""

    n: int
    hausdorff: float
    hausdorff_after_isometry: float
    gh_upper: float
    ratio_upper: float


def build_instance(n: int) -> RatioInstance:
    if n < 2:
        raise ValueError("n must be >= 2 (the subset must be non-empty)")
    full = np.tril(np.broadcast_to(np.arange(1, n + 1, dtype=np.int64), (n, n)))
    return RatioInstance(n, full, full[:-1].copy())


def apply_cyclic_isometry(points: np.ndarray) -> np.ndarray:
    """The coordinate rotation e_i -> e_{i+1} (last axis wraps to the first)."""
    return np.roll(points, 1, axis=1)


def _directed_sq(a: np.ndarray, b: np.ndarray) -> int:
    """max over rows of a of the min squared distance to rows of b, exact."""
    delta = a[:, None, :].astype(np.int64) - b[None, :, :].astype(np.int64)
    sq = np.sum(delta * delta, axis=-1)
    return int(sq.min(axis=1).max())


def _hausdorff_sq(a: np.ndarray, b: np.ndarray) -> int:
    return max(_directed_sq(a, b), _directed_sq(b, a))


def _exact_sqrt(sq: int) -> float:
    root = math.isqrt(sq)
    return float(root) if root * root == sq else math.sqrt(sq)


def verify_instance(instance: RatioInstance) -> RatioReport:
    """Recompute the family's guarantees from scratch in integer arithmetic.

    Checks (and raises on failure) that dropping the last staircase point costs
    exactly n in Hausdorff distance, and that the cyclic isometry witnesses
    d_GH <= sqrt(n): isometries preserve the metric, so d_GH(subset, full) is
    at most d_H(isometry(subset), full).
    """
    n = instance.n
    h_sq = _hausdorff_sq(instance.subset_points, instance.full_points)
    if h_sq != n * n:
        raise ValueError(f"hausdorff distance squared is {h_sq}, expected {n * n}")
    rotated = apply_cyclic_isometry(instance.subset_points)
    h_rot_sq = _hausdorff_sq(rotated, instance.full_points)
    if h_rot_sq != n:
        raise ValueError(f"post-isometry hausdorff squared is {h_rot_sq}, expected {n}")
    hausdorff = _exact_sqrt(h_sq)
    gh_upper = _exact_sqrt(h_rot_sq)
    return RatioReport(n, hausdorff, _exact_sqrt(h_rot_sq), gh_upper,
                       gh_upper / hausdorff)


def as_subsets(instance: RatioInstance) -> tuple[FiniteSubset, FiniteSubset]:
    """The pair as FiniteSubsets of R^n (floats), for cross-checks with gh_exact."""
    ambient = euclidean(instance.n)
    return (FiniteSubset(ambient, instance.subset_points.astype(np.float64)),
            FiniteSubset(ambient, instance.full_points.astype(np.float64)))
