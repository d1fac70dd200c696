"""Exact Gromov-Hausdorff distance for small finite metric spaces.

d_GH(X, Y) is half the minimal distortion over correspondences between X and Y.
It suffices to search correspondences of the form graph(phi) union
graph(psi)^T for functions phi: X -> Y and psi: Y -> X: any correspondence
contains one of that shape built from it (pick one partner per point), and
dropping pairs never increases the distortion. The search is therefore a
branch-and-bound over the two assignment vectors.

Branching assigns phi values first (points in decreasing eccentricity order),
then psi values for the still-uncovered Y points. At each node the incremental
distortion of every candidate partner against the pairs assigned so far is
evaluated in one vectorized pass; candidates are explored best-first and pruned
when they cannot beat the incumbent strictly. The trivial lower bound
|diam X - diam Y| certifies early termination when the incumbent reaches it.

The search is exhaustive, so the result is exact whenever the node budget is
not exhausted; on budget exhaustion the best correspondence found is returned
with proven_optimal = False (its half-distortion is still an upper bound).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .manifolds import FiniteMetricSpace, diameter


@dataclass(frozen=True)
class Correspondence:
    """A relation between index sets, as a sorted tuple of (x, y) pairs."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(sorted((int(a), int(b))
                                                       for a, b in self.pairs)))

    def transpose(self) -> "Correspondence":
        return Correspondence(tuple((b, a) for a, b in self.pairs))

    def validate(self, size_x: int, size_y: int) -> None:
        """Raise unless every index is in range and both sides are covered."""
        seen_x, seen_y = set(), set()
        for a, b in self.pairs:
            if not (0 <= a < size_x and 0 <= b < size_y):
                raise ValueError(f"pair ({a}, {b}) out of range")
            seen_x.add(a)
            seen_y.add(b)
        if len(seen_x) != size_x or len(seen_y) != size_y:
            raise ValueError("correspondence must cover both point sets")


def identity_correspondence(size: int) -> Correspondence:
    return Correspondence(tuple((i, i) for i in range(size)))


def distortion(corr: Correspondence, space_x: FiniteMetricSpace,
               space_y: FiniteMetricSpace) -> float:
    """max |d_X(x, x') - d_Y(y, y')| over related pairs (x, y), (x', y')."""
    corr.validate(space_x.size, space_y.size)
    pairs = np.array(corr.pairs, dtype=np.intp)
    xs, ys = pairs[:, 0], pairs[:, 1]
    gap = space_x.dist[np.ix_(xs, xs)] - space_y.dist[np.ix_(ys, ys)]
    return float(np.abs(gap).max())


def gh_lower_trivial(space_x: FiniteMetricSpace, space_y: FiniteMetricSpace) -> float:
    """|diam X - diam Y| / 2, a lower bound for d_GH valid for any spaces."""
    return abs(diameter(space_x) - diameter(space_y)) / 2.0


@dataclass(frozen=True)
class GHResult:
    """Outcome of gh_exact: value = distortion(correspondence)/2, exact when
    proven_optimal, otherwise an upper bound reached within the node budget."""

    value: float
    correspondence: Correspondence
    nodes_explored: int
    proven_optimal: bool


class _BudgetExhausted(Exception):
    pass


def gh_exact(space_x: FiniteMetricSpace, space_y: FiniteMetricSpace,
             node_budget: int = 10_000_000) -> GHResult:
    """Exact d_GH by branch-and-bound over function-pair correspondences.

    Parameters
    ----------
    space_x, space_y : the two finite metric spaces.
    node_budget : maximum number of search-node expansions before giving up on
        the optimality proof. The incumbent at that point is still returned.

    Returns
    -------
    GHResult with value = best distortion / 2. Deterministic for fixed inputs:
    branching order depends only on the distance matrices.
    """
    dx = np.ascontiguousarray(space_x.dist)
    dy = np.ascontiguousarray(space_y.dist)
    nx, ny = space_x.size, space_y.size

    order_x = np.argsort(-dx.max(axis=1), kind="stable")
    order_y = np.argsort(-dy.max(axis=1), kind="stable")
    floor = 2.0 * gh_lower_trivial(space_x, space_y)

    best = float("inf")
    best_pairs: list[tuple[int, int]] = []
    axs: list[int] = []  # X side of assigned pairs, in assignment order
    ays: list[int] = []
    nodes = 0
    done = False  # set when the incumbent hits the certified floor

    def candidate_costs(row: np.ndarray, other: np.ndarray) -> np.ndarray:
        # row: distances from the new point to already assigned ones on its side
        # other: distance block from every candidate partner to assigned partners
        if not axs:
            return np.zeros(other.shape[0])
        return np.abs(other - row[None, :]).max(axis=1)

    def settle(pos: int, partial: float, pending_y: list[int] | None) -> None:
        nonlocal best, best_pairs, nodes, done
        if done:
            return
        if pending_y is None and pos == nx:
            covered = set(ays)
            pending_y = [int(y) for y in order_y if int(y) not in covered]
            pos = 0
        if pending_y is not None and pos == len(pending_y):
            if partial < best:
                best = partial
                best_pairs = list(zip(axs, ays))
                if best <= floor:
                    done = True
            return
        nodes += 1
        if nodes > node_budget and best_pairs:
            # never abort before the first depth-first dive lands an incumbent
            raise _BudgetExhausted
        if pending_y is None:
            x = int(order_x[pos])
            costs = candidate_costs(dx[x, axs], dy[:, ays] if axs else dy[:, :0])
            for y in np.argsort(costs, kind="stable"):
                trial = max(partial, float(costs[y]))
                if trial >= best:
                    break  # costs ascend, nothing later can improve
                axs.append(x)
                ays.append(int(y))
                settle(pos + 1, trial, None)
                axs.pop()
                ays.pop()
                if done:
                    return
        else:
            y = pending_y[pos]
            costs = candidate_costs(dy[y, ays], dx[:, axs] if axs else dx[:, :0])
            for x in np.argsort(costs, kind="stable"):
                trial = max(partial, float(costs[x]))
                if trial >= best:
                    break
                axs.append(int(x))
                ays.append(y)
                settle(pos + 1, trial, pending_y)
                axs.pop()
                ays.pop()
                if done:
                    return

    proven = True
    try:
        settle(0, 0.0, None)
    except _BudgetExhausted:
        proven = False

    corr = Correspondence(tuple(set(best_pairs)))
    return GHResult(best / 2.0, corr, nodes, proven)
