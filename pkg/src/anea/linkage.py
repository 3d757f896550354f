"""Naive average-linkage agglomeration over a precomputed distance matrix.

Deliberately O(n^3): inputs are a few hundred points at most, and the simple
form is easy to check against an independent reference step by step.  Merge
order is fully deterministic; ties pick the smallest active index pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Agglomeration:
    """Final clusters plus the merge trail that produced them.

    ``clusters`` holds sorted tuples of original point indices.  ``merges``
    records, per step, the two merged clusters and the result.
    """

    clusters: list[tuple[int, ...]]
    merges: list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]


def _average_distance(dist: np.ndarray, a: tuple[int, ...], b: tuple[int, ...]) -> float:
    total = 0.0
    for i in a:
        for j in b:
            total += float(dist[i, j])
    return total / (len(a) * len(b))


def agglomerate(
    dist: np.ndarray,
    max_distance: float | None = None,
    target_clusters: int | None = None,
) -> Agglomeration:
    """Merge clusters with the smallest average pairwise distance.

    Stops when the closest pair is farther than ``max_distance``, or when
    ``target_clusters`` remain; exactly one stop rule must be given.
    """
    if (max_distance is None) == (target_clusters is None):
        raise ValueError("give exactly one of max_distance / target_clusters")
    n = dist.shape[0]
    if dist.shape != (n, n):
        raise ValueError("distance matrix must be square")

    clusters: list[tuple[int, ...]] = [(i,) for i in range(n)]
    merges: list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]] = []

    while len(clusters) > 1:
        if target_clusters is not None and len(clusters) <= target_clusters:
            break
        best: tuple[float, int, int] | None = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                d = _average_distance(dist, clusters[i], clusters[j])
                if best is None or d < best[0]:
                    best = (d, i, j)
        assert best is not None
        d, i, j = best
        if max_distance is not None and d > max_distance:
            break
        merged = tuple(sorted(clusters[i] + clusters[j]))
        merges.append((clusters[i], clusters[j], merged))
        clusters = [c for k, c in enumerate(clusters) if k not in (i, j)]
        clusters.append(merged)
    return Agglomeration(clusters, merges)
