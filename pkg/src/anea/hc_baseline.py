"""Agglomerative-clustering baseline: unlabeled term groups.

The baseline mirrors the categorizer's geometry (cosine similarity, average
linkage) but extracts no labels.  ``optimize`` sweeps four similarity
thresholds and keeps the run that clusters the most terms in the most
coherent way.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

import numpy as np

from anea.embeddings import VectorStore, mean_pairwise_similarity
from anea.errors import ConfigError
from anea.linkage import Agglomeration, agglomerate

if TYPE_CHECKING:
    from anea.kb import KnowledgeBase

THRESHOLD_SWEEP = (0.5, 0.6, 0.7, 0.8)
MIN_CLUSTER_SIZE = 5


def _similarity_matrix(terms: Sequence[str], store: VectorStore, kb: "KnowledgeBase | None") -> np.ndarray:
    units = np.stack([store.unit_vector(t, kb) for t in terms])
    return units @ units.T


def cluster_with_history(
    terms: Sequence[str],
    store: VectorStore,
    threshold: float,
    kb: "KnowledgeBase | None" = None,
) -> tuple[list[list[str]], Agglomeration]:
    """Average-linkage clusters cut at ``threshold`` plus the merge trail."""
    if not 0.0 < threshold < 1.0:
        raise ConfigError(f"threshold must lie in (0, 1), got {threshold}")
    if len(terms) < 2:
        result = Agglomeration([tuple(range(len(terms)))] if terms else [], [])
        return [list(terms)] if terms else [], result
    sim = _similarity_matrix(terms, store, kb)
    # Merging while average similarity >= threshold == distance <= 1 - threshold.
    dist = 1.0 - sim
    result = agglomerate(dist, max_distance=1.0 - threshold)
    clusters = [[terms[i] for i in members] for members in result.clusters]
    return clusters, result


def cluster(
    terms: Sequence[str],
    store: VectorStore,
    threshold: float,
    kb: "KnowledgeBase | None" = None,
) -> list[list[str]]:
    return cluster_with_history(terms, store, threshold, kb)[0]


def optimize(
    terms: Sequence[str],
    store: VectorStore,
    kb: "KnowledgeBase | None" = None,
) -> tuple[list[list[str]], float | None]:
    """Best clustering over the threshold sweep; returns (clusters, threshold).

    Per run, clusters below the minimum size are discarded.  A run scores
    ``weighted_similarity * clustered_term_count`` where the weighted
    similarity averages per-cluster mean pairwise cosine, weighted by cluster
    size.  Runs with nothing left score 0; score ties keep the smaller
    threshold.  When every run is empty, returns ([], None).
    """
    best_score = 0.0
    best_clusters: list[list[str]] = []
    best_threshold: float | None = None
    for threshold in THRESHOLD_SWEEP:
        kept = [c for c in cluster(terms, store, threshold, kb) if len(c) >= MIN_CLUSTER_SIZE]
        if not kept:
            continue
        sizes = [len(c) for c in kept]
        coherences = [mean_pairwise_similarity(np.stack([store.unit_vector(t, kb) for t in c])) for c in kept]
        weighted = sum(t * s for t, s in zip(coherences, sizes)) / sum(sizes)
        score = weighted * sum(sizes)
        # Strict > keeps the smaller threshold on ties and ignores runs that
        # score no better than an empty run.
        if score > best_score:
            best_score = score
            best_clusters = kept
            best_threshold = threshold
    return best_clusters, best_threshold
