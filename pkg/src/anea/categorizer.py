"""Candidate category generation, quality scoring, and the resolution passes.

Every node of the domain graph that sits above at least one term node is a
candidate label; the terms below it (within the distance cap) form its
candidate category.  A quality score balances two opposing pulls: narrow,
tightly related term sets score high on similarity, while big categories
under a high label score high on size and distance.  Three passes then boil
the candidates down to a disjoint coding book: duplicates by term set fall to
the better label, substantially overlapping categories collapse onto the
best replacement, and individually conflicted terms get assigned to the one
category that fits them best.

All orderings are deterministic: quality ties fall back to the
lexicographically smaller label, term processing order is frequency-driven.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Mapping, Sequence

import numpy as np

from anea.domain_graph import DistanceMatrix, DomainGraph, distances as compute_distances
from anea.embeddings import VectorStore, mean_pairwise_similarity, mean_similarity_to

if TYPE_CHECKING:
    from anea.corpus import Term


@dataclass
class CategorizerConfig:
    min_term_similarity: float = 0.2
    min_label_similarity: float = 0.3
    max_size_fraction: float = 0.15
    min_size: int = 5


@dataclass
class EntityCategory:
    """A label plus its term set and the score components behind its quality."""

    label: str
    terms: set[str]
    term_similarity: float = 0.0  # mean pairwise cosine among the terms
    label_similarity: float = 0.0  # mean cosine between label and terms
    combined_similarity: float = 0.0  # sum of the two
    avg_label_distance: float = 1.0  # mean non-zero graph distance term -> label
    quality: float = 0.0
    provenance: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[str]:
        return sorted(self.terms)


def quality_from_parts(term_sim: float, label_sim: float, size: int, avg_distance: float) -> float:
    """The published quality product; empty categories are worth 0."""
    if size == 0:
        return 0.0
    combined = term_sim + label_sim
    size_factor = max(math.log2(size), 1.0)
    return term_sim * label_sim * combined * size_factor * avg_distance


def _term_units(category: EntityCategory, store: VectorStore) -> np.ndarray:
    if not category.terms:
        return np.zeros((0, store.dimension))
    return np.stack([store.unit_vector(t) for t in category.sorted_terms()])


def _avg_label_distance(category: EntityCategory, dist: DistanceMatrix) -> float:
    nonzero = []
    for term in category.sorted_terms():
        d = dist.distance(term, category.label)
        if d is not None and d > 0:
            nonzero.append(d)
    if not nonzero:
        return 1.0
    return sum(nonzero) / len(nonzero)


def score_category(category: EntityCategory, store: VectorStore, dist: DistanceMatrix | None = None) -> EntityCategory:
    """Recompute all score fields in place from the current term set."""
    units = _term_units(category, store)
    category.term_similarity = mean_pairwise_similarity(units)
    category.label_similarity = mean_similarity_to(units, store.unit_vector(category.label))
    category.combined_similarity = category.term_similarity + category.label_similarity
    if dist is not None:
        category.avg_label_distance = _avg_label_distance(category, dist)
    category.quality = quality_from_parts(
        category.term_similarity, category.label_similarity, category.size, category.avg_label_distance
    )
    return category


def quality(category: EntityCategory, store: VectorStore) -> float:
    """Quality of the category as currently composed (does not mutate it)."""
    units = _term_units(category, store)
    term_sim = mean_pairwise_similarity(units)
    label_sim = mean_similarity_to(units, store.unit_vector(category.label))
    return quality_from_parts(term_sim, label_sim, category.size, category.avg_label_distance)


def collect_candidates(graph: DomainGraph, dist: DistanceMatrix, store: VectorStore) -> list[EntityCategory]:
    """Transpose term -> ancestor-labels into one candidate category per label."""
    members: dict[str, set[str]] = {}
    for term in sorted(graph.term_nodes):
        for node, d in dist.rows.get(term, {}).items():
            if d > 0:
                members.setdefault(node, set()).add(term)
    categories = []
    for label in sorted(members):
        category = EntityCategory(label, members[label])
        score_category(category, store, dist)
        categories.append(category)
    return categories


def filter_candidates(cands: Sequence[EntityCategory], tta_size: int, cfg: CategorizerConfig | None = None) -> list[EntityCategory]:
    """Drop vaguely related, oversized, or undersized candidates."""
    cfg = cfg or CategorizerConfig()
    max_size = cfg.max_size_fraction * tta_size
    kept = []
    for c in cands:
        if c.term_similarity < cfg.min_term_similarity:
            continue
        if c.label_similarity < cfg.min_label_similarity:
            continue
        if c.size > max_size or c.size < cfg.min_size:
            continue
        kept.append(c)
    return kept


def _quality_order(c: EntityCategory) -> tuple:
    return (-c.quality, c.label)


def resolve_full_overlaps(cands: Sequence[EntityCategory]) -> list[EntityCategory]:
    """Among categories with identical term sets keep only the best one."""
    by_terms: dict[frozenset, EntityCategory] = {}
    for c in cands:
        key = frozenset(c.terms)
        best = by_terms.get(key)
        if best is None or _quality_order(c) < _quality_order(best):
            by_terms[key] = c
    survivors = set(id(c) for c in by_terms.values())
    return [c for c in cands if id(c) in survivors]


def resolve_substantial_overlaps(cands: Sequence[EntityCategory]) -> list[EntityCategory]:
    """Collapse categories sharing most of their terms onto the best replacement.

    Category b is comparable to a when their intersection covers at least
    half of a's terms (an asymmetric test, so the replacement matrix is
    square but not symmetric; the diagonal always holds the category's own
    quality).  A row's replacement is its best comparable category, provided
    that category is also the best of its own row; rows whose best candidate
    fails that test contribute nothing.  The deduplicated replacements,
    best-first, are the result.
    """
    ordered = sorted(cands, key=_quality_order)
    n = len(ordered)
    if n == 0:
        return []

    overlap = [[False] * n for _ in range(n)]
    for a in range(n):
        size_a = len(ordered[a].terms)
        for b in range(n):
            shared = len(ordered[a].terms & ordered[b].terms)
            # Half of a's own size, so the diagonal is always comparable
            # (vacuously for empty categories).
            overlap[a][b] = shared >= 0.5 * size_a

    def row_argmax(a: int) -> int:
        best = None
        for b in range(n):
            if not overlap[a][b]:
                continue
            key = (-ordered[b].quality, ordered[b].label)
            if best is None or key < best[0]:
                best = (key, b)
        # The diagonal is always comparable (any non-empty set covers half of
        # itself), so a row of an empty category falls back to itself.
        return best[1] if best is not None else a

    survivors: list[EntityCategory] = []
    seen: set[int] = set()
    for a in range(n):
        c = row_argmax(a)
        if row_argmax(c) != c:
            continue
        if c not in seen:
            seen.add(c)
            survivors.append(ordered[c])
    return sorted(survivors, key=_quality_order)


def _conflict_order_key(
    term: str,
    origins: Sequence[EntityCategory],
    frequencies: Mapping[str, int],
) -> tuple:
    best = min(origins, key=_quality_order)
    return (-best.quality, best.label, -frequencies.get(term, 1), term)


def resolve_conflicting_terms(
    cands: Sequence[EntityCategory],
    store: VectorStore,
    dist: DistanceMatrix | None = None,
    frequencies: Mapping[str, int] | None = None,
    min_size: int = 5,
) -> list[EntityCategory]:
    """Assign every term to exactly one category, then apply the size floor.

    Terms held by two or more categories are stripped out first; terms that
    spell another category's label move straight into that category.  The
    cleaned categories are rescored, and each conflicted term then goes to
    whichever of its origin categories matches it best: mean similarity to
    the category's current terms plus similarity to its label.  Assignments
    accumulate, so earlier decisions influence later ones; processing starts
    at the terms whose origins score highest.
    """
    frequencies = frequencies or {}
    working = [replace(c, terms=set(c.terms)) for c in cands]
    by_label: dict[str, EntityCategory] = {}
    for c in working:
        by_label.setdefault(c.label, c)

    counts: dict[str, int] = {}
    for c in working:
        for t in c.terms:
            counts[t] = counts.get(t, 0) + 1
    conflicted = {t for t, n in counts.items() if n >= 2}

    origins: dict[str, list[EntityCategory]] = {t: [] for t in conflicted}
    for c in working:
        for t in sorted(conflicted & c.terms):
            c.terms.discard(t)
            origins[t].append(c)

    # Label-terms jump straight to the category spelling their name.
    for c in working:
        for t in sorted(c.terms):
            target = by_label.get(t)
            if target is not None and target is not c:
                c.terms.discard(t)
                target.terms.add(t)
    for t in sorted(conflicted):
        target = by_label.get(t)
        if target is not None:
            target.terms.add(t)
            del origins[t]

    for c in working:
        score_category(c, store, dist)
    working.sort(key=_quality_order)

    # Snapshot qualities: the processing order and tie-breaks stay fixed even
    # though assignments change the live categories.
    base_quality = {id(c): c.quality for c in working}

    def live_score(term: str, category: EntityCategory) -> float:
        units = _term_units(category, store)
        unit = store.unit_vector(term)
        return mean_similarity_to(units, unit) + float(np.dot(unit, store.unit_vector(category.label)))

    for term in sorted(origins, key=lambda t: _conflict_order_key(t, origins[t], frequencies)):
        ranked = sorted(
            origins[term],
            key=lambda c: (-live_score(term, c), -base_quality[id(c)], c.label),
        )
        ranked[0].terms.add(term)

    final = []
    for c in working:
        if c.size >= min_size:
            score_category(c, store, dist)
            final.append(c)
    return sorted(final, key=_quality_order)


def run(
    tta: Sequence["Term"],
    graph: DomainGraph,
    store: VectorStore,
    cfg: CategorizerConfig | None = None,
) -> list[EntityCategory]:
    """Full pass from grown graph to the final, term-disjoint coding book."""
    cfg = cfg or CategorizerConfig()
    dist = compute_distances(graph)
    cands = collect_candidates(graph, dist, store)
    cands = filter_candidates(cands, tta_size=len(graph.term_nodes), cfg=cfg)
    cands = resolve_full_overlaps(cands)
    cands = resolve_substantial_overlaps(cands)
    frequencies = {t.surface: t.corpus_frequency for t in tta}
    return resolve_conflicting_terms(cands, store, dist, frequencies, min_size=cfg.min_size)
