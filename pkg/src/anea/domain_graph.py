"""The domain graph: terms at the bottom, candidate labels above them.

Leaves are extracted domain terms; upper nodes are dictionary headwords
reached through hypernym relations.  Construction has three phases: seed the
graph from the terms-to-annotate and their heads, infer the semantic areas
that define the domain (used to prune off-domain pages), then grow upward by
expanding hypernyms of the current top nodes.  The result stays a DAG; any
edge that would close a cycle is dropped deterministically.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from anea.corpus import Term
from anea.embeddings import VectorStore, mean_pairwise_similarity
from anea.errors import CorpusError
from anea.kb import KBEntry, KnowledgeBase, in_text_hypernyms
from anea.linkage import agglomerate

EXPORT_FORMAT = "anea-graph/1"

# Labels farther than this many edges above a term are too abstract to use.
MAX_LABEL_DISTANCE = 5

# Cluster counts swept when inferring the domain-defining areas.
AREA_CLUSTER_RANGE = range(6, 13)

# Size of the most-frequent-areas cluster.
TOP_AREA_COUNT = 5


@dataclass
class GraphNode:
    name: str
    kb_entry: KBEntry | None = None
    is_term_node: bool = False
    pending_hypernyms: list[str] = field(default_factory=list)


@dataclass
class AreaSet:
    """Domain-defining area titles plus the per-cluster-count diagnostics."""

    areas: set[str]
    cluster_diag: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.areas)


class DomainGraph:
    """DAG of term nodes and label nodes joined by hyponym -> hypernym edges."""

    def __init__(self) -> None:
        self.nodes: dict[str, GraphNode] = {}
        self.term_nodes: set[str] = set()
        self.excluded_terms: list[str] = []
        self._up: dict[str, set[str]] = {}
        self._down: dict[str, set[str]] = {}

    # -- structure ---------------------------------------------------------

    def add_node(self, node: GraphNode) -> GraphNode:
        existing = self.nodes.get(node.name)
        if existing is not None:
            if node.is_term_node:
                existing.is_term_node = True
                self.term_nodes.add(node.name)
            if existing.kb_entry is None and node.kb_entry is not None:
                existing.kb_entry = node.kb_entry
                existing.pending_hypernyms = node.pending_hypernyms
            return existing
        self.nodes[node.name] = node
        self._up[node.name] = set()
        self._down[node.name] = set()
        if node.is_term_node:
            self.term_nodes.add(node.name)
        return node

    def edges(self) -> list[tuple[str, str]]:
        return sorted((src, dst) for src, dsts in self._up.items() for dst in dsts)

    def parents(self, name: str) -> list[str]:
        return sorted(self._up.get(name, ()))

    def children(self, name: str) -> list[str]:
        return sorted(self._down.get(name, ()))

    def reaches(self, start: str, goal: str) -> bool:
        """True when ``goal`` is reachable upward from ``start``."""
        if start == goal:
            return True
        queue = deque([start])
        seen = {start}
        while queue:
            for nxt in self._up[queue.popleft()]:
                if nxt == goal:
                    return True
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return False

    def add_edge(self, src: str, dst: str) -> bool:
        """Insert hyponym->hypernym edge unless it would close a cycle."""
        if src == dst or src not in self.nodes or dst not in self.nodes:
            return False
        if dst in self._up[src]:
            return False
        if self.reaches(dst, src):
            return False
        self._up[src].add(dst)
        self._down[dst].add(src)
        return True

    def tops(self) -> list[str]:
        return sorted(name for name in self.nodes if not self._up[name])

    def is_acyclic(self) -> bool:
        """Kahn's algorithm; True when every node can be topologically ordered."""
        degree = {name: len(self._up[name]) for name in self.nodes}
        queue = deque(sorted(n for n, d in degree.items() if d == 0))
        ordered = 0
        while queue:
            node = queue.popleft()
            ordered += 1
            for below in self._down[node]:
                degree[below] -= 1
                if degree[below] == 0:
                    queue.append(below)
        return ordered == len(self.nodes)

    # -- export ------------------------------------------------------------

    def export(self) -> dict:
        return {
            "format": EXPORT_FORMAT,
            "nodes": [
                {
                    "name": n.name,
                    "is_term_node": n.is_term_node,
                    "has_kb_entry": n.kb_entry is not None,
                    "pending_hypernyms": list(n.pending_hypernyms),
                }
                for n in (self.nodes[k] for k in sorted(self.nodes))
            ],
            "edges": [list(e) for e in self.edges()],
            "excluded_terms": list(self.excluded_terms),
        }

    def export_text(self) -> str:
        return json.dumps(self.export(), ensure_ascii=False, indent=2, sort_keys=True) + "\n"


@dataclass
class DistanceMatrix:
    """Upward edge-count distances from every term node, capped at the label limit.

    ``rows[t][x]`` is the shortest path length from term node ``t`` to node
    ``x``; pairs beyond the cap (or unreachable) are simply absent.  Every row
    contains its own term at distance 0.
    """

    rows: dict[str, dict[str, int]]

    def distance(self, term: str, node: str) -> int | None:
        return self.rows.get(term, {}).get(node)


def _pending_links(entry: KBEntry, kb: KnowledgeBase) -> list[str]:
    links: list[str] = []
    seen: set[str] = set()
    for name in list(entry.section_hypernyms) + in_text_hypernyms(entry, kb):
        if name not in seen:
            seen.add(name)
            links.append(name)
    return links


def init_graph(tta: Sequence[Term], kb: KnowledgeBase) -> DomainGraph:
    """Seed the graph with the terms-to-annotate and their heads.

    A term enters the graph when the term itself or its head resolves to a KB
    page; everything else lands on ``excluded_terms``.  Both the term nodes
    and their head nodes count as term nodes for later category collection.
    """
    if not tta:
        raise CorpusError("empty terms-to-annotate list")
    graph = DomainGraph()
    for term in sorted(tta, key=lambda t: t.surface):
        entry = kb.lookup(term.surface)
        head_entry = kb.lookup(term.head) if term.head else None
        if entry is None and head_entry is None:
            graph.excluded_terms.append(term.surface)
            continue
        node = GraphNode(term.surface, kb_entry=entry, is_term_node=True)
        if entry is not None:
            node.pending_hypernyms = _pending_links(entry, kb)
        graph.add_node(node)
        if head_entry is not None and head_entry.headword != term.surface:
            head_node = GraphNode(
                head_entry.headword,
                kb_entry=head_entry,
                is_term_node=True,
                pending_hypernyms=_pending_links(head_entry, kb),
            )
            graph.add_node(head_node)
            graph.add_edge(term.surface, head_entry.headword)
    return graph


def _title_frequencies(graph: DomainGraph) -> Counter:
    counts: Counter = Counter()
    for name in sorted(graph.nodes):
        entry = graph.nodes[name].kb_entry
        if entry is not None:
            counts.update(entry.area_titles())
    return counts


def _most_frequent(counts: Counter, k: int) -> list[str]:
    return [t for t, _ in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:k]]


def _cluster_coherence(units: np.ndarray, members: tuple[int, ...]) -> float:
    if len(members) < 2:
        return -1.0
    return mean_pairwise_similarity(units[list(members)])


def _set_coherence(units: np.ndarray, indices: list[int]) -> float:
    if not indices:
        return 0.0
    if len(indices) == 1:
        return 1.0
    return mean_pairwise_similarity(units[indices])


def infer_areas(graph: DomainGraph, store: VectorStore) -> AreaSet:
    """Find the area titles that define the domain of the initialized graph.

    For each cluster count in the sweep the area-title vectors are clustered
    (Euclidean, average linkage) and three representative clusters are
    intersected: the most coherent one, the most frequent one, and the
    overall top titles.  The sweep winner maximizes coherence times frequency
    of the intersection.  Degenerate inputs skip clustering: fewer distinct
    titles than the smallest cluster count yield the most frequent titles
    directly, and no titles at all disable pruning.
    """
    counts = _title_frequencies(graph)
    if not counts:
        return AreaSet(set(), {"reason": "no area titles observed"})
    titles = sorted(counts)
    top_k = _most_frequent(counts, TOP_AREA_COUNT)
    if len(titles) < AREA_CLUSTER_RANGE.start:
        return AreaSet(set(top_k), {"reason": "fewer titles than cluster sweep", "top": top_k})

    vectors = np.stack([store.vector(t) for t in titles])
    units = np.stack([store.unit_vector(t) for t in titles])
    diff = vectors[:, None, :] - vectors[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=2))

    diag: dict = {"top": top_k, "sweep": {}}
    best: tuple[float, int, set[str]] | None = None
    fallback_seen = False
    for i in AREA_CLUSTER_RANGE:
        if i > len(titles):
            break
        clusters = agglomerate(dist, target_clusters=i).clusters

        def pick(score_of, clusters=clusters):
            ranked = sorted(
                clusters,
                key=lambda c: (-score_of(c), tuple(titles[j] for j in sorted(c))),
            )
            return ranked[0]

        c_s = pick(lambda c: _cluster_coherence(units, c))
        c_f = pick(lambda c: sum(counts[titles[j]] for j in c))
        names_s = {titles[j] for j in c_s}
        names_f = {titles[j] for j in c_f}
        areas = names_s & names_f & set(top_k)
        member_idx = [titles.index(t) for t in sorted(areas)]
        coherence = _set_coherence(units, member_idx)
        frequency = sum(counts[t] for t in areas)
        score = coherence * frequency
        diag["sweep"][i] = {
            "coherent_cluster": sorted(names_s),
            "frequent_cluster": sorted(names_f),
            "areas": sorted(areas),
            "coherence": coherence,
            "frequency": frequency,
        }
        if areas:
            fallback_seen = True
        if areas and (best is None or score > best[0]):
            best = (score, i, areas)

    if not fallback_seen or best is None:
        diag["fallback"] = "empty intersections at every cluster count"
        return AreaSet(set(top_k), diag)
    diag["chosen_cluster_count"] = best[1]
    return AreaSet(best[2], diag)


def _passes_area_gate(entry: KBEntry, areas: AreaSet) -> bool:
    if not areas.areas:
        return True
    titles = entry.area_titles()
    return not titles or bool(set(titles) & areas.areas)


def grow(graph: DomainGraph, kb: KnowledgeBase, areas: AreaSet, iterations: int = 2) -> DomainGraph:
    """Expand the graph upward by materializing hypernyms of the top nodes.

    Per iteration every current top node's pending hypernym links are
    resolved against the KB; pages passing the area gate become new nodes.
    Afterwards all hypernym/hyponym relations between present nodes are
    re-matched and attached in alphabetical order, skipping anything that
    would close a cycle.
    """
    if iterations not in (1, 2):
        raise ValueError("iterations must be 1 or 2")
    for _ in range(iterations):
        for top in graph.tops():
            node = graph.nodes[top]
            for link in node.pending_hypernyms:
                entry = kb.lookup(link)
                if entry is None or entry.headword in graph.nodes:
                    continue
                if not _passes_area_gate(entry, areas):
                    continue
                graph.add_node(
                    GraphNode(entry.headword, kb_entry=entry, pending_hypernyms=_pending_links(entry, kb))
                )
        _attach_matching_edges(graph, kb)
    return graph


def _attach_matching_edges(graph: DomainGraph, kb: KnowledgeBase) -> None:
    candidates: set[tuple[str, str]] = set()
    for name in graph.nodes:
        node = graph.nodes[name]
        for link in node.pending_hypernyms:
            entry = kb.lookup(link)
            target = entry.headword if entry is not None else link
            if target in graph.nodes:
                candidates.add((name, target))
        if node.kb_entry is not None:
            for link in node.kb_entry.section_hyponyms:
                entry = kb.lookup(link)
                source = entry.headword if entry is not None else link
                if source in graph.nodes:
                    candidates.add((source, name))
    for src, dst in sorted(candidates):
        graph.add_edge(src, dst)


def distances(graph: DomainGraph, max_distance: int = MAX_LABEL_DISTANCE) -> DistanceMatrix:
    """Shortest upward distances from every term node, BFS capped at the limit."""
    rows: dict[str, dict[str, int]] = {}
    for term in sorted(graph.term_nodes):
        row = {term: 0}
        queue = deque([(term, 0)])
        while queue:
            current, depth = queue.popleft()
            if depth == max_distance:
                continue
            for parent in graph.parents(current):
                if parent not in row:
                    row[parent] = depth + 1
                    queue.append((parent, depth + 1))
        rows[term] = row
    return DistanceMatrix(rows)


def ancestors_within(dist: DistanceMatrix, term: str) -> Iterable[tuple[str, int]]:
    """(node, distance) pairs strictly above ``term`` in its row."""
    for node, d in sorted(dist.rows.get(term, {}).items()):
        if d > 0:
            yield node, d
