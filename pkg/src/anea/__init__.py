"""anea: derive labeled entity categories (a coding book) from German domain texts.

The pipeline extracts digit-free noun terms from a corpus, resolves compound
heads against an offline dictionary dump, links everything into a hypernym
graph, and turns that graph into scored, disjoint entity categories.  A
clustering baseline, silver-standard evaluation, and an ensemble voting step
round out the batch side; ``anea serve`` exposes the resulting coding book to
a browser UI for manual revision.
"""

from anea.corpus import SelectionConfig, Term, TermTable, extract_terms, group_by_head, import_terms, select_tta
from anea.compounds import split_head
from anea.kb import KBEntry, KnowledgeBase, Sense, load_dump
from anea.embeddings import VectorStore, cosine, load_vectors
from anea.domain_graph import DomainGraph, init_graph, infer_areas, grow, distances
from anea.categorizer import CategorizerConfig, EntityCategory, run as categorize
from anea.hc_baseline import cluster, optimize
from anea.silver_eval import build_matrices, build_silver, evaluate, select_threshold
from anea.ensemble import default_configs, vote

__version__ = "0.1.0"

__all__ = [
    "CategorizerConfig",
    "DomainGraph",
    "EntityCategory",
    "KBEntry",
    "KnowledgeBase",
    "SelectionConfig",
    "Sense",
    "Term",
    "TermTable",
    "VectorStore",
    "build_matrices",
    "build_silver",
    "categorize",
    "cluster",
    "cosine",
    "default_configs",
    "distances",
    "evaluate",
    "extract_terms",
    "group_by_head",
    "grow",
    "import_terms",
    "infer_areas",
    "init_graph",
    "load_dump",
    "load_vectors",
    "optimize",
    "select_threshold",
    "select_tta",
    "split_head",
    "vote",
]
