"""Word-vector store with cosine similarity and deterministic OOV fallback.

The store reads the common textual embedding layout (header ``count dim``,
then one ``word v1 .. vd`` row per line).  Out-of-vocabulary words never fail:
they fall back to a dictionary-driven segmentation average, then to known
character 4-grams, and finally to a zero vector that is flagged as a miss.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterable

import numpy as np

from anea.errors import FormatError

if TYPE_CHECKING:
    from anea.kb import KnowledgeBase

# Segmentation pieces shorter than this are noise ("er", "ge", ...).
_MIN_PIECE = 3


class VectorStore:
    """Immutable word-vector table plus an OOV resolution cache."""

    def __init__(self, dimension: int, entries: dict[str, np.ndarray], kb: "KnowledgeBase | None" = None):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self.entries = entries
        self.kb = kb
        self.oov_words: set[str] = set()
        self._cache: dict[str, np.ndarray] = {}

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def vector(self, word: str, kb: "KnowledgeBase | None" = None) -> np.ndarray:
        """Vector for ``word``; never raises for unknown words.

        Fallback chain for misses: (1) mean of the vectors of dictionary
        words found by greedy segmentation of ``word``, (2) mean of the
        vectors of all character 4-grams of ``word`` present in the store,
        (3) zero vector, with ``word`` recorded in ``oov_words``.
        """
        hit = self.entries.get(word)
        if hit is not None:
            return hit
        cached = self._cache.get(word)
        if cached is not None:
            return cached

        kb = kb if kb is not None else self.kb
        vec = None
        if kb is not None:
            piece_vecs = [v for v in map(self._piece_vector, _segment(word, kb)) if v is not None]
            if piece_vecs:
                vec = np.mean(piece_vecs, axis=0)
        if vec is None:
            gram_vecs = [self.entries[g] for g in sorted(_char_ngrams(word, 4)) if g in self.entries]
            if gram_vecs:
                vec = np.mean(gram_vecs, axis=0)
        if vec is None:
            vec = np.zeros(self.dimension)
            self.oov_words.add(word)
        self._cache[word] = vec
        return vec

    def unit_vector(self, word: str, kb: "KnowledgeBase | None" = None) -> np.ndarray:
        """Length-normalized vector; the zero vector stays zero."""
        v = self.vector(word, kb)
        n = float(np.linalg.norm(v))
        return v / n if n > 0.0 else v

    def _piece_vector(self, piece: str) -> np.ndarray | None:
        for form in (piece, piece.capitalize(), piece.lower()):
            v = self.entries.get(form)
            if v is not None:
                return v
        return None


def _char_ngrams(word: str, n: int) -> Iterable[str]:
    return (word[i : i + n] for i in range(len(word) - n + 1))


def _segment(word: str, kb: "KnowledgeBase") -> list[str]:
    """Greedy left-to-right longest-match split of ``word`` into dictionary words.

    Characters that start no dictionary word are skipped one at a time, so a
    partial segmentation still yields pieces.
    """
    lowered = word.lower()
    pieces: list[str] = []
    i = 0
    while i < len(lowered):
        matched = None
        for j in range(len(lowered), i + _MIN_PIECE - 1, -1):
            candidate = lowered[i:j]
            if kb.lookup(candidate) is not None:
                matched = candidate
                i = j
                break
        if matched is None:
            i += 1
        else:
            pieces.append(matched)
    return pieces


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity in [-1, 1]; zero-norm inputs yield 0.0."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def load_vectors(path: str, kb: "KnowledgeBase | None" = None) -> VectorStore:
    """Read a textual vector file: header ``count dimension``, then one word per line."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise FormatError("expected header 'count dimension'", path=path, line=1)
        try:
            count, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError("header fields must be integers", path=path, line=1) from None
        if dim < 1:
            raise FormatError("dimension must be positive", path=path, line=1)

        entries: dict[str, np.ndarray] = {}
        for lineno, raw in enumerate(fh, start=2):
            if not raw.strip():
                continue
            fields = raw.rstrip("\n").split(" ")
            if len(fields) != dim + 1:
                raise FormatError(f"expected {dim + 1} fields, found {len(fields)}", path=path, line=lineno)
            try:
                vec = np.array([float(x) for x in fields[1:]], dtype=float)
            except ValueError:
                raise FormatError("non-numeric vector component", path=path, line=lineno) from None
            if not np.all(np.isfinite(vec)):
                raise FormatError("vector contains NaN or infinity", path=path, line=lineno)
            entries[fields[0]] = vec

    if len(entries) != count:
        raise FormatError(f"header announced {count} vectors, file holds {len(entries)}", path=path)
    return VectorStore(dim, entries, kb=kb)


def mean_pairwise_similarity(units: np.ndarray) -> float:
    """Mean cosine over all unordered pairs of rows; < 2 rows yields 0.0.

    Rows are expected to be unit-normalized (zero rows allowed).
    """
    n = units.shape[0]
    if n < 2:
        return 0.0
    gram = units @ units.T
    iu = np.triu_indices(n, k=1)
    return float(np.sum(gram[iu]) / (n * (n - 1) / 2))


def mean_similarity_to(units: np.ndarray, target: np.ndarray) -> float:
    """Mean cosine of unit rows against one unit target vector; no rows yields 0.0."""
    if units.shape[0] == 0:
        return 0.0
    return float(np.mean(units @ target))

