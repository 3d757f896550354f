from __future__ import annotations

import json

import numpy as np
import pytest

from anea.embeddings import VectorStore
from anea.kb import KBEntry, KnowledgeBase, Sense


def kb_from(*entries: KBEntry) -> KnowledgeBase:
    return KnowledgeBase({e.headword: e for e in entries})


def entry(headword: str, hypernyms=(), hyponyms=(), definition: str = "", areas=()) -> KBEntry:
    senses = [Sense(list(areas), definition or f"{headword}: ein Begriff.")]
    return KBEntry(headword, senses, list(hypernyms), list(hyponyms))


def store_from(dimension: int, **words) -> VectorStore:
    entries = {w: np.array(v, dtype=float) for w, v in words.items()}
    return VectorStore(dimension, entries)


def write_kb_dump(path, records: list[dict]) -> str:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    return str(path)


def write_vector_file(path, dimension: int, words: dict) -> str:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(words)} {dimension}\n")
        for word, vec in words.items():
            fh.write(word + " " + " ".join(repr(float(x)) for x in vec) + "\n")
    return str(path)


@pytest.fixture
def tiny_kb() -> KnowledgeBase:
    return kb_from(
        entry("Motor", hypernyms=["Maschine"], definition="Technik: Maschine, die Energie umwandelt.", areas=["Technik"]),
        entry("Maschine", hypernyms=["Gerät"], definition="mechanische Vorrichtung.", areas=["Technik"]),
        entry("Gerät", definition="ein Gegenstand."),
        entry("Pumpe", hypernyms=["Maschine"], definition="Maschine zum Fördern.", areas=["Technik"]),
        entry("Zylinder", definition="Technik: Bauteil eines Motors.", areas=["Technik"]),
        entry("Werkzeug", hyponyms=["Hammer"], definition="Hilfsmittel für Arbeiten."),
        entry("Hammer", hypernyms=["Werkzeug"], definition="Werkzeug zum Schlagen."),
    )
