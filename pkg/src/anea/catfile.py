"""Reading and writing the categories document (the coding book on disk).

Versioned JSON.  Every producer (categorizer, baseline, voting, review
service export) emits the same layout so the eval and serve commands accept
any of them interchangeably.  Score floats are rounded to six decimals on
write, which keeps reruns byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Sequence

from anea.categorizer import EntityCategory
from anea.errors import FormatError

FORMAT = "anea-categories/1"

_SCORE_DECIMALS = 6


def _category_payload(c: EntityCategory) -> dict:
    payload = {
        "label": c.label,
        "terms": c.sorted_terms(),
        "quality": round(c.quality, _SCORE_DECIMALS),
        "term_similarity": round(c.term_similarity, _SCORE_DECIMALS),
        "label_similarity": round(c.label_similarity, _SCORE_DECIMALS),
        "combined_similarity": round(c.combined_similarity, _SCORE_DECIMALS),
        "avg_label_distance": round(c.avg_label_distance, _SCORE_DECIMALS),
    }
    if c.provenance:
        payload["provenance"] = list(c.provenance)
    return payload


def document(categories: Sequence[EntityCategory], exclusions: Sequence[str] = (), parameters: dict | None = None) -> dict:
    doc = {
        "format": FORMAT,
        "categories": [_category_payload(c) for c in categories],
        "exclusions": sorted(exclusions),
    }
    if parameters:
        doc["parameters"] = parameters
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def write(path: str, categories: Sequence[EntityCategory], exclusions: Sequence[str] = (), parameters: dict | None = None) -> None:
    Path(path).write_text(dumps(document(categories, exclusions, parameters)), encoding="utf-8")


def _parse_category(obj: dict, path: str | None, idx: int) -> EntityCategory:
    try:
        return EntityCategory(
            label=obj["label"],
            terms=set(obj["terms"]),
            quality=float(obj.get("quality", 0.0)),
            term_similarity=float(obj.get("term_similarity", 0.0)),
            label_similarity=float(obj.get("label_similarity", 0.0)),
            combined_similarity=float(obj.get("combined_similarity", 0.0)),
            avg_label_distance=float(obj.get("avg_label_distance", 1.0)),
            provenance=list(obj.get("provenance", [])),
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"category #{idx} malformed: {exc}", path=path) from None


def read(path: str) -> tuple[list[EntityCategory], list[str], dict]:
    """Returns (categories, exclusions, parameters)."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise FormatError(f"not a {FORMAT} document", path=path)
    categories = [_parse_category(obj, path, i) for i, obj in enumerate(doc.get("categories", []))]
    exclusions = list(doc.get("exclusions", []))
    return categories, exclusions, doc.get("parameters", {})


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()
