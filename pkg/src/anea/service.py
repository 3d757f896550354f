"""Local HTTP service backing the coding-book review UI.

Loads a categories document, rescores it against the vector store, and lets
one reviewer (or a small team) move terms, rename labels, and pull excluded
terms into categories.  Every mutation is validated first, applied under a
single writer lock, journaled to an append-only edit log, and answered with
the freshly recomputed scores.  Replaying the log over the pristine initial
state reproduces the current state hash, which is what makes exports
auditable.

Protocol version: anea-review/1 (endpoints documented in docs/service_protocol.md).
"""

from __future__ import annotations

import hashlib
import json
import threading
from copy import deepcopy
from dataclasses import dataclass, field
from typing import Sequence

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from anea import catfile
from anea.categorizer import EntityCategory, score_category
from anea.embeddings import VectorStore

PROTOCOL = "anea-review/1"

_DISPLAY_DECIMALS = 4


def _display(value: float) -> str:
    return f"{value:.{_DISPLAY_DECIMALS}f}"


@dataclass
class ReviewState:
    categories: dict[str, EntityCategory]
    order: list[str]
    unassigned: list[str]
    edit_log: list[dict] = field(default_factory=list)

    @classmethod
    def from_document(cls, categories: Sequence[EntityCategory], exclusions: Sequence[str], store: VectorStore) -> "ReviewState":
        cats: dict[str, EntityCategory] = {}
        order: list[str] = []
        for i, cat in enumerate(categories, start=1):
            cid = f"c{i}"
            score_category(cat, store)
            cats[cid] = cat
            order.append(cid)
        return cls(cats, order, sorted(exclusions))

    def state_hash(self) -> str:
        payload = {
            "categories": [
                {
                    "id": cid,
                    "label": self.categories[cid].label,
                    "terms": self.categories[cid].sorted_terms(),
                    "quality": self.categories[cid].quality,
                    "term_similarity": self.categories[cid].term_similarity,
                    "label_similarity": self.categories[cid].label_similarity,
                    "avg_label_distance": self.categories[cid].avg_label_distance,
                }
                for cid in self.order
            ],
            "unassigned": sorted(self.unassigned),
        }
        blob = json.dumps(payload, ensure_ascii=False, sort_keys=True)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class MoveRequest(BaseModel):
    term: str
    from_id: str
    to_id: str


class RenameRequest(BaseModel):
    category_id: str
    label: str


class AssignRequest(BaseModel):
    term: str
    to_id: str


class ReplayRequest(BaseModel):
    edit_log: list[dict]


class ReviewService:
    """Holds the live state; all mutations funnel through one lock."""

    def __init__(self, categories: Sequence[EntityCategory], exclusions: Sequence[str], store: VectorStore):
        self.store = store
        self.state = ReviewState.from_document(list(categories), exclusions, store)
        self._pristine = deepcopy(self.state)
        self._lock = threading.Lock()

    # -- payloads -----------------------------------------------------------

    def category_payload(self, cid: str) -> dict:
        c = self.state.categories[cid]
        return {
            "id": cid,
            "label": c.label,
            "terms": c.sorted_terms(),
            "size": c.size,
            "quality": c.quality,
            "term_similarity": c.term_similarity,
            "label_similarity": c.label_similarity,
            "combined_similarity": c.combined_similarity,
            "avg_label_distance": c.avg_label_distance,
            "display": {
                "quality": _display(c.quality),
                "term_similarity": _display(c.term_similarity),
                "label_similarity": _display(c.label_similarity),
            },
        }

    def state_payload(self) -> dict:
        with self._lock:
            return {
                "protocol": PROTOCOL,
                "state_hash": self.state.state_hash(),
                "categories": [self.category_payload(cid) for cid in self.state.order],
                "unassigned": list(self.state.unassigned),
            }

    def categories_payload(self) -> list[dict]:
        with self._lock:
            return [self.category_payload(cid) for cid in self.state.order]

    def unassigned_payload(self) -> dict:
        with self._lock:
            return {"unassigned": list(self.state.unassigned)}

    # -- mutations ----------------------------------------------------------

    def _require_category(self, state: ReviewState, cid: str) -> EntityCategory:
        cat = state.categories.get(cid)
        if cat is None:
            raise HTTPException(status_code=404, detail=f"unknown category id {cid!r}")
        return cat

    def _apply(self, state: ReviewState, op: dict) -> list[str]:
        """Validate and apply one edit; returns the ids to rescore/report."""
        kind = op.get("op")
        if kind == "move":
            src = self._require_category(state, op["from_id"])
            dst = self._require_category(state, op["to_id"])
            term = op["term"]
            if op["from_id"] == op["to_id"]:
                raise HTTPException(status_code=400, detail="source and target category are identical")
            if term not in src.terms:
                raise HTTPException(status_code=404, detail=f"term {term!r} not in category {op['from_id']!r}")
            src.terms.discard(term)
            dst.terms.add(term)
            touched = [op["from_id"], op["to_id"]]
        elif kind == "rename":
            cat = self._require_category(state, op["category_id"])
            label = op["label"].strip()
            if not label:
                raise HTTPException(status_code=400, detail="label must be non-empty")
            cat.label = label
            touched = [op["category_id"]]
        elif kind == "assign":
            dst = self._require_category(state, op["to_id"])
            term = op["term"]
            if term not in state.unassigned:
                raise HTTPException(status_code=404, detail=f"term {term!r} is not unassigned")
            state.unassigned.remove(term)
            dst.terms.add(term)
            touched = [op["to_id"]]
        else:
            raise HTTPException(status_code=400, detail=f"unknown op {kind!r}")
        for cid in touched:
            score_category(state.categories[cid], self.store)
        return touched

    def mutate(self, op: dict) -> dict:
        with self._lock:
            touched = self._apply(self.state, op)
            entry = dict(op, seq=len(self.state.edit_log) + 1)
            self.state.edit_log.append(entry)
            return {
                "state_hash": self.state.state_hash(),
                "categories": [self.category_payload(cid) for cid in touched],
                "unassigned": list(self.state.unassigned),
            }

    def replay(self, edit_log: list[dict]) -> str:
        """Hash of the state reached by running ``edit_log`` over the pristine state."""
        state = deepcopy(self._pristine)
        for op in edit_log:
            self._apply(state, op)
        return state.state_hash()

    def export_payload(self) -> dict:
        with self._lock:
            doc = catfile.document(
                [self.state.categories[cid] for cid in self.state.order],
                exclusions=self.state.unassigned,
            )
            return {
                "protocol": PROTOCOL,
                "document": doc,
                "state_hash": self.state.state_hash(),
                "edit_log": list(self.state.edit_log),
            }


def create_app(service: ReviewService) -> FastAPI:
    app = FastAPI(title="anea review service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/api/state")
    def get_state() -> dict:
        return service.state_payload()

    @app.get("/api/categories")
    def get_categories() -> list[dict]:
        return service.categories_payload()

    @app.get("/api/unassigned")
    def get_unassigned() -> dict:
        return service.unassigned_payload()

    @app.post("/api/move")
    def post_move(req: MoveRequest) -> dict:
        return service.mutate({"op": "move", "term": req.term, "from_id": req.from_id, "to_id": req.to_id})

    @app.post("/api/rename")
    def post_rename(req: RenameRequest) -> dict:
        return service.mutate({"op": "rename", "category_id": req.category_id, "label": req.label})

    @app.post("/api/assign")
    def post_assign(req: AssignRequest) -> dict:
        return service.mutate({"op": "assign", "term": req.term, "to_id": req.to_id})

    @app.get("/api/export")
    def get_export() -> dict:
        return service.export_payload()

    @app.post("/api/replay")
    def post_replay(req: ReplayRequest) -> dict:
        return {"state_hash": service.replay(req.edit_log)}

    return app


def load_service(categories_path: str, store: VectorStore) -> ReviewService:
    categories, exclusions, _ = catfile.read(categories_path)
    return ReviewService(categories, exclusions, store)
