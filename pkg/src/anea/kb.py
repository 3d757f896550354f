"""Offline knowledge-base adapter.

One JSON object per line, mirroring the useful parts of a dictionary page:
senses (semantic-area tags plus a definition), a hypernym section, and a
hyponym section.  The adapter only ever reads a local dump, which keeps runs
reproducible; see README for how to derive a dump from public exports.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable

from anea.errors import FormatError

DUMP_FORMAT = "anea-kb/1"

# Dependency tags that mark a definition token as a usable hypernym when an
# external dependency tagger is plugged in.
HYPERNYM_DEP_TAGS = frozenset({"ROOT", "oa", "oa2", "app", "cj"})

_TOKEN_RE = re.compile(r"\w+", re.UNICODE)


@dataclass
class Sense:
    area_titles: list[str]
    definition_text: str

    def __post_init__(self) -> None:
        if not self.definition_text:
            raise ValueError("sense requires a non-empty definition text")


@dataclass
class KBEntry:
    headword: str
    senses: list[Sense] = field(default_factory=list)
    section_hypernyms: list[str] = field(default_factory=list)
    section_hyponyms: list[str] = field(default_factory=list)

    def area_titles(self) -> list[str]:
        """All area titles across senses, duplicates preserved."""
        titles: list[str] = []
        for sense in self.senses:
            titles.extend(sense.area_titles)
        return titles


class KnowledgeBase:
    """Read-only index of KB entries with O(1) headword lookup."""

    def __init__(self, entries: dict[str, KBEntry]):
        self._entries = entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(sorted(self._entries))

    def lookup(self, headword: str) -> KBEntry | None:
        """Exact-match lookup, retrying with a capitalized first letter."""
        entry = self._entries.get(headword)
        if entry is None and headword:
            entry = self._entries.get(headword[0].upper() + headword[1:])
        return entry

    def entries(self) -> list[KBEntry]:
        return [self._entries[k] for k in sorted(self._entries)]


def _parse_record(obj: dict, path: str | None, lineno: int) -> KBEntry:
    try:
        headword = obj["headword"]
        senses_raw = obj["senses"]
        hypernyms = list(obj.get("hypernyms", []))
        hyponyms = list(obj.get("hyponyms", []))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"record missing field: {exc}", path=path, line=lineno) from None
    if not isinstance(headword, str) or not headword:
        raise FormatError("headword must be a non-empty string", path=path, line=lineno)
    if any(not h for h in hypernyms) or any(not h for h in hyponyms):
        raise FormatError("empty hypernym/hyponym string", path=path, line=lineno)
    senses = []
    for s in senses_raw:
        try:
            senses.append(Sense(list(s.get("areas", [])), s["definition"]))
        except (KeyError, TypeError, AttributeError):
            raise FormatError("sense requires a 'definition' field", path=path, line=lineno) from None
        except ValueError as exc:
            raise FormatError(str(exc), path=path, line=lineno) from None
    return KBEntry(headword, senses, hypernyms, hyponyms)


def load_dump(path: str) -> KnowledgeBase:
    """Load a JSONL dump; duplicate headwords merge by concatenating senses."""
    entries: dict[str, KBEntry] = {}
    n_records = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON: {exc.msg}", path=path, line=lineno) from None
            entry = _parse_record(obj, path, lineno)
            n_records += 1
            existing = entries.get(entry.headword)
            if existing is None:
                entries[entry.headword] = entry
            else:
                existing.senses.extend(entry.senses)
                for h in entry.section_hypernyms:
                    if h not in existing.section_hypernyms:
                        existing.section_hypernyms.append(h)
                for h in entry.section_hyponyms:
                    if h not in existing.section_hyponyms:
                        existing.section_hyponyms.append(h)
    if n_records == 0:
        raise FormatError("dump contains no records", path=path)
    return KnowledgeBase(entries)


def dump(kb: KnowledgeBase, path: str) -> None:
    """Serialize back to the JSONL dump layout (inverse of load_dump)."""
    with open(path, "w", encoding="utf-8") as fh:
        for entry in kb.entries():
            obj = {
                "headword": entry.headword,
                "senses": [{"areas": s.area_titles, "definition": s.definition_text} for s in entry.senses],
                "hypernyms": entry.section_hypernyms,
                "hyponyms": entry.section_hyponyms,
            }
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")


DepProvider = Callable[[str], Iterable[tuple[str, str]]]


def in_text_hypernyms(entry: KBEntry, kb: KnowledgeBase, dep_provider: DepProvider | None = None) -> list[str]:
    """Hypernym candidates mined from an entry's definition texts.

    With a dependency provider, tokens carrying one of the accepted tags are
    used; otherwise any capitalized token qualifies.  Either way a candidate
    must resolve to a KB page, and the entry's own headword is skipped.
    Order follows first occurrence; duplicates are dropped.
    """
    found: list[str] = []
    seen: set[str] = set()
    for sense in entry.senses:
        if dep_provider is not None:
            candidates = [tok for tok, tag in dep_provider(sense.definition_text) if tag in HYPERNYM_DEP_TAGS]
        else:
            candidates = [t for t in _TOKEN_RE.findall(sense.definition_text) if t[:1].isupper()]
        for token in candidates:
            resolved = kb.lookup(token)
            if resolved is None or resolved.headword == entry.headword:
                continue
            if resolved.headword not in seen:
                seen.add(resolved.headword)
                found.append(resolved.headword)
    return found
