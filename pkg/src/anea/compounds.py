"""Head resolution for German compound nouns.

A compound's head is the final constituent that carries the core meaning
("Motor" in "Sechszylindermotor").  Rare compounds usually have no dictionary
page of their own while the head does, so the head becomes the link into the
knowledge base.  The splitter here is deterministic: it returns the longest
dictionary-known suffix, optionally discarding one German linking element
(Fugenelement) at the split point.
"""

from __future__ import annotations

from anea.kb import KnowledgeBase

# Standard German linking elements, longest-first so "nen" beats "n".
LINKING_ELEMENTS = ("nen", "en", "es", "er", "e", "n", "s")

# Suffix candidates shorter than this produce spurious heads ("-er").
_MIN_HEAD = 3


def split_head(term: str, kb: KnowledgeBase) -> str | None:
    """Resolve the dictionary-backed head of ``term``, or None.

    A term that has its own KB page is its own head.  Otherwise candidate
    suffixes are tested longest-first; at every split point the plain suffix
    is tried before the variant with one linking element removed.  The
    returned string is the KB headword (canonical casing).
    """
    if not term:
        return None
    full = kb.lookup(term)
    if full is not None:
        return full.headword

    candidates: list[tuple[int, int, str]] = []
    for start in range(1, len(term)):
        suffix = term[start:]
        if len(suffix) >= _MIN_HEAD:
            candidates.append((len(suffix), 0, suffix))
        for link in LINKING_ELEMENTS:
            if suffix.startswith(link):
                stripped = suffix[len(link):]
                if len(stripped) >= _MIN_HEAD:
                    candidates.append((len(stripped), 1, stripped))
    # Longest suffix first; plain beats link-stripped at equal length.
    candidates.sort(key=lambda c: (-c[0], c[1], c[2]))

    seen: set[str] = set()
    for _, _, candidate in candidates:
        if candidate in seen:
            continue
        seen.add(candidate)
        entry = kb.lookup(candidate)
        if entry is not None:
            return entry.headword
    return None
