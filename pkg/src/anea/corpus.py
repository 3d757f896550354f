"""Term extraction, term import, and selection of the terms-to-annotate (TTA).

A *term* is a unique, digit-free noun phrase.  Without a POS tagger the
built-in extractor leans on German orthography: nouns are capitalized, so any
capitalized token that is not a function word counts.  Externally tagged noun
phrases can be imported instead via the ``surface,frequency`` CSV path, which
is the higher-fidelity route.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from anea.errors import ConfigError, CorpusError, FormatError

_TOKEN_RE = re.compile(r"\w+", re.UNICODE)


def _contains_digit(text: str) -> bool:
    # str.isdigit also catches superscripts and other unicode digit forms
    # that \d misses.
    return any(ch.isdigit() for ch in text)

# German function words that are capitalized sentence-initially (or always,
# like polite pronouns) and must not be mistaken for nouns.
GERMAN_FUNCTION_WORDS = frozenset(
    """
    aber alle allem allen aller alles als also am an andere anderen auch auf
    aus bei beim bevor bin bis bist da dabei dadurch dafür damit danach dann
    das dass dein deine dem den denn der deren des deshalb dessen die dies
    diese diesem diesen dieser dieses doch dort du durch ein eine einem einen
    einer eines einige er es etwas euer eure für gegen gibt hab habe haben
    hat hatte hatten hier hinter ich ihm ihn ihnen ihr ihre im in ins ist ja
    jede jedem jeden jeder jedes jene jetzt kann kein keine können könnte man
    mehr mein meine mit muss musste nach nachdem neben nein nicht noch nun
    nur ob oder ohne schon sehr sei sein seine seit sich sie sind so sobald
    soll sollte sondern sowie über um und uns unser unter vom von vor wann
    war waren warum was weil wenn wer werden wie wieder wir wird wo wurde
    wurden während zu zum zur zwar zwischen
    """.split()
)


@dataclass
class Term:
    """A unique noun phrase with its corpus frequency and resolution state."""

    surface: str
    lemma: str = ""
    corpus_frequency: int = 1
    head: str | None = None
    kb_link: str | None = None

    def __post_init__(self) -> None:
        if not self.surface:
            raise ValueError("term surface must be non-empty")
        if _contains_digit(self.surface):
            raise ValueError(f"term surface must not contain digits: {self.surface!r}")
        if self.corpus_frequency < 1:
            raise ValueError("corpus frequency must be >= 1")
        if not self.lemma:
            self.lemma = self.surface


class TermTable:
    """Unique terms keyed by surface; mergeable so extraction can fan out."""

    def __init__(self) -> None:
        self._terms: dict[str, Term] = {}

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, surface: str) -> bool:
        return surface in self._terms

    def get(self, surface: str) -> Term | None:
        return self._terms.get(surface)

    def add(self, surface: str, frequency: int = 1) -> Term:
        term = self._terms.get(surface)
        if term is None:
            term = Term(surface, corpus_frequency=frequency)
            self._terms[surface] = term
        else:
            term.corpus_frequency += frequency
        return term

    def merge(self, other: "TermTable") -> "TermTable":
        for term in other.terms():
            self.add(term.surface, term.corpus_frequency)
        return self

    def terms(self) -> list[Term]:
        return [self._terms[k] for k in sorted(self._terms)]


Extractor = Callable[[str], Iterable[str]]


def capitalized_noun_heuristic(text: str) -> Iterable[str]:
    """Yield every token occurrence that looks like a German noun.

    Capitalized first letter, no digits, not a function word, at least two
    characters.  Yields one item per occurrence so the caller can count.
    """
    for token in _TOKEN_RE.findall(text):
        if len(token) < 2 or not token[0].isupper():
            continue
        if _contains_digit(token):
            continue
        if token.lower() in GERMAN_FUNCTION_WORDS:
            continue
        yield token


def extract_terms(documents: Sequence[str], extractor: Extractor = capitalized_noun_heuristic) -> TermTable:
    """Count unique term surfaces over all documents (case-sensitive)."""
    if not documents:
        raise CorpusError("empty corpus: no documents to extract terms from")
    table = TermTable()
    for doc in documents:
        local = TermTable()
        for surface in extractor(doc):
            local.add(surface)
        table.merge(local)
    if len(table) == 0:
        raise CorpusError("no terms: extractor produced nothing over the corpus")
    return table


def import_terms(path: str) -> tuple[TermTable, int]:
    """Read the ``surface,frequency`` CSV; returns (table, skipped_row_count).

    Rows whose surface contains a digit are skipped and counted rather than
    failing the whole file.  Duplicate surfaces sum their frequencies.
    """
    table = TermTable()
    skipped = 0
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError("file is empty", path=path) from None
        if [h.strip() for h in header] != ["surface", "frequency"]:
            raise FormatError("expected header 'surface,frequency'", path=path, line=1)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise FormatError(f"expected 2 fields, found {len(row)}", path=path, line=lineno)
            surface = row[0].strip()
            try:
                frequency = int(row[1])
            except ValueError:
                raise FormatError(f"frequency is not an integer: {row[1]!r}", path=path, line=lineno) from None
            if not surface:
                raise FormatError("empty surface", path=path, line=lineno)
            if frequency < 1:
                raise FormatError("frequency must be >= 1", path=path, line=lineno)
            if _contains_digit(surface):
                skipped += 1
                continue
            table.add(surface, frequency)
    if len(table) == 0:
        raise CorpusError(f"no terms: {path} holds no digit-free rows")
    return table, skipped


def write_terms(table: TermTable, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["surface", "frequency"])
        for term in table.terms():
            writer.writerow([term.surface, term.corpus_frequency])


@dataclass
class HeadGroup:
    """All terms sharing one resolved head."""

    head: str
    members: list[Term]
    unique_term_count: int = field(init=False)
    total_frequency: int = field(init=False)

    def __post_init__(self) -> None:
        # Highest-frequency members first; ties resolved by surface.
        self.members = sorted(self.members, key=lambda t: (-t.corpus_frequency, t.surface))
        self.unique_term_count = len(self.members)
        self.total_frequency = sum(t.corpus_frequency for t in self.members)


def group_by_head(table: TermTable) -> list[HeadGroup]:
    """Group head-resolved terms; sorted by (unique terms, total frequency, head).

    Terms whose head is unresolved (None) belong to no group; they are
    excluded from annotation downstream.
    """
    buckets: dict[str, list[Term]] = {}
    for term in table.terms():
        if term.head is not None:
            buckets.setdefault(term.head, []).append(term)
    groups = [HeadGroup(head, members) for head, members in buckets.items()]
    groups.sort(key=lambda g: (-g.unique_term_count, -g.total_frequency, g.head))
    return groups


@dataclass(frozen=True)
class SelectionConfig:
    """How many terms-to-annotate to keep: a head-group fraction or a count."""

    mode: str
    z: int | None = None
    y: int | None = None

    @classmethod
    def fraction(cls, z: int) -> "SelectionConfig":
        if z < 2:
            raise ConfigError(f"fraction denominator must be >= 2, got {z}")
        return cls("fraction", z=z)

    @classmethod
    def count(cls, y: int) -> "SelectionConfig":
        if y < 1:
            raise ConfigError(f"term count must be >= 1, got {y}")
        return cls("count", y=y)


def select_tta(table: TermTable, heads: list[HeadGroup], cfg: SelectionConfig) -> list[Term]:
    """Pick the terms-to-annotate by walking head groups in sorted order.

    fraction(z): every member of the top ceil(len(heads) / z) groups.
    count(y): accumulate group members until at least y terms were seen, then
    drop the lowest-frequency members of the last group to land on exactly y
    (or everything, when fewer than y terms exist).
    """
    if cfg.mode == "fraction":
        assert cfg.z is not None
        top = math.ceil(len(heads) / cfg.z)
        selected: list[Term] = []
        for group in heads[:top]:
            selected.extend(group.members)
        return selected
    if cfg.mode == "count":
        assert cfg.y is not None
        selected = []
        for group in heads:
            if len(selected) >= cfg.y:
                break
            remaining = cfg.y - len(selected)
            # Members are sorted frequency-descending, so a truncated tail
            # drops exactly the lowest-frequency terms of this group.
            selected.extend(group.members[:remaining] if len(group.members) > remaining else group.members)
        return selected
    raise ConfigError(f"unknown selection mode {cfg.mode!r}")
