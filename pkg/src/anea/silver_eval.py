"""Silver datasets from assessor sheets, and scoring against them.

Assessors rate, per produced category, how related its terms are to each
other (0-9) and how well the label describes them (0-9).  Summing those
ratings over every co-rated term pair and normalizing by co-occurrence turns
many subjective sheets into two score matrices.  Thresholding the term-term
matrix and taking connected components of the surviving edges yields the
silver categories used to rank approaches and configurations.

Sheet files are plain text blocks, one category per block:

    approach,Z,assessor,label,label_score,term_score
    term one
    term two
    ...
    <blank line>

``label`` and ``label_score`` stay empty for label-less approaches.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from anea.errors import FormatError

# A usable relatedness threshold sits above the midpoint of the 0-9 scale but
# below its maximum.
THRESHOLD_BINS = (6, 7, 8)

MIN_SILVER_SIZE = 5

# A label needs at least this many rated terms in a group to be considered.
MIN_LABEL_COVERAGE = 2


@dataclass
class AssessedCategory:
    terms: list[str]
    cross_term_score: int
    label: str = ""
    label_score: int | None = None


@dataclass
class AssessmentSheet:
    approach: str
    configuration: str
    assessor: str
    categories: list[AssessedCategory] = field(default_factory=list)


@dataclass
class ScoreMatrices:
    """Normalized relatedness: term pair -> score and (label, term) -> score."""

    term_term: dict[tuple[str, str], float]
    label_term: dict[tuple[str, str], float]
    pair_counts: dict[tuple[str, str], int]
    label_counts: dict[tuple[str, str], int]

    def term_score(self, a: str, b: str) -> float | None:
        return self.term_term.get((min(a, b), max(a, b)))

    def label_score(self, label: str, term: str) -> float | None:
        return self.label_term.get((label, term))

    def terms(self) -> list[str]:
        seen = set()
        for a, b in self.term_term:
            seen.add(a)
            seen.add(b)
        return sorted(seen)


@dataclass
class Metrics:
    category_count: int
    annotated_terms: int
    mean_size: float
    term_score: float | None
    label_score: float | None
    average_score: float | None

    def as_dict(self) -> dict:
        return {
            "categories": self.category_count,
            "annotated_terms": self.annotated_terms,
            "mean_size": self.mean_size,
            "term_score": self.term_score,
            "label_score": self.label_score,
            "average_score": self.average_score,
        }


def _check_score(value: str, path: str | None, line: int) -> int:
    try:
        score = int(value)
    except ValueError:
        raise FormatError(f"score is not an integer: {value!r}", path=path, line=line) from None
    if not 0 <= score <= 9:
        raise FormatError(f"score outside 0..9: {score}", path=path, line=line)
    return score


def parse_sheet_text(text: str, path: str | None = None) -> list[AssessmentSheet]:
    """Parse one sheets file; blocks with the same (approach, Z, assessor) join one sheet."""
    sheets: dict[tuple[str, str, str], AssessmentSheet] = {}
    block_header: list[str] | None = None
    block_terms: list[str] = []
    header_line = 0

    def close_block(line_no: int) -> None:
        nonlocal block_header, block_terms
        if block_header is None:
            return
        if not block_terms:
            raise FormatError("category block lists no terms", path=path, line=header_line)
        approach, config, assessor, label, label_score_raw, term_score_raw = block_header
        cross = _check_score(term_score_raw, path, header_line)
        label_score = _check_score(label_score_raw, path, header_line) if label_score_raw.strip() else None
        if label and label_score is None:
            raise FormatError("label given without a label score", path=path, line=header_line)
        key = (approach, config, assessor)
        sheet = sheets.setdefault(key, AssessmentSheet(approach, config, assessor))
        sheet.categories.append(AssessedCategory(block_terms, cross, label, label_score))
        block_header = None
        block_terms = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            close_block(line_no)
            continue
        if block_header is None:
            fields = next(csv.reader(io.StringIO(line)))
            if len(fields) != 6:
                raise FormatError(f"expected 6 header fields, found {len(fields)}", path=path, line=line_no)
            block_header = [f.strip() for f in fields]
            header_line = line_no
        else:
            block_terms.append(line)
    close_block(line_no + 1 if text else 1)
    return [sheets[k] for k in sorted(sheets)]


def load_sheets(directory: str) -> list[AssessmentSheet]:
    sheets: list[AssessmentSheet] = []
    paths = sorted(Path(directory).glob("*.csv")) + sorted(Path(directory).glob("*.txt"))
    if not paths:
        raise FormatError("no sheet files (*.csv, *.txt) found", path=directory)
    for p in paths:
        sheets.extend(parse_sheet_text(p.read_text(encoding="utf-8"), path=str(p)))
    return sheets


def build_matrices(sheets: Sequence[AssessmentSheet]) -> ScoreMatrices:
    """Sum scores over every co-rated pair, then normalize by co-occurrence."""
    if not sheets:
        raise ValueError("at least one assessment sheet required")
    pair_sum: dict[tuple[str, str], int] = {}
    pair_cnt: dict[tuple[str, str], int] = {}
    label_sum: dict[tuple[str, str], int] = {}
    label_cnt: dict[tuple[str, str], int] = {}
    for sheet in sheets:
        for cat in sheet.categories:
            unique_terms = sorted(set(cat.terms))
            for i, a in enumerate(unique_terms):
                for b in unique_terms[i + 1 :]:
                    key = (a, b)
                    pair_sum[key] = pair_sum.get(key, 0) + cat.cross_term_score
                    pair_cnt[key] = pair_cnt.get(key, 0) + 1
            if cat.label and cat.label_score is not None:
                for t in unique_terms:
                    key = (cat.label, t)
                    label_sum[key] = label_sum.get(key, 0) + cat.label_score
                    label_cnt[key] = label_cnt.get(key, 0) + 1
    term_term = {k: pair_sum[k] / pair_cnt[k] for k in pair_sum}
    label_term = {k: label_sum[k] / label_cnt[k] for k in label_sum}
    return ScoreMatrices(term_term, label_term, pair_cnt, label_cnt)


def score_histogram(sheets: Sequence[AssessmentSheet]) -> Counter:
    """Every raw score an assessor assigned, cross-term and label alike."""
    counts: Counter = Counter()
    for sheet in sheets:
        for cat in sheet.categories:
            counts[cat.cross_term_score] += 1
            if cat.label_score is not None:
                counts[cat.label_score] += 1
    return counts


def select_threshold(histogram: Counter) -> float:
    """Pick the relatedness threshold from the score histogram.

    Only the bins 6-8 qualify.  The most frequent of them wins (ties go up);
    when the score one below the winner was used exactly one time less, the
    threshold becomes the mean of the two, provided that neighbor also lies
    in the qualifying range.
    """
    if not histogram:
        raise ValueError("empty score histogram")
    best = max(THRESHOLD_BINS, key=lambda b: (histogram.get(b, 0), b))
    below = best - 1
    if below in THRESHOLD_BINS:
        below_count = histogram.get(below, 0)
        if below_count > 0 and histogram.get(best, 0) - below_count == 1:
            return (best + below) / 2
    return float(best)


def build_silver(matrices: ScoreMatrices, threshold: float) -> list[tuple[str, list[str]]]:
    """Silver categories: big-enough components of the thresholded term graph.

    Returns (label, terms) pairs; the label is the best-covering rated label
    or the empty string.  Output order: larger groups first, then by first
    term.
    """
    terms = matrices.terms()
    index = {t: i for i, t in enumerate(terms)}
    parent = list(range(len(terms)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for (a, b), score in matrices.term_term.items():
        if score >= threshold:
            union(index[a], index[b])

    groups: dict[int, list[str]] = {}
    for t in terms:
        groups.setdefault(find(index[t]), []).append(t)
    components = [sorted(g) for g in groups.values() if len(g) >= MIN_SILVER_SIZE]
    components.sort(key=lambda g: (-len(g), g[0]))
    return [(assign_label(matrices, g), g) for g in components]


def assign_label(matrices: ScoreMatrices, group: Sequence[str]) -> str:
    """Best label over the group: max mean rated score among labels covering >= 2 terms."""
    group_set = set(group)
    coverage: dict[str, list[float]] = {}
    for (label, term), score in matrices.label_term.items():
        if term in group_set:
            coverage.setdefault(label, []).append(score)
    best_label = ""
    best_key: tuple | None = None
    for label in sorted(coverage):
        scores = coverage[label]
        if len(scores) < MIN_LABEL_COVERAGE:
            continue
        key = (-(sum(scores) / len(scores)), label)
        if best_key is None or key < best_key:
            best_key = key
            best_label = label
    return best_label


def evaluate(categories: Sequence[tuple[str, Iterable[str]]], matrices: ScoreMatrices) -> Metrics:
    """Score a categorization against the normalized matrices.

    ``categories`` are (label, terms) pairs; the label may be empty.  Pairs
    or label-term combinations never rated together are skipped rather than
    counted as zero.  The average score blends term and label scores, or
    equals the term score when no category carries a label.
    """
    cat_list = [(label, sorted(set(terms))) for label, terms in categories]
    term_means: list[float] = []
    label_means: list[float] = []
    total_terms = 0
    for label, terms in cat_list:
        total_terms += len(terms)
        pair_scores = []
        for i, a in enumerate(terms):
            for b in terms[i + 1 :]:
                s = matrices.term_score(a, b)
                if s is not None:
                    pair_scores.append(s)
        if pair_scores:
            term_means.append(sum(pair_scores) / len(pair_scores))
        if label:
            label_scores = [s for s in (matrices.label_score(label, t) for t in terms) if s is not None]
            if label_scores:
                label_means.append(sum(label_scores) / len(label_scores))

    n = len(cat_list)
    ts = sum(term_means) / len(term_means) if term_means else None
    ls = sum(label_means) / len(label_means) if label_means else None
    if ts is None:
        avg = None
    elif ls is None:
        avg = ts
    else:
        avg = (ts + ls) / 2
    return Metrics(
        category_count=n,
        annotated_terms=total_terms,
        mean_size=total_terms / n if n else 0.0,
        term_score=ts,
        label_score=ls,
        average_score=avg,
    )
