"""Voting across input configurations, plus the default-configuration rule."""

from __future__ import annotations

from typing import Sequence

from anea.categorizer import EntityCategory
from anea.errors import ConfigError

MIN_VOTED_SIZE = 5

# Terms must share a category in at least this many input runs to stay linked.
MIN_CO_OCCURRENCE = 2

# TTA counts derived from the unique-head count x: the anchor plus an offset
# on each side, never below the minimum category size.
DEFAULT_BASE = 158
DEFAULT_SLOPE = 0.167
DEFAULT_SPREAD = 40


def vote(runs: Sequence[tuple[str, Sequence[EntityCategory]]]) -> list[EntityCategory]:
    """Merge 2-4 categorization runs into consensus categories.

    Two terms stay together when some category contains both in at least two
    runs.  Connected components of those pairs that reach the minimum size
    become voted categories; each is labeled by the label covering most of
    its terms across the source categories (ties: higher mean quality, then
    lexicographic).  Provenance records the contributing run ids.
    """
    if not 2 <= len(runs) <= 4:
        raise ConfigError(f"voting requires 2..4 runs, got {len(runs)}")

    pair_runs: dict[tuple[str, str], set[str]] = {}
    terms: set[str] = set()
    for run_id, categories in runs:
        for cat in categories:
            members = sorted(cat.terms)
            terms.update(members)
            for i, a in enumerate(members):
                for b in members[i + 1 :]:
                    pair_runs.setdefault((a, b), set()).add(run_id)

    ordered = sorted(terms)
    index = {t: i for i, t in enumerate(ordered)}
    parent = list(range(len(ordered)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (a, b), run_ids in sorted(pair_runs.items()):
        if len(run_ids) >= MIN_CO_OCCURRENCE:
            ra, rb = find(index[a]), find(index[b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    groups: dict[int, list[str]] = {}
    for t in ordered:
        groups.setdefault(find(index[t]), []).append(t)
    components = [sorted(g) for g in groups.values() if len(g) >= MIN_VOTED_SIZE]
    components.sort(key=lambda g: (-len(g), g[0]))

    voted = []
    for component in components:
        member_set = set(component)
        label_cover: dict[str, int] = {}
        label_quality: dict[str, list[float]] = {}
        contributing: set[str] = set()
        for run_id, categories in runs:
            for cat in categories:
                covered = len(member_set & cat.terms)
                if covered == 0:
                    continue
                contributing.add(run_id)
                if not cat.label:
                    continue
                label_cover[cat.label] = label_cover.get(cat.label, 0) + covered
                label_quality.setdefault(cat.label, []).append(cat.quality)
        label = ""
        if label_cover:
            label = min(
                label_cover,
                key=lambda l: (-label_cover[l], -(sum(label_quality[l]) / len(label_quality[l])), l),
            )
        voted.append(EntityCategory(label=label, terms=member_set, provenance=sorted(contributing)))
    return voted


def default_configs(unique_head_count: int) -> tuple[int, int, int]:
    """The three TTA counts recommended for voting, from the head count alone."""
    if unique_head_count < 1:
        raise ConfigError(f"unique head count must be >= 1, got {unique_head_count}")
    anchor = round(DEFAULT_BASE + DEFAULT_SLOPE * unique_head_count)
    counts = (anchor - DEFAULT_SPREAD, anchor, anchor + DEFAULT_SPREAD)
    return tuple(max(c, MIN_VOTED_SIZE) for c in counts)  # type: ignore[return-value]
