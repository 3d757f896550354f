from __future__ import annotations

import pytest

from anea.categorizer import EntityCategory
from anea.ensemble import default_configs, vote
from anea.errors import ConfigError


def _cat(label: str, terms: str | list[str], quality: float = 1.0) -> EntityCategory:
    members = terms.split() if isinstance(terms, str) else list(terms)
    return EntityCategory(label, set(members), quality=quality)


class TestVote:
    def test_pair_in_two_runs_links(self):
        runs = [
            ("za", [_cat("Motorik", "aa bb cc dd ee")]),
            ("zb", [_cat("Motorik", "aa bb cc dd ee")]),
        ]
        voted = vote(runs)
        assert len(voted) == 1
        assert voted[0].terms == {"aa", "bb", "cc", "dd", "ee"}
        assert voted[0].label == "Motorik"
        assert voted[0].provenance == ["za", "zb"]

    def test_pair_in_one_run_not_linked(self):
        runs = [
            ("za", [_cat("Eins", "aa bb cc dd ee")]),
            ("zb", [_cat("Zwei", "ff gg hh ii jj")]),
        ]
        assert vote(runs) == []

    def test_majority_label_wins(self):
        # One component of 6 terms; Haupt describes 16 member slots across
        # the runs, Rand only 2.
        all_six = "aa bb cc dd ee ff"
        runs = [
            ("za", [_cat("Haupt", all_six)]),
            ("zb", [_cat("Haupt", all_six)]),
            ("zc", [_cat("Haupt", "aa bb cc dd"), _cat("Rand", "ee ff")]),
        ]
        voted = vote(runs)
        assert len(voted) == 1
        assert voted[0].terms == set(all_six.split())
        assert voted[0].label == "Haupt"

    def test_coverage_tie_broken_by_mean_quality(self):
        shared = "aa bb cc dd ee"
        runs = [
            ("za", [_cat("Alpha", shared, quality=1.0)]),
            ("zb", [_cat("Beta", shared, quality=9.0)]),
        ]
        voted = vote(runs)
        assert len(voted) == 1
        # Both labels cover all five member slots; Beta's source quality wins.
        assert voted[0].label == "Beta"

    def test_identical_duplicate_runs_reproduce_big_categories(self):
        categories = [_cat("Gross", "aa bb cc dd ee"), _cat("Klein", "xx yy")]
        voted = vote([("za", categories), ("zb", categories)])
        assert [c.terms for c in voted] == [{"aa", "bb", "cc", "dd", "ee"}]

    def test_disjoint_and_floored(self):
        runs = [
            ("za", [_cat("Eins", "aa bb cc dd ee ff"), _cat("Zwei", "gg hh ii jj kk")]),
            ("zb", [_cat("Eins", "aa bb cc dd ee"), _cat("Zwei", "gg hh ii jj kk ff")]),
        ]
        voted = vote(runs)
        seen: set[str] = set()
        for cat in voted:
            assert len(cat.terms) >= 5
            assert not (seen & cat.terms)
            seen.update(cat.terms)

    def test_arity_validation(self):
        single = [("za", [_cat("Eins", "aa bb cc dd ee")])]
        with pytest.raises(ConfigError):
            vote(single)
        with pytest.raises(ConfigError):
            vote(single * 5)


class TestDefaultConfigs:
    def test_published_trend_values(self):
        assert default_configs(713) == (237, 277, 317)
        assert default_configs(328)[1] == 213
        assert default_configs(1)[1] == 158

    def test_clamped_below(self):
        low = default_configs(1)
        assert low == (118, 158, 198)
        assert all(c >= 5 for c in low)

    def test_rejects_zero(self):
        with pytest.raises(ConfigError):
            default_configs(0)
