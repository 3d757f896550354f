from __future__ import annotations

import random
from collections import Counter

import pytest

from anea.errors import FormatError
from anea.silver_eval import (
    AssessedCategory,
    AssessmentSheet,
    ScoreMatrices,
    build_matrices,
    build_silver,
    evaluate,
    load_sheets,
    parse_sheet_text,
    score_histogram,
    select_threshold,
)
from oracles import brute_force_components


def _sheet(assessor: str, *cats: AssessedCategory) -> AssessmentSheet:
    return AssessmentSheet("anea", "z3", assessor, list(cats))


class TestParsing:
    SHEET = (
        "anea,z3,pa,Maschine,7,8\n"
        "Motor\n"
        "Pumpe\n"
        "Turbine\n"
        "\n"
        "hc,z3,pa,,,6\n"
        "Ventil\n"
        "Dichtung\n"
    )

    def test_blocks_grouped_by_identity(self):
        sheets = parse_sheet_text(self.SHEET)
        assert [(s.approach, s.configuration, s.assessor) for s in sheets] == [("anea", "z3", "pa"), ("hc", "z3", "pa")]
        first = sheets[0].categories[0]
        assert (first.label, first.label_score, first.cross_term_score) == ("Maschine", 7, 8)
        assert sheets[1].categories[0].label == ""

    def test_score_out_of_range_rejected(self):
        with pytest.raises(FormatError):
            parse_sheet_text("anea,z3,pa,Maschine,7,12\nMotor\n")

    def test_directory_loader(self, tmp_path):
        (tmp_path / "a.csv").write_text(self.SHEET, encoding="utf-8")
        sheets = load_sheets(str(tmp_path))
        assert len(sheets) == 2
        with pytest.raises(FormatError):
            load_sheets(str(tmp_path / "missing"))


class TestBuildMatrices:
    def test_pair_scores_averaged(self):
        sheets = [
            _sheet("pa", AssessedCategory(["a", "b"], 8)),
            _sheet("pb", AssessedCategory(["a", "b"], 6)),
        ]
        matrices = build_matrices(sheets)
        assert matrices.term_score("a", "b") == 7.0
        assert matrices.term_score("b", "a") == 7.0

    def test_unrated_pair_absent(self):
        matrices = build_matrices([_sheet("pa", AssessedCategory(["a", "b"], 8))])
        assert matrices.term_score("a", "c") is None

    def test_label_score_single_application(self):
        matrices = build_matrices([_sheet("pa", AssessedCategory(["t"], 3, label="L", label_score=5))])
        assert matrices.label_score("L", "t") == 5.0

    def test_symmetric_under_category_permutation(self):
        cats = [AssessedCategory(["a", "b", "c"], 7), AssessedCategory(["c", "d"], 4, label="L", label_score=6)]
        forward = build_matrices([_sheet("pa", *cats)])
        backward = build_matrices([_sheet("pa", *reversed(cats))])
        assert forward.term_term == backward.term_term
        assert forward.label_term == backward.label_term


class TestSelectThreshold:
    def test_plain_mode(self):
        assert select_threshold(Counter({6: 10, 7: 25, 8: 12})) == 7.0

    def test_neighbor_one_less_averages(self):
        assert select_threshold(Counter({6: 24, 7: 25})) == 6.5

    def test_all_mass_at_eight(self):
        assert select_threshold(Counter({8: 31})) == 8.0
        assert select_threshold(Counter({8: 1})) == 8.0

    def test_tie_takes_higher_bin(self):
        assert select_threshold(Counter({6: 10, 7: 10, 8: 3})) == 7.0

    def test_below_six_never_averaged(self):
        # Winner 6 has no qualifying neighbor below.
        assert select_threshold(Counter({5: 9, 6: 10, 7: 2})) == 6.0

    def test_histogram_includes_label_scores(self):
        sheets = [_sheet("pa", AssessedCategory(["a", "b"], 7, label="L", label_score=6))]
        assert score_histogram(sheets) == Counter({7: 1, 6: 1})


def _matrices(pairs: dict[tuple[str, str], float], labels: dict[tuple[str, str], float] | None = None) -> ScoreMatrices:
    canon = {(min(a, b), max(a, b)): v for (a, b), v in pairs.items()}
    return ScoreMatrices(canon, labels or {}, {k: 1 for k in canon}, {k: 1 for k in (labels or {})})


class TestBuildSilver:
    def test_chained_component_reaches_five(self):
        # Oracle: brute-force connected components over the thresholded matrix.
        pairs = {
            ("a", "b"): 7.5,
            ("b", "c"): 7.2,
            ("c", "d"): 7.1,
            ("d", "e"): 9.0,
            ("e", "f"): 3.0,
        }
        matrices = _matrices(pairs)
        got = build_silver(matrices, threshold=7.0)
        assert [terms for _, terms in got] == [["a", "b", "c", "d", "e"]]
        expected = brute_force_components(matrices.terms(), matrices.term_score, 7.0, 5)
        assert [terms for _, terms in got] == expected

    def test_small_component_dropped(self):
        pairs = {("a", "b"): 8.0, ("b", "c"): 8.0, ("c", "d"): 8.0}
        assert build_silver(_matrices(pairs), threshold=7.0) == []

    def test_label_needs_two_covered_terms(self):
        pairs = {(a, b): 8.0 for a in "abcde" for b in "abcde" if a < b}
        labels = {("Lone", "a"): 9.0, ("Breit", "a"): 6.0, ("Breit", "b"): 7.0}
        got = build_silver(_matrices(pairs, labels), threshold=7.0)
        assert got[0][0] == "Breit"

    def test_label_max_mean_wins(self):
        pairs = {(a, b): 8.0 for a in "abcde" for b in "abcde" if a < b}
        labels = {
            ("Erste", "a"): 6.0, ("Erste", "b"): 6.0, ("Erste", "c"): 6.0,
            ("Zweite", "a"): 7.0, ("Zweite", "b"): 7.0,
        }
        got = build_silver(_matrices(pairs, labels), threshold=7.0)
        assert got[0][0] == "Zweite"

    def test_matches_brute_force_on_random_matrices(self):
        rng = random.Random(4711)
        for _ in range(120):
            n = rng.randint(2, 30)
            terms = ["t" + chr(97 + i // 26) + chr(97 + i % 26) for i in range(n)]
            pairs = {}
            for i in range(n):
                for j in range(i + 1, n):
                    if rng.random() < 0.25:
                        pairs[(terms[i], terms[j])] = rng.uniform(0, 9)
            matrices = _matrices(pairs)
            threshold = rng.choice([6.0, 6.5, 7.0, 7.5, 8.0])
            got = [t for _, t in build_silver(matrices, threshold)]
            expected = brute_force_components(matrices.terms(), matrices.term_score, threshold, 5)
            assert got == expected


class TestEvaluate:
    def test_unlabeled_categories_average_equals_term_score(self):
        pairs = {("a", "b"): 7.0, ("c", "d"): 5.0}
        metrics = evaluate([("", ["a", "b"]), ("", ["c", "d"])], _matrices(pairs))
        assert metrics.term_score == 6.0
        assert metrics.label_score is None
        assert metrics.average_score == 6.0

    def test_uniform_category(self):
        pairs = {(a, b): 7.0 for a in "abc" for b in "abc" if a < b}
        metrics = evaluate([("", ["a", "b", "c"])], _matrices(pairs))
        assert metrics.term_score == 7.0

    def test_annotated_terms_sums_sizes(self):
        pairs = {("a", "b"): 7.0}
        metrics = evaluate([("", ["a", "b"]), ("", ["c", "d", "e"])], _matrices(pairs))
        assert metrics.annotated_terms == 5
        assert metrics.mean_size == 2.5

    def test_silver_against_its_own_sheets(self):
        sheets = [
            _sheet("pa", AssessedCategory(["a", "b", "c", "d", "e"], 8, label="Gruppe", label_score=7)),
            _sheet("pb", AssessedCategory(["a", "b", "c", "d", "e"], 6, label="Gruppe", label_score=7)),
        ]
        matrices = build_matrices(sheets)
        threshold = select_threshold(score_histogram(sheets))
        silver = build_silver(matrices, threshold)
        metrics = evaluate(silver, matrices)
        assert metrics.category_count == 1
        assert metrics.term_score == 7.0
        assert metrics.label_score == 7.0
        assert metrics.average_score == 7.0

    def test_zeroed_for_empty(self):
        metrics = evaluate([], _matrices({("a", "b"): 5.0}))
        assert metrics.category_count == 0
        assert metrics.annotated_terms == 0
        assert metrics.average_score is None
