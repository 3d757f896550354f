from __future__ import annotations

import json
import pytest

from anea import catfile
from anea.categorizer import EntityCategory
from anea.cli import main, z_suite
from conftest import write_kb_dump, write_vector_file


def _mini_inputs(tmp_path) -> dict[str, str]:
    # 30 unrelated one-term head groups keep the term-node count above the
    # point where the relative size gate admits 5-term categories.
    fillers = ["Füll" + a + b for a in "abcde" for b in "abcdef"]
    records = [
        {
            "headword": "Motor",
            "senses": [{"areas": ["Technik"], "definition": "Maschine zur Umwandlung."}],
            "hypernyms": ["Maschine"],
            "hyponyms": [],
        },
        {
            "headword": "Maschine",
            "senses": [{"areas": ["Technik"], "definition": "mechanische Vorrichtung."}],
            "hypernyms": [],
            "hyponyms": [],
        },
    ] + [
        {"headword": w, "senses": [{"areas": [], "definition": "Eintrag."}], "hypernyms": [], "hyponyms": []}
        for w in fillers
    ]
    kb = write_kb_dump(tmp_path / "kb.jsonl", records)
    words = {
        "Motor": [1.0, 0.0], "Maschine": [0.9, 0.1],
        "Dieselmotor": [1.0, 0.05], "Elektromotor": [1.0, -0.05],
        "Benzinmotor": [0.95, 0.0], "Hauptmotor": [0.98, 0.02], "Hilfsmotor": [0.97, -0.02],
    }
    vectors = write_vector_file(tmp_path / "vec.txt", 2, words)
    terms = tmp_path / "terms.csv"
    surfaces = sorted(set(words) - {"Maschine"}) + fillers
    rows = ["surface,frequency"] + [f"{w},{i + 2}" for i, w in enumerate(surfaces)]
    terms.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return {"kb": kb, "vectors": vectors, "terms": str(terms)}


class TestRun:
    def test_terms_to_categories_file(self, tmp_path):
        inputs = _mini_inputs(tmp_path)
        out = tmp_path / "book.json"
        code = main([
            "run", "--terms", inputs["terms"], "--kb", inputs["kb"], "--vectors", inputs["vectors"],
            "--tta", "40", "--out", str(out),
        ])
        assert code == 0
        categories, exclusions, params = catfile.read(str(out))
        assert len(categories) == 1
        assert categories[0].label == "Motor"
        assert categories[0].size == 5
        manifest = json.loads(out.with_suffix(".json.manifest.json").read_text(encoding="utf-8"))
        assert manifest["output"]["sha256"]
        assert set(manifest["inputs"]) == {"terms", "kb", "vectors"}

    def test_baseline_has_no_labels(self, tmp_path):
        inputs = _mini_inputs(tmp_path)
        out = tmp_path / "hc.json"
        code = main([
            "run", "--terms", inputs["terms"], "--kb", inputs["kb"], "--vectors", inputs["vectors"],
            "--tta", "40", "--baseline", "--out", str(out),
        ])
        assert code == 0
        categories, _, _ = catfile.read(str(out))
        assert categories and all(c.label == "" for c in categories)

    def test_missing_kb_is_usage_error(self, tmp_path, capsys):
        inputs = _mini_inputs(tmp_path)
        code = main([
            "run", "--terms", inputs["terms"], "--kb", str(tmp_path / "nope.jsonl"),
            "--vectors", inputs["vectors"], "--tta", "40", "--out", str(tmp_path / "x.json"),
        ])
        assert code == 2
        assert "error [run]" in capsys.readouterr().err

    def test_rerun_is_byte_identical(self, tmp_path):
        inputs = _mini_inputs(tmp_path)
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        for out in (out1, out2):
            main([
                "run", "--terms", inputs["terms"], "--kb", inputs["kb"], "--vectors", inputs["vectors"],
                "--tta", "40", "--out", str(out),
            ])
        assert out1.read_bytes() == out2.read_bytes()

    def test_default_config_writes_voted_and_side_runs(self, tmp_path):
        inputs = _mini_inputs(tmp_path)
        out = tmp_path / "voted.json"
        code = main([
            "run", "--terms", inputs["terms"], "--kb", inputs["kb"], "--vectors", inputs["vectors"],
            "--default-config", "--out", str(out),
        ])
        assert code == 0
        voted, _, params = catfile.read(str(out))
        assert len(params["default_config"]) == 3
        side = sorted(tmp_path.glob("voted-tta*.json"))
        assert len(side) == 3
        if voted:
            assert all(c.provenance for c in voted)

    def test_dump_graph_written(self, tmp_path):
        inputs = _mini_inputs(tmp_path)
        graph_out = tmp_path / "graph.json"
        main([
            "run", "--terms", inputs["terms"], "--kb", inputs["kb"], "--vectors", inputs["vectors"],
            "--tta", "40", "--dump-graph", str(graph_out), "--out", str(tmp_path / "b.json"),
        ])
        doc = json.loads(graph_out.read_text(encoding="utf-8"))
        assert doc["format"] == "anea-graph/1"
        assert ["Dieselmotor", "Motor"] in doc["edges"]


class TestVote:
    def test_two_identical_runs(self, tmp_path):
        cats = [EntityCategory("Motor", {"aa", "bb", "cc", "dd", "ee"}, quality=2.0)]
        for name in ("r1.json", "r2.json"):
            catfile.write(str(tmp_path / name), cats)
        out = tmp_path / "voted.json"
        code = main(["vote", str(tmp_path / "r1.json"), str(tmp_path / "r2.json"), "--out", str(out)])
        assert code == 0
        voted, _, _ = catfile.read(str(out))
        assert [(c.label, c.terms) for c in voted] == [("Motor", {"aa", "bb", "cc", "dd", "ee"})]
        assert voted[0].provenance == ["r1", "r2"]

    def test_arity_checked(self, tmp_path, capsys):
        catfile.write(str(tmp_path / "only.json"), [])
        with pytest.raises(SystemExit):
            main(["vote", str(tmp_path / "only.json"), "--out", str(tmp_path / "v.json")])


class TestEval:
    SHEET = (
        "anea,z3,pa,Motor,7,8\n"
        "Dieselmotor\n"
        "Elektromotor\n"
        "\n"
    )

    def test_metrics_report(self, tmp_path, capsys):
        sheets_dir = tmp_path / "sheets"
        sheets_dir.mkdir()
        (sheets_dir / "pa.csv").write_text(self.SHEET, encoding="utf-8")
        book = tmp_path / "book.json"
        catfile.write(str(book), [EntityCategory("Motor", {"Dieselmotor", "Elektromotor"})])
        out = tmp_path / "metrics.json"
        code = main(["eval", "--categories", str(book), "--sheets", str(sheets_dir), "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["term_score"] == 8.0
        assert report["label_score"] == 7.0
        assert report["average_score"] == 7.5

    def test_unlabeled_average_equals_term_score(self, tmp_path):
        sheets_dir = tmp_path / "sheets"
        sheets_dir.mkdir()
        (sheets_dir / "pa.csv").write_text(self.SHEET, encoding="utf-8")
        book = tmp_path / "hc.json"
        catfile.write(str(book), [EntityCategory("", {"Dieselmotor", "Elektromotor"})])
        out = tmp_path / "metrics.json"
        main(["eval", "--categories", str(book), "--sheets", str(sheets_dir), "--out", str(out)])
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["label_score"] is None
        assert report["average_score"] == report["term_score"] == 8.0

    def test_empty_categories_zeroed(self, tmp_path):
        sheets_dir = tmp_path / "sheets"
        sheets_dir.mkdir()
        (sheets_dir / "pa.csv").write_text(self.SHEET, encoding="utf-8")
        book = tmp_path / "empty.json"
        catfile.write(str(book), [])
        out = tmp_path / "metrics.json"
        main(["eval", "--categories", str(book), "--sheets", str(sheets_dir), "--out", str(out)])
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["categories"] == 0
        assert report["annotated_terms"] == 0


def test_z_suite_thresholds():
    assert z_suite(999) == (2, 3, 4, 5)
    assert z_suite(1000) == (3, 4, 5, 7)


def test_catfile_round_trip(tmp_path):
    cats = [
        EntityCategory("Motor", {"aa", "bb"}, term_similarity=0.5, label_similarity=0.25,
                       combined_similarity=0.75, avg_label_distance=1.5, quality=1.25,
                       provenance=["r1"]),
    ]
    path = tmp_path / "book.json"
    catfile.write(str(path), cats, exclusions=["xx"], parameters={"tta": 5})
    categories, exclusions, params = catfile.read(str(path))
    assert categories[0].label == "Motor"
    assert categories[0].terms == {"aa", "bb"}
    assert categories[0].provenance == ["r1"]
    assert exclusions == ["xx"]
    assert params == {"tta": 5}
