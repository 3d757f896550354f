from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from anea.embeddings import cosine, load_vectors, mean_pairwise_similarity
from anea.errors import FormatError
from conftest import entry, kb_from, store_from, write_vector_file


class TestCosine:
    def test_self_similarity_is_one(self):
        v = np.array([0.3, -1.2, 4.5])
        assert cosine(v, v) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_vectors(self):
        assert cosine(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 0.0

    def test_45_degrees(self):
        # Hand arithmetic: (1*1 + 1*0) / (sqrt(2) * 1) = 1/sqrt(2).
        got = cosine(np.array([1.0, 1.0]), np.array([1.0, 0.0]))
        assert got == pytest.approx(0.7071067811865475, abs=1e-12)

    def test_zero_norm_defined_as_zero(self):
        assert cosine(np.zeros(3), np.array([1.0, 2.0, 3.0])) == 0.0
        assert cosine(np.zeros(3), np.zeros(3)) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            cosine(np.zeros(2), np.zeros(3))

    @given(
        st.lists(st.floats(-100, 100), min_size=4, max_size=4),
        st.lists(st.floats(-100, 100), min_size=4, max_size=4),
    )
    def test_bounded_and_symmetric(self, a, b):
        va, vb = np.array(a), np.array(b)
        c = cosine(va, vb)
        assert abs(c) <= 1.0 + 1e-12
        assert c == pytest.approx(cosine(vb, va), abs=1e-12)


class TestVectorLookup:
    def test_known_word_returned_verbatim(self):
        store = store_from(3, Motor=[1.0, 2.0, 3.0])
        assert np.array_equal(store.vector("Motor"), np.array([1.0, 2.0, 3.0]))

    def test_compound_falls_back_to_segmentation_mean(self):
        kb = kb_from(entry("Zylinder"), entry("Motor"), entry("Sechs"))
        store = store_from(2, Zylinder=[1.0, 0.0], Motor=[0.0, 1.0])
        got = store.vector("Sechszylindermotor", kb)
        # Oracle: hand-average of the two stored piece vectors.
        assert np.allclose(got, np.array([0.5, 0.5]))

    def test_four_gram_fallback(self):
        store = store_from(2, ambi=[2.0, 0.0], mbie=[0.0, 4.0])
        got = store.vector("Zambie")
        assert np.allclose(got, np.array([1.0, 2.0]))

    def test_terminal_fallback_is_zero_with_flag(self):
        store = store_from(2, Motor=[1.0, 0.0])
        got = store.vector("qqqq")
        assert np.array_equal(got, np.zeros(2))
        assert "qqqq" in store.oov_words

    def test_deterministic_for_fixed_inputs(self):
        kb = kb_from(entry("Wasser"), entry("Pumpe"))
        store = store_from(2, Wasser=[1.0, 1.0], Pumpe=[3.0, -1.0])
        a = store.vector("Wasserpumpenwerk", kb)
        b = store.vector("Wasserpumpenwerk", kb)
        assert np.array_equal(a, b)

    def test_unit_vector_of_zero_stays_zero(self):
        store = store_from(2)
        assert np.array_equal(store.unit_vector("nichts"), np.zeros(2))


class TestLoadVectors:
    def test_round_trip(self, tmp_path):
        path = write_vector_file(tmp_path / "vec.txt", 3, {"Motor": [1.0, 2.0, 3.0], "Pumpe": [0.5, 0.5, 0.5]})
        store = load_vectors(path)
        assert store.dimension == 3
        assert len(store) == 2
        assert np.array_equal(store.vector("Pumpe"), np.array([0.5, 0.5, 0.5]))

    def test_header_count_mismatch(self, tmp_path):
        p = tmp_path / "vec.txt"
        p.write_text("3 2\nMotor 1.0 2.0\n", encoding="utf-8")
        with pytest.raises(FormatError):
            load_vectors(str(p))

    def test_bad_component_reports_line(self, tmp_path):
        p = tmp_path / "vec.txt"
        p.write_text("1 2\nMotor 1.0 xyz\n", encoding="utf-8")
        with pytest.raises(FormatError) as err:
            load_vectors(str(p))
        assert "2" in str(err.value)

    def test_nan_rejected(self, tmp_path):
        p = tmp_path / "vec.txt"
        p.write_text("1 2\nMotor 1.0 nan\n", encoding="utf-8")
        with pytest.raises(FormatError):
            load_vectors(str(p))


def test_mean_pairwise_similarity_small_cases():
    units = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    # Pairs: (1, 0, 0) -> mean 1/3.
    assert mean_pairwise_similarity(units) == pytest.approx(1 / 3)
    assert mean_pairwise_similarity(units[:1]) == 0.0
