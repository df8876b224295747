"""Unit tests for document normalization."""

import math
from pathlib import Path

import pytest

from stochmatch.data.providers.normalizers import (
    InstanceFileError,
    document_to_activation,
    document_to_instance,
    normalize_vertex_id,
    online_entry_to_type,
    parse_number,
    read_json_document,
    weight_entry_to_edge,
    x_entry_to_value,
)


def minimal_document(**overrides):
    doc = {
        "online": [{"id": "i", "rate": 1.0, "neighbors": ["j"]}],
        "offline": ["j"],
        "weights": [{"i": "i", "j": "j", "w": 2.0}],
    }
    doc.update(overrides)
    return doc


class TestNormalizers:
    """Test cases for normalization utilities."""

    def test_normalize_vertex_id(self):
        """Ids are stripped strings."""
        assert normalize_vertex_id("j1", "offline[0]") == "j1"
        assert normalize_vertex_id("  j'  ", "offline[0]") == "j'"

    def test_normalize_vertex_id_invalid(self):
        """Empty strings and numbers are not ids."""
        for bad in ("", "   ", 3, None):
            with pytest.raises(InstanceFileError):
                normalize_vertex_id(bad, "offline[0]")

    def test_parse_number(self):
        assert parse_number(1, "w") == 1.0
        assert parse_number(0.25, "w") == 0.25

    def test_parse_number_invalid(self):
        """Booleans, strings and non-finite values are rejected with their key."""
        for bad in (True, "1.0", None, math.inf, math.nan):
            with pytest.raises(InstanceFileError) as exc:
                parse_number(bad, "online[0].rate")
            assert exc.value.key == "online[0].rate"

    def test_online_entry(self):
        t = online_entry_to_type({"id": "i", "rate": 0.5, "neighbors": ["a", "b"]}, 0)
        assert t.id == "i"
        assert t.rate == 0.5
        assert t.neighbors == ("a", "b")

    def test_online_entry_missing_key(self):
        """Missing keys name the entry."""
        with pytest.raises(InstanceFileError) as exc:
            online_entry_to_type({"id": "i", "neighbors": []}, 2)
        assert exc.value.key == "online[2]"
        assert "rate" in str(exc.value)

    def test_online_entry_neighbors_not_list(self):
        with pytest.raises(InstanceFileError) as exc:
            online_entry_to_type({"id": "i", "rate": 1.0, "neighbors": "j"}, 0)
        assert exc.value.key == "online[0].neighbors"

    def test_weight_entry(self):
        e = weight_entry_to_edge({"i": "i", "j": "j", "w": 3}, 0)
        assert e.key == ("i", "j")
        assert e.weight == 3.0

    def test_x_entry(self):
        assert x_entry_to_value({"i": "i", "j": "j", "x": 0.5}, 0) == (("i", "j"), 0.5)


class TestDocumentToInstance:
    """Tests for document_to_instance."""

    def test_without_x(self):
        inst, x = document_to_instance(minimal_document())
        assert len(inst.online_types) == 1
        assert inst.offline_vertices == ("j",)
        assert inst.weight("i", "j") == 2.0
        assert x is None

    def test_with_x(self):
        inst, x = document_to_instance(minimal_document(x=[{"i": "i", "j": "j", "x": 0.6}]))
        assert x.value("i", "j") == 0.6

    def test_duplicate_x(self):
        doc = minimal_document(x=[{"i": "i", "j": "j", "x": 0.6}, {"i": "i", "j": "j", "x": 0.1}])
        with pytest.raises(InstanceFileError) as exc:
            document_to_instance(doc)
        assert exc.value.key == "x[1]"

    def test_missing_section(self):
        doc = minimal_document()
        del doc["weights"]
        with pytest.raises(InstanceFileError, match="weights"):
            document_to_instance(doc)

    def test_section_not_array(self):
        with pytest.raises(InstanceFileError) as exc:
            document_to_instance(minimal_document(offline="j"))
        assert exc.value.key == "offline"

    def test_top_level_not_object(self):
        with pytest.raises(InstanceFileError):
            document_to_instance([1, 2])

    def test_error_message_carries_path(self):
        with pytest.raises(InstanceFileError) as exc:
            document_to_instance(minimal_document(offline=[7]), Path("bad.json"))
        assert str(exc.value).startswith("bad.json: offline[0]")


class TestDocumentToActivation:
    """Tests for document_to_activation."""

    def test_valid(self):
        f = document_to_activation({"m": 2, "values": [0.5, 1.5]})
        assert f.values == (0.5, 1.5)

    def test_count_mismatch(self):
        with pytest.raises(InstanceFileError) as exc:
            document_to_activation({"m": 3, "values": [0.5, 1.5]})
        assert exc.value.key == "values"

    def test_bad_m(self):
        for m in (0, -1, 1.5, True, "2"):
            with pytest.raises(InstanceFileError):
                document_to_activation({"m": m, "values": [1.0]})

    def test_value_out_of_range(self):
        with pytest.raises(InstanceFileError) as exc:
            document_to_activation({"m": 1, "values": [2.5]})
        assert exc.value.key == "values"


class TestReadJsonDocument:
    """Tests for read_json_document."""

    def test_syntax_error_position(self, tmp_path):
        """Syntax errors report line and column."""
        path = tmp_path / "broken.json"
        path.write_text('{\n  "m": 1,\n  "values": [1.0,]\n}\n', encoding="utf-8")
        with pytest.raises(InstanceFileError) as exc:
            read_json_document(path)
        assert exc.value.line == 3
        assert exc.value.column is not None
        assert "line 3" in str(exc.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InstanceFileError, match="file not found"):
            read_json_document(tmp_path / "absent.json")

    def test_is_value_error(self):
        assert issubclass(InstanceFileError, ValueError)
