"""
文件格式与 DOT 导出测试
"""

import json

import pytest

from core.errors import ParseError
from core.serialization import (
    export_dot,
    load_automaton,
    load_cra,
    load_document,
    parse_automaton,
    parse_cra,
    parse_document,
    render_automaton,
    render_cra,
    render_document,
    safe_filename,
    save_document,
)

W0_TEXT = """{
  "group": "Z",
  "alphabet": ["a", "b"],
  "states": ["q_a", "q_f", "q_b"],
  "init": [["q_a", 0], ["q_f", 0], ["q_b", 0]],
  "final": [["q_f", 0]],
  "trans": [
    ["q_a", "b", 0, "q_a"], ["q_a", "a", 1, "q_a"], ["q_a", "a", 1, "q_f"],
    ["q_b", "a", 0, "q_b"], ["q_b", "b", 1, "q_b"], ["q_b", "b", 1, "q_f"]
  ]
}"""


class TestAutomatonDocuments:
    def test_parse_matches_builder(self, W0):
        assert parse_automaton(W0_TEXT) == W0

    def test_render_is_canonical(self, W0):
        text = render_automaton(W0)
        data = json.loads(text)
        assert data["kind"] == "automaton"
        assert data["group"] == "Z"
        assert data["init"][0] == ["q_a", "0"]
        assert parse_automaton(text) == W0
        assert render_automaton(parse_automaton(text)) == text

    def test_free_group_elements(self, anbn):
        text = render_automaton(anbn)
        assert '"free:ab"' in text
        assert parse_document(text) == anbn

    def test_labels_are_ignored_on_parse(self, W0):
        text = render_automaton(W0, {"q_a": [["q_a", "0"]]})
        assert "labels" in json.loads(text)
        assert parse_automaton(text) == W0

    def test_json_syntax_error_location(self):
        with pytest.raises(ParseError) as info:
            parse_automaton('{\n  "group": "Z",\n  oops\n}')
        assert info.value.line == 3

    def test_bad_element_reports_field(self):
        text = W0_TEXT.replace('["q_f", 0]]', '["q_f", "x"]]', 1)
        with pytest.raises(ParseError) as info:
            parse_automaton(text)
        assert info.value.line > 0

    def test_missing_field(self):
        with pytest.raises(ParseError):
            parse_automaton('{"group": "Z", "alphabet": ["a"]}')

    def test_unknown_group(self):
        with pytest.raises(ParseError):
            parse_automaton(W0_TEXT.replace('"Z"', '"Q"'))

    def test_wrong_kind(self, C0):
        with pytest.raises(ParseError):
            parse_automaton(render_cra(C0))


class TestCraDocuments:
    def test_round_trip(self, C0, cancel):
        for cra in (C0, cancel):
            text = render_cra(cra)
            parsed = parse_cra(text)
            assert render_cra(parsed) == text
            assert isinstance(parse_document(text), type(cra))

    def test_independent_flag_checked(self, C1):
        data = json.loads(render_cra(C1))
        assert data["independent"] is False
        data["independent"] = True
        with pytest.raises(ParseError):
            parse_cra(json.dumps(data))

    def test_render_document_dispatch(self, C0, W0):
        assert render_document(C0) == render_cra(C0)
        assert render_document(W0) == render_automaton(W0)


class TestFiles:
    def test_save_and_load(self, tmp_path, W0, C0):
        wa_path = save_document(W0, str(tmp_path / "nested" / "w0.wa.json"))
        cra_path = save_document(C0, str(tmp_path / "c0.cra.json"))
        assert load_automaton(wa_path) == W0
        assert render_cra(load_cra(cra_path)) == render_cra(C0)
        assert isinstance(load_document(cra_path), type(C0))

    def test_load_wrong_kind(self, tmp_path, C0):
        path = save_document(C0, str(tmp_path / "c0.json"))
        with pytest.raises(ParseError):
            load_automaton(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_document(str(tmp_path / "missing.json"))


class TestDot:
    def test_automaton_dot(self, W0):
        source = export_dot(W0)
        assert source.startswith("digraph W")
        assert "q_a" in source
        assert "a : 1" in source

    def test_cra_dot(self, tmp_path, C0):
        path = tmp_path / "c0.dot"
        source = export_dot(C0, str(path))
        assert path.read_text(encoding="utf-8") == source
        assert "X_a:=X_a·1" in source

    def test_safe_filename(self):
        assert safe_filename("a^n -> b") == "a_n_-_b"
        assert safe_filename("***") == "automaton"
