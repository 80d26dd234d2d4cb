"""
命令行测试
"""

import json
import os

import pytest

from cli import CommandLineApp, cmd_dispatch
from core.corpus import dump_corpus
from utils.constants import BUDGET_ENV_VAR, EXIT_FAILS, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE
from version import __version__, get_app_info


@pytest.fixture
def corpus_dir(tmp_path, monkeypatch):
    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
    directory = tmp_path / "corpus"
    dump_corpus(str(directory))
    return directory


def run(*argv):
    return CommandLineApp().run([str(a) for a in argv])


def stdout_lines(capsys):
    return capsys.readouterr().out.strip().splitlines()


class TestEval:
    def test_one_set_per_word(self, corpus_dir, capsys):
        assert run("eval", corpus_dir / "W0.wa.json", "ab", "aab", "ε") == EXIT_OK
        assert stdout_lines(capsys) == ["{1}", "{1}", "{0}"]

    def test_transducer_outputs(self, corpus_dir, capsys):
        assert run("eval", corpus_dir / "anbn.wa.json", "aa") == EXIT_OK
        assert stdout_lines(capsys) == ["{a a, b b}"]

    def test_cra(self, corpus_dir, capsys):
        assert run("eval", corpus_dir / "C0.cra.json", "babb") == EXIT_OK
        assert stdout_lines(capsys) == ["{3}"]


class TestExitCodes:
    def test_missing_command(self):
        assert run() == EXIT_USAGE

    def test_unknown_option(self, corpus_dir):
        assert run("check-btp", "--bogus", corpus_dir / "W0.wa.json") == EXIT_USAGE

    def test_missing_file(self, tmp_path):
        assert run("check-btp", "-k", 1, tmp_path / "none.wa.json") == EXIT_USAGE

    def test_parse_error(self, tmp_path, capsys):
        path = tmp_path / "bad.wa.json"
        path.write_text("{", encoding="utf-8")
        assert run("eval", path, "a") == EXIT_USAGE
        assert "错误" in capsys.readouterr().err

    def test_version(self, capsys):
        assert run("--version") == EXIT_OK
        assert __version__ in capsys.readouterr().out

    def test_dispatch(self, corpus_dir, capsys):
        assert cmd_dispatch(["eval", str(corpus_dir / "W0.wa.json"), "a"]) == EXIT_OK
        assert stdout_lines(capsys) == ["{1}"]


class TestAnalysis:
    def test_check_btp(self, corpus_dir, capsys):
        path = corpus_dir / "W0.wa.json"
        assert run("check-btp", "-k", 1, path) == EXIT_FAILS
        assert "BTP-1: fails" in capsys.readouterr().out
        assert run("check-btp", "-k", 2, path) == EXIT_OK
        assert "BTP-2: holds" in capsys.readouterr().out

    def test_budget_option(self, corpus_dir, capsys):
        assert run("check-btp", "-k", 4, "--budget", 1, corpus_dir / "W1.wa.json") == (
            EXIT_INCONCLUSIVE
        )
        assert "inconclusive" in capsys.readouterr().out

    def test_budget_env(self, corpus_dir, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV_VAR, "1")
        assert run("check-btp", "-k", 4, corpus_dir / "W1.wa.json") == EXIT_INCONCLUSIVE

    def test_degree(self, corpus_dir, capsys):
        assert run("degree", corpus_dir / "W0.wa.json") == EXIT_OK
        assert stdout_lines(capsys) == ["2"]

    def test_determinize(self, corpus_dir, tmp_path, capsys):
        out = tmp_path / "det.wa.json"
        assert run("determinize", corpus_dir / "identity.wa.json", "-o", out) == EXIT_OK
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["kind"] == "automaton"
        assert len(data["init"]) == 1
        assert "labels" in data

    def test_decompose_writes_manifest(self, corpus_dir, tmp_path):
        out = tmp_path / "parts"
        assert run("decompose", "-k", 2, corpus_dir / "W0.wa.json", "-o", out) == EXIT_OK
        manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
        assert manifest["k"] == 2
        assert manifest["source"] == "W0.wa.json"
        assert 1 <= len(manifest["machines"]) <= 2
        for name in manifest["machines"]:
            assert os.path.exists(out / name)

    def test_falsify_lip(self, corpus_dir, capsys):
        path = corpus_dir / "W0.wa.json"
        assert run("falsify-lip", "-k", 1, "-L", 2, path) == EXIT_FAILS
        assert capsys.readouterr().out.strip()
        assert run("falsify-lip", "-k", 2, "-L", 2, path) == EXIT_OK
        assert "L = 164" in capsys.readouterr().out

    def test_falsify_lip_pump_limit_is_inconclusive(self, corpus_dir, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"lip_pump_limit": 4}), encoding="utf-8")
        path = corpus_dir / "W0.wa.json"
        code = run("falsify-lip", "-k", 1, "-L", 100, "--config", cfg, path)
        assert code == EXIT_INCONCLUSIVE
        assert "上限 4" in capsys.readouterr().err


class TestConversion:
    def test_cra_round_trip(self, corpus_dir, tmp_path, capsys):
        machines = tmp_path / "c0.wa.json"
        back = tmp_path / "c0.cra.json"
        assert run("from-cra", corpus_dir / "C0.cra.json", "-o", machines) == EXIT_OK
        assert run("to-cra", machines, "-o", back) == EXIT_OK
        capsys.readouterr()
        assert run("oracle-equiv", back, corpus_dir / "C0.cra.json", "--len-bound", 4) == EXIT_OK
        assert "equivalent" in capsys.readouterr().out

    def test_from_cra_split(self, corpus_dir, tmp_path):
        split = tmp_path / "split"
        assert run("from-cra", corpus_dir / "C0.cra.json", "--split", split) == EXIT_OK
        assert sorted(os.listdir(split)) == ["X_a.wa.json", "X_b.wa.json"]

    def test_from_dependent_cra(self, corpus_dir):
        assert run("from-cra", corpus_dir / "C1.cra.json") == EXIT_USAGE

    def test_to_cra_rejects_nonsequential(self, corpus_dir):
        assert run("to-cra", corpus_dir / "W0.wa.json") == EXIT_USAGE

    def test_positivize(self, corpus_dir, tmp_path):
        out = tmp_path / "pos.cra.json"
        src = corpus_dir / "cancel.cra.json"
        assert run("positivize", src, "-o", out) == EXIT_OK
        assert run("oracle-equiv", out, src, "--len-bound", 4) == EXIT_OK


class TestFiles:
    def test_oracle_equiv_alphabets(self, corpus_dir):
        first, second = corpus_dir / "anbn.wa.json", corpus_dir / "identity.wa.json"
        assert run("oracle-equiv", first, second) == EXIT_USAGE
        assert run("oracle-equiv", corpus_dir / "W0.wa.json", corpus_dir / "C0.cra.json") == (
            EXIT_OK
        )

    def test_export_dot(self, corpus_dir, capsys):
        assert run("export-dot", corpus_dir / "C0.cra.json") == EXIT_OK
        assert capsys.readouterr().out.startswith("digraph C")

    def test_corpus_listing(self, tmp_path, capsys):
        assert run("corpus", "--dump", tmp_path / "dump") == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("W0\tautomaton")
        assert "BTP-2=holds" in out
        assert os.path.exists(tmp_path / "dump" / "cancel.cra.json")


def test_app_info():
    info = get_app_info()
    assert info["version"] == __version__
    assert info["version_tuple"] == tuple(int(x) for x in __version__.split("."))
    assert info["app_name_en"]
