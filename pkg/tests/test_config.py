"""
分析配置测试
"""

import json

import pytest

from core.analysis_config import AnalysisConfig
from utils.constants import BUDGET_ENV_VAR, DEFAULT_MAX_CONFIGURATIONS


def test_defaults():
    cfg = AnalysisConfig()
    assert cfg.search.max_configurations == DEFAULT_MAX_CONFIGURATIONS == 200000
    assert cfg.search.power_cap == 1000000
    assert cfg.search.cycle_len_cap is None
    assert cfg.exploration.state_cap == 20000
    assert cfg.exploration.norm_cap == 4096
    assert cfg.decomposition.threshold_factor == 4
    assert cfg.decomposition.max_escalations == 4
    assert cfg.decomposition.oracle_len == 8
    assert cfg.len_bound == 6
    assert cfg.lip_pump_limit == 65536
    assert cfg.positivize_scan == 4


def test_load_file_overrides(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(
        json.dumps({"search": {"max_configurations": 10, "bogus": 1}, "len_bound": 3, "x": 0}),
        encoding="utf-8",
    )
    cfg = AnalysisConfig.load(str(path), environ={})
    assert cfg.search.max_configurations == 10
    assert cfg.search.power_cap == 1000000
    assert cfg.len_bound == 3
    assert not hasattr(cfg.search, "bogus")


def test_env_overrides_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"search": {"max_configurations": 10}}), encoding="utf-8")
    cfg = AnalysisConfig.load(str(path), environ={BUDGET_ENV_VAR: " 77 "})
    assert cfg.search.max_configurations == 77


def test_bad_env_value(tmp_path):
    with pytest.raises(ValueError):
        AnalysisConfig.load(environ={BUDGET_ENV_VAR: "lots"})


def test_missing_explicit_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        AnalysisConfig.load(str(tmp_path / "nope.json"), environ={})


def test_save_then_load(tmp_path):
    cfg = AnalysisConfig()
    cfg.exploration.valuedness_override = 3
    cfg.decomposition.oracle_len = 4
    path = tmp_path / "saved.json"
    cfg.save(str(path))
    loaded = AnalysisConfig.load(str(path), environ={})
    assert loaded.to_dict() == cfg.to_dict()
