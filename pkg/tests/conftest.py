"""
测试公共夹具
"""

import random

import pytest

from core.analysis_config import AnalysisConfig
from core.corpus import (
    an_a2n_transducer,
    anbn_transducer,
    c0,
    c1,
    cancelling_cra,
    identity_transducer,
    w0,
    w1,
    wstar,
)
from core.group import FreeGroup, IntegerGroup


@pytest.fixture
def z():
    return IntegerGroup()


@pytest.fixture
def free_ab():
    return FreeGroup(("a", "b"))


@pytest.fixture
def rng():
    """固定种子的随机数生成器"""
    return random.Random(20240611)


@pytest.fixture
def config():
    """不读取配置文件和环境变量的默认配置"""
    return AnalysisConfig()


@pytest.fixture
def small_config():
    """小预算配置，用于触发 INCONCLUSIVE"""
    cfg = AnalysisConfig()
    cfg.search.max_configurations = 1
    return cfg


@pytest.fixture
def W0():
    return w0()


@pytest.fixture
def W1():
    return w1()


@pytest.fixture
def Wstar():
    return wstar()


@pytest.fixture
def C0():
    return c0()


@pytest.fixture
def C1():
    return c1()


@pytest.fixture
def identity_t():
    return identity_transducer()


@pytest.fixture
def anbn():
    return anbn_transducer()


@pytest.fixture
def an_a2n():
    return an_a2n_transducer()


@pytest.fixture
def cancel():
    return cancelling_cra()
