"""
加权自动机顺序性分析工具 - 版本信息

统一管理应用程序的版本号和相关元数据信息，方便修改维护。
"""

# 版本号
__version__ = "0.3.0"
VERSION = __version__

# 版本号元组，方便比较
VERSION_TUPLE = tuple(int(x) for x in __version__.split("."))

# 应用程序信息
APP_NAME = "加权自动机顺序性分析工具"
APP_NAME_EN = "Weighted Automata Sequentiality Toolkit"

DESCRIPTION = "判定群上加权自动机的分支孪生性质，计算顺序度并构造 k 顺序分解。"
DESCRIPTION_EN = (
    "Decides the branching twinning property of weighted automata over groups, "
    "computes the degree of sequentiality and builds k-sequential decompositions."
)


def get_app_info() -> dict:
    """获取应用程序完整信息"""
    return {
        "version": __version__,
        "version_tuple": VERSION_TUPLE,
        "app_name": APP_NAME,
        "app_name_en": APP_NAME_EN,
        "description": DESCRIPTION,
        "description_en": DESCRIPTION_EN,
    }
