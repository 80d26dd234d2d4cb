"""
加权自动机顺序性分析工具 - 主入口

判定分支孪生性质、计算顺序度、k 顺序分解以及与代价寄存器自动机的互相转换。
"""

import os
import sys

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cli import cmd_dispatch


def main() -> None:
    """主程序入口"""
    try:
        sys.exit(cmd_dispatch())
    except KeyboardInterrupt:
        print("\n程序被用户中断", file=sys.stderr)
        sys.exit(130)


if __name__ == "__main__":
    main()
