"""
Stacked Manifolds - 堆叠同调流形的精确组合计算与命令行工具
"""

from .cli import main

__version__ = "0.1.0"
__all__ = ["main"]
