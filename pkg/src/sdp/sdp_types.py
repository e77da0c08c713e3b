#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
半定规划模块类型定义
包含求解状态枚举和异常类
"""
from enum import Enum

from ..nc_types import NcOptError


class SdpStatus(str, Enum):
    """求解状态（原始问题为 max ⟨C,X⟩ 形式）"""
    OPTIMAL = "Optimal"
    PRIMAL_INFEASIBLE = "PrimalInfeasible"
    DUAL_INFEASIBLE = "DualInfeasible"
    NUMERICAL_TROUBLE = "NumericalTrouble"
    ITERATION_LIMIT = "IterationLimit"


class SdpError(NcOptError):
    """半定规划异常基类"""
    pass


class SdpDimensionError(SdpError):
    """问题数据维度不一致"""
    pass


class SdpFormatError(SdpError):
    """SDPA 文件格式错误，携带行号"""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        prefix = f"[第{line}行] " if line else ""
        super().__init__(f"{prefix}{message}")
