#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
半定规划模块
提供标准形式数据模型、内点法求解器与 SDPA 稀疏格式读写
"""

from .sdp_problem import SdpProblem, SdpSolution, SolverOptions
from .sdp_solver import InteriorPointSolver, solve
from .sdpa_io import export_sdpa, import_sdpa
from .sdp_types import SdpDimensionError, SdpError, SdpFormatError, SdpStatus

__all__ = [
    # 核心接口
    'SdpProblem',
    'SdpSolution',
    'SolverOptions',
    'InteriorPointSolver',
    'solve',
    'export_sdpa',
    'import_sdpa',

    # 状态与异常类型
    'SdpStatus',
    'SdpError',
    'SdpFormatError',
    'SdpDimensionError',
]
