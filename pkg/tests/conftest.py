#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试公共配置
将项目根目录加入 Python 路径，提供常用多项式
"""

import os
import sys

import pytest

project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.poly_text import parse_polynomial
from src.sdp import SolverOptions

# 二元四次 SOHS：(1+x+y^2)*(1+x+y^2) + (x*y)*(x*y)
SOHS_EXAMPLE = "1+2*x+x^2+x*y^2+2*y^2+y^2*x+y*x^2*y+y^4"
# 非交换 Motzkin 多项式，迹最小化在 d=3 无下界
MOTZKIN_NC = "x*y^4*x+y*x^4*y-3*x*y^2*x+1"


@pytest.fixture
def sohs_poly():
    return parse_polynomial(SOHS_EXAMPLE, 2)


@pytest.fixture
def options():
    return SolverOptions(tol_feas=1e-8, tol_gap=1e-8, max_iter=200)
