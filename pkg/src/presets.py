#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
预置问题
CHSH 贝尔不等式的最大违背，以及 psd 秩下界的示例矩阵
"""

import math
from fractions import Fraction
from typing import List

from .freealg import NcPolynomial, commutator
from .hierarchy import NcProblem
from .nc_types import NcOptError, RelaxationMode

# CHSH 的量子最大值 2√2
CHSH_QUANTUM_BOUND = 2 * math.sqrt(2)

# 3×3 非负循环矩阵，用作 psd 秩下界的标准测试矩阵
PSD_RANK_EXAMPLE: List[List[Fraction]] = [
    [Fraction(1), Fraction(7, 4), Fraction(0)],
    [Fraction(0), Fraction(1), Fraction(7, 4)],
    [Fraction(7, 4), Fraction(0), Fraction(1)],
]

# 上面矩阵的 psd 秩下界 ρ^(d)：非交换 psd 秩文献中公布的数值，d=2 与 d=3 相同，保留 5 位小数
PSD_RANK_EXAMPLE_VALUE = 1.90903


def chsh_problem(order: int = 2) -> NcProblem:
    """
    CHSH：字母 x1,x2（Alice）与 x3,x4（Bob，即 y1,y2）

    目标 −(g+g*)/2，g = x1y1 + x1y2 + x2y1 − x2y2；
    等式 x_i² = 1、y_j² = 1 以及 x_i y_j = y_j x_i。最优值为 −2√2。
    """
    n = 4
    x = [NcPolynomial.variable(i, n) for i in (1, 2)]
    y = [NcPolynomial.variable(j, n) for j in (3, 4)]
    g = x[0] * y[0] + x[0] * y[1] + x[1] * y[0] - x[1] * y[1]
    objective = -(g + g.star()) * Fraction(1, 2)
    one = NcPolynomial.constant(1, n)
    equalities = [a * a - one for a in x + y]
    equalities += [commutator(a, b) for a in x for b in y]
    return NcProblem(objective=objective, equalities=equalities,
                     kind=RelaxationMode.EIGENVALUE, order=order)


PRESETS = {
    "chsh": chsh_problem,
}


def preset_problem(name: str, order: int = 2) -> NcProblem:
    """
    按名称取预置问题

    Raises:
        NcOptError: 未知的预置名称
    """
    try:
        factory = PRESETS[name]
    except KeyError:
        raise NcOptError(f"未知的预置问题: {name}（可选 {sorted(PRESETS)}）")
    return factory(order)
