#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
非交换多项式优化模块类型定义
包含异常类和模式枚举
"""

from enum import Enum


class NcOptError(Exception):
    """非交换优化异常基类"""
    pass


class PolynomialParseError(NcOptError):
    """多项式文本解析异常，携带行号与列号（从1开始）"""

    def __init__(self, message: str, column: int = 0, line: int = 0):
        self.message = message
        self.column = column
        self.line = line
        where = []
        if line:
            where.append(f"第{line}行")
        if column:
            where.append(f"第{column}列")
        prefix = f"[{' '.join(where)}] " if where else ""
        super().__init__(f"{prefix}{message}")


class UnknownVariableError(PolynomialParseError):
    """变量编号超出 nvars"""
    pass


class DegreeOverflowError(NcOptError):
    """多项式次数超过松弛阶数允许的范围"""
    pass


class BasisOverflowError(NcOptError):
    """词基规模超过配置上限，松弛过大"""
    pass


class DimensionMismatchError(NcOptError):
    """矩阵维度不一致"""
    pass


class NotSymmetricError(NcOptError):
    """要求对称的多项式或矩阵不对称"""
    pass


class CertificateError(NcOptError):
    """Gram 矩阵不定，无法提取 SOHS 证书"""
    pass


class InconsistentFunctionalError(NcOptError):
    """线性泛函在同一识别类上取值不一致"""
    pass


class ProblemFileError(NcOptError):
    """问题文件格式错误"""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        prefix = f"[第{line}行] " if line else ""
        super().__init__(f"{prefix}{message}")


class RelaxationMode(str, Enum):
    """松弛模式：特征值（对称识别）或迹（循环识别）"""
    EIGENVALUE = "eigenvalue"
    TRACE = "trace"


class BoundStatus(str, Enum):
    """松弛界的分类结果"""
    OPTIMAL = "Optimal"
    UNBOUNDED = "Unbounded"
    INFEASIBLE = "Infeasible"
    NUMERICAL_TROUBLE = "NumericalTrouble"
    ITERATION_LIMIT = "IterationLimit"

    @property
    def is_classified(self) -> bool:
        """无界/不可行：确定性的分类结论"""
        return self in (BoundStatus.UNBOUNDED, BoundStatus.INFEASIBLE)
