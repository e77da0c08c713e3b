#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
工具函数模块
包含运行配置加载、浮点数格式化等工具函数
"""
import math
import os
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field


class Settings(BaseModel):
    """运行配置，来自环境变量（支持 .env 文件）"""
    tol_feas: float = Field(default=1e-8, description="原始/对偶可行性容差")
    tol_gap: float = Field(default=1e-8, description="相对对偶间隙容差")
    max_iter: int = Field(default=200, description="内点法最大迭代次数")
    eig_tol: float = Field(default=1e-8, description="Gram 矩阵特征值截断容差")
    max_basis: int = Field(default=5000, description="词基规模上限 s(d,n)")
    db_path: str = Field(default="resources/ignored/ncopt.db", description="运行记录数据库路径")
    seed: int = Field(default=0, description="随机采样默认种子")


# 环境变量名 -> Settings 字段
_ENV_KEYS = {
    "NCOPT_TOL_FEAS": "tol_feas",
    "NCOPT_TOL_GAP": "tol_gap",
    "NCOPT_MAX_ITER": "max_iter",
    "NCOPT_EIG_TOL": "eig_tol",
    "NCOPT_MAX_BASIS": "max_basis",
    "NCOPT_DB_PATH": "db_path",
    "NCOPT_SEED": "seed",
}


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    读取运行配置

    Returns:
        Settings: 配置实例（进程内缓存）
    """
    load_dotenv()
    values = {}
    for env_key, field_name in _ENV_KEYS.items():
        raw = os.getenv(env_key)
        if raw is not None and raw.strip():
            values[field_name] = raw.strip()
    return Settings(**values)


def format_float(value: Optional[float]) -> Optional[str]:
    """
    以17位有效数字格式化浮点数，-inf/+inf/nan 输出为字符串

    Args:
        value: 浮点数或 None

    Returns:
        格式化后的文本
    """
    if value is None:
        return None
    if math.isinf(value):
        return "-inf" if value < 0 else "inf"
    if math.isnan(value):
        return "nan"
    return format(value, ".17g")


def json_float(value: Optional[float]):
    """JSON 友好的浮点数：有限值保留 17 位有效数字，无穷值转为字符串"""
    if value is None:
        return None
    if math.isinf(value) or math.isnan(value):
        return format_float(value)
    return float(format(value, ".17g"))
