#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SQLite 存储模块类型定义
包含异常类和类型提示
"""
from ..nc_types import NcOptError


class SQLiteStorageError(NcOptError):
    """SQLite 存储操作异常基类"""
    pass


class RecordNotFoundError(SQLiteStorageError):
    """运行记录未找到异常"""
    pass
