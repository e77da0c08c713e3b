#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SQLite 存储模块
提供运行记录（RunRecord）的 SQLite 数据库存储功能
"""

from .sqlite_conn import SqliteDB, get_sqlite_db
from .sqlite_repo import RunRecordRepo
from .sqlite_types import RecordNotFoundError, SQLiteStorageError

__all__ = [
    # 核心接口
    'SqliteDB',
    'RunRecordRepo',
    'get_sqlite_db',

    # 异常类型
    'SQLiteStorageError',
    'RecordNotFoundError',
]
