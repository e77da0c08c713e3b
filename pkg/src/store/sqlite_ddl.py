#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SQLite DDL (Data Definition Language) 定义
包含表结构、索引等的创建语句
"""

import sqlite3
from typing import List
from sqlite3 import Connection
from .sqlite_types import SQLiteStorageError


# 运行记录表创建语句
CREATE_RUN_RECORDS_TABLE = """
CREATE TABLE IF NOT EXISTS run_records (
    run_id TEXT PRIMARY KEY,
    command TEXT NOT NULL,
    kind TEXT NOT NULL,
    relax_order INTEGER,
    status TEXT NOT NULL,
    bound TEXT,
    input_text TEXT,
    result_json TEXT NOT NULL,
    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
    updated_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
);
"""

# 索引创建语句
INDEX_STATEMENTS = [
    "CREATE INDEX IF NOT EXISTS idx_run_command ON run_records(command);",
    "CREATE INDEX IF NOT EXISTS idx_run_created_at ON run_records(created_at);",
]


def create_run_records_table(conn: Connection) -> None:
    """
    创建运行记录表

    Args:
        conn: 数据库连接对象

    Raises:
        SQLiteStorageError: 表创建失败
    """
    try:
        conn.execute(CREATE_RUN_RECORDS_TABLE)
        conn.commit()
    except Exception as e:
        conn.rollback()
        raise SQLiteStorageError(f"创建运行记录表失败: {e}")


def create_indexes(conn: Connection) -> None:
    """
    创建索引

    Raises:
        SQLiteStorageError: 索引创建失败
    """
    try:
        for index_sql in INDEX_STATEMENTS:
            conn.execute(index_sql)
        conn.commit()
    except Exception as e:
        conn.rollback()
        raise SQLiteStorageError(f"创建索引失败: {e}")


def init_database(conn: Connection) -> None:
    """
    初始化数据库（创建表和索引）

    Raises:
        SQLiteStorageError: 数据库初始化失败
    """
    try:
        create_run_records_table(conn)
        create_indexes(conn)
    except Exception as e:
        raise SQLiteStorageError(f"数据库初始化失败: {e}")


def drop_run_records_table(conn: Connection) -> None:
    """
    删除运行记录表（用于测试或重建）

    Raises:
        SQLiteStorageError: 表删除失败
    """
    try:
        conn.execute("DROP TABLE IF EXISTS run_records;")
        conn.commit()
    except Exception as e:
        conn.rollback()
        raise SQLiteStorageError(f"删除运行记录表失败: {e}")


def get_table_info(conn: Connection, table_name: str) -> List[sqlite3.Row]:
    """
    获取表结构信息

    Args:
        conn: 数据库连接对象
        table_name: 表名

    Returns:
        List[sqlite3.Row]: 表结构信息列表
    """
    cursor = conn.execute(f"PRAGMA table_info({table_name});")
    return cursor.fetchall()
