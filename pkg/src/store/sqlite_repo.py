#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SQLite DQL (Data Query Language) 操作
包含运行记录的增删改查操作
"""
from typing import List, Dict
from sqlite3 import Connection
from ..models import RunRecord
from .sqlite_types import RecordNotFoundError


class RunRecordRepo:
    """运行记录数据仓库类，专注于 run_records 表的操作"""

    @staticmethod
    def upsert_records(conn: Connection, records: List[RunRecord]) -> int:
        """
        批量插入或更新运行记录（批量UPSERT操作）

        Args:
            conn: 数据库连接对象（由上层管理生命周期）
            records: 运行记录列表

        Returns:
            int: 成功处理的记录数量
        """
        if not records:
            return 0

        sql = """
        INSERT INTO run_records
        (run_id, command, kind, relax_order, status, bound, input_text, result_json)
        VALUES (?, ?, ?, ?, ?, ?, ?, ?)
        ON CONFLICT(run_id) DO UPDATE SET
            command = excluded.command,
            kind = excluded.kind,
            relax_order = excluded.relax_order,
            status = excluded.status,
            bound = excluded.bound,
            input_text = excluded.input_text,
            result_json = excluded.result_json,
            updated_at = CURRENT_TIMESTAMP
        """

        params_list = [
            (r.run_id, r.command, r.kind, r.order, r.status, r.bound, r.input_text, r.result_json)
            for r in records
        ]
        cursor = conn.executemany(sql, params_list)
        return cursor.rowcount

    @staticmethod
    def get_records_by_ids(conn: Connection, run_ids: List[str]) -> Dict[str, RunRecord]:
        """
        批量根据 run_id 查询运行记录

        Args:
            conn: 数据库连接对象（由上层管理生命周期）
            run_ids: 运行ID列表

        Returns:
            Dict[str, RunRecord]: key 为 run_id
        """
        if not run_ids:
            return {}

        # 构建IN查询，使用参数化查询防止SQL注入
        placeholders = ','.join(['?' for _ in run_ids])
        sql = f"SELECT * FROM run_records WHERE run_id IN ({placeholders})"
        rows = conn.execute(sql, run_ids).fetchall()
        return {row['run_id']: RunRecordRepo._row_to_record(row) for row in rows}

    @staticmethod
    def get_record(conn: Connection, run_id: str) -> RunRecord:
        """
        查询单条运行记录

        Raises:
            RecordNotFoundError: 记录不存在
        """
        records = RunRecordRepo.get_records_by_ids(conn, [run_id])
        if run_id not in records:
            raise RecordNotFoundError(f"未找到运行记录: {run_id}")
        return records[run_id]

    @staticmethod
    def list_latest(conn: Connection, limit: int = 10) -> List[RunRecord]:
        """按创建时间倒序列出最近的运行记录"""
        sql = "SELECT * FROM run_records ORDER BY created_at DESC, rowid DESC LIMIT ?"
        rows = conn.execute(sql, (limit,)).fetchall()
        return [RunRecordRepo._row_to_record(row) for row in rows]

    @staticmethod
    def delete_record(conn: Connection, run_id: str) -> bool:
        """
        删除运行记录

        Returns:
            bool: 删除是否成功
        """
        cursor = conn.execute("DELETE FROM run_records WHERE run_id = ?", (run_id,))
        return cursor.rowcount > 0

    @staticmethod
    def _row_to_record(row) -> RunRecord:
        """将数据库行转换为 RunRecord 对象"""
        return RunRecord(
            run_id=row['run_id'],
            command=row['command'],
            kind=row['kind'],
            order=row['relax_order'],
            status=row['status'],
            bound=row['bound'],
            input_text=row['input_text'] or '',
            result_json=row['result_json'],
        )
