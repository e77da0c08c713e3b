#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SQLite 命令行工具
用于查询和管理已保存的运行记录
"""

import argparse
import sys
import os

# 将项目根目录添加到 Python 路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.store.sqlite_conn import get_sqlite_db
from src.store.sqlite_repo import RunRecordRepo
from src.store.sqlite_types import RecordNotFoundError


def query_run(run_id: str, db_path: str = None) -> int:
    """
    查询并显示单条运行记录

    Args:
        run_id: 运行ID
        db_path: 数据库路径
    """
    try:
        with get_sqlite_db(db_path) as db:
            record = RunRecordRepo.get_record(db.get_connection(), run_id)
    except RecordNotFoundError:
        print(f"❌ 未找到运行记录 '{run_id}'")
        return 1

    print(f"🧮 命令: {record.command} | 模式: {record.kind} | 阶数: {record.order}")
    print(f"📌 状态: {record.status} | 界: {record.bound}")
    print("=" * 60)
    print(record.input_text)
    print("=" * 60)
    print(record.result_json)
    return 0


def list_runs(limit: int, db_path: str = None) -> int:
    """列出最近的运行记录"""
    with get_sqlite_db(db_path) as db:
        records = RunRecordRepo.list_latest(db.get_connection(), limit)
    if not records:
        print("📭 暂无运行记录")
        return 0
    for record in records:
        print(f"{record.run_id}  {record.command:<10} {record.kind:<10} d={record.order}  "
              f"{record.status:<16} {record.bound}")
    return 0


def delete_run(run_id: str, db_path: str = None) -> int:
    """删除运行记录"""
    with get_sqlite_db(db_path) as db:
        conn = db.get_connection()
        deleted = RunRecordRepo.delete_record(conn, run_id)
        conn.commit()
    print(f"🗑️ 已删除: {run_id}" if deleted else f"❌ 未找到运行记录 '{run_id}'")
    return 0 if deleted else 1


def main(argv=None) -> int:
    """主函数"""
    parser = argparse.ArgumentParser(
        description="SQLite 运行记录查询工具",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
使用示例:
  python sqlite_cli.py -l 10                # 最近 10 条运行记录
  python sqlite_cli.py -q 3f2a...           # 查看某次运行的输入与结果
        """
    )
    parser.add_argument('-q', '--query', metavar='RUN_ID', help='查询指定运行记录')
    parser.add_argument('-l', '--list', type=int, metavar='N', help='列出最近 N 条运行记录')
    parser.add_argument('--delete', metavar='RUN_ID', help='删除指定运行记录')
    parser.add_argument('--db', help='数据库路径（默认取 NCOPT_DB_PATH）')

    args = parser.parse_args(argv)

    try:
        if args.query:
            return query_run(args.query, args.db)
        if args.list is not None:
            return list_runs(args.list, args.db)
        if args.delete:
            return delete_run(args.delete, args.db)
    except Exception as e:
        print(f"❌ 查询失败: {e}")
        return 1
    parser.print_help()
    return 0


if __name__ == '__main__':
    sys.exit(main())
