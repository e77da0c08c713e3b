#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SDPA 稀疏格式（.dat-s）读写
第1行约束数 k，第2行块数，第3行块尺寸（负数为对角块），第4行 b，
之后每行一个上三角非零元：matno blkno i j value（matno 0 为 C）。
"""

import re
from typing import Dict, List, Tuple

import numpy as np
import scipy.sparse as sp

from .sdp_problem import SdpProblem
from .sdp_types import SdpFormatError

# 头部行中允许出现的分隔符
_HEADER_NOISE = re.compile(r"[{}(),]")


def _fmt(value: float) -> str:
    """17位有效数字；整数值补 .0"""
    text = format(float(value), ".17g")
    if not any(ch in text for ch in ".eEn"):
        text += ".0"
    return text


def export_sdpa(problem: SdpProblem) -> str:
    """
    导出为 SDPA 稀疏格式文本，条目按 (matno, blkno, i, j) 升序

    Raises:
        SdpFormatError: 没有约束（格式要求 k ≥ 1）
    """
    if problem.num_constraints < 1:
        raise SdpFormatError("SDPA 格式要求至少一个约束")
    lines = [
        str(problem.num_constraints),
        str(len(problem.block_sizes)),
        " ".join(str(s) for s in problem.block_sizes),
        " ".join(_fmt(v) for v in problem.b),
    ]
    matrices = [[sp.csr_matrix(c) for c in problem.C]] + problem.A
    for matno, blocks in enumerate(matrices):
        for blkno, mat in enumerate(blocks, start=1):
            upper = sp.triu(mat).tocoo()
            order = np.lexsort((upper.col, upper.row))
            for idx in order:
                value = upper.data[idx]
                if value == 0:
                    continue
                lines.append(f"{matno} {blkno} {upper.row[idx] + 1} {upper.col[idx] + 1} {_fmt(value)}")
    return "\n".join(lines) + "\n"


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """去掉注释行（以 " 或 * 开头）与空行，保留原始行号"""
    result = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "\"*":
            continue
        result.append((number, line))
    return result


def import_sdpa(text: str) -> SdpProblem:
    """
    解析 SDPA 稀疏格式文本

    Raises:
        SdpFormatError: 语法错误或维度不一致（携带行号）
    """
    lines = _content_lines(text)
    if len(lines) < 4:
        raise SdpFormatError("文件不完整：缺少头部四行", line=lines[-1][0] if lines else 0)

    def header_numbers(index: int) -> List[str]:
        number, line = lines[index]
        return _HEADER_NOISE.sub(" ", line).split()

    try:
        k = int(header_numbers(0)[0])
    except (ValueError, IndexError):
        raise SdpFormatError("无法解析约束个数", line=lines[0][0])
    try:
        nblocks = int(header_numbers(1)[0])
    except (ValueError, IndexError):
        raise SdpFormatError("无法解析块数", line=lines[1][0])
    try:
        block_sizes = [int(float(s)) for s in header_numbers(2)[:nblocks]]
    except ValueError:
        raise SdpFormatError("无法解析块尺寸", line=lines[2][0])
    if len(block_sizes) != nblocks or any(s == 0 for s in block_sizes):
        raise SdpFormatError(f"块尺寸个数应为 {nblocks} 且非零", line=lines[2][0])
    try:
        b = np.array([float(s) for s in header_numbers(3)][:k])
    except ValueError:
        raise SdpFormatError("无法解析右端项 b", line=lines[3][0])
    if b.shape[0] != k:
        raise SdpFormatError(f"右端项个数 {b.shape[0]} 与约束个数 {k} 不一致", line=lines[3][0])

    dims = [abs(s) for s in block_sizes]
    # (matno, blkno) -> {(i, j): value}
    entries: Dict[Tuple[int, int], Dict[Tuple[int, int], float]] = {}
    for number, line in lines[4:]:
        parts = line.split()
        if len(parts) != 5:
            raise SdpFormatError(f"条目行应有5个字段: {line!r}", line=number)
        try:
            matno, blkno, i, j = (int(p) for p in parts[:4])
            value = float(parts[4])
        except ValueError:
            raise SdpFormatError(f"条目行无法解析: {line!r}", line=number)
        if not 0 <= matno <= k:
            raise SdpFormatError(f"矩阵编号 {matno} 超出 0..{k}", line=number)
        if not 1 <= blkno <= nblocks:
            raise SdpFormatError(f"块编号 {blkno} 超出 1..{nblocks}", line=number)
        n = dims[blkno - 1]
        if not (1 <= i <= n and 1 <= j <= n):
            raise SdpFormatError(f"下标 ({i},{j}) 超出块尺寸 {n}", line=number)
        if block_sizes[blkno - 1] < 0 and i != j:
            raise SdpFormatError(f"对角块中出现非对角元 ({i},{j})", line=number)
        i, j = min(i, j), max(i, j)
        entries.setdefault((matno, blkno - 1), {})[(i - 1, j - 1)] = value

    def build(matno: int, blk: int) -> sp.csr_matrix:
        n = dims[blk]
        data = entries.get((matno, blk), {})
        rows, cols, vals = [], [], []
        for (i, j), v in data.items():
            rows.append(i)
            cols.append(j)
            vals.append(v)
            if i != j:
                rows.append(j)
                cols.append(i)
                vals.append(v)
        return sp.csr_matrix((vals, (rows, cols)), shape=(n, n))

    C = [build(0, blk).toarray() for blk in range(nblocks)]
    A = [[build(matno, blk) for blk in range(nblocks)] for matno in range(1, k + 1)]
    return SdpProblem.build(block_sizes, C, A, b)
