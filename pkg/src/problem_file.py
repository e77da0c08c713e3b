#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
问题文件与矩阵文件的读取，以及证书的文本输出

问题文件为简单的键值格式，每行一个 `键 = 值`（也接受 `键: 值`），# 开头为注释：

    nvars = 2
    objective = 1+2*x+x^2+x*y^2+2*y^2+y^2*x+y*x^2*y+y^4
    ineq = 1 - x^2          # 可重复
    eq = x*y - y*x          # 可重复
    kind = trace
    order = 2
"""

import csv
import io
import re
from fractions import Fraction
from typing import Dict, List, Tuple

from .gram import SohsCertificate
from .models import ProblemFile
from .nc_types import NotSymmetricError, PolynomialParseError, ProblemFileError, RelaxationMode
from .poly_text import format_polynomial, parse_polynomial
from .utils import format_float

_LINE_RE = re.compile(r"^\s*(?P<key>[A-Za-z_]+)\s*(?:=|:)\s*(?P<value>.*?)\s*$")

_SCALAR_KEYS = {"nvars", "objective", "kind", "order", "aliases", "tol_feas", "tol_gap", "max_iter"}
_LIST_KEYS = {"ineq": "inequalities", "eq": "equalities"}
_OPTION_KEYS = ("tol_feas", "tol_gap", "max_iter")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_problem(text: str) -> ProblemFile:
    """
    解析问题文件

    Args:
        text: 文件内容

    Returns:
        ProblemFile: 结构化问题（已验证可构造 NcProblem）

    Raises:
        ProblemFileError: 键值语法错误、缺少必需键、重复键
        PolynomialParseError: 多项式语法错误（携带行号与列号）
        NotSymmetricError: 不等式约束不对称
    """
    scalars: Dict[str, Tuple[str, int, int]] = {}
    lists: Dict[str, List[Tuple[str, int, int]]] = {name: [] for name in _LIST_KEYS.values()}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        match = _LINE_RE.match(line)
        if match is None:
            raise ProblemFileError(f"无法解析的行: {raw.strip()!r}", line=number)
        key = match.group("key").lower()
        value = match.group("value")
        column = match.start("value") + 1
        if key in _LIST_KEYS:
            lists[_LIST_KEYS[key]].append((value, number, column))
        elif key in _SCALAR_KEYS:
            if key in scalars:
                raise ProblemFileError(f"重复的键 {key!r}", line=number)
            scalars[key] = (value, number, column)
        else:
            raise ProblemFileError(f"未知的键 {key!r}", line=number)

    if "nvars" not in scalars:
        raise ProblemFileError("缺少 nvars")
    if "objective" not in scalars or not scalars["objective"][0]:
        line = scalars["objective"][1] if "objective" in scalars else 0
        raise ProblemFileError("目标多项式为空", line=line)

    def integer(key: str) -> int:
        value, number, _ = scalars[key]
        try:
            return int(value)
        except ValueError:
            raise ProblemFileError(f"{key} 应为整数: {value!r}", line=number)

    nvars = integer("nvars")
    if nvars < 1:
        raise ProblemFileError(f"nvars 必须 ≥ 1: {nvars}", line=scalars["nvars"][1])

    fields = dict(nvars=nvars, objective=scalars["objective"][0],
                  inequalities=[v for v, _, _ in lists["inequalities"]],
                  equalities=[v for v, _, _ in lists["equalities"]])
    if "kind" in scalars:
        value, number, _ = scalars["kind"]
        try:
            fields["kind"] = RelaxationMode(value.lower())
        except ValueError:
            raise ProblemFileError(f"kind 只能是 eigenvalue 或 trace: {value!r}", line=number)
    if "order" in scalars:
        fields["order"] = integer("order")
    if "aliases" in scalars:
        value, number, _ = scalars["aliases"]
        if value.lower() not in ("on", "off", "true", "false"):
            raise ProblemFileError(f"aliases 只能是 on/off: {value!r}", line=number)
        fields["aliases"] = value.lower() in ("on", "true")
    options = {}
    for key in _OPTION_KEYS:
        if key in scalars:
            value, number, _ = scalars[key]
            try:
                options[key] = float(value)
            except ValueError:
                raise ProblemFileError(f"{key} 应为数值: {value!r}", line=number)
    fields["options"] = options
    problem_file = ProblemFile(**fields)

    # 逐行解析多项式，错误位置换算到文件中的行列
    located = [scalars["objective"]] + lists["inequalities"] + lists["equalities"]
    inequality_lines = {number for _, number, _ in lists["inequalities"]}
    for value, number, column in located:
        try:
            poly = parse_polynomial(value, nvars, problem_file.aliases)
        except PolynomialParseError as e:
            raise type(e)(e.message, column=column + max(e.column, 1) - 1, line=number)
        if number in inequality_lines and not poly.is_symmetric():
            raise NotSymmetricError(f"[第{number}行] 不等式约束必须对称: {value}")
    problem_file.to_problem()
    return problem_file


def read_matrix_csv(text: str) -> List[List[Fraction]]:
    """
    读取逗号分隔的非负矩阵，数值按十进制精确转换

    Raises:
        ProblemFileError: 空文件、行长度不一致、非数值或负数（携带行号）
    """
    rows: List[List[Fraction]] = []
    width = None
    for number, record in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [cell.strip() for cell in record]
        if not any(cells) or cells[0].startswith("#"):
            continue
        try:
            row = [Fraction(cell) for cell in cells]
        except (ValueError, ZeroDivisionError):
            raise ProblemFileError(f"矩阵元素不是数值: {record}", line=number)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ProblemFileError(f"行长度 {len(row)} 与第一行的 {width} 不一致", line=number)
        if any(v < 0 for v in row):
            raise ProblemFileError("矩阵元素必须非负", line=number)
        rows.append(row)
    if not rows:
        raise ProblemFileError("矩阵文件为空")
    return rows


def render_certificate(cert: SohsCertificate) -> str:
    """
    证书的确定性文本：每行一个 (g_i)，约束项按 g 分组，末行为残差范数

    各 g_i 仅在正交混合意义下唯一；空证书输出 0。
    """
    if not cert.summands and not any(t.weights for t in cert.constraint_terms):
        return "0"
    lines = [f"# SOHS: {len(cert.summands)} 个平方项（在正交变换意义下唯一）"]
    lines.extend(f"({format_polynomial(g)})" for g in cert.summands)
    for term in cert.constraint_terms:
        if not term.weights:
            continue
        lines.append(f"# 约束 {format_polynomial(term.constraint)}: {len(term.weights)} 个权重项")
        lines.extend(f"({format_polynomial(p)})" for p in term.weights)
    lines.append(f"# 残差范数: {format_float(cert.residual_norm())}")
    return "\n".join(lines)


def parse_certificate_summands(text: str, nvars: int) -> List:
    """render_certificate 输出中各平方项的逆解析（忽略注释行）"""
    polys = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("# 约束"):
            break
        if not line or line.startswith("#") or line == "0":
            continue
        polys.append(parse_polynomial(line.strip("()"), nvars))
    return polys
