#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
数据模型定义
定义问题文件、结果记录与运行记录的数据结构
"""

import json
import math
import uuid
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from .gram import SohsCertificate
from .hierarchy import BoundReport, NcProblem
from .nc_types import RelaxationMode
from .poly_text import format_polynomial, parse_polynomial
from .utils import json_float

# 结果 JSON 的版本号
RESULT_SCHEMA = 1


class ProblemFile(BaseModel):
    """问题文件的结构化内容（多项式仍为文本）"""
    nvars: int = Field(description="变量个数")
    objective: str = Field(description="目标多项式文本")
    inequalities: List[str] = Field(default_factory=list, description="不等式约束 g ⪰ 0")
    equalities: List[str] = Field(default_factory=list, description="等式约束 h = 0")
    kind: RelaxationMode = Field(default=RelaxationMode.EIGENVALUE, description="特征值或迹")
    order: Optional[int] = Field(default=None, description="松弛阶数，缺省取最小可行阶数")
    aliases: Optional[bool] = Field(default=None, description="是否允许 x,y 别名")
    options: Dict[str, float] = Field(default_factory=dict, description="求解选项覆盖")

    def to_problem(self, kind: Optional[RelaxationMode] = None, order: Optional[int] = None) -> NcProblem:
        """解析多项式并构造 NcProblem，kind/order 参数优先于文件中的值"""
        def parse(text: str):
            return parse_polynomial(text, self.nvars, self.aliases)

        return NcProblem(
            objective=parse(self.objective),
            inequalities=[parse(t) for t in self.inequalities],
            equalities=[parse(t) for t in self.equalities],
            kind=kind or self.kind,
            order=order if order is not None else self.order,
        )


class ConstraintTermRecord(BaseModel):
    constraint: str
    weights: List[str]


class CertificateRecord(BaseModel):
    """证书的文本形式"""
    summands: List[str] = Field(default_factory=list)
    constraint_terms: List[ConstraintTermRecord] = Field(default_factory=list)
    residual_norm: float = 0.0

    @classmethod
    def from_certificate(cls, cert: SohsCertificate) -> "CertificateRecord":
        return cls(
            summands=[format_polynomial(g) for g in cert.summands],
            constraint_terms=[ConstraintTermRecord(constraint=format_polynomial(t.constraint),
                                                   weights=[format_polynomial(p) for p in t.weights])
                              for t in cert.constraint_terms],
            residual_norm=json_float(cert.residual_norm()),
        )


class ResultRecord(BaseModel):
    """命令的机器可读结果（JSON）"""
    schema_version: int = Field(default=RESULT_SCHEMA, alias="schema")
    command: str
    kind: str
    order: Optional[int] = None
    status: str
    bounds: Dict[str, Any] = Field(default_factory=dict, description="primal / dual / sample")
    certificate: Optional[CertificateRecord] = None
    residuals: Dict[str, Any] = Field(default_factory=dict)
    timings: Dict[str, float] = Field(default_factory=dict)
    metadata: Dict[str, Any] = Field(default_factory=dict)

    model_config = {"populate_by_name": True}

    @classmethod
    def from_report(cls, command: str, report: BoundReport) -> "ResultRecord":
        """
        由 BoundReport 构造结果记录

        Args:
            command: 命令名
            report: 求解结果

        Returns:
            ResultRecord: 结果记录
        """
        solution = report.solution
        residuals = {}
        if solution is not None:
            residuals = {
                "primal_infeasibility": json_float(solution.primal_infeasibility),
                "dual_infeasibility": json_float(solution.dual_infeasibility),
                "gap": json_float(report.gap),
                "iterations": solution.iterations,
            }
        metadata = dict(report.metadata)
        metadata["symmetrized"] = report.symmetrized
        return cls(
            command=command,
            kind=report.mode.value,
            order=report.order,
            status=report.status.value,
            bounds={
                "primal": json_float(report.primal_bound),
                "dual": json_float(report.dual_bound),
                "sample": json_float(report.sample_bound),
            },
            certificate=CertificateRecord.from_certificate(report.certificate) if report.certificate else None,
            residuals=residuals,
            timings={k: round(v, 6) for k, v in report.timings.items()},
            metadata=metadata,
        )

    def to_json(self, include_timings: bool = True) -> str:
        """键排序、缩进的 JSON 文本；include_timings=False 用于确定性比较"""
        data = self.model_dump(by_alias=True)
        if not include_timings:
            data.pop("timings", None)
        return json.dumps(_clean(data), ensure_ascii=False, indent=2, sort_keys=True)


def _clean(value):
    """非有限浮点数转为字符串，保证 JSON 合法"""
    if isinstance(value, float) and not math.isfinite(value):
        return json_float(value)
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


class RunRecord(BaseModel):
    """运行记录（存入 SQLite 的一行）"""
    run_id: str = Field(description="运行唯一标识符(UUID)")
    command: str = Field(description="命令名")
    kind: str = Field(description="松弛模式")
    order: Optional[int] = Field(default=None, description="松弛阶数")
    status: str = Field(description="结果状态")
    bound: Optional[str] = Field(default=None, description="报告的界（17位有效数字文本）")
    input_text: str = Field(default="", description="输入问题文本或预置名")
    result_json: str = Field(description="完整结果 JSON")

    @classmethod
    def create_record(cls, result: ResultRecord, input_text: str) -> "RunRecord":
        """
        创建运行记录实例

        Args:
            result: 结果记录
            input_text: 输入问题文本

        Returns:
            RunRecord: 运行记录实例
        """
        # 生成不带横线的UUID
        run_id = uuid.uuid4().hex
        bound = result.bounds.get("dual")
        return cls(
            run_id=run_id,
            command=result.command,
            kind=result.kind,
            order=result.order,
            status=result.status,
            bound=None if bound is None else str(bound),
            input_text=input_text,
            result_json=result.to_json(),
        )

    def __str__(self) -> str:
        return f"RunRecord(id={self.run_id}, command={self.command}, status={self.status}, bound={self.bound})"
