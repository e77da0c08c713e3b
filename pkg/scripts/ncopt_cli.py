#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
非交换多项式优化命令行工具
特征值/迹最小化、psd 秩下界、SOHS 判定与 SDPA 导出

退出码：0 最优/可行；2 判定为不可行或无界；1 错误（含求解未收敛）
"""

import argparse
import logging
import os
import sys
import time
from pathlib import Path
from typing import List, Optional, Tuple

# 将项目根目录添加到 Python 路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.gram import sohs_check
from src.hierarchy import (
    NcProblem,
    build_problem_program,
    build_psd_rank_program,
    minimize,
    psd_rank_lower_bound,
    psd_rank_problem,
)
from src.models import CertificateRecord, ProblemFile, ResultRecord, RunRecord
from src.nc_types import BoundStatus, NcOptError, RelaxationMode
from src.presets import PSD_RANK_EXAMPLE, preset_problem
from src.problem_file import parse_problem, read_matrix_csv, render_certificate
from src.sampling import Sampler, solve_with_sampling
from src.sdp import SolverOptions, export_sdpa
from src.store.sqlite_conn import get_sqlite_db
from src.store.sqlite_repo import RunRecordRepo
from src.utils import format_float, get_settings, json_float

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CLASSIFIED = 2


def _status(message: str) -> None:
    """状态行写到 stderr，stdout 只留给 JSON"""
    print(message, file=sys.stderr)


def _solver_options(args, file_options: Optional[dict] = None) -> SolverOptions:
    overrides = dict(file_options or {})
    if "max_iter" in overrides:
        overrides["max_iter"] = int(overrides["max_iter"])
    for key in ("tol_feas", "tol_gap", "max_iter"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    return SolverOptions.from_settings(**overrides)


def load_problem(args, kind: Optional[RelaxationMode]) -> Tuple[NcProblem, str, dict]:
    """
    从预置名、问题文件或命令行多项式构造问题

    Returns:
        (问题, 输入文本, 文件中的求解选项)
    """
    if args.preset:
        if args.preset != "chsh":
            raise NcOptError(f"预置问题 {args.preset} 不适用于此命令")
        prob = preset_problem(args.preset, args.order or 2)
        if kind is not None and prob.kind != kind:
            prob = NcProblem(objective=prob.objective, inequalities=prob.inequalities,
                             equalities=prob.equalities, kind=kind, order=prob.order)
        return prob, f"preset:{args.preset}", {}
    if args.problem:
        text = Path(args.problem).read_text(encoding="utf-8")
        problem_file = parse_problem(text)
    elif args.objective:
        if not args.nvars:
            raise NcOptError("使用 --objective 时必须给出 --nvars")
        problem_file = ProblemFile(nvars=args.nvars, objective=args.objective,
                                   inequalities=args.ineq or [], equalities=args.eq or [])
        text = args.objective
    else:
        raise NcOptError("需要问题文件、--objective 或 --preset")
    prob = problem_file.to_problem(kind=kind or getattr(args, "kind", None), order=args.order)
    return prob, text, problem_file.options


def _exit_code(status: BoundStatus) -> int:
    if status == BoundStatus.OPTIMAL:
        return EXIT_OK
    if status.is_classified:
        return EXIT_CLASSIFIED
    return EXIT_ERROR


def _emit(result: ResultRecord, args, input_text: str) -> None:
    """输出 JSON 并按需保存运行记录"""
    text = result.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        _status(f"📄 结果已写入: {args.out}")
    else:
        print(text)
    if args.save:
        record = RunRecord.create_record(result, input_text)
        with get_sqlite_db(args.db) as db:
            conn = db.get_connection()
            RunRecordRepo.upsert_records(conn, [record])
            conn.commit()
        _status(f"💾 运行记录已保存: {record.run_id}")


def _write_sdpa(program, path: str) -> None:
    if program.sdp is None:
        raise NcOptError("等式约束矛盾，没有可导出的半定规划")
    Path(path).write_text(export_sdpa(program.sdp), encoding="utf-8")
    _status(f"📤 SDPA 文件已写入: {path}")


def _parse_sizes(text: str) -> List[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise NcOptError(f"--sizes 应为逗号分隔的正整数: {text!r}")


def run_minimize(args, kind: RelaxationMode) -> int:
    """eig-min / trace-min"""
    prob, input_text, file_options = load_problem(args, kind)
    options = _solver_options(args, file_options)
    _status(f"🔧 {args.command}: n={prob.nvars}, d={prob.order}, "
            f"|𝔤|={len(prob.inequalities)}, |𝔥|={len(prob.equalities)}")
    if args.export_sdpa:
        _write_sdpa(build_problem_program(prob), args.export_sdpa)

    started = time.perf_counter()
    if args.trials > 0:
        seed = args.seed if args.seed is not None else get_settings().seed
        sampler = Sampler(args.sampler) if args.sampler else None
        report = solve_with_sampling(prob, lambda p: minimize(p, options), _parse_sizes(args.sizes),
                                     args.trials, seed, sampler)
    else:
        report = minimize(prob, options)
    report.timings["total"] = time.perf_counter() - started

    result = ResultRecord.from_report(args.command, report)
    _status(f"✅ 状态: {report.status.value}  界: {format_float(report.dual_bound)}"
            f"  (SOHS 侧 {format_float(report.primal_bound)})")
    if args.preset == "chsh" and report.status == BoundStatus.OPTIMAL:
        result.metadata["max_violation"] = json_float(-report.dual_bound)
        _status(f"📊 CHSH 最大违背: {format_float(-report.dual_bound)}")
    if report.certificate is not None:
        _status(render_certificate(report.certificate))
    _emit(result, args, input_text)
    return _exit_code(report.status)


def run_psd_rank(args) -> int:
    """psd-rank"""
    if args.preset:
        if args.preset != "psdrank-example":
            raise NcOptError(f"预置问题 {args.preset} 不适用于 psd-rank")
        matrix, input_text = PSD_RANK_EXAMPLE, "preset:psdrank-example"
    elif args.matrix:
        input_text = Path(args.matrix).read_text(encoding="utf-8")
        matrix = read_matrix_csv(input_text)
    else:
        raise NcOptError("psd-rank 需要矩阵 CSV 文件或 --preset psdrank-example")
    order = args.order or 2
    options = _solver_options(args)
    _status(f"🔧 psd-rank: 矩阵 {len(matrix)}×{len(matrix[0])}, d={order}")
    if args.export_sdpa:
        _write_sdpa(build_psd_rank_program(psd_rank_problem(matrix), order), args.export_sdpa)

    started = time.perf_counter()
    report = psd_rank_lower_bound(matrix, order, options)
    report.timings["total"] = time.perf_counter() - started
    _status(f"✅ 状态: {report.status.value}  ρ^({order}) = {format_float(report.dual_bound)}")
    _emit(ResultRecord.from_report("psd-rank", report), args, input_text)
    return _exit_code(report.status)


def run_sohs_check(args) -> int:
    """sohs-check"""
    prob, input_text, file_options = load_problem(args, None)
    options = _solver_options(args, file_options)
    started = time.perf_counter()
    check = sohs_check(prob.objective, prob.order, prob.kind, options)
    elapsed = time.perf_counter() - started
    solution = check.solution
    result = ResultRecord(
        command="sohs-check",
        kind=prob.kind.value,
        order=prob.order,
        status="Feasible" if check.feasible else "Infeasible",
        certificate=CertificateRecord.from_certificate(check.certificate) if check.certificate else None,
        residuals={
            "primal_infeasibility": json_float(solution.primal_infeasibility),
            "dual_infeasibility": json_float(solution.dual_infeasibility),
            "gap": json_float(solution.gap),
            "iterations": solution.iterations,
        },
        timings={"solve": round(elapsed, 6), "total": round(elapsed, 6)},
        metadata={"sdp_status": solution.status.value, "symmetrized": check.system.symmetrized,
                  "constraints": len(check.system.constraints)},
    )
    if check.feasible:
        _status("✅ 是 SOHS" if prob.kind == RelaxationMode.EIGENVALUE else "✅ 循环等价于 SOHS")
        if check.certificate is not None:
            _status(render_certificate(check.certificate))
    else:
        _status(f"❌ 不是 SOHS（{solution.status.value}）")
    _emit(result, args, input_text)
    return EXIT_OK if check.feasible else EXIT_CLASSIFIED


def run_export_sdpa(args) -> int:
    """export-sdpa：只组装矩规划并写出 SDPA 文件"""
    prob, _, _ = load_problem(args, None)
    program = build_problem_program(prob)
    if program.sdp is None:
        raise NcOptError("等式约束矛盾，没有可导出的半定规划")
    text = export_sdpa(program.sdp)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _status(f"📤 SDPA 文件已写入: {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, problem_input: bool = True) -> None:
    if problem_input:
        parser.add_argument('problem', nargs='?', help='问题文件路径')
        parser.add_argument('--objective', help='目标多项式文本（代替问题文件）')
        parser.add_argument('--nvars', type=int, help='与 --objective 一起使用的变量个数')
        parser.add_argument('--ineq', action='append', help='不等式约束 g ⪰ 0（可重复）')
        parser.add_argument('--eq', action='append', help='等式约束 h = 0（可重复）')
    parser.add_argument('-d', '--order', type=int, help='松弛阶数')
    parser.add_argument('--tol-feas', dest='tol_feas', type=float, help='可行性容差')
    parser.add_argument('--tol-gap', dest='tol_gap', type=float, help='对偶间隙容差')
    parser.add_argument('--max-iter', dest='max_iter', type=int, help='最大迭代次数')
    parser.add_argument('--seed', type=int, help='随机种子')
    parser.add_argument('--out', help='结果输出路径（默认 stdout）')
    parser.add_argument('--preset', choices=['chsh', 'psdrank-example'], help='预置问题')
    parser.add_argument('--save', action='store_true', help='保存运行记录到 SQLite')
    parser.add_argument('--db', help='SQLite 数据库路径（默认取 NCOPT_DB_PATH）')
    parser.add_argument('-v', '--verbose', action='store_true', help='输出调试日志')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="非交换多项式优化工具",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
使用示例:
  python ncopt_cli.py trace-min --order 2 problems/t.txt
  python ncopt_cli.py eig-min --preset chsh --order 2
  python ncopt_cli.py psd-rank --order 2 matrix.csv
  python ncopt_cli.py sohs-check --objective "1+2*x+x^2+x*y^2+2*y^2+y^2*x+y*x^2*y+y^4" --nvars 2
  python ncopt_cli.py export-sdpa --objective "x^2" --nvars 1 --out out.dat-s
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    for name, help_text in (('eig-min', '特征值最小化'), ('trace-min', '迹最小化')):
        cmd = sub.add_parser(name, help=help_text)
        _add_common(cmd)
        cmd.add_argument('--export-sdpa', dest='export_sdpa', help='同时导出 SDPA 文件')
        cmd.add_argument('--sampler', choices=[s.value for s in Sampler], help='采样方式')
        cmd.add_argument('--trials', type=int, default=100, help='采样次数（0 关闭采样）')
        cmd.add_argument('--sizes', default='1,2,3', help='采样矩阵阶数，逗号分隔')

    cmd = sub.add_parser('psd-rank', help='psd 秩下界')
    _add_common(cmd, problem_input=False)
    cmd.add_argument('matrix', nargs='?', help='非负矩阵 CSV 文件')
    cmd.add_argument('--export-sdpa', dest='export_sdpa', help='同时导出 SDPA 文件')

    cmd = sub.add_parser('sohs-check', help='SOHS 判定与证书')
    _add_common(cmd)
    cmd.add_argument('--kind', choices=[m.value for m in RelaxationMode], help='eigenvalue 或 trace')

    cmd = sub.add_parser('export-sdpa', help='导出矩松弛的 SDPA 文件')
    _add_common(cmd)
    cmd.add_argument('--kind', choices=[m.value for m in RelaxationMode], help='eigenvalue 或 trace')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """主函数，返回退出码"""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if getattr(args, 'kind', None):
        args.kind = RelaxationMode(args.kind)

    try:
        if args.command == 'eig-min':
            return run_minimize(args, RelaxationMode.EIGENVALUE)
        if args.command == 'trace-min':
            return run_minimize(args, RelaxationMode.TRACE)
        if args.command == 'psd-rank':
            return run_psd_rank(args)
        if args.command == 'sohs-check':
            return run_sohs_check(args)
        if args.command == 'export-sdpa':
            return run_export_sdpa(args)
        _status(f"❌ 未知命令: {args.command}")
        return EXIT_ERROR
    except (NcOptError, OSError) as e:
        _status(f"❌ 处理失败: {e}")
        return EXIT_ERROR
    except (ArithmeticError, ValueError) as e:
        logger.debug("数值计算异常", exc_info=True)
        _status(f"❌ 数值计算失败: {e}")
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
