"""
Stacked Manifolds CLI - 读取面文件，分类、计算计数向量并判定堆叠性
"""

import argparse
import json
import logging
import os
import sys
from collections import deque
from dataclasses import dataclass, field
from datetime import datetime
from logging.handlers import RotatingFileHandler
from typing import Any, Callable, Dict, List, Optional

from .complex_core import ComplexError, SimplicialComplex, delta_r, unused_vertices
from .enumerative import (
    DehnSommervilleResidual,
    DualityReport,
    GlbcProbe,
    MVectorVerdict,
    VectorSuite,
    dehn_sommerville_residual,
    glbc_probe,
    is_m_vector,
    missing_face_counts,
    symmetry_and_duality_checks,
    vector_suite,
)
from .facet_file import ParsedFacetFile, format_facet_text, read_facet_file, write_facet_file
from .formatters import format_analysis_text, format_result, yes_no
from .generators import FamilySpec, generate, parse_family
from .homology import FieldSpec, betti_numbers
from .manifold import (
    ClassificationReport,
    ManifoldError,
    boundary_complex,
    classify,
    is_closed_manifold,
    is_manifold_with_boundary,
    is_pure,
)
from .stackedness import (
    StackednessError,
    StackednessVerdict,
    is_locally_stacked,
    is_stacked_closed,
    is_stacked_via_g_tilde,
    is_stacked_via_h,
    is_stacked_with_boundary,
)

# 获取项目根目录
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

LOG_FILE_NAME = "stacked.log"
REPORT_FORMAT_VERSION = 1

logger = logging.getLogger(__name__)


def _get_log_dir() -> str:
    """日志目录，默认项目根目录下的 logs"""
    return os.environ.get("STACKED_LOG_DIR", os.path.join(PROJECT_ROOT, "logs"))


def setup_logging() -> None:
    """轮转文件日志 + 控制台；已有 handler 时不重复配置"""
    root_logger = logging.getLogger()
    if root_logger.handlers:
        return
    log_dir = _get_log_dir()
    os.makedirs(log_dir, exist_ok=True)

    # 轮转日志：单文件10MB，保留5个备份
    rotating_handler = RotatingFileHandler(
        os.path.join(log_dir, LOG_FILE_NAME),
        maxBytes=10 * 1024 * 1024,
        backupCount=5,
        encoding="utf-8",
    )
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(levelname)s - %(message)s",
        handlers=[rotating_handler, logging.StreamHandler()],
    )


@dataclass
class AnalysisReport:
    """analyze 命令的完整结果"""
    format_version: int
    source: str
    n: int
    unused_vertices: List[int]
    labels: Optional[Dict[str, int]]
    complex: SimplicialComplex
    field: FieldSpec
    vectors: VectorSuite
    classification: ClassificationReport
    missing_face_counts: Dict[int, int]
    max_r: int
    stackedness: List[StackednessVerdict]
    dehn_sommerville: Optional[DehnSommervilleResidual]
    glbc_probe: GlbcProbe
    m_vector: MVectorVerdict
    identity_checks: Optional[DualityReport]
    notes: List[str] = field(default_factory=list)


def default_max_r(delta: SimplicialComplex, cls: ClassificationReport) -> int:
    """带边流形取 d (h'' 判据的全部范围)，否则取 ⌊d/2⌋，至少为 1"""
    d = delta.dim + 1
    if cls.is_manifold_with_boundary:
        return max(1, d)
    return max(1, d // 2)


def _stackedness_verdicts(delta: SimplicialComplex, cls: ClassificationReport,
                          max_r: int, field: FieldSpec) -> List[StackednessVerdict]:
    d = delta.dim + 1
    verdicts: List[StackednessVerdict] = []
    if cls.is_manifold_with_boundary:
        for r in range(1, min(max_r, d) + 1):
            verdicts.append(is_stacked_with_boundary(delta, r - 1, field))
            verdicts.append(is_stacked_via_h(delta, r, field))
    elif cls.is_closed_manifold:
        oriented = cls.is_connected and betti_numbers(delta, field).get(d - 1) == 1
        for r in range(1, max_r + 1):
            if 2 * r <= d:
                verdicts.append(is_locally_stacked(delta, r, field))
            verdicts.append(is_stacked_closed(delta, r, field))
            if oriented and 2 * r < d:
                verdicts.append(is_stacked_via_g_tilde(delta, r, field))
    return verdicts


def build_analysis_report(parsed: ParsedFacetFile, source: str, field: FieldSpec,
                          max_r: Optional[int] = None) -> AnalysisReport:
    """对一个复形运行全部分析"""
    delta = parsed.complex
    cls = classify(delta, field)
    used = cls.field
    notes = list(cls.notes)
    if max_r is None:
        max_r = default_max_r(delta, cls)
    if max_r < 1:
        raise StackednessError(f"--max-r 必须 ≥ 1: {max_r}")

    vectors = vector_suite(delta, used)
    ds = dehn_sommerville_residual(delta, used) if cls.is_manifold_with_boundary else None

    identities = None
    if cls.is_closed_manifold and cls.is_connected:
        if betti_numbers(delta, used).get(delta.dim) == 1:
            identities = symmetry_and_duality_checks(delta, used)
        else:
            notes.append(f"identity checks skipped: not orientable over {used.name}")

    return AnalysisReport(
        format_version=REPORT_FORMAT_VERSION,
        source=source,
        n=delta.n,
        unused_vertices=unused_vertices(delta),
        labels=parsed.labels,
        complex=delta,
        field=used,
        vectors=vectors,
        classification=cls,
        missing_face_counts=missing_face_counts(delta),
        max_r=max_r,
        stackedness=_stackedness_verdicts(delta, cls, max_r, used),
        dehn_sommerville=ds,
        glbc_probe=glbc_probe(delta, used),
        m_vector=is_m_vector(vectors.g_tilde),
        identity_checks=identities,
        notes=notes,
    )


def _emit_complex(delta: SimplicialComplex, out: Optional[str]) -> None:
    """写出面文件；未指定 --out 时打印到标准输出"""
    if out:
        path = write_facet_file(delta, out)
        logger.info(f"已写入 {path} ({len([f for f in delta.facets if f])} 个面)")
    else:
        text = format_facet_text(delta)
        if not text:
            logger.warning("复形没有非空面, 输出为空")
        sys.stdout.write(text)


def cmd_analyze(args: argparse.Namespace) -> int:
    parsed = read_facet_file(args.path)
    report = build_analysis_report(parsed, args.path, FieldSpec.parse(args.field), args.max_r)
    if args.format == "json":
        print(json.dumps(format_result(report), ensure_ascii=False, indent=2))
    else:
        print(format_analysis_text(report))
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    family = parse_family(args.family)
    delta = generate(FamilySpec(family, list(args.params), args.seed))
    _emit_complex(delta, args.out)
    return 0


def cmd_check_stacked(args: argparse.Namespace) -> int:
    """退出码: 0 为真, 1 为假, 2 为错误"""
    delta = read_facet_file(args.path).complex
    field = FieldSpec.parse(args.field)
    if args.r < 1:
        raise StackednessError(f"--r 必须 ≥ 1: {args.r}")

    pure = is_pure(delta)
    with_boundary = pure and is_manifold_with_boundary(delta, field)
    closed = pure and not with_boundary and is_closed_manifold(delta, field)
    mode = args.mode
    if mode == "auto":
        if with_boundary:
            mode = "with-boundary"
        elif closed:
            mode = "closed"
        else:
            raise ManifoldError("输入既不是带边同调流形也不是闭同调流形", condition="mode")
    elif mode == "with-boundary" and not with_boundary:
        raise ManifoldError("--mode with-boundary 与实际分类不符: 输入不是带边同调流形", condition="mode")
    elif mode == "closed" and not closed:
        raise ManifoldError("--mode closed 与实际分类不符: 输入不是闭同调流形", condition="mode")

    if mode == "with-boundary":
        verdict = is_stacked_with_boundary(delta, args.r - 1, field)
        if args.r <= delta.dim + 1:
            cross = is_stacked_via_h(delta, args.r, field)
            verdict.notes.extend(cross.notes)
            if cross.verdict != verdict.verdict:
                logger.error(f"内部面判据与 h'' 判据不一致: r={args.r}")
                verdict.notes.append("criteria disagree")
    else:
        verdict = is_stacked_closed(delta, args.r, field)

    witness = len(verdict.witness.facets) if verdict.witness is not None else 0
    print(f"verdict: {yes_no(verdict.verdict)}")
    print(f"criterion: {verdict.criterion.value}")
    print(f"mode: {mode}")
    print(f"stack level: {verdict.stack_level}")
    print(f"witness facets: {witness}")
    for note in verdict.notes:
        print(f"note: {note}")
    return 0 if verdict.verdict else 1


def cmd_reconstruct(args: argparse.Namespace) -> int:
    delta = read_facet_file(args.path).complex
    _emit_complex(delta_r(delta, args.r), args.out)
    return 0


def cmd_boundary(args: argparse.Namespace) -> int:
    delta = read_facet_file(args.path).complex
    _emit_complex(boundary_complex(delta, FieldSpec.parse(args.field)), args.out)
    return 0


def read_run_log(limit: int = 50, log_dir: Optional[str] = None) -> Optional[List[Dict[str, Any]]]:
    """最近的 RUN 记录，最新的在前；日志文件不存在时返回 None"""
    limit = max(1, min(limit, 1000))
    log_file = os.path.join(log_dir or _get_log_dir(), LOG_FILE_NAME)
    if not os.path.exists(log_file):
        return None

    # 使用 deque 只保留最后 limit 行
    with open(log_file, "r", encoding="utf-8") as f:
        last_lines = deque((line for line in f if "RUN:" in line), maxlen=limit)

    entries = []
    for line in last_lines:
        try:
            entries.append(json.loads(line.split("RUN:", 1)[1].strip()))
        except Exception as e:
            logger.warning(f"解析日志行失败: {e}")
    entries.reverse()
    return entries


def cmd_logs(args: argparse.Namespace) -> int:
    entries = read_run_log(args.limit)
    if entries is None:
        print("暂无运行记录")
    else:
        print(json.dumps(entries, ensure_ascii=False, indent=2))
    return 0


_COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "analyze": cmd_analyze,
    "generate": cmd_generate,
    "check-stacked": cmd_check_stacked,
    "reconstruct": cmd_reconstruct,
    "boundary": cmd_boundary,
    "logs": cmd_logs,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stacked-manifolds",
                                     description="堆叠同调流形分析工具")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="分类并计算全部向量与堆叠性")
    analyze.add_argument("path", help="面文件")
    analyze.add_argument("--field", default="rat", help="系数域: rat(默认), gf2, gf:<p>")
    analyze.add_argument("--max-r", type=int, default=None, help="检验的最大 r")
    analyze.add_argument("--format", choices=["text", "json"], default="text", help="输出格式")

    gen = sub.add_parser("generate", help="生成示例族")
    gen.add_argument("family", help="族名，如 kuhnel-lassmann")
    gen.add_argument("params", nargs="*", type=int, help="整数参数")
    gen.add_argument("--seed", type=int, default=None, help="随机种子 (堆叠球面族)")
    gen.add_argument("-o", "--out", default=None, help="输出面文件，默认标准输出")

    check = sub.add_parser("check-stacked", help="判定 (r-1)-stacked")
    check.add_argument("path", help="面文件")
    check.add_argument("--r", type=int, required=True, help="定理下标 r (判定 (r-1)-stacked)")
    check.add_argument("--mode", choices=["auto", "closed", "with-boundary"], default="auto")
    check.add_argument("--field", default="rat", help="系数域")

    recon = sub.add_parser("reconstruct", help="输出 Δ(r)")
    recon.add_argument("path", help="面文件")
    recon.add_argument("--r", type=int, required=True)
    recon.add_argument("-o", "--out", default=None)

    bnd = sub.add_parser("boundary", help="输出边界复形 ∂Δ")
    bnd.add_argument("path", help="面文件")
    bnd.add_argument("--field", default="rat", help="系数域")
    bnd.add_argument("-o", "--out", default=None)

    logs = sub.add_parser("logs", help="查看最近的运行记录")
    logs.add_argument("--limit", type=int, default=50, help="返回最近的记录数，默认 50")
    return parser


def _log_run(args: argparse.Namespace, start_time: datetime, exit_code: int,
             error: Optional[Exception]) -> None:
    arguments = {k: v for k, v in vars(args).items() if k != "command"}
    log_entry = {
        "timestamp": start_time.isoformat(),
        "command": args.command,
        "arguments": arguments,
        "duration_seconds": (datetime.now() - start_time).total_seconds(),
        "success": error is None,
        "error_type": type(error).__name__ if error is not None else None,
        "exit_code": exit_code,
    }
    if error is not None:
        log_entry["error"] = str(error)
    logger.info(f"RUN: {json.dumps(log_entry, ensure_ascii=False)}")


def main(argv: Optional[List[str]] = None) -> int:
    """命令行入口，返回退出码"""
    args = build_parser().parse_args(argv)
    setup_logging()

    start_time = datetime.now()
    error: Optional[Exception] = None
    try:
        exit_code = _COMMANDS[args.command](args)
    except (ComplexError, OSError) as e:
        error = e
        print(f"错误: {e}", file=sys.stderr)
        exit_code = 2

    if args.command != "logs":
        _log_run(args, start_time, exit_code, error)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
