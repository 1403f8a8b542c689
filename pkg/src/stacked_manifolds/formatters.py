"""
报告格式化工具
"""

from dataclasses import fields, is_dataclass
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence

import pandas as pd

from .complex_core import SimplicialComplex, vertices_of
from .homology import BettiVector, FieldSpec

# 超过此范围的整数以字符串输出
JSON_SAFE_LIMIT = 2 ** 53


def format_result(result: Any, max_rows: int = 100) -> Any:
    """把库返回值转换为可 JSON 序列化的结构"""
    if result is None:
        return None

    if isinstance(result, bool):
        return result

    if isinstance(result, int):
        return format_int(result)

    if isinstance(result, Enum):
        return result.value

    if isinstance(result, SimplicialComplex):
        return _format_complex(result, max_rows)

    if isinstance(result, FieldSpec):
        return result.name

    if isinstance(result, BettiVector):
        return {
            "field": result.field.name,
            "betti": [format_int(b) for b in result.betti],
            "empty_face_betti": result.empty_face_betti,
        }

    if is_dataclass(result) and not isinstance(result, type):
        return {
            f.name: format_result(getattr(result, f.name), max_rows)
            for f in fields(result) if not f.name.startswith("_")
        }

    if isinstance(result, dict):
        return {str(k): format_result(v, max_rows) for k, v in result.items()}

    if isinstance(result, (list, tuple)):
        return [format_result(v, max_rows) for v in result]

    # 原始类型直接返回
    return result


def format_int(value: int) -> Any:
    if -JSON_SAFE_LIMIT < value < JSON_SAFE_LIMIT:
        return value
    return {"big": str(value)}


def _format_complex(delta: SimplicialComplex, max_rows: int) -> Dict:
    """格式化复形: 极大面列表，超过 max_rows 时截断"""
    facets = [list(vertices_of(f)) for f in delta.facets]
    result = {"n": delta.n, "dim": delta.dim, "facet_count": len(facets), "facets": facets}
    if len(facets) > max_rows:
        result["facets"] = facets[:max_rows]
        result["warning"] = f"数据已截断，只显示前 {max_rows} 个面"
        result["total_rows"] = len(facets)
    return result


def format_vector(name: str, values: Sequence[int]) -> str:
    """name = (a, b, c)"""
    return f"{name} = ({', '.join(str(v) for v in values)})"


def yes_no(value: Optional[bool]) -> str:
    if value is None:
        return "n/a"
    return "yes" if value else "no"


def format_table(rows: Iterable[Dict[str, Any]], columns: List[str]) -> str:
    """用 pandas 渲染定宽文本表"""
    df = pd.DataFrame(list(rows), columns=columns)
    if df.empty:
        return "(empty)"
    return df.to_string(index=False)


G_TILDE = "g̃"


def _stackedness_lines(report: Any) -> List[str]:
    """按 r 汇总每个判据的结论"""
    by_r: Dict[int, Dict[str, Any]] = {}
    for verdict in report.stackedness:
        by_r.setdefault(verdict.r, {})[verdict.criterion.value] = verdict

    lines = []
    for r, found in sorted(by_r.items()):
        level = r - 1
        if "interior-faces" in found:
            direct = found["interior-faces"]
            line = f"{level}-stacked: {yes_no(direct.verdict)}"
            via_h = found.get("h-double-prime")
            if via_h is not None:
                line += f" [{via_h.notes[0]} -> {yes_no(via_h.verdict)}]"
            lines.append(line)
        else:
            local = found.get("local")
            closed = found.get("delta-reconstruction")
            line = f"locally {level}-stacked: {yes_no(local.verdict if local else None)}; "
            line += f"{level}-stacked: {yes_no(closed.verdict if closed else None)}"
            if closed is not None and any(n.startswith("sufficient-only") for n in closed.notes):
                line += " (sufficient-only)"
            via_g = found.get("g-tilde")
            if via_g is not None:
                line += f"; {G_TILDE}_{r} = 0 (WLP): {yes_no(via_g.verdict)}"
                if f"locally {level}-stacked: no" in via_g.notes:
                    line += " (local implication violated)"
            lines.append(line)
    return lines


def _verdict_rows(report: Any) -> List[Dict[str, Any]]:
    return [
        {
            "r": v.r,
            "level": v.stack_level,
            "criterion": v.criterion.value,
            "verdict": yes_no(v.verdict),
            "witness_facets": len(v.witness.facets) if v.witness is not None else "-",
        }
        for v in report.stackedness
    ]


def format_analysis_text(report: Any) -> str:
    """格式化分析报告为可读文本"""
    vectors = report.vectors
    cls = report.classification
    delta = report.complex

    lines = [
        f"# stacked-manifolds analysis (format {report.format_version})",
        f"source: {report.source}",
        f"vertices: n = {report.n}, dim = {delta.dim}, facets = {len(delta.facets)}",
    ]
    if report.unused_vertices:
        lines.append(f"unused vertices: {report.unused_vertices}")
    if report.labels:
        lines.append("labels: " + ", ".join(f"{k}->{v}" for k, v in report.labels.items()))
    lines.append(f"field: {report.field.name}")
    lines.append("")

    lines.append(format_vector("f", vectors.f))
    lines.append(format_vector("h", vectors.h))
    lines.append(format_vector("h'", vectors.h_prime))
    lines.append(format_vector("h''", vectors.h_double))
    lines.append(format_vector("g", vectors.g))
    lines.append(format_vector(G_TILDE, vectors.g_tilde))
    lines.append(format_vector("betti", vectors.betti.betti))
    lines.append("")

    lines.append(f"pure: {yes_no(cls.is_pure)}")
    lines.append(f"connected: {yes_no(cls.is_connected)}")
    lines.append(f"Cohen-Macaulay: {yes_no(cls.is_cohen_macaulay)}")
    lines.append(f"Buchsbaum: {yes_no(cls.is_buchsbaum)}")
    lines.append(f"homology sphere: {yes_no(cls.is_homology_sphere)}")
    lines.append(f"homology ball: {yes_no(cls.is_homology_ball)}")
    lines.append(f"closed manifold: {yes_no(cls.is_closed_manifold)}")
    lines.append(f"manifold with boundary: {yes_no(cls.is_manifold_with_boundary)}")
    lines.append(f"orientable: {yes_no(cls.is_orientable)}")
    if cls.boundary is not None:
        lines.append(f"boundary: {len([f for f in cls.boundary.facets if f])} facets")
        rows = [
            {"dim": k, "faces": report.vectors.f[k + 1], "interior": cls.interior_face_counts.get(k, 0)}
            for k in range(delta.dim + 1)
        ]
        lines.append(format_table(rows, ["dim", "faces", "interior"]))
    lines.append("missing faces by size: " + (
        ", ".join(f"{k}: {c}" for k, c in report.missing_face_counts.items()) or "none"))
    lines.append("")

    stack_lines = _stackedness_lines(report)
    if stack_lines:
        lines.append(f"stackedness (max r = {report.max_r}):")
        lines.extend(stack_lines)
        lines.append(format_table(_verdict_rows(report),
                                  ["r", "level", "criterion", "verdict", "witness_facets"]))
        lines.append("")

    if report.dehn_sommerville is not None:
        ds = report.dehn_sommerville
        lines.append(format_vector("Dehn-Sommerville residual (Euler form)", ds.eq2))
        lines.append(format_vector("Dehn-Sommerville residual (Betti form)", ds.eq3))
    probe = report.glbc_probe
    first = "none" if probe.first_negative_index is None else probe.first_negative_index
    lines.append(f"{G_TILDE} probe: min = {probe.min_value}, first negative index = {first}")
    lines.append(f"{G_TILDE} is M-vector: {yes_no(report.m_vector.is_m_vector)}")
    if report.identity_checks is not None:
        ic = report.identity_checks
        lines.append(f"h'' symmetric: {yes_no(ic.h_double_symmetric)}")
        lines.append(f"{G_TILDE} = h''_(d-i) - h'_(d-i+1): {yes_no(ic.g_tilde_holds)}")
        lines.append(f"Poincare duality: {yes_no(ic.poincare_holds)}")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)
