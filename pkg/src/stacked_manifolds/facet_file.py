"""
面文件读写

每行一个面，空白分隔的顶点记号，'#' 之后为注释。
记号全部为正整数时直接作为顶点标号；否则按首次出现顺序映射到 1..n。
"""

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Union

from .complex_core import ComplexError, SimplicialComplex, from_facets, vertices_of

logger = logging.getLogger(__name__)

_POSITIVE_INT_PATTERN = re.compile(r"[1-9][0-9]*")


class FacetFileError(ComplexError):
    """面文件格式错误"""
    def __init__(self, message: str, path: str = "<text>", line_no: Optional[int] = None):
        self.path = path
        self.line_no = line_no
        where = f"{path}:{line_no}" if line_no is not None else path
        super().__init__(f"{where}: {message}")


@dataclass
class ParsedFacetFile:
    complex: SimplicialComplex
    labels: Optional[Dict[str, int]] = None     # 记号 -> 顶点，仅标识符模式


def parse_facet_text(text: str, source: str = "<text>") -> ParsedFacetFile:
    rows = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(set(tokens)) != len(tokens):
            raise FacetFileError("同一行内顶点重复", source, line_no)
        rows.append(tokens)
    if not rows:
        raise FacetFileError("没有任何面", source)

    if all(_POSITIVE_INT_PATTERN.fullmatch(t) for tokens in rows for t in tokens):
        facets = [[int(t) for t in tokens] for tokens in rows]
        n = max(v for facet in facets for v in facet)
        return ParsedFacetFile(from_facets(n, facets))

    labels: Dict[str, int] = {}
    for tokens in rows:
        for t in tokens:
            if t not in labels:
                labels[t] = len(labels) + 1
    facets = [[labels[t] for t in tokens] for tokens in rows]
    logger.info(f"{source}: 标识符模式, {len(labels)} 个顶点")
    return ParsedFacetFile(from_facets(len(labels), facets), labels)


def read_facet_file(path: Union[str, Path]) -> ParsedFacetFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise FacetFileError(f"无法按 utf-8 解码: {e}", str(path))
    return parse_facet_text(text, str(path))


def format_facet_text(delta: SimplicialComplex) -> str:
    """规范输出: 面按字典序，面内顶点递增"""
    lines: List[str] = [
        " ".join(str(v) for v in vertices_of(facet)) for facet in delta.facets if facet
    ]
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def write_facet_file(delta: SimplicialComplex, path: Union[str, Path]) -> Path:
    path = Path(path)
    text = format_facet_text(delta)
    if not text:
        logger.warning(f"{path}: 复形没有非空面, 写出空文件")
    path.write_text(text, encoding="utf-8")
    return path
