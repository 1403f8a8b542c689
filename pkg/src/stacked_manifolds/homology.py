"""
约化单纯同调 - 稀疏边界矩阵与域上的精确秩 (QQ 或 GF(p))
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Tuple

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .complex_core import ComplexError, Face, SimplicialComplex, vertices_of

logger = logging.getLogger(__name__)


class HomologyError(ComplexError):
    """同调计算异常"""
    pass


@dataclass(frozen=True)
class FieldSpec:
    """系数域: 有理数域或素域 GF(p)"""
    kind: str       # "rational" | "prime"
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("rational", "prime"):
            raise HomologyError(f"未知的域类型: {self.kind}")
        if self.kind == "prime" and not isprime(self.p):
            raise HomologyError(f"GF(p) 要求 p 为素数: {self.p}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """解析命令行写法: rat | gf2 | gf:<p>"""
        value = text.strip().lower()
        if value in ("rat", "q", "qq"):
            return cls.rationals()
        if value == "gf2":
            return cls.prime(2)
        if value.startswith("gf:"):
            try:
                p = int(value[3:])
            except ValueError:
                raise HomologyError(f"无法解析素数: {text}")
            return cls.prime(p)
        raise HomologyError(f"无法解析域: {text} (可选 rat | gf2 | gf:<p>)")

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    @property
    def name(self) -> str:
        return "QQ" if self.is_rational else f"GF({self.p})"

    def domain(self):
        return QQ if self.is_rational else GF(self.p)


RATIONALS = FieldSpec.rationals()
GF2 = FieldSpec.prime(2)


@dataclass(frozen=True)
class BoundaryMatrix:
    """∂_k: 列为 k 维面, 行为 (k-1) 维面, 规范顺序"""
    k: int
    rows: Tuple[Face, ...]
    cols: Tuple[Face, ...]
    entries: Tuple[Tuple[int, int, int], ...]   # (行, 列, ±1)

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.cols))

    def to_domain_matrix(self, field: FieldSpec) -> DomainMatrix:
        dom = field.domain()
        rows: Dict[int, Dict[int, Any]] = {}
        for i, j, sign in self.entries:
            rows.setdefault(i, {})[j] = dom(sign)
        return DomainMatrix(rows, self.shape, dom)

    def rank(self, field: FieldSpec) -> int:
        if not self.entries:
            return 0
        return self.to_domain_matrix(field).rank()


@dataclass(frozen=True)
class BettiVector:
    """约化 Betti 数 β_0..β_dim；β_{-1} 只对 {∅} 为 1，单独记录"""
    betti: Tuple[int, ...]
    field: FieldSpec
    empty_face_betti: int = 0

    def get(self, i: int) -> int:
        if i == -1:
            return self.empty_face_betti
        if 0 <= i < len(self.betti):
            return self.betti[i]
        return 0

    @property
    def total(self) -> int:
        return self.empty_face_betti + sum(self.betti)


def boundary_matrix(delta: SimplicialComplex, k: int) -> BoundaryMatrix:
    """
    第 k 个边界矩阵 (k = 0 为到 (-1) 链群的增广映射)。

    列 F = {v_0 < ... < v_k} 在行 F∖{v_j} 处的系数为 (-1)^j。
    """
    if delta.is_void or k < 0 or k > delta.dim:
        raise HomologyError(f"链维数超出范围: k={k}, dim={delta.dim}")
    cols = sorted(delta.faces(k), key=vertices_of)
    rows = sorted(delta.faces(k - 1), key=vertices_of)
    row_index = {f: i for i, f in enumerate(rows)}
    entries = []
    for j, face in enumerate(cols):
        for pos, v in enumerate(vertices_of(face)):
            sign = 1 if pos % 2 == 0 else -1
            entries.append((row_index[face & ~(1 << (v - 1))], j, sign))
    return BoundaryMatrix(k, tuple(rows), tuple(cols), tuple(entries))


def boundary_composition_vanishes(delta: SimplicialComplex, k: int,
                                  field: FieldSpec = RATIONALS) -> bool:
    """精确检验 ∂_k ∘ ∂_{k+1} = 0 (0 ≤ k < dim)"""
    if k < 0 or k + 1 > delta.dim:
        raise HomologyError(f"边界复合需要 0 ≤ k < dim: k={k}, dim={delta.dim}")
    lower = boundary_matrix(delta, k).to_domain_matrix(field)
    upper = boundary_matrix(delta, k + 1).to_domain_matrix(field)
    return lower.matmul(upper).is_zero_matrix


def betti_numbers(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> BettiVector:
    """
    约化 Betti 数 β_k = nullity(∂_k) - rank(∂_{k+1})。

    Args:
        delta: 非 void 复形
        field: 系数域

    Returns:
        BettiVector；{∅} 返回全零并置 β_{-1} = 1
    """
    if delta.is_void:
        raise HomologyError("void 复形没有约化同调")
    return _betti_cached(delta, field)


@lru_cache(maxsize=16384)
def _betti_cached(delta: SimplicialComplex, field: FieldSpec) -> BettiVector:
    if delta.is_empty:
        return BettiVector((), field, empty_face_betti=1)
    dim = delta.dim
    if len(delta.facets) == 1:
        # 单形可缩
        return BettiVector((0,) * (dim + 1), field)

    ranks = [boundary_matrix(delta, k).rank(field) for k in range(dim + 1)] + [0]
    betti = tuple(len(delta.faces(k)) - ranks[k] - ranks[k + 1] for k in range(dim + 1))
    if any(b < 0 for b in betti):
        raise HomologyError(f"Betti 数为负, 秩计算不一致: {betti}")
    logger.debug(f"β over {field.name} = {betti} (dim {dim}, {len(delta.facets)} facets)")
    return BettiVector(betti, field)


def reduced_euler_characteristic(delta: SimplicialComplex) -> int:
    """χ̃ = Σ_{k=-1}^{dim} (-1)^k f_k"""
    total = 0
    for k in range(-1, delta.dim + 1):
        sign = 1 if k % 2 == 0 else -1
        total += sign * len(delta.faces(k))
    return total
