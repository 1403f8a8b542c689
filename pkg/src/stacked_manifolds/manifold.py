"""
流形分类 - 基于面链环的 Betti 数判定同调球面/球体/流形、边界复形与内部面
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import networkx as nx

from .complex_core import (
    ComplexError,
    Face,
    SimplicialComplex,
    _maximal_faces,
    bits_of,
    empty_complex,
    face_dim,
    iter_faces,
    link,
    one_skeleton_graph,
    vertices_of,
)
from .homology import GF2, RATIONALS, BettiVector, FieldSpec, betti_numbers

logger = logging.getLogger(__name__)


class ManifoldError(ComplexError):
    """流形条件不满足"""
    def __init__(self, message: str, condition: str = ""):
        self.condition = condition
        super().__init__(message)


@dataclass
class ClassificationReport:
    """分类结果"""
    field: FieldSpec
    is_pure: bool
    is_connected: bool
    is_cohen_macaulay: bool
    is_buchsbaum: bool
    is_homology_sphere: bool
    is_homology_ball: bool
    is_closed_manifold: bool
    is_manifold_with_boundary: bool
    is_orientable: Optional[bool] = None
    boundary: Optional[SimplicialComplex] = None
    interior_face_counts: Dict[int, int] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)


def is_pure(delta: SimplicialComplex) -> bool:
    if delta.is_void:
        return False
    return len({f.bit_count() for f in delta.facets}) == 1


def is_connected(delta: SimplicialComplex) -> bool:
    graph = one_skeleton_graph(delta)
    if graph.number_of_nodes() == 0:
        return False
    return nx.is_connected(graph)


def sphere_profile_holds(betti: BettiVector, m: int) -> bool:
    """β_i = 0 (i ≠ m) 且 β_m = 1，包括 i = -1"""
    top = max(m, len(betti.betti) - 1)
    return all(betti.get(i) == (1 if i == m else 0) for i in range(-1, top + 1))


def _require_pure(delta: SimplicialComplex, what: str) -> None:
    if not is_pure(delta):
        raise ManifoldError(f"{what} 要求纯复形", condition="pure")


def _link_betti(delta: SimplicialComplex, face: Face, field: FieldSpec) -> BettiVector:
    return betti_numbers(link(delta, face), field)


def is_homology_sphere(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> bool:
    """所有面 (含 ∅) 的链环都具有 (d - #F) 维球面的 Betti 数"""
    _require_pure(delta, "is_homology_sphere")
    d = delta.dim
    for face in iter_faces(delta, include_empty=True):
        if not sphere_profile_holds(_link_betti(delta, face, field), d - face.bit_count()):
            return False
    return True


def is_closed_manifold(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> bool:
    """
    所有顶点链环都是同调球面。

    等价地逐个检查非空面: lk_{lk v}(G) = lk(G ∪ v)，
    于是只需对每个非空面 F 检查链环的球面 Betti 数。
    """
    _require_pure(delta, "is_closed_manifold")
    d = delta.dim
    for face in iter_faces(delta, include_empty=False):
        if not sphere_profile_holds(_link_betti(delta, face, field), d - face.bit_count()):
            return False
    return True


def _satisfies_condition_one(delta: SimplicialComplex, field: FieldSpec) -> bool:
    """非空面链环: β_i = 0 (i ≠ d - #F) 且 β_{d-#F} ∈ {0, 1}"""
    d = delta.dim
    for face in iter_faces(delta, include_empty=False):
        betti = _link_betti(delta, face, field)
        m = d - face.bit_count()
        for i in range(-1, max(m, len(betti.betti) - 1) + 1):
            value = betti.get(i)
            if i == m:
                if value not in (0, 1):
                    return False
            elif value != 0:
                return False
    return True


def boundary_complex(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> SimplicialComplex:
    """
    ∂Δ = {F ≠ ∅ : β_{d-#F}(lk F) = 0} ∪ {∅}。

    Raises:
        ManifoldError: 条件 (i) 不成立，或结果不是 (d-1) 维纯复形
    """
    _require_pure(delta, "boundary_complex")
    if not _satisfies_condition_one(delta, field):
        raise ManifoldError("条件 (i) 不成立: 存在链环的 Betti 数不是球面或球体型", condition="i")

    d = delta.dim
    found = {
        face for face in iter_faces(delta, include_empty=False)
        if _link_betti(delta, face, field).get(d - face.bit_count()) == 0
    }
    if not found:
        return empty_complex(delta.n)

    for face in found:
        for bit in bits_of(face):
            sub = face & ~bit
            if sub and sub not in found:
                raise ManifoldError(
                    f"∂Δ 不是单纯复形: 缺少 {vertices_of(sub)} ⊂ {vertices_of(face)}",
                    condition="ii")
    result = SimplicialComplex(delta.n, _maximal_faces(found))
    if not is_pure(result) or result.dim != d - 1:
        raise ManifoldError(f"∂Δ 不是 {d - 1} 维纯复形", condition="ii")
    return result


def is_manifold_with_boundary(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> bool:
    """条件 (i) 且 ∂Δ 非空并且是闭同调流形"""
    _require_pure(delta, "is_manifold_with_boundary")
    try:
        boundary = boundary_complex(delta, field)
    except ManifoldError as e:
        logger.debug(f"不是带边流形: {e}")
        return False
    if boundary.is_empty:
        return False
    return is_closed_manifold(boundary, field)


def interior_faces(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> Dict[int, List[Face]]:
    """Δ ∖ ∂Δ 的非空面，按维数分组"""
    boundary = boundary_complex(delta, field)
    grouped: Dict[int, List[Face]] = {}
    for face in iter_faces(delta, include_empty=False, descending=False):
        if not boundary.contains(face):
            grouped.setdefault(face_dim(face), []).append(face)
    return grouped


def is_homology_ball(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> bool:
    _require_pure(delta, "is_homology_ball")
    if not is_manifold_with_boundary(delta, field):
        return False
    if any(betti_numbers(delta, field).betti):
        return False
    return is_homology_sphere(boundary_complex(delta, field), field)


def is_orientable(delta: SimplicialComplex) -> bool:
    """连通闭流形在 QQ 上 β_d = 1"""
    if not (is_pure(delta) and is_connected(delta)):
        raise ManifoldError("可定向性要求连通纯复形", condition="orientable")
    if not (is_closed_manifold(delta, RATIONALS) or is_closed_manifold(delta, GF2)):
        raise ManifoldError("可定向性要求闭同调流形", condition="orientable")
    return betti_numbers(delta, RATIONALS).get(delta.dim) == 1


def _links_vanish_off_top(delta: SimplicialComplex, field: FieldSpec, include_empty: bool) -> bool:
    top = delta.dim
    for face in iter_faces(delta, include_empty=include_empty):
        betti = _link_betti(delta, face, field)
        m = top - face.bit_count()
        for i in range(-1, max(m, len(betti.betti) - 1) + 1):
            if i != m and betti.get(i) != 0:
                return False
    return True


def is_cohen_macaulay(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> bool:
    """所有面 (含 ∅) 的链环只在顶维有同调"""
    if delta.is_void:
        return False
    return _links_vanish_off_top(delta, field, include_empty=True)


def is_buchsbaum(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> bool:
    """纯且所有顶点链环 Cohen-Macaulay (等价于所有非空面链环只在顶维有同调)"""
    if not is_pure(delta):
        return False
    return _links_vanish_off_top(delta, field, include_empty=False)


def classify(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> ClassificationReport:
    """
    计算全部分类标志。

    QQ 上闭流形检验失败时改用 GF(2) 重试，报告记录实际使用的域。
    """
    pure = is_pure(delta)
    connected = is_connected(delta)
    used = field
    notes: List[str] = []

    closed = pure and is_closed_manifold(delta, field)
    if pure and not closed and field.is_rational and is_closed_manifold(delta, GF2):
        logger.info("QQ 上闭流形检验失败, 改用 GF(2)")
        notes.append("closed-manifold check succeeded over GF(2) after failing over QQ")
        used = GF2
        closed = True

    sphere = closed and is_homology_sphere(delta, used)
    with_boundary = pure and not closed and is_manifold_with_boundary(delta, used)
    ball = with_boundary and is_homology_ball(delta, used)

    orientable: Optional[bool] = None
    if closed and connected:
        orientable = is_orientable(delta)

    boundary: Optional[SimplicialComplex] = None
    counts: Dict[int, int] = {}
    if pure and _satisfies_condition_one(delta, used):
        try:
            boundary = boundary_complex(delta, used)
            counts = {k: len(v) for k, v in interior_faces(delta, used).items()}
        except ManifoldError as e:
            notes.append(f"boundary: {e}")

    return ClassificationReport(
        field=used,
        is_pure=pure,
        is_connected=connected,
        is_cohen_macaulay=is_cohen_macaulay(delta, used),
        is_buchsbaum=is_buchsbaum(delta, used),
        is_homology_sphere=sphere,
        is_homology_ball=ball,
        is_closed_manifold=closed,
        is_manifold_with_boundary=with_boundary,
        is_orientable=orientable,
        boundary=boundary,
        interior_face_counts=counts,
        notes=notes,
    )
