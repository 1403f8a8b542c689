"""
堆叠性判定 - 内部面定义、h'' 判据、Δ(r) 重构、局部判据、g̃ 捷径与构造性的 Σ

两种下标约定并存: level 为 "level-stacked" 的层数，
定理下标 r 判定 (r-1)-stacked；每个结论都记录 stack_level。
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Dict, List, Optional

from .complex_core import (
    ComplexError,
    Face,
    SimplicialComplex,
    cone,
    delta_r,
    face_dim,
    format_face,
    link,
    missing_faces,
    union,
    vertex_set,
    vertices_of,
)
from .enumerative import f_vector, g_tilde_from, h_double_prime, h_from_f
from .homology import RATIONALS, FieldSpec, betti_numbers
from .manifold import (
    boundary_complex,
    interior_faces,
    is_closed_manifold,
    is_connected,
    is_homology_ball,
    is_homology_sphere,
    is_manifold_with_boundary,
    is_pure,
)

logger = logging.getLogger(__name__)


class StackednessError(ComplexError):
    """堆叠性判定的前置条件不成立"""
    pass


class Criterion(str, Enum):
    INTERIOR_FACES = "interior-faces"
    H_DOUBLE_PRIME = "h-double-prime"
    DELTA_RECONSTRUCTION = "delta-reconstruction"
    LOCAL = "local"
    G_TILDE = "g-tilde"


@dataclass
class StackednessVerdict:
    r: int
    stack_level: int
    verdict: bool
    criterion: Criterion
    witness: Optional[SimplicialComplex] = None
    notes: List[str] = field(default_factory=list)


@dataclass
class ConsequenceReport:
    """堆叠性推论: Betti 数消失与缺失面消失"""
    kind: str                                   # "with-boundary" | "closed"
    stack_level: int
    betti_vanishing: Dict[int, bool]            # k -> β_k == 0
    forbidden_missing_dims: List[int]
    missing_face_violations: List[Face]

    @property
    def passed(self) -> bool:
        return all(self.betti_vanishing.values()) and not self.missing_face_violations


def _require_with_boundary(delta: SimplicialComplex, field: FieldSpec) -> None:
    if not is_pure(delta) or not is_manifold_with_boundary(delta, field):
        raise StackednessError("要求带边同调流形")


def _require_closed(delta: SimplicialComplex, field: FieldSpec) -> None:
    if not is_pure(delta) or not is_closed_manifold(delta, field):
        raise StackednessError("要求闭同调流形")


def is_stacked_with_boundary(delta: SimplicialComplex, level: int,
                             field: FieldSpec = RATIONALS) -> StackednessVerdict:
    """没有维数 ≤ dim - level - 1 的内部面"""
    if level < 0:
        raise StackednessError(f"level 必须非负: {level}")
    _require_with_boundary(delta, field)
    cutoff = delta.dim - level - 1
    offending = [
        f for k, faces in sorted(interior_faces(delta, field).items()) if k <= cutoff for f in faces
    ]
    notes = []
    if offending:
        notes.append(f"interior face {format_face(offending[0])} of dimension {face_dim(offending[0])}")
    return StackednessVerdict(level + 1, level, not offending, Criterion.INTERIOR_FACES, notes=notes)


def is_stacked_via_h(delta: SimplicialComplex, r: int,
                     field: FieldSpec = RATIONALS) -> StackednessVerdict:
    """(r-1)-stacked 当且仅当 h''_r = 0"""
    _require_with_boundary(delta, field)
    d = delta.dim + 1
    if not 1 <= r <= d:
        raise StackednessError(f"r 超出范围 1..{d}: {r}")
    hpp = h_double_prime(h_from_f(f_vector(delta), d), betti_numbers(delta, field), d)
    return StackednessVerdict(r, r - 1, hpp[r] == 0, Criterion.H_DOUBLE_PRIME,
                              notes=[f"h''_{r} = {hpp[r]}"])


def _bounding_failure(sigma: SimplicialComplex, delta: SimplicialComplex,
                      level: int, field: FieldSpec) -> Optional[str]:
    """Σ 是否为以 Δ 为边界的 level-stacked 带边流形；失败时返回原因"""
    if sigma.facets == delta.facets:
        return "candidate equals the input complex"
    if not is_pure(sigma) or sigma.dim != delta.dim + 1:
        return f"candidate is not pure of dimension {delta.dim + 1}"
    if not is_manifold_with_boundary(sigma, field):
        return "candidate is not a homology manifold with boundary"
    if boundary_complex(sigma, field) != delta:
        return "candidate boundary differs from the input complex"
    inner = is_stacked_with_boundary(sigma, level, field)
    if not inner.verdict:
        return f"candidate is not {level}-stacked: " + "; ".join(inner.notes)
    return None


def is_stacked_closed(delta: SimplicialComplex, r: int,
                      field: FieldSpec = RATIONALS) -> StackednessVerdict:
    """
    以 Σ = Δ(r) 为候选判定闭流形的 (r-1)-stacked 性。

    r ≤ d/2 时判定完备；否则只是充分条件，在 notes 中标注 sufficient-only。
    """
    if r < 1:
        raise StackednessError(f"r 必须 ≥ 1: {r}")
    _require_closed(delta, field)
    d = delta.dim + 1
    notes = []
    if 2 * r > d:
        notes.append("sufficient-only: r > d/2")
    sigma = delta_r(delta, r)
    failure = _bounding_failure(sigma, delta, r - 1, field)
    if failure:
        notes.append(failure)
        return StackednessVerdict(r, r - 1, False, Criterion.DELTA_RECONSTRUCTION, notes=notes)
    return StackednessVerdict(r, r - 1, True, Criterion.DELTA_RECONSTRUCTION, witness=sigma, notes=notes)


def is_stacked_sphere(delta: SimplicialComplex, r: int,
                      field: FieldSpec = RATIONALS) -> StackednessVerdict:
    """同调球面以 B = Δ(r-1) 为候选球体"""
    if not is_pure(delta) or not is_homology_sphere(delta, field):
        raise StackednessError("要求同调球面")
    d = delta.dim + 1
    if r < 1 or 2 * r > d + 1:
        raise StackednessError(f"r 超出范围 1..(d+1)/2 (d = {d}): {r}")

    ball = delta_r(delta, r - 1)
    failure = None
    if not is_pure(ball) or not is_homology_ball(ball, field):
        failure = f"Δ({r - 1}) is not a homology ball"
    elif boundary_complex(ball, field) != delta:
        failure = f"boundary of Δ({r - 1}) differs from the input complex"
    else:
        inner = is_stacked_with_boundary(ball, r - 1, field)
        if not inner.verdict:
            failure = "; ".join(inner.notes)

    if failure:
        return StackednessVerdict(r, r - 1, False, Criterion.DELTA_RECONSTRUCTION, notes=[failure])
    return StackednessVerdict(r, r - 1, True, Criterion.DELTA_RECONSTRUCTION, witness=ball)


def is_locally_stacked(delta: SimplicialComplex, r: int,
                       field: FieldSpec = RATIONALS) -> StackednessVerdict:
    """每个顶点链环都是 (r-1)-stacked 同调球面"""
    _require_closed(delta, field)
    d = delta.dim + 1
    if r < 1 or 2 * r > d:
        raise StackednessError(f"局部判据要求 1 ≤ r ≤ d/2 (d = {d}): {r}")
    for v in vertices_of(vertex_set(delta)):
        result = is_stacked_sphere(link(delta, 1 << (v - 1)), r, field)
        if not result.verdict:
            notes = [f"link of vertex {v}: " + "; ".join(result.notes)]
            return StackednessVerdict(r, r - 1, False, Criterion.LOCAL, notes=notes)
    return StackednessVerdict(r, r - 1, True, Criterion.LOCAL)


def is_stacked_via_g_tilde(delta: SimplicialComplex, r: int,
                           field: FieldSpec = RATIONALS) -> StackednessVerdict:
    """
    连通可定向闭流形 (r < d/2) 的捷径: (r-1)-stacked 当且仅当 g̃_r = 0。

    只在顶点链环满足 WLP 时成立，本函数不检验 WLP。
    g̃_r = 0 时同时检验局部 (r-1)-stacked 性，违反时在 notes 中记录。
    """
    _require_closed(delta, field)
    if not is_connected(delta):
        raise StackednessError("要求连通闭同调流形")
    d = delta.dim + 1
    if r < 1 or not 2 * r < d:
        raise StackednessError(f"g̃ 判据要求 1 ≤ r < d/2 (d = {d}): {r}")
    betti = betti_numbers(delta, field)
    if betti.get(d - 1) != 1:
        raise StackednessError(f"g̃ 判据要求在 {field.name} 上可定向 (β_{{d-1}} = 1)")

    value = g_tilde_from(h_from_f(f_vector(delta), d), betti, d)[r]
    notes = [f"g̃_{r} = {value}", "assumes WLP vertex links"]
    if value == 0:
        local = is_locally_stacked(delta, r, field)
        notes.append(f"locally {r - 1}-stacked: {'yes' if local.verdict else 'no'}")
        if not local.verdict:
            logger.warning(f"g̃_{r} = 0 但不是局部 {r - 1}-stacked")
    return StackednessVerdict(r, r - 1, value == 0, Criterion.G_TILDE, notes=notes)


def local_to_global(delta: SimplicialComplex, r: int,
                    field: FieldSpec = RATIONALS) -> StackednessVerdict:
    """
    构造 Σ = ⋃_v v * D_v，其中 D_v = lk_Δ(v)(r-1)，并验证
    lk_Σ(v) = D_v、∂Σ = Δ 以及 Σ 的 (r-1)-stacked 性。

    1 ≤ r < d/2 之外照常构造，notes 标注 outside theorem range。
    """
    if r < 1:
        raise StackednessError(f"r 必须 ≥ 1: {r}")
    _require_closed(delta, field)
    d = delta.dim + 1
    notes = []
    if 2 * r <= d:
        local = is_locally_stacked(delta, r, field)
        if not local.verdict:
            raise StackednessError("输入不是局部 (r-1)-stacked: " + "; ".join(local.notes))
    else:
        notes.append("local condition not checked: r > d/2")
    if not 2 * r < d:
        notes.append("outside theorem range: r ≥ d/2")

    pieces: Dict[int, SimplicialComplex] = {}
    for v in vertices_of(vertex_set(delta)):
        pieces[v] = delta_r(link(delta, 1 << (v - 1)), r - 1)
    sigma = reduce(union, (cone(v, d_v) for v, d_v in pieces.items()))

    mismatched = [v for v, d_v in pieces.items() if link(sigma, 1 << (v - 1)) != d_v]
    if mismatched:
        notes.append(f"lk_Σ(v) ≠ D_v for vertices {mismatched}")
        return StackednessVerdict(r, r - 1, False, Criterion.LOCAL, notes=notes)

    failure = _bounding_failure(sigma, delta, r - 1, field)
    if failure:
        notes.append(failure)
        return StackednessVerdict(r, r - 1, False, Criterion.LOCAL, notes=notes)
    return StackednessVerdict(r, r - 1, True, Criterion.LOCAL, witness=sigma, notes=notes)


def stackedness_consequences(delta: SimplicialComplex, level: int,
                             field: FieldSpec = RATIONALS) -> ConsequenceReport:
    """
    level-stacked 的推论 (r = level + 1):
        带边: β_k = 0 (k ≥ r)，没有维数 ≥ r+1 的缺失面
        闭流形 (r < d/2): β_k = 0 (r ≤ k ≤ d-1-r)，没有维数在 r+1..d-r 的缺失面
    """
    r = level + 1
    betti = betti_numbers(delta, field)
    missing = missing_faces(delta)

    if is_pure(delta) and is_manifold_with_boundary(delta, field):
        if not is_stacked_with_boundary(delta, level, field).verdict:
            raise StackednessError(f"输入不是 {level}-stacked")
        kind = "with-boundary"
        vanishing_range = range(r, delta.dim + 1)
        forbidden = list(range(r + 1, delta.n))
    elif is_pure(delta) and is_closed_manifold(delta, field):
        d = delta.dim + 1
        if not 2 * r < d:
            raise StackednessError(f"闭流形推论要求 r < d/2 (r = {r}, d = {d})")
        if not is_stacked_closed(delta, r, field).verdict:
            raise StackednessError(f"输入不是 {level}-stacked")
        kind = "closed"
        vanishing_range = range(r, d - r)
        forbidden = list(range(r + 1, d - r + 1))
    else:
        raise StackednessError("要求同调流形 (带边或闭)")

    violations = [f for f in missing if face_dim(f) in forbidden]
    return ConsequenceReport(
        kind=kind,
        stack_level=level,
        betti_vanishing={k: betti.get(k) == 0 for k in vanishing_range},
        forbidden_missing_dims=forbidden,
        missing_face_violations=violations,
    )
