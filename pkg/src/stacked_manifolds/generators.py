"""
示例族生成器 - 单形边界、Kühnel-Lassmann、Klee-Novik、联结、堆叠球面、交叉多面体
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Set, Tuple

import numpy as np

from .complex_core import (
    ComplexError,
    Face,
    SimplicialComplex,
    _get_default_max_vertices,
    _maximal_faces,
    bits_of,
    face_of,
    from_facets,
    join,
    relabel_shift,
    vertices_of,
)

logger = logging.getLogger(__name__)


class GeneratorError(ComplexError):
    """生成参数不合法"""
    def __init__(self, family: str, params: Tuple[int, ...], reason: str):
        self.family = family
        self.params = params
        super().__init__(f"生成参数不合法: {family} {list(params)}: {reason}")


class Family(str, Enum):
    SIMPLEX_BOUNDARY = "simplex-boundary"
    FULL_SIMPLEX = "full-simplex"
    KUHNEL_LASSMANN = "kuhnel-lassmann"
    KLEE_NOVIK = "klee-novik"
    JOIN_BOUNDARIES = "join-boundaries"
    STACKED_SPHERE = "stacked-sphere"
    CROSS_POLYTOPE = "cross-polytope"
    STACKED_BALL = "stacked-ball"
    PUNCTURED_STACKED_SPHERE = "punctured-stacked-sphere"


@dataclass
class FamilySpec:
    family: Family
    params: List[int]
    seed: Optional[int] = None


def _check_universe(family: str, params: Tuple[int, ...], n: int) -> None:
    cap = _get_default_max_vertices()
    if n > cap:
        raise GeneratorError(family, params, f"需要 {n} 个顶点, 超过上限 {cap}")


def simplex_boundary(d: int) -> SimplicialComplex:
    """∂σ^d: [d+1] 的全部 d 元子集"""
    if d < 1:
        raise GeneratorError(Family.SIMPLEX_BOUNDARY.value, (d,), "要求 d ≥ 1")
    _check_universe(Family.SIMPLEX_BOUNDARY.value, (d,), d + 1)
    return from_facets(d + 1, itertools.combinations(range(1, d + 2), d))


def full_simplex(d: int) -> SimplicialComplex:
    if d < 1:
        raise GeneratorError(Family.FULL_SIMPLEX.value, (d,), "要求 d ≥ 1")
    _check_universe(Family.FULL_SIMPLEX.value, (d,), d + 1)
    return from_facets(d + 1, [range(1, d + 2)])


def kuhnel_lassmann(d: int, n: int) -> SimplicialComplex:
    """
    K_{d,n}: [n] 上由循环窗口 {i, i+1, ..., i+d-1} (mod n) 生成。

    n < 2d-1 时不是同调流形，仍然构造并记录警告。
    """
    params = (d, n)
    if d < 1 or n < d:
        raise GeneratorError(Family.KUHNEL_LASSMANN.value, params, "要求 d ≥ 1 且 n ≥ d")
    _check_universe(Family.KUHNEL_LASSMANN.value, params, n)
    if n < 2 * d - 1:
        logger.warning(f"K_{{{d},{n}}}: n < 2d-1, 结果不是同调流形")
    facets = [[(i + k) % n + 1 for k in range(d)] for i in range(n)]
    return from_facets(n, facets)


def klee_novik(d: int, i: int) -> SimplicialComplex:
    """
    B_{d,i}: 顶点 x_j -> 2j-1, y_j -> 2j；面为 (z_1..z_d), z_j ∈ {x_j, y_j}，
    相邻位置 (k, k+1), k = 1..d-1 之间字母表切换次数 ≤ i。
    """
    params = (d, i)
    if d < 2 or not 0 <= i <= d - 2:
        raise GeneratorError(Family.KLEE_NOVIK.value, params, "要求 d ≥ 2 且 0 ≤ i ≤ d-2")
    _check_universe(Family.KLEE_NOVIK.value, params, 2 * d)
    facets = []
    for choice in itertools.product((0, 1), repeat=d):
        transitions = sum(1 for k in range(d - 1) if choice[k] != choice[k + 1])
        if transitions <= i:
            facets.append([2 * j + 1 + c for j, c in enumerate(choice)])
    return from_facets(2 * d, facets)


def join_boundaries(r: int, s: int) -> SimplicialComplex:
    """∂σ^r (顶点 1..r+1) 与 ∂σ^s (顶点 r+2..r+s+2) 的联结"""
    params = (r, s)
    if r < 1 or s < 1:
        raise GeneratorError(Family.JOIN_BOUNDARIES.value, params, "要求 r, s ≥ 1")
    _check_universe(Family.JOIN_BOUNDARIES.value, params, r + s + 2)
    return join(simplex_boundary(r), relabel_shift(simplex_boundary(s), r + 1))


def cross_polytope(d: int) -> SimplicialComplex:
    """交叉多面体边界: 每个面从每对 {2j-1, 2j} 中各取一个顶点"""
    if d < 1:
        raise GeneratorError(Family.CROSS_POLYTOPE.value, (d,), "要求 d ≥ 1")
    _check_universe(Family.CROSS_POLYTOPE.value, (d,), 2 * d)
    pairs = [(2 * j - 1, 2 * j) for j in range(1, d + 1)]
    return from_facets(2 * d, itertools.product(*pairs))


def _stacking_sequence(family: str, d: int, n: int,
                       seed: Optional[int]) -> Tuple[Set[Face], List[Face]]:
    """
    从 ∂σ^d 出发反复星形细分。

    每一步按规范顺序排列当前的面，用 PCG64 (numpy default_rng) 取一个下标，
    新顶点依次编号 d+2, ..., n。返回最终球面的面集合和粘上的 d 维单形列表。
    """
    params = (d, n)
    if d < 1 or n < d + 1:
        raise GeneratorError(family, params, "要求 d ≥ 1 且 n ≥ d+1")
    _check_universe(family, params, n)
    rng = np.random.default_rng(0 if seed is None else seed)
    sphere = {face_of(c) for c in itertools.combinations(range(1, d + 2), d)}
    glued: List[Face] = []
    for w in range(d + 2, n + 1):
        ordered = sorted(sphere, key=vertices_of)
        chosen = ordered[int(rng.integers(len(ordered)))]
        sphere.remove(chosen)
        new_bit = 1 << (w - 1)
        for bit in bits_of(chosen):
            sphere.add((chosen & ~bit) | new_bit)
        glued.append(chosen | new_bit)
    return sphere, glued


def stacked_sphere(d: int, n: int, seed: Optional[int] = None) -> SimplicialComplex:
    """n 个顶点的 1-stacked (d-1) 维球面；n = d+1 时为 ∂σ^d"""
    sphere, _ = _stacking_sequence(Family.STACKED_SPHERE.value, d, n, seed)
    return SimplicialComplex(n, _maximal_faces(sphere))


def stacked_ball(d: int, n: int, seed: Optional[int] = None) -> SimplicialComplex:
    """以 stacked_sphere(d, n, seed) 为边界的堆叠 d 维球体"""
    _, glued = _stacking_sequence(Family.STACKED_BALL.value, d, n, seed)
    first = face_of(range(1, d + 2))
    return SimplicialComplex(n, _maximal_faces([first] + glued))


def punctured_stacked_sphere(d: int, n: int, seed: Optional[int] = None) -> SimplicialComplex:
    """堆叠球面去掉规范顺序下的第一个面"""
    sphere, _ = _stacking_sequence(Family.PUNCTURED_STACKED_SPHERE.value, d, n, seed)
    ordered = sorted(sphere, key=vertices_of)
    return SimplicialComplex(n, _maximal_faces(ordered[1:]))


_BUILDERS: Dict[Family, Tuple[int, Callable[..., SimplicialComplex]]] = {
    Family.SIMPLEX_BOUNDARY: (1, simplex_boundary),
    Family.FULL_SIMPLEX: (1, full_simplex),
    Family.KUHNEL_LASSMANN: (2, kuhnel_lassmann),
    Family.KLEE_NOVIK: (2, klee_novik),
    Family.JOIN_BOUNDARIES: (2, join_boundaries),
    Family.STACKED_SPHERE: (2, stacked_sphere),
    Family.CROSS_POLYTOPE: (1, cross_polytope),
    Family.STACKED_BALL: (2, stacked_ball),
    Family.PUNCTURED_STACKED_SPHERE: (2, punctured_stacked_sphere),
}

_SEEDED = {Family.STACKED_SPHERE, Family.STACKED_BALL, Family.PUNCTURED_STACKED_SPHERE}


def parse_family(name: str) -> Family:
    try:
        return Family(name)
    except ValueError:
        choices = ", ".join(f.value for f in Family)
        raise GeneratorError(name, (), f"未知的族, 可选: {choices}")


def generate(spec: FamilySpec) -> SimplicialComplex:
    """按 FamilySpec 生成复形"""
    arity, builder = _BUILDERS[spec.family]
    params = tuple(spec.params)
    if len(params) != arity:
        raise GeneratorError(spec.family.value, params, f"需要 {arity} 个整数参数")
    if spec.family in _SEEDED:
        return builder(*params, seed=spec.seed)
    if spec.seed is not None:
        logger.info(f"{spec.family.value} 不使用随机种子, 忽略 seed={spec.seed}")
    return builder(*params)
