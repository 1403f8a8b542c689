"""
单纯复形核心 - 基于位集的面表示与纯组合运算
面 = 顶点集合的位掩码 (顶点 v 对应第 v-1 位)
"""

import itertools
import logging
import os
import threading
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

import networkx as nx

logger = logging.getLogger(__name__)

# 面的位集表示
Face = int

DEFAULT_MAX_VERTICES = 64
DEFAULT_FACE_LIMIT = 200_000


class ComplexError(Exception):
    """单纯复形基础异常"""
    pass


class VertexRangeError(ComplexError):
    """顶点超出 [1, n]"""
    def __init__(self, vertex: int, n: int):
        self.vertex = vertex
        self.n = n
        super().__init__(f"顶点超出范围: {vertex} 不在 [1, {n}] 内")


class DuplicateVertexError(ComplexError):
    """同一个面内顶点重复"""
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"面内顶点重复: {vertex}")


class FaceNotFoundError(ComplexError):
    """面不在复形中"""
    def __init__(self, face: Face):
        self.face = face
        super().__init__(f"面不在复形中: {format_face(face)}")


class UniverseMismatchError(ComplexError):
    """顶点全集不匹配或顶点集重叠"""
    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"顶点全集不匹配: {detail}")


class SizeGuardError(ComplexError):
    """Δ(r) 搜索规模超过上限"""
    def __init__(self, limit: int, visited: int):
        self.limit = limit
        self.visited = visited
        super().__init__(
            f"Δ(r) 搜索超过规模上限: 已访问 {visited} 个候选面, 上限 {limit} "
            f"(可通过 STACKED_FACE_LIMIT 调整)"
        )


def _env_int(name: str, default: int) -> int:
    """读取正整数环境变量，非法值回退到默认值"""
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"环境变量 {name}={raw!r} 不是整数，使用默认值 {default}")
        return default
    if value <= 0:
        logger.warning(f"环境变量 {name}={value} 必须为正，使用默认值 {default}")
        return default
    return value


def _get_default_max_vertices() -> int:
    """获取顶点全集上限"""
    return _env_int("STACKED_MAX_VERTICES", DEFAULT_MAX_VERTICES)


def _get_default_face_limit() -> int:
    """获取 Δ(r) 搜索的规模上限"""
    return _env_int("STACKED_FACE_LIMIT", DEFAULT_FACE_LIMIT)


# ==================== 面的位集工具 ====================

def face_of(vertices: Iterable[int]) -> Face:
    """顶点集合 -> 位掩码"""
    mask = 0
    for v in vertices:
        if v < 1:
            raise VertexRangeError(v, 0)
        bit = 1 << (v - 1)
        if mask & bit:
            raise DuplicateVertexError(v)
        mask |= bit
    return mask


def vertices_of(face: Face) -> Tuple[int, ...]:
    """位掩码 -> 递增的顶点元组"""
    out = []
    while face:
        low = face & -face
        out.append(low.bit_length())
        face ^= low
    return tuple(out)


def bits_of(face: Face) -> Tuple[int, ...]:
    """把面拆成单顶点位"""
    out = []
    while face:
        low = face & -face
        out.append(low)
        face ^= low
    return tuple(out)


def face_dim(face: Face) -> int:
    """面的维数 = 顶点数 - 1"""
    return face.bit_count() - 1


def format_face(face: Face) -> str:
    if not face:
        return "∅"
    return "{" + ",".join(str(v) for v in vertices_of(face)) + "}"


def _maximal_faces(faces: Iterable[Face]) -> Tuple[Face, ...]:
    """保留包含关系下的极大元，按规范顺序排列"""
    unique = sorted(set(faces), key=lambda f: -f.bit_count())
    kept: List[Face] = []
    for f in unique:
        if any(f & g == f for g in kept):
            continue
        kept.append(f)
    return tuple(sorted(kept, key=vertices_of))


@dataclass(frozen=True)
class SimplicialComplex:
    """以极大面 (facets) 存储的单纯复形；各维面集合按需计算并缓存"""
    n: int                          # 顶点全集 [n]
    facets: Tuple[Face, ...]        # 极大面，规范顺序
    _face_index: Dict[int, FrozenSet[Face]] = field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False)
    _lock: threading.Lock = field(
        default_factory=threading.Lock, init=False, repr=False, compare=False, hash=False)

    @property
    def is_void(self) -> bool:
        """void 复形: 连空面都没有"""
        return not self.facets

    @property
    def is_empty(self) -> bool:
        """{∅} 复形: 只有空面"""
        return self.facets == (0,)

    @property
    def dim(self) -> int:
        if not self.facets:
            return -1
        return max(f.bit_count() for f in self.facets) - 1

    def faces(self, k: int) -> FrozenSet[Face]:
        """全部 k 维面 (k 超出范围时为空集)"""
        if self.is_void or k < -1 or k > self.dim:
            return frozenset()
        cached = self._face_index.get(k)
        if cached is not None:
            return cached
        with self._lock:
            cached = self._face_index.get(k)
            if cached is None:
                cached = self._build_faces(k)
                self._face_index[k] = cached
        return cached

    def _build_faces(self, k: int) -> FrozenSet[Face]:
        size = k + 1
        if size == 0:
            return frozenset((0,))
        result = set()
        for facet in self.facets:
            if facet.bit_count() < size:
                continue
            for combo in itertools.combinations(bits_of(facet), size):
                result.add(sum(combo))
        return frozenset(result)

    def contains(self, face: Face) -> bool:
        return face in self.faces(face_dim(face))

    def __contains__(self, face: Face) -> bool:
        return self.contains(face)


# ==================== 构造 ====================

def from_facets(n: int, facet_list: Iterable[Iterable[int]],
                max_vertices: Optional[int] = None) -> SimplicialComplex:
    """
    由面列表构造复形。

    Args:
        n: 顶点全集大小
        facet_list: 顶点集合列表；空列表为 void 复形，[[]] 为 {∅}
        max_vertices: 顶点全集上限，默认读取 STACKED_MAX_VERTICES

    Returns:
        去重并约化为反链的复形
    """
    cap = max_vertices or _get_default_max_vertices()
    if n < 0:
        raise ComplexError(f"顶点数不能为负: {n}")
    if n > cap:
        raise ComplexError(f"顶点数 {n} 超过上限 {cap} (STACKED_MAX_VERTICES)")

    masks = []
    for facet in facet_list:
        verts = list(facet)
        for v in verts:
            if not 1 <= v <= n:
                raise VertexRangeError(v, n)
        masks.append(face_of(verts))
    return SimplicialComplex(n, _maximal_faces(masks))


def empty_complex(n: int) -> SimplicialComplex:
    """{∅}"""
    return SimplicialComplex(n, (0,))


def point_complex(v: int) -> SimplicialComplex:
    return SimplicialComplex(v, (1 << (v - 1),))


# ==================== 查询 ====================

def faces(delta: SimplicialComplex, k: int) -> FrozenSet[Face]:
    return delta.faces(k)


def iter_faces(delta: SimplicialComplex, include_empty: bool = True,
               descending: bool = True) -> Iterator[Face]:
    """按维数遍历所有面，同维内规范顺序"""
    dims = range(delta.dim, -2, -1) if descending else range(-1, delta.dim + 1)
    for k in dims:
        if k == -1 and not include_empty:
            continue
        yield from sorted(delta.faces(k), key=vertices_of)


def vertex_set(delta: SimplicialComplex) -> Face:
    mask = 0
    for f in delta.facets:
        mask |= f
    return mask


def unused_vertices(delta: SimplicialComplex) -> List[int]:
    """[n] 中不出现在任何面里的顶点"""
    used = vertex_set(delta)
    return [v for v in range(1, delta.n + 1) if not used & (1 << (v - 1))]


def one_skeleton_graph(delta: SimplicialComplex) -> nx.Graph:
    """1-骨架图，节点为顶点标号"""
    graph = nx.Graph()
    graph.add_nodes_from(vertices_of(vertex_set(delta)))
    graph.add_edges_from(vertices_of(e) for e in delta.faces(1))
    return graph


def is_subcomplex(gamma: SimplicialComplex, delta: SimplicialComplex) -> bool:
    return all(delta.contains(f) for f in gamma.facets)


# ==================== 运算 ====================

def link(delta: SimplicialComplex, face: Face) -> SimplicialComplex:
    """lk_Δ(F)，与 Δ 同一顶点全集；lk(∅) = Δ"""
    if not delta.contains(face):
        raise FaceNotFoundError(face)
    if face == 0:
        return delta
    return SimplicialComplex(
        delta.n, _maximal_faces(g & ~face for g in delta.facets if g & face == face))


def star(delta: SimplicialComplex, v: int) -> SimplicialComplex:
    """st_Δ(v) = v * lk_Δ(v)"""
    if v < 1:
        raise VertexRangeError(v, delta.n)
    bit = 1 << (v - 1)
    if not delta.contains(bit):
        raise FaceNotFoundError(bit)
    return SimplicialComplex(delta.n, tuple(g for g in delta.facets if g & bit))


def join(delta: SimplicialComplex, gamma: SimplicialComplex) -> SimplicialComplex:
    """联结: 极大面两两并；要求两者使用的顶点不相交"""
    overlap = vertex_set(delta) & vertex_set(gamma)
    if overlap:
        raise UniverseMismatchError(f"联结的两个复形共享顶点 {format_face(overlap)}")
    n = max(delta.n, gamma.n)
    cap = _get_default_max_vertices()
    if n > cap:
        raise ComplexError(f"顶点数 {n} 超过上限 {cap} (STACKED_MAX_VERTICES)")
    return SimplicialComplex(
        n, _maximal_faces(f | g for f in delta.facets for g in gamma.facets))


def cone(v: int, gamma: SimplicialComplex) -> SimplicialComplex:
    """锥 v * Γ"""
    if v < 1:
        raise VertexRangeError(v, gamma.n)
    if vertex_set(gamma) & (1 << (v - 1)):
        raise UniverseMismatchError(f"锥顶点 {v} 已在复形中")
    return join(point_complex(v), gamma)


def skeleton(delta: SimplicialComplex, r: int) -> SimplicialComplex:
    """维数 ≤ r 的所有面"""
    if r < -1:
        raise ComplexError(f"骨架维数必须 ≥ -1: {r}")
    if delta.is_void:
        return delta
    small = [f for f in delta.facets if f.bit_count() <= r + 1]
    return SimplicialComplex(delta.n, _maximal_faces(itertools.chain(small, delta.faces(r))))


def relabel_shift(delta: SimplicialComplex, k: int) -> SimplicialComplex:
    """所有顶点标号加 k，全集变为 [n + k]"""
    if k < 0:
        raise ComplexError(f"平移量必须非负: {k}")
    return SimplicialComplex(delta.n + k, tuple(f << k for f in delta.facets))


def union(delta: SimplicialComplex, gamma: SimplicialComplex) -> SimplicialComplex:
    if delta.n != gamma.n:
        raise UniverseMismatchError(f"[{delta.n}] 与 [{gamma.n}]")
    return SimplicialComplex(delta.n, _maximal_faces(delta.facets + gamma.facets))


def equals(delta: SimplicialComplex, gamma: SimplicialComplex) -> bool:
    """面集合相等 (极大面规范化后逐一比较)"""
    if delta.n != gamma.n:
        raise UniverseMismatchError(f"[{delta.n}] 与 [{gamma.n}]")
    return delta.facets == gamma.facets


def missing_faces(delta: SimplicialComplex) -> List[Face]:
    """
    所有极小非面 (全集 [n] 上)。

    对每个面 G 和 G 外的顶点 v，若 G ∪ {v} 不是面且去掉任一顶点后都是面，
    则为缺失面。[n] 中未使用的顶点是缺失 0-面。
    """
    if delta.is_void:
        return [0]
    universe = [1 << i for i in range(delta.n)]
    found = set()
    for face in iter_faces(delta):
        for bit in universe:
            if face & bit:
                continue
            candidate = face | bit
            if candidate in found or delta.contains(candidate):
                continue
            if all(delta.contains(candidate & ~b) for b in bits_of(candidate)):
                found.add(candidate)
    return sorted(found, key=vertices_of)


def delta_r(delta: SimplicialComplex, r: int,
            face_limit: Optional[int] = None) -> SimplicialComplex:
    """
    Δ(r) = {F ⊆ V(Δ) : F 的所有 ≤ r+1 元子集都在 Δ 中}。

    r = 0 为顶点集上的单形；r = 1 为 1-骨架的团复形 (networkx)；
    r ≥ 2 用 Bron–Kerbosch 式回溯枚举极大面，扩展关系为
    "新增的 (r+1) 元子集都是 Δ 的面"，并以邻域交剪枝。

    Args:
        delta: 复形
        r: 非负整数
        face_limit: 访问候选面数上限，默认读取 STACKED_FACE_LIMIT

    Returns:
        Δ(r)，与 Δ 同一顶点全集
    """
    if r < 0:
        raise ComplexError(f"Δ(r) 要求 r ≥ 0: {r}")
    if delta.is_void:
        return delta
    limit = face_limit or _get_default_face_limit()
    vertices = vertex_set(delta)

    if r == 0:
        return SimplicialComplex(delta.n, (vertices,))
    if r > delta.dim:
        return delta

    if r == 1:
        facets = []
        for clique in nx.find_cliques(one_skeleton_graph(delta)):
            facets.append(face_of(clique))
            if len(facets) > limit:
                raise SizeGuardError(limit, len(facets))
        logger.debug(f"Δ(1): {len(facets)} 个极大团")
        return SimplicialComplex(delta.n, _maximal_faces(facets))

    allowed = delta.faces(r)
    neighbors: Dict[Face, Face] = {b: 0 for b in bits_of(vertices)}
    for edge in delta.faces(1):
        low, high = bits_of(edge)
        neighbors[low] |= high
        neighbors[high] |= low

    def extendable(face: Face, bit: Face) -> bool:
        if neighbors[bit] & face != face:
            return False
        size = face.bit_count()
        if size < r + 1:
            return delta.contains(face | bit)
        return all((sum(combo) | bit) in allowed
                   for combo in itertools.combinations(bits_of(face), r))

    visited = 0
    found: List[Face] = []

    def expand(face: Face, candidates: List[Face], excluded: List[Face]) -> None:
        nonlocal visited
        visited += 1
        if visited > limit:
            raise SizeGuardError(limit, visited)
        if not candidates and not excluded:
            found.append(face)
            return
        candidates = list(candidates)
        excluded = list(excluded)
        while candidates:
            bit = candidates.pop(0)
            grown = face | bit
            expand(grown,
                   [u for u in candidates if extendable(grown, u)],
                   [u for u in excluded if extendable(grown, u)])
            excluded.append(bit)

    expand(0, list(bits_of(vertices)), [])
    logger.debug(f"Δ({r}): 访问 {visited} 个候选面, {len(found)} 个极大面")
    return SimplicialComplex(delta.n, _maximal_faces(found))
