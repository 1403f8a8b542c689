"""
计数向量 - f/h/h'/h''/g/g̃ 向量、Dehn-Sommerville 残差、对偶恒等式与 Macaulay 判定

所有向量均为精确整数。对 (d-1) 维复形, d = dim + 1。
"""

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .complex_core import ComplexError, SimplicialComplex, missing_faces
from .homology import RATIONALS, BettiVector, FieldSpec, betti_numbers, reduced_euler_characteristic
from .manifold import boundary_complex, is_closed_manifold, is_connected, is_manifold_with_boundary

logger = logging.getLogger(__name__)

BettiLike = Union[BettiVector, Sequence[int]]


class EnumerativeError(ComplexError):
    """计数恒等式或前置条件不成立"""
    def __init__(self, message: str, residual: Optional[int] = None):
        self.residual = residual
        super().__init__(message)


@dataclass
class VectorSuite:
    """一个复形在给定域上的全部计数向量"""
    d: int
    f: Tuple[int, ...]
    h: Tuple[int, ...]
    h_prime: Tuple[int, ...]
    h_double: Tuple[int, ...]
    g: Tuple[int, ...]
    g_tilde: Tuple[int, ...]
    betti: BettiVector
    field: FieldSpec


@dataclass
class MVectorVerdict:
    is_m_vector: bool
    first_violation_index: Optional[int] = None


@dataclass
class DehnSommervilleResidual:
    """两组 Dehn-Sommerville 关系在 i = 0..d 上的残差"""
    eq2: Tuple[int, ...]
    eq3: Tuple[int, ...]
    vanishes: bool = field(init=False)

    def __post_init__(self):
        self.vanishes = not any(self.eq2) and not any(self.eq3)


@dataclass
class DualityReport:
    """h'' 对称性、g̃ 与 h''/h' 的关系、Poincaré 对偶 (非约化 Betti 数)"""
    field: FieldSpec
    h_double_symmetry: Tuple[int, ...]
    g_tilde_identity: Tuple[int, ...]
    poincare: Tuple[int, ...]
    h_double_symmetric: bool = field(init=False)
    g_tilde_holds: bool = field(init=False)
    poincare_holds: bool = field(init=False)

    def __post_init__(self):
        self.h_double_symmetric = not any(self.h_double_symmetry)
        self.g_tilde_holds = not any(self.g_tilde_identity)
        self.poincare_holds = not any(self.poincare)


@dataclass
class GlbcProbe:
    """g̃ 非负性探测 (只报告不断言)"""
    min_value: int
    first_negative_index: Optional[int]


def _sign(e: int) -> int:
    return 1 if e % 2 == 0 else -1


def _betti_getter(betti: BettiLike) -> Callable[[int], int]:
    if isinstance(betti, BettiVector):
        return betti.get
    values = tuple(betti)
    return lambda i: values[i] if 0 <= i < len(values) else 0


def f_vector(delta: SimplicialComplex) -> Tuple[int, ...]:
    """(f_{-1}, f_0, ..., f_{dim})；void 复形为空元组"""
    return tuple(len(delta.faces(k)) for k in range(-1, delta.dim + 1))


def h_from_f(f: Sequence[int], d: int) -> Tuple[int, ...]:
    """h_i = Σ_{j≤i} (-1)^{i-j} C(d-j, i-j) f_{j-1}"""
    if len(f) != d + 1:
        raise EnumerativeError(f"f 向量长度应为 {d + 1}, 实际 {len(f)}")
    if f[0] != 1:
        raise EnumerativeError(f"f_{{-1}} 必须为 1, 实际 {f[0]}")
    return tuple(
        sum(_sign(i - j) * comb(d - j, i - j) * f[j] for j in range(i + 1))
        for i in range(d + 1)
    )


def f_from_h(h: Sequence[int], d: int) -> Tuple[int, ...]:
    """逆变换: f_{j-1} = Σ_{i≤j} C(d-i, j-i) h_i"""
    if len(h) != d + 1:
        raise EnumerativeError(f"h 向量长度应为 {d + 1}, 实际 {len(h)}")
    return tuple(
        sum(comb(d - i, j - i) * h[i] for i in range(j + 1))
        for j in range(d + 1)
    )


def h_prime(h: Sequence[int], betti: BettiLike, d: int) -> Tuple[int, ...]:
    """
    h'_i = h_i - C(d,i) Σ_{k=1}^{i-1} (-1)^{i-k} β_{k-1}。

    Raises:
        EnumerativeError: h'_d ≠ β_{d-1} (输入不一致)
    """
    if len(h) != d + 1:
        raise EnumerativeError(f"h 向量长度应为 {d + 1}, 实际 {len(h)}")
    beta = _betti_getter(betti)
    out = tuple(
        h[i] - comb(d, i) * sum(_sign(i - k) * beta(k - 1) for k in range(1, i))
        for i in range(d + 1)
    )
    if out[d] != beta(d - 1):
        raise EnumerativeError(
            f"恒等式 h'_d = β_{{d-1}} 不成立: h'_d = {out[d]}, β_{{d-1}} = {beta(d - 1)}",
            residual=out[d] - beta(d - 1))
    return out


def h_double_prime(h: Sequence[int], betti: BettiLike, d: int) -> Tuple[int, ...]:
    """h''_i = h'_i - C(d,i) β_{i-1} (i < d)，h''_d = h'_d"""
    hp = h_prime(h, betti, d)
    beta = _betti_getter(betti)
    return tuple(hp[i] - comb(d, i) * beta(i - 1) if i < d else hp[d] for i in range(d + 1))


def g_vector(h: Sequence[int]) -> Tuple[int, ...]:
    return tuple(h[i] - (h[i - 1] if i > 0 else 0) for i in range(len(h)))


def g_tilde_from(h: Sequence[int], betti: BettiLike, d: int) -> Tuple[int, ...]:
    """g̃_r = h_r - h_{r-1} - C(d+1, r) Σ_{j=1}^{r} (-1)^{r-j} β_{j-1}，r = 0..⌊d/2⌋"""
    beta = _betti_getter(betti)
    out = [1]
    for r in range(1, d // 2 + 1):
        correction = sum(_sign(r - j) * beta(j - 1) for j in range(1, r + 1))
        out.append(h[r] - h[r - 1] - comb(d + 1, r) * correction)
    return tuple(out)


def g_tilde(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> Tuple[int, ...]:
    d = delta.dim + 1
    h = h_from_f(f_vector(delta), d)
    return g_tilde_from(h, betti_numbers(delta, field), d)


def vector_suite(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> VectorSuite:
    d = delta.dim + 1
    betti = betti_numbers(delta, field)
    f = f_vector(delta)
    h = h_from_f(f, d)
    return VectorSuite(
        d=d,
        f=f,
        h=h,
        h_prime=h_prime(h, betti, d),
        h_double=h_double_prime(h, betti, d),
        g=g_vector(h),
        g_tilde=g_tilde_from(h, betti, d),
        betti=betti,
        field=field,
    )


def missing_face_counts(delta: SimplicialComplex) -> Dict[int, int]:
    """μ_k = 缺失 (k-1) 维面的个数，键为基数 k"""
    counts: Dict[int, int] = {}
    for face in missing_faces(delta):
        size = face.bit_count()
        counts[size] = counts.get(size, 0) + 1
    return dict(sorted(counts.items()))


def dehn_sommerville_residual(delta: SimplicialComplex,
                              field: FieldSpec = RATIONALS) -> DehnSommervilleResidual:
    """
    带边同调流形的两组关系:
        g_i(∂Δ) = h_i - h_{d-i} + C(d,i) (-1)^{d-1-i} χ̃(Δ)
        g_i(∂Δ) = h_i - h''_{d-i} + C(d,i) Σ_{k=d-i}^{d-1} (-1)^{d-1-i-k} β_k
    h(∂Δ) 按 d 补零，i = 0..d。
    """
    if not is_manifold_with_boundary(delta, field):
        raise EnumerativeError("Dehn-Sommerville 残差要求带边同调流形")
    d = delta.dim + 1
    boundary = boundary_complex(delta, field)
    betti = betti_numbers(delta, field)
    h = h_from_f(f_vector(delta), d)
    hpp = h_double_prime(h, betti, d)
    hb = h_from_f(f_vector(boundary), d - 1) + (0,)
    gb = g_vector(hb)
    chi = reduced_euler_characteristic(delta)

    eq2 = tuple(
        gb[i] - (h[i] - h[d - i] + comb(d, i) * _sign(d - 1 - i) * chi)
        for i in range(d + 1)
    )
    eq3 = tuple(
        gb[i] - (h[i] - hpp[d - i]
                 + comb(d, i) * sum(_sign(d - 1 - i - k) * betti.get(k) for k in range(d - i, d)))
        for i in range(d + 1)
    )
    result = DehnSommervilleResidual(eq2, eq3)
    if not result.vanishes:
        logger.warning(f"Dehn-Sommerville 残差非零: eq2={eq2}, eq3={eq3}")
    return result


def _macaulay_representation(value: int, i: int) -> List[Tuple[int, int]]:
    """贪心求 value = Σ C(a_k, k), a_i > a_{i-1} > ... ≥ k ≥ 1"""
    rep = []
    k = i
    while value > 0 and k >= 1:
        a = k
        while comb(a + 1, k) <= value:
            a += 1
        rep.append((a, k))
        value -= comb(a, k)
        k -= 1
    return rep


def macaulay_bound(value: int, i: int) -> int:
    """value^{<i>} = Σ C(a_k + 1, k + 1)"""
    return sum(comb(a + 1, k + 1) for a, k in _macaulay_representation(value, i))


def is_m_vector(v: Sequence[int]) -> MVectorVerdict:
    if not v or v[0] != 1:
        return MVectorVerdict(False, 0)
    for i in range(1, len(v)):
        if v[i] < 0:
            return MVectorVerdict(False, i)
        if i >= 2 and v[i] > macaulay_bound(v[i - 1], i - 1):
            return MVectorVerdict(False, i)
    return MVectorVerdict(True, None)


def glbc_probe(delta: SimplicialComplex, field: FieldSpec = RATIONALS) -> GlbcProbe:
    values = g_tilde(delta, field)
    negative = [i for i, x in enumerate(values) if x < 0]
    return GlbcProbe(min(values), negative[0] if negative else None)


def symmetry_and_duality_checks(delta: SimplicialComplex,
                                field: FieldSpec = RATIONALS) -> DualityReport:
    """
    连通闭流形 (在该域上可定向, 即 β_{d-1} = 1) 的三组恒等式:
        h''_i = h''_{d-i}                          i = 0..d
        g̃_i = h''_{d-i} - h'_{d-i+1}               i = 0..⌊d/2⌋, h'_{d+1} = 0
        b_j = b_{d-1-j}                            非约化 Betti 数
    """
    if not (is_connected(delta) and is_closed_manifold(delta, field)):
        raise EnumerativeError("对偶检验要求连通闭同调流形")
    d = delta.dim + 1
    betti = betti_numbers(delta, field)
    if betti.get(d - 1) != 1:
        raise EnumerativeError(f"对偶检验要求在 {field.name} 上可定向 (β_{{d-1}} = 1)")

    h = h_from_f(f_vector(delta), d)
    hp = h_prime(h, betti, d)
    hpp = h_double_prime(h, betti, d)
    gt = g_tilde_from(h, betti, d)

    symmetry = tuple(hpp[i] - hpp[d - i] for i in range(d + 1))
    identity = tuple(
        gt[i] - (hpp[d - i] - (hp[d - i + 1] if d - i + 1 <= d else 0))
        for i in range(len(gt))
    )
    unreduced = [betti.get(0) + 1] + [betti.get(j) for j in range(1, d)]
    poincare = tuple(unreduced[j] - unreduced[d - 1 - j] for j in range(d))
    return DualityReport(field, symmetry, identity, poincare)
