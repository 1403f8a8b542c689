"""
测试 enumerative 模块
"""
import pytest


def _boundary(delta):
    from src.stacked_manifolds.manifold import boundary_complex
    return boundary_complex(delta)


class TestFAndH:
    """测试 f 向量与 h 向量"""

    def test_f_vector(self):
        """测试 f 向量"""
        from src.stacked_manifolds.enumerative import f_vector
        from src.stacked_manifolds.generators import klee_novik, kuhnel_lassmann
        assert f_vector(kuhnel_lassmann(3, 7)) == (1, 7, 14, 7)
        assert f_vector(klee_novik(4, 1)) == (1, 8, 24, 24, 8)
        assert f_vector(klee_novik(4, 0)) == (1, 8, 12, 8, 2)

    def test_h_from_f(self):
        """测试 h 向量"""
        from src.stacked_manifolds.enumerative import h_from_f
        assert h_from_f((1, 7, 14, 7), 3) == (1, 4, 3, -1)
        assert h_from_f((1, 8, 24, 24, 8), 4) == (1, 4, 6, -4, 1)
        assert h_from_f((1, 8, 12, 8, 2), 4) == (1, 4, -6, 4, -1)
        assert h_from_f((1, 6, 12, 8), 3) == (1, 3, 3, 1)

    def test_round_trip(self):
        """测试 f ↔ h 互逆"""
        from src.stacked_manifolds.enumerative import f_vector, h_from_f, f_from_h
        from src.stacked_manifolds.generators import join_boundaries, klee_novik, kuhnel_lassmann
        for delta in (kuhnel_lassmann(4, 9), klee_novik(5, 2), join_boundaries(2, 3)):
            d = delta.dim + 1
            f = f_vector(delta)
            assert f_from_h(h_from_f(f, d), d) == f

    def test_length_mismatch(self):
        """测试长度不符"""
        from src.stacked_manifolds.enumerative import h_from_f, EnumerativeError
        with pytest.raises(EnumerativeError):
            h_from_f((1, 3, 3), 3)
        with pytest.raises(EnumerativeError):
            h_from_f((2, 3, 3, 1), 3)


class TestHPrime:
    """测试 h' 与 h'' 向量"""

    def test_mobius_band(self):
        """测试 K_{3,7}"""
        from src.stacked_manifolds.enumerative import h_prime, h_double_prime
        h = (1, 4, 3, -1)
        betti = (0, 1, 0)
        assert h_prime(h, betti, 3) == (1, 4, 3, 0)
        assert h_double_prime(h, betti, 3) == (1, 4, 0, 0)

    def test_klee_novik(self):
        """测试 B_{4,1}"""
        from src.stacked_manifolds.enumerative import vector_suite
        from src.stacked_manifolds.generators import klee_novik
        suite = vector_suite(klee_novik(4, 1))
        assert suite.betti.betti == (0, 1, 0, 0)
        assert suite.h_double == (1, 4, 0, 0, 0)

    def test_top_entry_mismatch(self):
        """测试 h'_d ≠ β_{d-1}"""
        from src.stacked_manifolds.enumerative import h_prime, EnumerativeError
        with pytest.raises(EnumerativeError) as exc:
            h_prime((1, 4, 3, -1), (0, 0, 0), 3)
        assert exc.value.residual == -1

    def test_top_entry_is_top_betti(self):
        """测试 h'_d = β_{d-1} 对各类复形成立"""
        from src.stacked_manifolds.enumerative import vector_suite
        from src.stacked_manifolds.generators import join_boundaries, klee_novik, kuhnel_lassmann
        for delta in (kuhnel_lassmann(4, 7), klee_novik(5, 1), join_boundaries(1, 2),
                      _boundary(klee_novik(4, 1))):
            suite = vector_suite(delta)
            assert suite.h_prime[suite.d] == suite.betti.get(suite.d - 1)


class TestGVectors:
    """测试 g 与 g̃ 向量"""

    def test_g_vector(self):
        """测试 g 向量"""
        from src.stacked_manifolds.enumerative import g_vector
        assert g_vector((1, 3, 3, 1)) == (1, 2, 0, -2)

    def test_g_tilde(self):
        """测试 g̃ 向量"""
        from src.stacked_manifolds.enumerative import g_tilde
        from src.stacked_manifolds.generators import klee_novik, kuhnel_lassmann, simplex_boundary
        assert g_tilde(simplex_boundary(4)) == (1, 0, 0)
        assert g_tilde(_boundary(kuhnel_lassmann(5, 11))) == (1, 6, 0)
        assert g_tilde(_boundary(klee_novik(4, 1))) == (1, 4)

    def test_cross_polytopes(self):
        """测试交叉多面体的 g̃ 是 M-向量"""
        from src.stacked_manifolds.enumerative import g_tilde, is_m_vector, vector_suite
        from src.stacked_manifolds.generators import cross_polytope
        assert vector_suite(cross_polytope(3)).h == (1, 3, 3, 1)
        expected = {3: (1, 2), 4: (1, 3, 2), 5: (1, 4, 5)}
        for d, value in expected.items():
            assert g_tilde(cross_polytope(d)) == value
            assert is_m_vector(value).is_m_vector

    def test_g_tilde_is_m_vector(self):
        """测试球面与堆叠闭流形的 g̃ 是 M-向量"""
        from src.stacked_manifolds.enumerative import g_tilde, is_m_vector
        from src.stacked_manifolds.generators import klee_novik, simplex_boundary
        expected = [
            (simplex_boundary(3), (1, 0)),
            (simplex_boundary(4), (1, 0, 0)),
            (simplex_boundary(5), (1, 0, 0)),
            (_boundary(klee_novik(4, 1)), (1, 4)),
            (_boundary(klee_novik(6, 1)), (1, 6, 0)),
        ]
        for delta, value in expected:
            assert g_tilde(delta) == value
            assert is_m_vector(value).is_m_vector

    def test_torus_suite(self):
        """测试环面的全部向量"""
        from src.stacked_manifolds.enumerative import vector_suite
        from src.stacked_manifolds.generators import klee_novik
        suite = vector_suite(_boundary(klee_novik(4, 1)))
        assert suite.f == (1, 8, 24, 16)
        assert suite.h == (1, 5, 11, -1)
        assert suite.h_double == (1, 5, 5, 1)
        assert suite.betti.betti == (0, 2, 1)

    def test_boundary_g_tilde_matches_h_double(self):
        """测试 g̃(∂Δ) 等于 h''(Δ) 的前半段"""
        from src.stacked_manifolds.enumerative import g_tilde, vector_suite
        from src.stacked_manifolds.generators import klee_novik, kuhnel_lassmann
        for delta in (kuhnel_lassmann(5, 11), klee_novik(6, 1)):
            hpp = vector_suite(delta).h_double
            value = g_tilde(_boundary(delta))
            assert value == hpp[:len(value)]


class TestMissingFaceCounts:
    """测试缺失面计数"""

    def test_mobius_band(self):
        """测试 K_{3,5}"""
        from src.stacked_manifolds.enumerative import missing_face_counts
        from src.stacked_manifolds.generators import kuhnel_lassmann
        assert missing_face_counts(kuhnel_lassmann(3, 5)) == {3: 5}

    def test_simplex_boundary(self):
        """测试 ∂σ³"""
        from src.stacked_manifolds.enumerative import missing_face_counts
        from src.stacked_manifolds.generators import simplex_boundary
        assert missing_face_counts(simplex_boundary(3)) == {4: 1}


class TestDehnSommerville:
    """测试 Dehn-Sommerville 残差"""

    def test_residuals_vanish(self):
        """测试带边流形上残差为零"""
        from src.stacked_manifolds.enumerative import dehn_sommerville_residual
        from src.stacked_manifolds.generators import klee_novik, kuhnel_lassmann, stacked_ball
        fixtures = [kuhnel_lassmann(3, 5), kuhnel_lassmann(3, 7), kuhnel_lassmann(4, 7),
                    kuhnel_lassmann(4, 9), kuhnel_lassmann(5, 11),
                    klee_novik(4, 0), klee_novik(4, 1), klee_novik(4, 2), klee_novik(5, 1),
                    klee_novik(6, 1), stacked_ball(3, 8, seed=4)]
        for delta in fixtures:
            residual = dehn_sommerville_residual(delta)
            assert residual.vanishes, residual
            assert len(residual.eq2) == delta.dim + 2

    def test_requires_with_boundary(self):
        """测试闭流形报错"""
        from src.stacked_manifolds.enumerative import dehn_sommerville_residual, EnumerativeError
        from src.stacked_manifolds.generators import simplex_boundary
        with pytest.raises(EnumerativeError):
            dehn_sommerville_residual(simplex_boundary(3))


class TestMVector:
    """测试 M-向量判定"""

    def test_accepts(self):
        """测试合法 M-向量"""
        from src.stacked_manifolds.enumerative import is_m_vector
        assert is_m_vector((1, 6, 0)).is_m_vector
        assert is_m_vector((1,)).is_m_vector
        assert is_m_vector((1, 3, 6, 10)).is_m_vector

    def test_rejects(self):
        """测试违反 Macaulay 界"""
        from src.stacked_manifolds.enumerative import is_m_vector
        assert is_m_vector((1, 2, 4)).first_violation_index == 2
        assert is_m_vector((1, 0, 1)).first_violation_index == 2
        assert is_m_vector((2, 1)).first_violation_index == 0
        assert is_m_vector((1, -1)).first_violation_index == 1

    def test_macaulay_bound(self):
        """测试 Macaulay 伪幂"""
        from src.stacked_manifolds.enumerative import macaulay_bound
        assert macaulay_bound(2, 1) == 3
        assert macaulay_bound(3, 1) == 6
        assert macaulay_bound(0, 2) == 0


class TestGlbcProbe:
    """测试 g̃ 非负性探测"""

    def test_torus(self):
        """测试环面"""
        from src.stacked_manifolds.enumerative import glbc_probe
        from src.stacked_manifolds.generators import klee_novik
        probe = glbc_probe(_boundary(klee_novik(4, 1)))
        assert probe.min_value == 1
        assert probe.first_negative_index is None


class TestDualityChecks:
    """测试对称性与 Poincaré 对偶"""

    def test_orientable_manifolds(self):
        """测试可定向闭流形上恒等式成立"""
        from src.stacked_manifolds.enumerative import symmetry_and_duality_checks
        from src.stacked_manifolds.generators import cross_polytope, klee_novik, simplex_boundary
        fixtures = [_boundary(klee_novik(4, 1)), _boundary(klee_novik(5, 1)), _boundary(klee_novik(6, 1)),
                    simplex_boundary(3), simplex_boundary(4), simplex_boundary(5),
                    cross_polytope(3), cross_polytope(4), cross_polytope(5)]
        for delta in fixtures:
            report = symmetry_and_duality_checks(delta)
            assert report.h_double_symmetric
            assert report.g_tilde_holds
            assert report.poincare_holds

    def test_over_gf2(self):
        """测试 GF(2) 上对不可定向流形也成立"""
        from src.stacked_manifolds.enumerative import symmetry_and_duality_checks
        from src.stacked_manifolds.homology import GF2
        from src.stacked_manifolds.generators import kuhnel_lassmann
        for delta in (_boundary(kuhnel_lassmann(4, 9)), _boundary(kuhnel_lassmann(5, 9))):
            report = symmetry_and_duality_checks(delta, GF2)
            assert report.h_double_symmetric
            assert report.g_tilde_holds
            assert report.poincare_holds

    def test_non_orientable_over_rationals(self):
        """测试 QQ 上不可定向时报错"""
        from src.stacked_manifolds.enumerative import symmetry_and_duality_checks, EnumerativeError
        from src.stacked_manifolds.generators import kuhnel_lassmann
        with pytest.raises(EnumerativeError):
            symmetry_and_duality_checks(_boundary(kuhnel_lassmann(5, 9)))

    def test_requires_closed(self):
        """测试带边流形报错"""
        from src.stacked_manifolds.enumerative import symmetry_and_duality_checks, EnumerativeError
        from src.stacked_manifolds.generators import kuhnel_lassmann
        with pytest.raises(EnumerativeError):
            symmetry_and_duality_checks(kuhnel_lassmann(3, 7))
