"""
测试 formatters 模块
"""
import json


def _report(delta, max_r=None):
    from src.stacked_manifolds.cli import build_analysis_report
    from src.stacked_manifolds.facet_file import ParsedFacetFile
    from src.stacked_manifolds.homology import RATIONALS
    return build_analysis_report(ParsedFacetFile(delta), "<test>", RATIONALS, max_r)


class TestFormatResult:
    """测试 format_result 函数"""

    def test_format_none(self):
        """测试 None 输入"""
        from src.stacked_manifolds.formatters import format_result
        assert format_result(None) is None

    def test_format_primitive(self):
        """测试原始类型"""
        from src.stacked_manifolds.formatters import format_result
        assert format_result("hello") == "hello"
        assert format_result(123) == 123
        assert format_result(True) is True

    def test_big_int(self):
        """测试超出安全范围的整数"""
        from src.stacked_manifolds.formatters import format_result
        assert format_result(2 ** 60) == {"big": str(2 ** 60)}
        assert format_result(-(2 ** 53)) == {"big": str(-(2 ** 53))}
        assert format_result(2 ** 53 - 1) == 2 ** 53 - 1

    def test_format_complex(self):
        """测试复形格式化"""
        from src.stacked_manifolds.formatters import format_result
        from src.stacked_manifolds.generators import kuhnel_lassmann
        result = format_result(kuhnel_lassmann(3, 5))
        assert result["n"] == 5
        assert result["dim"] == 2
        assert result["facet_count"] == 5
        assert result["facets"][0] == [1, 2, 3]

    def test_format_complex_truncated(self):
        """测试面列表截断"""
        from src.stacked_manifolds.formatters import format_result
        from src.stacked_manifolds.generators import klee_novik
        result = format_result(klee_novik(4, 1), max_rows=5)
        assert len(result["facets"]) == 5
        assert "warning" in result
        assert result["total_rows"] == 8

    def test_format_dataclass_and_enum(self):
        """测试 dataclass 与枚举"""
        from src.stacked_manifolds.formatters import format_result
        from src.stacked_manifolds.stackedness import Criterion, StackednessVerdict
        verdict = StackednessVerdict(2, 1, True, Criterion.LOCAL, notes=["x"])
        assert format_result(verdict) == {
            "r": 2, "stack_level": 1, "verdict": True, "criterion": "local",
            "witness": None, "notes": ["x"],
        }

    def test_format_betti_and_dict_keys(self):
        """测试 Betti 向量与整数键"""
        from src.stacked_manifolds.formatters import format_result
        from src.stacked_manifolds.homology import BettiVector, GF2
        result = format_result({3: BettiVector((0, 1), GF2)})
        assert result == {"3": {"field": "GF(2)", "betti": [0, 1], "empty_face_betti": 0}}

    def test_report_is_json_serializable(self):
        """测试完整报告可以序列化"""
        from src.stacked_manifolds.formatters import format_result
        from src.stacked_manifolds.generators import kuhnel_lassmann
        data = json.loads(json.dumps(format_result(_report(kuhnel_lassmann(3, 7)))))
        assert data["format_version"] == 1
        assert data["vectors"]["h_double"] == [1, 4, 0, 0]
        assert data["classification"]["is_manifold_with_boundary"] is True
        assert data["dehn_sommerville"]["vanishes"] is True


class TestTextHelpers:
    """测试文本工具"""

    def test_format_vector(self):
        """测试向量文本"""
        from src.stacked_manifolds.formatters import format_vector
        assert format_vector("h", (1, 4, 3, -1)) == "h = (1, 4, 3, -1)"

    def test_yes_no(self):
        """测试布尔文本"""
        from src.stacked_manifolds.formatters import yes_no
        assert yes_no(True) == "yes"
        assert yes_no(False) == "no"
        assert yes_no(None) == "n/a"

    def test_format_table(self):
        """测试表格"""
        from src.stacked_manifolds.formatters import format_table
        text = format_table([{"dim": 0, "faces": 7}], ["dim", "faces"])
        assert "dim" in text and "faces" in text
        assert format_table([], ["dim"]) == "(empty)"


class TestAnalysisText:
    """测试分析报告文本"""

    def test_kuhnel_lassmann(self):
        """测试 K_{3,7}"""
        from src.stacked_manifolds.formatters import format_analysis_text
        from src.stacked_manifolds.generators import kuhnel_lassmann
        text = format_analysis_text(_report(kuhnel_lassmann(3, 7)))
        assert "h = (1, 4, 3, -1)" in text
        assert "h'' = (1, 4, 0, 0)" in text
        assert "manifold with boundary: yes" in text
        assert "0-stacked: no [h''_1 = 4 -> no]" in text
        assert "1-stacked: yes [h''_2 = 0 -> yes]" in text

    def test_sphere(self):
        """测试 ∂σ³"""
        from src.stacked_manifolds.formatters import format_analysis_text, G_TILDE
        from src.stacked_manifolds.generators import simplex_boundary
        text = format_analysis_text(_report(simplex_boundary(3)))
        assert "homology sphere: yes" in text
        assert f"{G_TILDE} = (1, 0)" in text
        assert "locally 0-stacked: yes; 0-stacked: yes" in text

    def test_join(self):
        """测试联结: 局部 1-stacked 但整体不是"""
        from src.stacked_manifolds.formatters import format_analysis_text
        from src.stacked_manifolds.generators import join_boundaries
        text = format_analysis_text(_report(join_boundaries(2, 2), max_r=2))
        assert "locally 1-stacked: yes; 1-stacked: no" in text

    def test_torus(self):
        """测试环面"""
        from src.stacked_manifolds.formatters import format_analysis_text, G_TILDE
        from src.stacked_manifolds.manifold import boundary_complex
        from src.stacked_manifolds.generators import klee_novik
        text = format_analysis_text(_report(boundary_complex(klee_novik(4, 1))))
        assert "h'' = (1, 5, 5, 1)" in text
        assert f"{G_TILDE} = (1, 4)" in text
        assert "orientable: yes" in text
        assert "Poincare duality: yes" in text

    def test_g_tilde_shortcut(self):
        """测试闭流形同时报告 g̃ 判据"""
        from src.stacked_manifolds.formatters import format_analysis_text, G_TILDE
        from src.stacked_manifolds.manifold import boundary_complex
        from src.stacked_manifolds.generators import join_boundaries, klee_novik
        text = format_analysis_text(_report(boundary_complex(klee_novik(6, 1))))
        assert f"locally 1-stacked: yes; 1-stacked: yes; {G_TILDE}_2 = 0 (WLP): yes" in text
        assert f"0-stacked: no; {G_TILDE}_1 = 0 (WLP): no" in text
        assert "local implication violated" not in text
        report = _report(join_boundaries(2, 2), max_r=2)
        criteria = [(v.r, v.criterion.value) for v in report.stackedness]
        assert (1, "g-tilde") in criteria
        assert (2, "g-tilde") not in criteria
