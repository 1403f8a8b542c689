"""
测试面文件读写
"""
import logging

import pytest


class TestParse:
    """测试解析"""

    def test_integer_mode(self):
        """测试整数标号"""
        from src.stacked_manifolds.complex_core import face_of
        from src.stacked_manifolds.facet_file import parse_facet_text
        parsed = parse_facet_text("1 2 3\n# comment\n\n2 3 4   # trailing\n")
        assert parsed.labels is None
        assert parsed.complex.n == 4
        assert parsed.complex.facets == (face_of([1, 2, 3]), face_of([2, 3, 4]))

    def test_unused_vertices_from_max_label(self):
        """测试 n 取最大标号"""
        from src.stacked_manifolds.complex_core import unused_vertices
        from src.stacked_manifolds.facet_file import parse_facet_text
        parsed = parse_facet_text("1 2\n2 5\n")
        assert parsed.complex.n == 5
        assert unused_vertices(parsed.complex) == [3, 4]

    def test_identifier_mode(self):
        """测试标识符按首次出现编号"""
        from src.stacked_manifolds.complex_core import face_of
        from src.stacked_manifolds.facet_file import parse_facet_text
        parsed = parse_facet_text("a b\nb c\nc a\n")
        assert parsed.labels == {"a": 1, "b": 2, "c": 3}
        assert set(parsed.complex.facets) == {face_of([1, 2]), face_of([2, 3]), face_of([1, 3])}

    def test_leading_zero_is_identifier(self):
        """测试带前导零的记号按标识符处理"""
        from src.stacked_manifolds.facet_file import parse_facet_text
        parsed = parse_facet_text("01 2\n")
        assert parsed.labels == {"01": 1, "2": 2}

    def test_duplicate_token(self):
        """测试行内重复"""
        from src.stacked_manifolds.facet_file import parse_facet_text, FacetFileError
        with pytest.raises(FacetFileError) as exc:
            parse_facet_text("1 2\n3 3 4\n", "bad.txt")
        assert exc.value.line_no == 2
        assert exc.value.path == "bad.txt"
        assert "bad.txt:2" in str(exc.value)

    def test_no_facets(self):
        """测试空输入"""
        from src.stacked_manifolds.facet_file import parse_facet_text, FacetFileError
        with pytest.raises(FacetFileError):
            parse_facet_text("# nothing\n\n")


class TestWrite:
    """测试写出"""

    def test_canonical_text(self):
        """测试规范输出"""
        from src.stacked_manifolds.complex_core import from_facets
        from src.stacked_manifolds.facet_file import format_facet_text
        delta = from_facets(4, [[4, 3, 2], [3, 1, 2]])
        assert format_facet_text(delta) == "1 2 3\n2 3 4\n"

    def test_round_trip(self, tmp_path):
        """测试写出后读回"""
        from src.stacked_manifolds.facet_file import read_facet_file, write_facet_file
        from src.stacked_manifolds.generators import klee_novik
        delta = klee_novik(4, 1)
        path = write_facet_file(delta, tmp_path / "b41.txt")
        assert read_facet_file(path).complex == delta

    def test_empty_complex(self, tmp_path, caplog):
        """测试 {∅} 写出空文件"""
        from src.stacked_manifolds.complex_core import empty_complex
        from src.stacked_manifolds.facet_file import write_facet_file
        with caplog.at_level(logging.WARNING):
            path = write_facet_file(empty_complex(3), tmp_path / "empty.txt")
        assert path.read_text(encoding="utf-8") == ""
        assert "空文件" in caplog.text

    def test_missing_file(self, tmp_path):
        """测试文件不存在"""
        from src.stacked_manifolds.facet_file import read_facet_file
        with pytest.raises(OSError):
            read_facet_file(tmp_path / "missing.txt")
