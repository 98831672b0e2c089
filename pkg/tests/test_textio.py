import json

import pytest

from tropica.errors import ParseError, SemiringMismatch, UnknownFixture
from tropica.fixtures import CATALOGUE, d_matrix, fixtures, g_matrix, mrw_matrix, names
from tropica.matrices import Matrix
from tropica.scalars import NEG_INF, neg, pos
from tropica.textio import format_matrix, parse_matrix, parse_matrix_json, parse_matrix_text, parse_vector

N = NEG_INF


class TestText:
    def test_identity(self):
        assert parse_matrix_text("0 -inf\n-inf 0\n", "rmax") == Matrix.identity(2)

    def test_smax_tokens(self):
        M = parse_matrix_text("+0 -0\n", "smax")
        assert M.row(0) == (pos(0), neg(0))

    def test_ragged(self):
        with pytest.raises(ParseError) as exc:
            parse_matrix_text("0 1\n2\n")
        assert exc.value.line == 2

    def test_bad_token_position(self):
        with pytest.raises(ParseError) as exc:
            parse_matrix_text("0 1\n2 x\n")
        assert (exc.value.line, exc.value.column) == (2, 3)

    def test_wrong_semiring_token(self):
        with pytest.raises(SemiringMismatch):
            parse_matrix_text("3/2*\n", "rmax")

    def test_comments_and_blank_lines(self):
        assert parse_matrix_text("# a comment\n\n1 2\n") == Matrix([[1, 2]])

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_matrix_text("# nothing\n")


class TestJson:
    def test_round_trip(self):
        M = Matrix([["+1", "2*"], ["-inf", "-3/2"]], "smax")
        assert parse_matrix_json(json.dumps(M.to_json())) == M
        assert parse_matrix(format_matrix(M, "json")) == M

    def test_tag_mismatch(self):
        data = {"rows": 1, "cols": 1, "semiring": "te", "entries": ["1v"]}
        with pytest.raises(SemiringMismatch):
            parse_matrix_json(data, "smax")

    def test_numbers_for_rmax(self):
        data = {"rows": 1, "cols": 2, "semiring": "rmax", "entries": [1, "-inf"]}
        assert parse_matrix_json(data) == Matrix([[1, N]])

    def test_float_rejected(self):
        with pytest.raises(ParseError):
            parse_matrix_json({"rows": 1, "cols": 1, "semiring": "rmax", "entries": [0.5]})

    def test_wrong_count(self):
        with pytest.raises(ParseError):
            parse_matrix_json({"rows": 2, "cols": 2, "semiring": "rmax", "entries": [0]})

    def test_invalid_json(self):
        with pytest.raises(ParseError):
            parse_matrix("{not json")


def test_vectors():
    assert parse_vector("1 2 3\n") == parse_vector("1\n2\n3\n")
    with pytest.raises(ParseError):
        parse_vector("1 2\n3 4\n")


class TestFixtures:
    def test_d3(self):
        assert fixtures("D", n=3) == fixtures("D3") == d_matrix(3)
        assert fixtures("D3") == Matrix([[-1, 0, 0], [0, -1, 0], [0, 0, -1]])

    def test_generated_sizes(self):
        assert fixtures("D", n=9) == d_matrix(9)
        assert fixtures("mrw", n=5) == mrw_matrix(5)

    def test_shapes(self):
        assert fixtures("F").shape == (6, 7)
        assert fixtures("X").shape == (4, 3)
        assert fixtures("G").shape == (13, 13)
        assert fixtures("G") == g_matrix(fixtures("F"))

    def test_example_pairs(self):
        assert fixtures("product_A").cols == fixtures("product_B").rows
        assert fixtures("sum_A").shape == fixtures("sum_B").shape
        assert fixtures("union_A").rows == fixtures("union_B").rows

    def test_unknown(self):
        with pytest.raises(UnknownFixture):
            fixtures("nope")
        with pytest.raises(UnknownFixture):
            fixtures("D")

    def test_names(self):
        assert set(CATALOGUE) <= set(names())

    @pytest.mark.parametrize("name", sorted(CATALOGUE) + ["D3", "D7", "mrw5"])
    def test_print_parse_round_trip(self, name):
        M = fixtures(name)
        assert parse_matrix_text(M.to_text()) == M

    def test_override_directory(self, tmp_path, monkeypatch):
        (tmp_path / "X.mat").write_text("1 2\n")
        monkeypatch.setenv("TROPICA_FIXTURES", str(tmp_path))
        assert fixtures("X") == Matrix([[1, 2]])
