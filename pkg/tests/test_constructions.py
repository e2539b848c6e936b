"""
Tests for the built-in constructions and the example registry.
"""
import math

import pytest

from conftest import FIXTURE_DIR, O4_GENERATORS
from constructions import (builtin_example, dihedral_group, load_rep, load_source, reflection_rep, registry,
                           simplex_rep)
from cpr import CprGraph
from errors import FieldError, RankError, SingularVectorError, UnknownExampleError
from ffmatrix import BilinearForm, FiniteField, Matrix, singular_vectors
from permgroup import Permutation
from repfile import emit_document, load_path
from sggi import schlafli_type, verify

BASIS = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]


class TestSimplex:
    def test_generators(self):
        rep = simplex_rep(4)
        assert [str(gen) for gen in rep.generators] == ["(1,2)", "(2,3)", "(3,4)"]
        assert str(schlafli_type(rep)) == "[3,3]"
        assert simplex_rep(3).rank == 2

    def test_order(self):
        assert simplex_rep(5).group().order() == 120

    def test_too_small(self):
        with pytest.raises(RankError):
            simplex_rep(2)


class TestReflectionRep:
    def test_reproduces_the_displayed_generators(self, o4_form, gf3):
        rep = reflection_rep(o4_form, BASIS, [1, -1, 1, -1])
        assert list(rep.generators) == [Matrix(gf3, rows) for rows in O4_GENERATORS]
        assert rep.generators == builtin_example("O4minus3").generators

    def test_verifies_with_type_446(self, o4_form):
        report = verify(reflection_rep(o4_form, BASIS, [1, -1, 1, -1]))
        assert report.is_string_c_group
        assert str(report.schlafli) == "[4,4,6]"
        # 2 q^2 (q^2 + 1)(q^2 - 1) at q = 3
        assert report.group_order == 2 * 9 * 10 * 8

    def test_repeated_vector(self, o4_form):
        rep = reflection_rep(o4_form, [BASIS[0], BASIS[0]], [1, 1])
        assert rep.generators[0] == rep.generators[1]
        assert not verify(rep).is_string_c_group

    def test_errors(self, o4_form):
        with pytest.raises(ValueError):
            reflection_rep(o4_form, BASIS, [1, -1])
        with pytest.raises(ValueError):
            reflection_rep(o4_form, BASIS[:1], [2])
        with pytest.raises(SingularVectorError):
            reflection_rep(o4_form, singular_vectors(o4_form)[:1], [1])
        gf5 = FiniteField(5)
        identity = BilinearForm.from_rows(gf5, [[1, 0], [0, 1]])
        assert reflection_rep(identity, [(1, 0)], [-1]).generators[0].rows() == [[1, 0], [0, 4]]
        with pytest.raises(FieldError):
            reflection_rep(BilinearForm.from_rows(FiniteField(2), [[1]]), [(1,)], [1])


class TestDihedral:
    @pytest.mark.parametrize("k", [2, 3, 5, 8])
    def test_order(self, k):
        assert dihedral_group(k).order() == 2 * k

    def test_two_is_klein_four(self):
        group = dihedral_group(2)
        assert group.degree == 4
        assert all(gen.is_involution for gen in group.generators)
        assert group.generators[0] != group.generators[1]
        assert (group.generators[0] * group.generators[1]).order() == 2

    def test_too_small(self):
        with pytest.raises(ValueError):
            dihedral_group(1)


class TestRegistry:
    def test_names(self):
        names = registry.names()
        for name in ("O4minus3", "A11-rank6-1", "A11-rank6-2", "A11-rank6-3", "S5-permmat-gf4", "simplex6"):
            assert name in names
            assert name in registry
        assert "simplex:7" in registry
        assert "simplex:x" not in registry

    def test_unknown_name_lists_the_registry(self):
        with pytest.raises(UnknownExampleError, match="registered: .*O4minus3"):
            builtin_example("O5plus7")

    def test_simplex_names(self):
        assert builtin_example("simplex:6") == simplex_rep(6)
        assert builtin_example("simplex6") == simplex_rep(6)
        assert builtin_example("simplex6").label == "simplex6"

    def test_graph_fixtures_convert(self):
        assert isinstance(registry.document("A11-rank6-1"), CprGraph)
        assert builtin_example("A11-rank6-1").generators[0] == Permutation.parse("(1,2)(3,4)", 11)

    def test_fixture_text_is_canonical(self):
        for path in sorted(FIXTURE_DIR.iterdir()):
            assert emit_document(load_path(path)) == path.read_text(), path.name

    def test_text_of_built_example(self):
        assert registry.text("simplex:3") == "kind: permutation\nlabel: simplex:3\ndegree: 3\ngen: (1,2)\ngen: (2,3)\n"
        assert registry.text("O4minus3") == (FIXTURE_DIR / "O4minus3.rep").read_text()

    @pytest.mark.parametrize("name,schlafli,order", [
        ("O4minus3", "[4,4,6]", 1440),
        ("simplex6", "[3,3,3,3]", 720),
        ("S5-permmat-gf4", "[3,3,3]", 120),
    ])
    def test_entries_verify(self, name, schlafli, order):
        report = verify(builtin_example(name))
        assert report.is_string_c_group
        assert str(report.schlafli) == schlafli
        assert report.group_order == order

    def test_even_characteristic_fixture(self):
        rep = builtin_example("S5-permmat-gf4")
        assert rep.engine == "matrix"
        assert rep.generators[0].field == FiniteField(2, 2)
        assert rep.generators[0].dim == 5

    @pytest.mark.slow
    @pytest.mark.parametrize("name,schlafli", [
        ("A11-rank6-1", "[5,3,6,3,5]"),
        ("A11-rank6-2", "[5,5,6,3,5]"),
        ("A11-rank6-3", "[5,5,6,5,5]"),
    ])
    def test_alt11_graphs(self, name, schlafli):
        report = verify(builtin_example(name))
        assert report.is_string_c_group
        assert str(report.schlafli) == schlafli
        assert report.group_order == math.factorial(11) // 2


class TestLoadSource:
    def test_paths_and_names(self):
        assert load_rep(FIXTURE_DIR / "simplex6.rep") == load_rep("simplex6")
        assert isinstance(load_source("A11-rank6-3"), CprGraph)

    def test_missing(self):
        with pytest.raises(FileNotFoundError):
            load_source("no/such/file.rep")
