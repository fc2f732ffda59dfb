#!/usr/bin/env python3
# tests/test_vfield.py
"""
Tests for vector fields, Lie brackets, growth vectors, weights and
nonholonomic orders
"""

import math

import numpy as np
import pytest

from trident_nilpotent.core.errors import (
    CoordinateMismatchError,
    NonAffineArgumentError,
    NotBracketGeneratingError,
    ParseError,
)
from trident_nilpotent.symexpr import parse
from trident_nilpotent.trident.model import fields_original, fields_transformed
from trident_nilpotent.vfield import (
    ORDER_UNBOUNDED,
    Flag,
    VectorField,
    bracket_levels,
    combine,
    fd_bracket,
    function_order,
    growth_vector,
    lie_bracket,
    load_fields,
    numeric_rank,
    weights,
)

R3 = math.sqrt(3.0)


@pytest.fixture
def transformed():
    return fields_transformed()


@pytest.fixture
def random_points():
    rng = np.random.default_rng(7)
    return rng.uniform(-0.3, 0.3, size=(20, 6))


@pytest.fixture
def fifty_points():
    rng = np.random.default_rng(11)
    return np.vstack([np.zeros(6), rng.uniform(-1.0, 1.0, size=(49, 6))])


class TestVectorField:
    """Construction, evaluation, algebra"""

    def test_from_dsl(self):
        """Test from dsl"""
        X = VectorField.from_dsl("d/dx1 + sin(x4)*d/dx4", name="X")
        assert X.coordinate == "x"
        np.testing.assert_allclose(X.evaluate([0, 0, 0, math.pi / 2, 0, 0]), [1, 0, 0, 1, 0, 0])

    def test_coordinate_tag_from_text(self):
        """Test coordinate tag from text"""
        assert VectorField.from_dsl("d/dy3").coordinate == "y"

    def test_component_count(self):
        """Test component count"""
        with pytest.raises(ValueError):
            VectorField((parse("x1"),))

    def test_unknown_coordinate_tag(self):
        """Test unknown coordinate tag"""
        with pytest.raises(ValueError):
            VectorField.constant([0] * 6, coordinate="z")

    def test_equality_ignores_name(self):
        """Test equality ignores name"""
        a = VectorField.from_dsl("d/dx1", name="a")
        b = VectorField.from_dsl("d/dx1", name="b")
        assert a == b
        assert hash(a) == hash(b)

    def test_compiled_matches_exact(self, transformed):
        """Test compiled matches exact"""
        p = [0.1, -0.2, 0.3, 0.25, -0.15, 0.05]
        for g in transformed:
            np.testing.assert_allclose(g.evaluate(p), g.evaluate_exact(p), atol=1e-15)

    def test_combine(self):
        """Test combine"""
        X = VectorField.coordinate_field(1)
        Y = VectorField.coordinate_field(2)
        np.testing.assert_allclose(combine([2.0, -1.0], [X, Y]).evaluate(np.zeros(6)), [2, -1, 0, 0, 0, 0])

    def test_to_dsl_round_trip(self, transformed):
        """Test to dsl round trip"""
        p = np.array([0.3, 0.1, -0.2, 0.4, 0.6, -0.5])
        for g in transformed:
            again = VectorField.from_dsl(g.to_dsl())
            np.testing.assert_allclose(again.evaluate(p), g.evaluate(p), atol=1e-14)

    def test_zero_field_prints(self):
        """Test zero field prints"""
        assert VectorField.zero().to_dsl() == "0"


class TestLieBracket:
    """Symbolic brackets and the finite-difference oracle"""

    def test_coordinate_fields_commute(self):
        """Test coordinate fields commute"""
        B = lie_bracket(VectorField.coordinate_field(1), VectorField.coordinate_field(2))
        assert B.is_zero()

    def test_heisenberg(self):
        """Test heisenberg"""
        X = VectorField.from_dsl("d/dx1 - x2/2*d/dx3")
        Y = VectorField.from_dsl("d/dx2 + x1/2*d/dx3")
        B = lie_bracket(X, Y)
        np.testing.assert_allclose(B.evaluate([0.4, -0.7, 0, 0, 0, 0]), [0, 0, 1, 0, 0, 0])

    def test_antisymmetry(self, transformed):
        """Test antisymmetry"""
        g1, g2, _ = transformed
        assert (lie_bracket(g1, g2) + lie_bracket(g2, g1)).is_zero()

    def test_jacobi_identity(self, transformed):
        """Test jacobi identity"""
        g1, g2, g3 = transformed
        total = (
            lie_bracket(g1, lie_bracket(g2, g3))
            + lie_bracket(g2, lie_bracket(g3, g1))
            + lie_bracket(g3, lie_bracket(g1, g2))
        )
        assert total.is_zero()

    def test_coordinate_mismatch(self):
        """Test coordinate mismatch"""
        with pytest.raises(CoordinateMismatchError):
            lie_bracket(VectorField.coordinate_field(1, "x"), VectorField.coordinate_field(1, "y"))

    def test_bracket_12_at_origin(self, transformed):
        """Test bracket 12 at origin"""
        g1, g2, _ = transformed
        value = lie_bracket(g1, g2).evaluate(np.zeros(6))
        np.testing.assert_allclose(value, [0, 0, 0, 1, 1, 1], atol=1e-12)

    def test_brackets_with_g3_at_origin(self, transformed):
        """Test brackets with g3 at origin"""
        g1, g2, g3 = transformed
        origin = np.zeros(6)
        np.testing.assert_allclose(lie_bracket(g2, g3).evaluate(origin), [0, 0, 0, -R3, 0, R3], atol=1e-12)
        np.testing.assert_allclose(lie_bracket(g1, g3).evaluate(origin), [0, 0, 0, -1, 2, -1], atol=1e-12)

    @pytest.mark.parametrize("pair", [(1, 2), (2, 3), (1, 3)])
    def test_symbolic_matches_finite_difference(self, transformed, fifty_points, pair):
        """Symbolic bracket agrees with central differences at 50 points"""
        i, j = pair
        B = lie_bracket(transformed[i - 1], transformed[j - 1])
        assert len(fifty_points) == 50
        for p in fifty_points:
            np.testing.assert_allclose(
                B.evaluate(p), fd_bracket(transformed[i - 1], transformed[j - 1], p), atol=1e-6
            )

    def test_bracket_name(self, transformed):
        """Test bracket name"""
        g1, g2, _ = transformed
        assert lie_bracket(g1, g2).name == "[g1,g2]"

    def test_fd_step_positive(self, transformed):
        """Test fd step positive"""
        with pytest.raises(ValueError):
            fd_bracket(transformed[0], transformed[1], np.zeros(6), h=0.0)


class TestFlag:
    """Growth vector and weights"""

    def test_rank(self):
        """Test rank"""
        assert numeric_rank(np.diag([1.0, 1e-3, 1e-10])) == 2
        assert numeric_rank(np.zeros((3, 3))) == 0

    def test_growth_vector_at_origin(self, transformed):
        """Test growth vector at origin"""
        flag = growth_vector(transformed, np.zeros(6))
        assert flag.dims == (3, 6)
        assert flag.degree_of_nonholonomy == 2
        assert flag.weights == (1, 1, 1, 2, 2, 2)

    def test_growth_vector_random_points(self, transformed, random_points):
        """Test growth vector random points"""
        for p in random_points:
            assert growth_vector(transformed, p).dims == (3, 6)

    def test_original_model(self):
        """Test original model"""
        assert growth_vector(fields_original(), np.zeros(6)).dims == (3, 6)

    @pytest.mark.parametrize("seed", [3, 5, 8])
    def test_invariant_under_mixing(self, transformed, random_points, seed):
        """Constant invertible recombinations of g1..g3 keep the flag"""
        mixing = np.random.default_rng(seed).normal(size=(3, 3)) + 3.0 * np.eye(3)
        assert abs(np.linalg.det(mixing)) > 1e-3
        mixed = [combine(row, transformed) for row in mixing]
        for p in np.vstack([np.zeros(6), random_points[:4]]):
            assert growth_vector(mixed, p).dims == (3, 6)

    def test_not_bracket_generating(self):
        """Test not bracket generating"""
        fields = [VectorField.coordinate_field(k) for k in (1, 2, 3)]
        with pytest.raises(NotBracketGeneratingError) as excinfo:
            growth_vector(fields, np.zeros(6))
        assert excinfo.value.dims[-1] == 3
        assert excinfo.value.depth == 4

    def test_depth_cap_respected(self):
        """Test depth cap respected"""
        # Heisenberg-type: needs length-2 brackets for the last direction
        X = VectorField.from_dsl("d/dx1 - x2/2*d/dx3")
        Y = VectorField.from_dsl("d/dx2 + x1/2*d/dx3")
        with pytest.raises(NotBracketGeneratingError) as excinfo:
            growth_vector([X, Y], np.zeros(6), depth_cap=1)
        assert excinfo.value.depth == 1
        assert excinfo.value.dims == (2,)

    def test_weights_rule(self):
        """Test weights rule"""
        assert weights(Flag((2, 3, 5, 6))) == (1, 1, 2, 3, 3, 4)

    def test_weights_need_full_rank(self):
        """Test weights need full rank"""
        with pytest.raises(ValueError):
            weights(Flag((3, 5)))

    def test_flag_must_not_decrease(self):
        """Test flag must not decrease"""
        with pytest.raises(ValueError):
            Flag((3, 2))

    def test_bracket_levels(self, transformed):
        """Test bracket levels"""
        levels = bracket_levels(transformed)
        assert len(next(levels)) == 3
        assert len(next(levels)) == 3
        assert len(next(levels)) == 9

    def test_flag_json(self):
        """Test flag json"""
        assert Flag((3, 6)).to_json() == {"dims": [3, 6], "degree_of_nonholonomy": 2, "weights": [1, 1, 1, 2, 2, 2]}


class TestFunctionOrder:
    """Nonholonomic order of a function"""

    def test_coordinate_along_field(self, transformed):
        """Test coordinate along field"""
        assert function_order(parse("x1"), np.zeros(6), transformed) == 1

    def test_nonzero_at_point(self, transformed):
        """Test nonzero at point"""
        assert function_order(parse("1 + x1"), np.zeros(6), transformed) == 0

    def test_zero_function(self, transformed):
        """Test zero function"""
        assert function_order(parse("0*x1"), np.zeros(6), transformed) == ORDER_UNBOUNDED

    def test_max_order_caps_search(self):
        """Test max order caps search"""
        X = VectorField.coordinate_field(1)
        assert function_order(parse("x1*x1*x1"), np.zeros(6), [X], max_order=2) == ORDER_UNBOUNDED
        assert function_order(parse("x1*x1*x1"), np.zeros(6), [X], max_order=3) == 3

    def test_negative_max_order(self, transformed):
        """Test negative max order"""
        with pytest.raises(ValueError):
            function_order(parse("x1"), np.zeros(6), transformed, max_order=-1)


class TestLoadFields:
    """DSL files"""

    def test_load(self, tmp_path):
        """Test load"""
        path = tmp_path / "fields.dsl"
        path.write_text("# heisenberg\nX = d/dx1 - x2/2*d/dx3\n\nd/dx2 + x1/2*d/dx3  # second\n")
        X, Y = load_fields(path)
        assert X.name == "X"
        assert Y.name == "g2"

    def test_parse_error_reports_line(self, tmp_path):
        """Test parse error reports line"""
        path = tmp_path / "bad.dsl"
        path.write_text("d/dx1\nsin(x1*x2)*d/dx2\n")
        with pytest.raises(ParseError) as excinfo:
            load_fields(path)
        assert "line 2" in str(excinfo.value)
        assert isinstance(excinfo.value, NonAffineArgumentError)
        assert excinfo.value.position == 0

    def test_empty_file(self, tmp_path):
        """Test empty file"""
        path = tmp_path / "empty.dsl"
        path.write_text("# nothing\n")
        with pytest.raises(ParseError):
            load_fields(path)

    def test_mixed_coordinates(self, tmp_path):
        """Test mixed coordinates"""
        path = tmp_path / "mixed.dsl"
        path.write_text("d/dx1\nd/dy2\n")
        with pytest.raises(CoordinateMismatchError):
            load_fields(path)
