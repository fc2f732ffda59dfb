#!/usr/bin/env python3
# tests/test_privcoord.py
"""
Tests for the adapted frame, the privileged transform and coordinate orders
"""

import itertools
import json
import math

import numpy as np
import pytest

from trident_nilpotent.core.errors import RankDeficiencyError, SingularFrameError
from trident_nilpotent.privcoord import (
    DEFAULT_BRACKET_ORDER,
    FrameMatrix,
    FrameRole,
    adapted_frame,
    block_lower_inverse,
    coordinate_functions,
    gauss_jordan_inverse,
    identity_residual,
    privileged_transform,
    scan_degenerate,
    verify_privileged,
)
from trident_nilpotent.symexpr import evaluate
from trident_nilpotent.trident.model import fields_original, fields_transformed
from trident_nilpotent.trident.reference import PRINTED_TRANSFORM
from trident_nilpotent.vfield import VectorField

R3 = math.sqrt(3.0)


@pytest.fixture
def fields():
    return fields_transformed()


@pytest.fixture
def frame(fields):
    return adapted_frame(fields, np.zeros(6))


class TestLinalg:
    """Small dense inversion"""

    def test_gauss_jordan_matches_numpy(self):
        """Test gauss jordan matches numpy"""
        rng = np.random.default_rng(3)
        a = rng.normal(size=(6, 6)) + 6 * np.eye(6)
        np.testing.assert_allclose(gauss_jordan_inverse(a), np.linalg.inv(a), atol=1e-12)

    def test_pivoting(self):
        """Test pivoting"""
        a = np.array([[0.0, 1.0], [1.0, 0.0]])
        np.testing.assert_allclose(gauss_jordan_inverse(a), a)

    def test_singular(self):
        """Test singular"""
        with pytest.raises(SingularFrameError):
            gauss_jordan_inverse(np.array([[1.0, 2.0], [2.0, 4.0]]))
        with pytest.raises(SingularFrameError):
            gauss_jordan_inverse(np.zeros((3, 3)))

    def test_non_square(self):
        """Test non square"""
        with pytest.raises(SingularFrameError):
            gauss_jordan_inverse(np.ones((2, 3)))

    def test_block_inverse(self):
        """Test block inverse"""
        g = np.eye(4)
        g[2:, :2] = [[1.0, 2.0], [3.0, 4.0]]
        g[2:, 2:] = [[2.0, 1.0], [0.0, 1.0]]
        inverse = block_lower_inverse(g, 2)
        np.testing.assert_allclose(inverse @ g, np.eye(4), atol=1e-14)
        assert np.array_equal(inverse[:2, :2], np.eye(2))
        assert np.array_equal(inverse[:2, 2:], np.zeros((2, 2)))

    def test_block_inverse_needs_zero_block(self):
        """Test block inverse needs zero block"""
        with pytest.raises(SingularFrameError):
            block_lower_inverse(np.ones((4, 4)) + np.eye(4), 2)


class TestAdaptedFrame:
    """Frame at a regular point"""

    def test_columns_at_origin(self, frame):
        """Test columns at origin"""
        np.testing.assert_allclose(frame.column(1), [1, 0, 0, -R3 / 2, 0, R3 / 2], atol=1e-15)
        np.testing.assert_allclose(frame.column(2), [0, 1, 0, 0.5, -1, 0.5], atol=1e-15)
        np.testing.assert_allclose(frame.column(3), [0, 0, 1, -2, -2, -2])
        np.testing.assert_allclose(frame.column(4), [0, 0, 0, 1, 1, 1], atol=1e-12)

    def test_pairs_follow_order(self, frame):
        """Test pairs follow order"""
        assert frame.pairs == DEFAULT_BRACKET_ORDER
        assert frame.labels == ("g1", "g2", "g3", "[g1,g2]", "[g2,g3]", "[g1,g3]")

    @pytest.mark.parametrize("order", list(itertools.permutations(DEFAULT_BRACKET_ORDER)))
    def test_custom_order(self, fields, order):
        """Any bracket order gives a frame whose inverse is privileged"""
        frame = adapted_frame(fields, np.zeros(6), bracket_order=order)
        assert frame.pairs == order
        M = privileged_transform(frame)
        assert identity_residual(M, frame) <= 1e-12
        assert verify_privileged(M, fields).passed

    def test_two_fields(self):
        """Fewer than three fields fall short of full rank instead of indexing past them"""
        X = VectorField.from_dsl("d/dx1 - x2/2*d/dx3")
        Y = VectorField.from_dsl("d/dx2 + x1/2*d/dx3")
        with pytest.raises(RankDeficiencyError) as excinfo:
            adapted_frame([X, Y], np.zeros(6))
        assert excinfo.value.achieved_rank == 3

    def test_rank_deficient(self):
        """Test rank deficient"""
        fields = [VectorField.coordinate_field(k) for k in (1, 2, 3)]
        with pytest.raises(RankDeficiencyError) as excinfo:
            adapted_frame(fields, np.zeros(6))
        assert excinfo.value.achieved_rank == 3
        assert excinfo.value.expected_rank == 6

    def test_singular_frame_rejected(self):
        """Test singular frame rejected"""
        with pytest.raises(SingularFrameError):
            FrameMatrix(np.zeros((6, 6)), FrameRole.FRAME)

    def test_shape_checked(self):
        """Test shape checked"""
        with pytest.raises(ValueError):
            FrameMatrix(np.eye(3), FrameRole.TRANSFORM)

    def test_entries_read_only(self, frame):
        """Test entries read only"""
        with pytest.raises(ValueError):
            frame.entries[0, 0] = 2.0

    def test_json(self, frame):
        """Test json"""
        data = frame.to_json()
        assert data["role"] == "frame"
        assert len(data["entries"]) == 6
        json.dumps(data)


class TestPrivilegedTransform:
    """M = G^-1 and the order certificate"""

    def test_identity_residual(self, frame):
        """Test identity residual"""
        M = privileged_transform(frame)
        assert identity_residual(M, frame) <= 1e-12

    def test_block_structure(self, frame):
        """Test block structure"""
        M = privileged_transform(frame).entries
        assert np.array_equal(M[:3, :3], np.eye(3))
        assert np.array_equal(M[:3, 3:], np.zeros((3, 3)))

    def test_role_and_labels(self, frame):
        """Test role and labels"""
        M = privileged_transform(frame)
        assert M.role is FrameRole.TRANSFORM
        assert M.labels == ("y1", "y2", "y3", "y4", "y5", "y6")

    def test_orders_match_weights(self, fields, frame):
        """Test orders match weights"""
        report = verify_privileged(privileged_transform(frame), fields)
        assert report.passed
        assert [item.order for item in report.items] == [1, 1, 1, 2, 2, 2]

    def test_wrong_transform_fails(self, fields, frame):
        """Test wrong transform fails"""
        # identity is not privileged: x4 has order 1 along g1
        identity = FrameMatrix(np.eye(6), FrameRole.TRANSFORM)
        report = verify_privileged(identity, fields)
        assert not report.passed
        assert report.failures == [4, 5, 6]

    def test_away_from_origin(self, fields):
        """Privileged at 10 random regular points"""
        points = np.random.default_rng(17).uniform(-0.3, 0.3, size=(10, 6))
        for p in points:
            frame = adapted_frame(fields, p)
            M = privileged_transform(frame)
            assert identity_residual(M, frame) <= 1e-12
            report = verify_privileged(M, fields)
            assert report.passed
            assert [item.order for item in report.items] == [1, 1, 1, 2, 2, 2]

    def test_original_model_general_inverse(self):
        """Test original model general inverse"""
        fields = fields_original()
        frame = adapted_frame(fields, np.zeros(6))
        M = privileged_transform(frame)
        assert identity_residual(M, frame) <= 1e-12
        assert verify_privileged(M, fields).passed

    def test_coordinate_functions_vanish_at_point(self, fields):
        """Test coordinate functions vanish at point"""
        p = np.array([0.2, 0.1, -0.1, 0.3, 0.0, -0.2])
        M = privileged_transform(adapted_frame(fields, p))
        ys = coordinate_functions(M)
        assert all(abs(evaluate(y, p)) < 1e-14 for y in ys)
        x = p + np.linspace(0.01, 0.06, 6)
        np.testing.assert_allclose([evaluate(y, x) for y in ys], M.entries @ (x - p), atol=1e-14)

    def test_report_json(self, fields, frame):
        """Test report json"""
        data = verify_privileged(privileged_transform(frame), fields).to_json()
        assert data["passed"]
        assert [c["order"] for c in data["coordinates"]] == [1, 1, 1, 2, 2, 2]

    def test_printed_matrix_residual_archived(self, frame, tmp_path):
        """Test printed matrix residual archived"""
        residual = identity_residual(PRINTED_TRANSFORM, frame)
        path = tmp_path / "printed_transform_residual.json"
        path.write_text(json.dumps({"printed_residual": residual}))
        data = json.loads(path.read_text())
        assert math.isfinite(data["printed_residual"])


class TestScanDegenerate:
    """Grid search for singular frames"""

    def test_finds_degenerate_point(self):
        """Test finds degenerate point"""
        fields = [VectorField.coordinate_field(k) for k in (1, 2, 3)]
        found = scan_degenerate(fields, samples=3)
        assert found is not None
        assert found.rank == 3
        np.testing.assert_allclose(found.point[3:], [-math.pi] * 3)

    def test_result_is_rank_deficient_when_found(self, fields):
        """Test result is rank deficient when found"""
        found = scan_degenerate(fields, samples=5)
        if found is not None:
            assert found.rank < 6
            assert found.to_json()["achieved_rank"] == found.rank
