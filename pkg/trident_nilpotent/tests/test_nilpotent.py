#!/usr/bin/env python3
# tests/test_nilpotent.py
"""
Tests for the coordinate change, weighted truncation, hat fields and the
nilpotency certificates
"""

import json

import numpy as np
import pytest

from trident_nilpotent.nilpotent import (
    WeightedField,
    approximate,
    dilate,
    hat_brackets,
    is_constant_field,
    pullback,
    pushforward,
    verify_first_order,
    verify_nilpotent,
    weighted_truncate,
)
from trident_nilpotent.privcoord import adapted_frame, privileged_transform
from trident_nilpotent.symexpr import Polynomial
from trident_nilpotent.trident.model import fields_original, fields_transformed
from trident_nilpotent.trident.reference import printed_hats_x, printed_hats_y
from trident_nilpotent.vfield import VectorField

WEIGHTS = (1, 1, 1, 2, 2, 2)
Y1 = (1, 0, 0, 0, 0, 0)
Y2 = (0, 1, 0, 0, 0, 0)
Y3 = (0, 0, 1, 0, 0, 0)
UNIT = (0, 0, 0, 0, 0, 0)


@pytest.fixture(scope="module")
def approximation():
    return approximate(fields_transformed(), np.zeros(6))


@pytest.fixture(scope="module")
def transform():
    return privileged_transform(adapted_frame(fields_transformed(), np.zeros(6)))


@pytest.fixture
def random_points():
    return np.random.default_rng(11).uniform(-0.5, 0.5, size=(20, 6))


class TestCoordinateChange:
    """pushforward / pullback through y = M (x - p)"""

    def test_pushforward_at_point_is_unit_vectors(self, transform):
        """Test pushforward at point is unit vectors"""
        for i, g in enumerate(fields_transformed()):
            np.testing.assert_allclose(pushforward(g, transform).evaluate(np.zeros(6)), np.eye(6)[i], atol=1e-12)

    def test_round_trip(self, transform, random_points):
        """Test round trip"""
        g = fields_transformed()[0]
        back = pullback(pushforward(g, transform), transform)
        for x in random_points[:5]:
            np.testing.assert_allclose(back.evaluate(x), g.evaluate(x), atol=1e-12)

    def test_pushforward_pointwise(self, transform, random_points):
        """Test pushforward pointwise"""
        g = fields_transformed()[1]
        gy = pushforward(g, transform)
        M, M_inv = transform.entries, transform.inverse()
        for y in random_points[:5]:
            np.testing.assert_allclose(gy.evaluate(y), M @ g.evaluate(M_inv @ y), atol=1e-12)

    def test_coordinate_tags_checked(self, transform):
        """Test coordinate tags checked"""
        with pytest.raises(ValueError):
            pushforward(VectorField.coordinate_field(1, "y"), transform)
        with pytest.raises(ValueError):
            pullback(VectorField.coordinate_field(1, "x"), transform)


class TestWeightedTruncation:
    """Hat fields at the origin"""

    def test_weights(self, approximation):
        """Test weights"""
        assert approximation.weights == WEIGHTS
        assert approximation.flag.dims == (3, 6)

    def test_g3_hat_is_unit_field(self, approximation):
        """Test g3 hat is unit field"""
        h3 = approximation.hats[2]
        assert h3.to_dsl() == "d/dy3"
        assert h3.components[2].coefficients == {UNIT: 1.0}

    def test_g1_hat(self, approximation):
        """Test g1 hat"""
        h1 = approximation.hats[0]
        assert h1.components[0].coefficients == {UNIT: 1.0}
        assert h1.components[3][Y2] == pytest.approx(-0.5, abs=1e-12)
        assert h1.components[4][Y1] == pytest.approx(-0.25, abs=1e-12)
        assert h1.components[5][Y2] == pytest.approx(-0.25, abs=1e-12)
        assert h1.components[5][Y3] == pytest.approx(-1.0, abs=1e-12)
        assert len(h1.components[3]) == 1

    def test_g2_hat(self, approximation):
        """Test g2 hat"""
        h2 = approximation.hats[1]
        assert h2.components[1].coefficients == {UNIT: 1.0}
        assert h2.components[3][Y1] == pytest.approx(0.5, abs=1e-12)
        assert h2.components[4][Y2] == pytest.approx(0.25, abs=1e-12)
        assert h2.components[4][Y3] == pytest.approx(-1.0, abs=1e-12)
        assert h2.components[5][Y1] == pytest.approx(-0.25, abs=1e-12)

    def test_only_degree_minus_one_monomials(self, approximation):
        """Test only degree minus one monomials"""
        for h in approximation.hats:
            for j, poly in enumerate(h.components):
                for alpha, _ in poly:
                    assert sum(a * w for a, w in zip(alpha, WEIGHTS)) == WEIGHTS[j] - 1

    @pytest.mark.parametrize("factor", [0.5, 2.0])
    def test_dilation_homogeneity(self, approximation, random_points, factor):
        """Test dilation homogeneity"""
        scale = factor ** (np.asarray(WEIGHTS) - 1.0)
        for h in approximation.hats:
            for y in random_points:
                np.testing.assert_allclose(
                    h.evaluate(dilate(y, WEIGHTS, factor)), scale * h.evaluate(y), rtol=1e-10, atol=1e-14
                )

    def test_rejects_x_fields(self):
        """Test rejects x-coordinate fields"""
        with pytest.raises(ValueError):
            weighted_truncate(fields_transformed()[0], WEIGHTS)

    def test_inadmissible_monomial(self):
        """Test inadmissible monomial"""
        constant = Polynomial.constant(1.0)
        with pytest.raises(ValueError):
            WeightedField((constant,) * 6, WEIGHTS)

    def test_truncating_twice_is_stable(self, approximation):
        """Test truncating twice is stable"""
        h1 = approximation.hats[0]
        assert weighted_truncate(h1, WEIGHTS) == h1


class TestCertificates:
    """First-order and nilpotency checks"""

    def test_first_order_passes(self, approximation):
        """Test first order passes"""
        assert all(r.passed for r in approximation.first_order)

    def test_perturbed_hat_fails_first_order(self, approximation):
        """Test perturbed hat fails first order"""
        g2 = approximation.fields_y[1]
        perturbed = approximation.hats[1].with_coefficient(4, Y1, 0.501)
        report = verify_first_order(g2, perturbed)
        assert not report.passed
        assert [(v.component, v.alpha) for v in report.violations] == [(4, Y1)]
        assert report.violations[0].coefficient == pytest.approx(-0.001, abs=1e-9)

    def test_nilpotent(self, approximation):
        """Test nilpotent"""
        report = approximation.nilpotent
        assert report.passed
        assert report.step == 2
        assert len(report.pairwise) == 3
        assert len(report.triple) == 27

    def test_hat_brackets_are_unit_fields(self, approximation):
        """Test hat brackets are unit fields"""
        brackets = hat_brackets(approximation.hats)
        origin = np.zeros(6)
        for k, pair in enumerate(((1, 2), (2, 3), (1, 3)), start=4):
            np.testing.assert_allclose(brackets[pair].evaluate(origin), np.eye(6)[k - 1], atol=1e-12)
            assert is_constant_field(brackets[pair])

    def test_exact_fields_not_nilpotent(self):
        """Test exact fields not nilpotent"""
        assert not verify_nilpotent(*fields_transformed()).passed

    def test_pullback_of_g3_hat(self, approximation):
        """Test pullback of g3 hat"""
        np.testing.assert_allclose(
            approximation.hats_x[2].evaluate(np.zeros(6)), [0, 0, 1, -2, -2, -2], atol=1e-12
        )
        assert approximation.hats_x[2].coordinate == "x"

    def test_pullback_matches_fields_at_point(self, approximation):
        """Each pulled-back hat field equals its exact field at the base point"""
        zeros = np.zeros(6)
        for hat, exact in zip(approximation.hats_x, fields_transformed()):
            np.testing.assert_allclose(hat.evaluate(zeros), exact.evaluate(zeros), atol=1e-12)
        assert len(approximation.hats_x) == 3

    def test_brackets_in_x(self, approximation):
        """Test brackets in x"""
        frame = approximation.frame
        for k, pair in enumerate(frame.pairs, start=4):
            np.testing.assert_allclose(
                approximation.brackets_x[pair].evaluate(np.zeros(6)), frame.column(k), atol=1e-12
            )


class TestApproximation:
    """End-to-end pipeline"""

    def test_passed(self, approximation):
        """Test passed"""
        assert approximation.passed
        assert approximation.residual <= 1e-12

    def test_json(self, approximation):
        """Test json"""
        data = approximation.to_json()
        assert data["growth_vector"] == [3, 6]
        assert data["weights"] == list(WEIGHTS)
        assert data["hat_fields_y"][2] == "d/dy3"
        assert data["passed"] is True
        json.dumps(data)

    def test_deterministic(self, approximation):
        """Test deterministic"""
        again = approximate(fields_transformed(), np.zeros(6))
        assert json.dumps(again.to_json()) == json.dumps(approximation.to_json())

    def test_original_model(self):
        """Test original model"""
        result = approximate(fields_original(), np.zeros(6))
        assert result.passed

    def test_away_from_origin(self):
        """Test away from origin"""
        result = approximate(fields_transformed(), [0.1, -0.1, 0.2, 0.3, -0.2, 0.1])
        assert result.passed

    def test_printed_hat_fields_ledger(self, approximation, tmp_path):
        """Test printed hat fields ledger"""
        ledger = {}
        origin_nearby = np.random.default_rng(5).uniform(-0.2, 0.2, size=(4, 6))
        for i, (ours, printed) in enumerate(zip(approximation.hats, printed_hats_y()), start=1):
            diff = max(float(np.max(np.abs(ours.evaluate(y) - printed.evaluate(y)))) for y in origin_nearby)
            ledger[f"h{i}"] = {"computed": ours.to_dsl(), "printed": printed.to_dsl(), "max_abs_diff": diff}
        ledger["x_fields"] = [h.to_dsl() for h in printed_hats_x()]
        path = tmp_path / "hat_fields_ledger.json"
        path.write_text(json.dumps(ledger, indent=2))
        data = json.loads(path.read_text())
        assert set(data) == {"h1", "h2", "h3", "x_fields"}
        assert data["h3"]["max_abs_diff"] == pytest.approx(0.0, abs=1e-12)
