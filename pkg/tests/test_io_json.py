"""Tests for the JSON matrix and model schemas."""

import numpy as np
import pytest

from modman.errors import FaithfulnessError, InputError
from modman.io_json import (
    density_from_json,
    matrix_from_json,
    matrix_to_json,
    model_from_json,
)
from modman.sampling import complex_gaussian, random_density


class TestMatrixSchema:
    def test_round_trip(self):
        rng = np.random.default_rng(0)
        m = complex_gaussian(3, rng)
        np.testing.assert_allclose(matrix_from_json(matrix_to_json(m)), m)

    def test_imaginary_part_optional(self):
        obj = {"n": 2, "re": [[1.0, 0.0], [0.0, 2.0]]}
        np.testing.assert_allclose(matrix_from_json(obj), np.diag([1.0, 2.0]))

    def test_missing_keys_rejected(self):
        with pytest.raises(InputError):
            matrix_from_json({"re": [[1.0]]})

    def test_shape_mismatch_rejected(self):
        with pytest.raises(InputError):
            matrix_from_json({"n": 2, "re": [[1.0]]})
        with pytest.raises(InputError):
            matrix_from_json({"n": 1, "re": [[1.0]], "im": [[0.0, 0.0]]})

    def test_non_object_rejected(self):
        with pytest.raises(InputError):
            matrix_from_json([[1.0]])

    def test_non_numeric_entries_rejected(self):
        with pytest.raises(InputError):
            matrix_from_json({"n": 1, "re": [["x"]]})
        with pytest.raises(InputError):
            matrix_from_json({"n": 1, "re": [[1.0]], "im": [["x"]]})


class TestDensitySchema:
    def test_valid_density(self):
        rng = np.random.default_rng(1)
        rho = random_density(3, rng)
        loaded = density_from_json(matrix_to_json(rho.mat))
        assert np.linalg.norm(loaded.mat - rho.mat, 2) <= 1e-12

    def test_non_hermitian_rejected(self):
        obj = {"n": 2, "re": [[0.5, 0.3], [0.0, 0.5]]}
        with pytest.raises(InputError):
            density_from_json(obj)

    def test_singular_rejected(self):
        obj = {"n": 2, "re": [[1.0, 0.0], [0.0, 0.0]]}
        with pytest.raises(FaithfulnessError):
            density_from_json(obj)


class TestModelSchema:
    def test_loads_model(self):
        rng = np.random.default_rng(2)
        rho = random_density(2, rng)
        obj = {
            "rho": matrix_to_json(rho.mat),
            "generators": [matrix_to_json(np.diag([1.0, -1.0]))],
        }
        model = model_from_json(obj)
        assert model.order == 1
        assert abs(model.rho.expect(model.generators[0])) <= 1e-12

    def test_requires_generators(self):
        rng = np.random.default_rng(3)
        rho = random_density(2, rng)
        with pytest.raises(InputError):
            model_from_json({"rho": matrix_to_json(rho.mat), "generators": []})
        with pytest.raises(InputError):
            model_from_json({"rho": matrix_to_json(rho.mat)})
