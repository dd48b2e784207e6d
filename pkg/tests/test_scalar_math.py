import math

import numpy as np
import pytest

from sdma_capacity import db_to_linear, q_function, q_inverse

from oracles import q_quadrature

# Pinned beforehand with the quadrature oracle.
Q_AT_1_281552 = 0.09999992375382331
Q_AT_3 = 0.0013498980316300944


def test_q_at_zero():
    assert q_function(0.0) == pytest.approx(0.5, abs=1e-15)


def test_q_frozen_values():
    assert q_function(1.281552) == pytest.approx(0.100000, abs=1e-6)
    assert q_function(1.281552) == pytest.approx(Q_AT_1_281552, abs=1e-12)
    assert q_function(3.0) == pytest.approx(1.349898e-3, abs=1e-9)
    assert q_function(3.0) == pytest.approx(Q_AT_3, abs=1e-12)


def test_q_matches_quadrature_oracle():
    for x in np.linspace(0.0, 6.0, 61):
        assert abs(q_function(float(x)) - q_quadrature(float(x))) <= 1e-10


def test_q_rejects_non_finite():
    for bad in (math.inf, -math.inf, math.nan):
        with pytest.raises(ValueError):
            q_function(bad)


def test_q_strictly_decreasing():
    xs = np.linspace(-6.0, 6.0, 601)
    values = [q_function(float(x)) for x in xs]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_q_symmetry():
    for x in np.linspace(0.0, 6.0, 121):
        assert abs(q_function(float(x)) + q_function(-float(x)) - 1.0) <= 1e-12


def test_q_inverse_frozen_values():
    assert q_inverse(0.5) == pytest.approx(0.0, abs=1e-12)
    assert q_inverse(0.1) == pytest.approx(1.281552, abs=1e-5)
    assert q_inverse(1.349898e-3) == pytest.approx(3.0, abs=1e-5)


def test_q_inverse_round_trip():
    for x in np.linspace(1e-3, 5.0, 200):
        assert abs(q_inverse(q_function(float(x))) - float(x)) <= 1e-8


def test_q_inverse_probability_residual():
    for p in (1e-12, 1e-6, 0.01, 0.3, 0.5, 0.8, 0.999, 1 - 1e-9):
        assert abs(q_function(q_inverse(p)) - p) <= 1e-10


def test_q_inverse_strictly_decreasing():
    ps = np.linspace(0.01, 0.99, 99)
    values = [q_inverse(float(p)) for p in ps]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_q_inverse_domain():
    for bad in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            q_inverse(bad)


def test_db_to_linear():
    assert db_to_linear(0.0) == 1.0
    assert db_to_linear(10.0) == pytest.approx(10.0, abs=1e-12)
    assert db_to_linear(5.1) == pytest.approx(3.23594, abs=1e-5)
    with pytest.raises(ValueError):
        db_to_linear(math.nan)
