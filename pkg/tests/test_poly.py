import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momap.linalg import InputError
from momap.poly import Polynomial


def test_eval_and_gradient_quadratic():
    # f(x, y) = x^2 + 3xy
    f = Polynomial(2, {(2, 0): 1.0, (1, 1): 3.0})
    assert f(np.array([2.0, 1.0])) == pytest.approx(10.0)
    gx, gy = f.gradient()
    assert gx(np.array([2.0, 1.0])) == pytest.approx(7.0)
    assert gy(np.array([2.0, 1.0])) == pytest.approx(6.0)


def test_quadratic_form_agrees_with_matrix():
    rng = np.random.default_rng(3)
    m = rng.standard_normal((4, 4))
    f = Polynomial.quadratic_form(m)
    for _ in range(5):
        x = rng.standard_normal(4)
        assert f(x) == pytest.approx(x @ m @ x, rel=1e-12, abs=1e-12)


def test_vectorized_evaluation():
    f = Polynomial.linear([1.0, -2.0])
    pts = np.array([[1.0, 0.0], [0.0, 1.0], [2.0, 2.0]])
    assert np.allclose(f(pts), [1.0, -2.0, -2.0])


def test_dimension_mismatch():
    f = Polynomial.linear([1.0, 2.0])
    with pytest.raises(InputError):
        f(np.array([1.0, 2.0, 3.0]))
    with pytest.raises(InputError):
        f * Polynomial.linear([1.0])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100))
def test_product_rule_on_random_quadratics(seed):
    rng = np.random.default_rng(seed)
    f = Polynomial.quadratic_form(rng.standard_normal((3, 3)))
    g = Polynomial.quadratic_form(rng.standard_normal((3, 3)))
    prod = f * g
    d_prod = prod.partial(0)
    leibniz = f.partial(0) * g + f * g.partial(0)
    assert d_prod.coefficient_distance(leibniz) < 1e-10


def test_fd_gradient_matches_analytic():
    rng = np.random.default_rng(11)
    f = Polynomial.quadratic_form(rng.standard_normal((3, 3)))
    grads = f.gradient()
    for _ in range(20):
        x = rng.standard_normal(3)
        h = 1e-6
        for i in range(3):
            e = np.zeros(3)
            e[i] = h
            fd = (f(x + e) - f(x - e)) / (2 * h)
            assert abs(fd - grads[i](x)) < 1e-6
