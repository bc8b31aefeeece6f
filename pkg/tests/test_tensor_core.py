import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from specwres.tensor_core import (
    TensorError,
    antisymmetrize_torsion,
    as_tensor,
    epsilon_generalized,
    is_totally_antisymmetric,
    kronecker_delta2,
    levi_civita,
    permutation_sign,
    sphere_monomial_integral,
    sphere_volume,
    tensor_from_json,
    tensor_to_json,
    total_antisymmetrization,
)


@pytest.mark.parametrize(
    "upper, lower, expected",
    [((1, 2), (1, 2), 1), ((1, 2), (2, 1), -1), ((1, 3), (2, 1), 0), ((0, 1, 2), (2, 0, 1), 1), ((1, 1), (1, 1), 0)],
)
def test_epsilon_generalized_examples(upper, lower, expected):
    assert epsilon_generalized(upper, lower) == expected


@given(st.permutations(range(5)), st.permutations(range(5)))
def test_epsilon_is_product_of_signs(p, q):
    assert epsilon_generalized(p, q) == permutation_sign(p) * permutation_sign(q)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_levi_civita_matches_permutation_sum(n):
    eps = levi_civita(n)
    for idx in itertools.product(range(n), repeat=n):
        assert eps[idx] == permutation_sign(idx)
    assert eps[tuple(range(n))] == 1


def test_kronecker_delta2_is_antisymmetric():
    d = kronecker_delta2(4)
    assert_array_equal(d, -d.transpose(1, 0, 2, 3))
    assert d[0, 1, 0, 1] == 1 and d[0, 1, 1, 0] == -1


def test_cyclic_average_examples():
    T = np.zeros((3, 3, 3))
    T[0, 0, 1] = 1.0
    A = antisymmetrize_torsion(T)
    assert A[0, 0, 1] == pytest.approx(1 / 3)
    S = total_antisymmetrization(np.random.default_rng(0).normal(size=(4, 4, 4)))
    assert_allclose(antisymmetrize_torsion(S), S, atol=1e-15)


def test_cyclic_average_equals_projection_for_torsion_type(rng):
    T = rng.normal(size=(4, 4, 4))
    T = (T - T.transpose(1, 0, 2)) / 2
    brute = np.zeros_like(T)
    for perm in itertools.permutations(range(3)):
        brute += permutation_sign(perm) * np.transpose(T, perm)
    assert_allclose(antisymmetrize_torsion(T), brute / 6, atol=1e-14)


@given(st.integers(min_value=2, max_value=6))
def test_total_antisymmetrization_is_idempotent(n):
    T = np.random.default_rng(n).normal(size=(n,) * 3)
    A = total_antisymmetrization(T)
    assert is_totally_antisymmetric(A)
    assert_allclose(total_antisymmetrization(A), A, atol=1e-14)


@pytest.mark.parametrize("n, expected", [(2, 2 * math.pi), (4, 2 * math.pi**2), (6, math.pi**3)])
def test_sphere_volume(n, expected):
    assert sphere_volume(n) == pytest.approx(expected, rel=1e-15)


def test_sphere_monomials():
    assert sphere_monomial_integral((0, 0, 0, 0)) == pytest.approx(2 * math.pi**2)
    assert sphere_monomial_integral((1, 1)) == 0.0
    assert sphere_monomial_integral((2, 0, 0, 0)) == pytest.approx(sphere_volume(4) / 4)
    with pytest.raises(OverflowError):
        sphere_monomial_integral((10,), n=2)


@given(st.integers(min_value=2, max_value=6), st.integers(min_value=1, max_value=3))
def test_sphere_moments_sum_rule(n, k):
    # sum_a xi_a^2 = 1 on the sphere, raised to a power
    total = 0.0
    for degs in itertools.product(range(2 * k + 1), repeat=n):
        if sum(degs) != 2 * k:
            continue
        coef = math.factorial(k)
        for d in degs:
            if d % 2:
                coef = 0
                break
            coef //= math.factorial(d // 2)
        if coef:
            total += coef * sphere_monomial_integral(degs, max_degree=2 * k)
    assert total == pytest.approx(sphere_volume(n), rel=1e-13)


def test_json_roundtrip(rng):
    T = rng.normal(size=(3, 3, 3)) + 1j * rng.normal(size=(3, 3, 3))
    enc = tensor_to_json(T)
    assert enc["rank"] == 3 and enc["dim"] == 3 and len(enc["entries"]) == 27
    assert_array_equal(tensor_from_json(enc), T)
    assert_array_equal(tensor_from_json([[1, 2], [3, 4]]), np.array([[1, 2], [3, 4]], dtype=complex))


def test_json_errors():
    with pytest.raises(TensorError):
        tensor_from_json({"rank": 2, "dim": 2, "entries": [[0, 0]]})
    with pytest.raises(TensorError):
        tensor_from_json({"rank": 2})
    with pytest.raises(TensorError):
        as_tensor(np.zeros((2, 3)))
    with pytest.raises(TensorError):
        as_tensor(np.zeros(3), rank=2)
