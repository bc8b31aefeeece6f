import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from specwres.clifford import (
    CliffordError,
    build_hodge_gradings,
    build_lambda_ops,
    build_rep,
    build_spin_chirality,
    build_spin_gammas,
    car_residual,
    clifford_residual,
    commutant_basis,
    form_degrees,
    grading,
    ordered_product,
    verify_trace_lemma_hodge,
)
from specwres.tensor_core import levi_civita


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_spin_clifford_relations_exact(n):
    rep = build_spin_gammas(n)
    assert rep.fiber_dim == 2 ** (n // 2)
    assert clifford_residual(rep.gammas) == 0.0
    allowed = {0, 1, -1, 1j, -1j}
    assert set(np.unique(rep.gammas)) <= allowed
    for g in rep.gammas:
        assert_array_equal(g, g.conj().T)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_spin_traces_of_pairs(n):
    rep = build_spin_gammas(n)
    tr = np.einsum("aij,bji->ab", rep.gammas, rep.gammas)
    assert_array_equal(tr, 2 ** (n // 2) * np.eye(n))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_spin_chirality(n):
    rep = build_spin_gammas(n)
    chi = build_spin_chirality(rep).matrix
    assert_allclose(chi @ chi, np.eye(rep.fiber_dim), atol=0)
    assert_allclose(chi, chi.conj().T, atol=0)
    for g in rep.gammas:
        assert_allclose(chi @ g + g @ chi, 0, atol=0)


def test_chirality_trace_n2_and_n4():
    rep = build_spin_gammas(2)
    chi = build_spin_chirality(rep).matrix
    assert np.trace(chi @ rep.gammas[0] @ rep.gammas[1]) == pytest.approx(2j)
    rep = build_spin_gammas(4)
    chi = build_spin_chirality(rep).matrix
    g = rep.gammas
    t = np.einsum("ij,ajk,bkl,clm,dmi->abcd", chi, g, g, g, g)
    assert_allclose(t, 4 * levi_civita(4), atol=1e-13)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_hodge_car_and_clifford(n):
    rep = build_lambda_ops(n)
    assert rep.fiber_dim == 2**n
    assert car_residual(rep) == 0.0
    assert clifford_residual(rep.gammas) == 0.0
    assert clifford_residual(rep.gamma_tilde) == 0.0
    # gamma and gamma_tilde anticommute
    mixed = np.einsum("aij,bjk->abik", rep.gammas, rep.gamma_tilde)
    mixed = mixed + np.einsum("bij,ajk->abik", rep.gamma_tilde, rep.gammas)
    assert np.max(np.abs(mixed)) == 0.0


def test_creation_on_vacuum():
    rep = build_lambda_ops(4)
    vac = np.zeros(rep.fiber_dim)
    vac[rep.basis.index(())] = 1
    for p in range(4):
        out = rep.lambda_plus[p] @ vac
        expected = np.zeros(rep.fiber_dim)
        expected[rep.basis.index((p,))] = 1
        assert_array_equal(out, expected)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_hodge_gradings(n):
    rep = build_lambda_ops(n)
    chi_e, chi_h, chi_hat = build_hodge_gradings(rep)
    deg = form_degrees(rep)
    assert_allclose(np.diag(chi_e.matrix), (-1.0) ** deg, atol=0)
    for chi in (chi_e, chi_h):
        assert_allclose(chi.matrix @ chi.matrix, np.eye(rep.fiber_dim), atol=1e-14)
        for g in rep.gammas:
            assert_allclose(chi.matrix @ g + g @ chi.matrix, 0, atol=1e-14)
    for g in rep.gammas:
        assert_allclose(chi_hat.matrix @ g - g @ chi_hat.matrix, 0, atol=1e-14)


def test_trace_lemma_example():
    rep = build_lambda_ops(4)
    g, lm = rep.gammas, rep.lambda_minus
    assert np.trace(g[0] @ g[1] @ lm[1] @ lm[0]) == pytest.approx(-4)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_trace_lemma_sweep(n):
    assert verify_trace_lemma_hodge(build_lambda_ops(n))["max_residual"] < 1e-12


@pytest.mark.parametrize("kind, n", [("spin", 4), ("hodge", 2), ("hodge", 4)])
def test_commutant_basis(kind, n):
    rep = build_rep(kind, n)
    basis = commutant_basis(rep)
    assert len(basis) == (1 if kind == "spin" else 2**n)
    flat = basis.reshape(len(basis), -1)
    assert np.linalg.matrix_rank(flat) == len(basis)
    for E in basis:
        for g in rep.gammas:
            assert_allclose(E @ g - g @ E, 0, atol=1e-13)


def test_grading_lookup_and_errors():
    rep = build_rep("spin", 4)
    assert grading(rep, None) is None
    assert grading(rep, "gamma").kind == "spin_gamma"
    with pytest.raises(CliffordError):
        grading(rep, "euler")
    hrep = build_rep("hodge", 2)
    assert grading(hrep, "chi_e").kind == "euler"
    with pytest.raises(CliffordError):
        grading(hrep, "gamma")
    with pytest.raises(CliffordError):
        build_spin_gammas(3)
    with pytest.raises(CliffordError):
        build_lambda_ops(8)
    with pytest.raises(CliffordError):
        build_rep("dirac", 2)


def test_ordered_product_is_volume_element():
    rep = build_spin_gammas(2)
    assert_array_equal(ordered_product(rep.gammas), rep.gammas[0] @ rep.gammas[1])
