import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from specwres import functionals as fn
from specwres.clifford import build_hodge_gradings, build_rep, build_spin_chirality
from specwres.jets import (
    GeometryJet,
    OneFormJet,
    PerturbationJet,
    TorsionJet,
    hodge_laplace_trace_data,
    perturb_laplace_data,
    random_geometry_jet,
    random_one_form_jet,
    random_perturbation,
    random_torsion_jet,
    spin_laplace_jet,
)
from specwres.operators import clifford_fluctuation, hodge_torsion_B, spin_torsion_B
from specwres.tensor_core import levi_civita, permutation_sign, sphere_volume

seeds = st.integers(min_value=0, max_value=2**31 - 1)
e = np.eye(6)


def close(a, b, tol=1e-9):
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(a)), abs(complex(b)))


def eps_torsion(n, idx=(0, 1, 2)):
    T = np.zeros((n,) * 3)
    for p in itertools.permutations(range(3)):
        T[tuple(idx[i] for i in p)] = permutation_sign(p)
    return T


# -- metric ---------------------------------------------------------------------


def test_metric_value_spin4():
    rep = build_rep("spin", 4)
    assert fn.metric_density(e[0, :4], e[0, :4], rep) == pytest.approx(8 * math.pi**2)
    assert fn.metric_density(e[0, :4], e[1, :4], rep) == 0


@pytest.mark.parametrize("kind, n", [("spin", 2), ("spin", 6), ("hodge", 4)])
def test_metric_trace_route(kind, n, rng):
    rep = build_rep(kind, n)
    u, w = rng.normal(size=(2, n))
    assert close(fn.metric_density_trace(u, w, rep), fn.metric_density(u, w, rep))


def test_chiral_metric_published_values():
    e2 = np.eye(2)
    rep = build_rep("spin", 2)
    assert fn.chiral_metric_density(e2[0], e2[1], rep, build_spin_chirality(rep)) == pytest.approx(8j * math.pi)
    hrep = build_rep("hodge", 2)
    chi_e, chi_h, chi_hat = build_hodge_gradings(hrep)
    assert fn.chiral_metric_density(e2[0], e2[1], hrep, chi_h) == pytest.approx(-8j * math.pi)
    assert close(fn.metric_density_trace(e2[0], e2[1], hrep, chi_h), -8j * math.pi)
    with pytest.raises(fn.FunctionalError):
        fn.chiral_metric_density(e2[0], e2[1], hrep, chi_hat)


def test_chiral_metric_spin2_trace_engine():
    # the matrix trace gives nu Tr(gamma g^1 g^2) = 2 pi * 2i
    e2 = np.eye(2)
    rep = build_rep("spin", 2)
    assert fn.metric_density_trace(e2[0], e2[1], rep, build_spin_chirality(rep)) == pytest.approx(4j * math.pi)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_chiral_metric_vanishing(n, rng):
    u, w = rng.normal(size=(2, n))
    hrep = build_rep("hodge", n)
    assert abs(fn.metric_density_trace(u, w, hrep, build_hodge_gradings(hrep)[0])) < 1e-12
    if n > 2:
        rep = build_rep("spin", n)
        assert abs(fn.metric_density_trace(u, w, rep, build_spin_chirality(rep))) < 1e-12


# -- Einstein -----------------------------------------------------------------------


def test_einstein_zero_perturbation():
    rep = build_rep("spin", 4)
    r = fn.einstein_delta_general(np.ones(4), random_one_form_jet(4, 0), PerturbationJet.zero(4, 4), rep)
    assert r.value == 0 and not np.any(r.coeff_uw) and not np.any(r.coeff_u_dw)


@pytest.mark.parametrize("kind", ["spin", "hodge"])
def test_einstein_fluctuation_invariance(kind, rng):
    rep = build_rep(kind, 4)
    B = random_perturbation(rep, rng, hermitian=True)
    F = clifford_fluctuation(rng.normal(size=4), rep, rng.normal(size=(4, 4)))
    a, b = fn.einstein_coefficients(B, rep), fn.einstein_coefficients(B + F, rep)
    assert_allclose(a[0], b[0], atol=1e-12 * max(1, np.abs(a[0]).max()))
    assert_allclose(a[1], b[1], atol=1e-12 * max(1, np.abs(a[1]).max()))
    u, w = rng.normal(size=4), random_one_form_jet(4, rng)
    assert abs(fn.einstein_delta_general(u, w, F, rep).value) < 1e-12


def test_einstein_spin_closed_constant_torsion():
    n = 4
    T0 = random_torsion_jet(n, 2).value
    T = TorsionJet.constant(T0)
    r = fn.einstein_spin_torsion(np.ones(n), OneFormJet.constant(np.ones(n)), T, n)
    expected = 3 * 8 * 2 * math.pi**2 / 8 * (np.eye(n) * np.sum(T0 * T0) - 6 * np.einsum("ajk,bjk->ab", T0, T0))
    assert_allclose(r.coeff_uw, expected, rtol=1e-13)
    assert fn.einstein_spin_torsion(np.ones(n), np.ones(n), TorsionJet.zero(n), n).value == 0


@pytest.mark.parametrize("n", [4, 6])
def test_einstein_spin_structure_with_engine_prefactor(n, rng):
    # coefficient structure agrees with the engine once the overall constant is 3 2^(m-1) nu
    rep = build_rep("spin", n)
    T = random_torsion_jet(n, rng)
    u, w = rng.normal(size=n), random_one_form_jet(n, rng)
    K = 3 * 2 ** (n // 2 - 1) * sphere_volume(n)
    closed = fn.einstein_spin_torsion(u, w, T, n, prefactor=K).value
    assert close(closed, fn.einstein_delta_general(u, w, spin_torsion_B(T, rep), rep).value)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_einstein_hodge_antisymmetric_torsion(n, rng):
    rep = build_rep("hodge", n)
    T = random_torsion_jet(n, rng)
    u, w = rng.normal(size=n), random_one_form_jet(n, rng)
    assert close(fn.einstein_hodge_torsion(u, w, T, n).value, fn.einstein_delta_general(u, w, hodge_torsion_B(T, rep), rep).value)


@pytest.mark.parametrize("n", [2, 4])
def test_einstein_hodge_vector_square_engine_coefficient(n, rng):
    rep = build_rep("hodge", n)
    T = random_torsion_jet(n, rng, symmetry="torsion")
    u, w = rng.normal(size=n), random_one_form_jet(n, rng)
    closed = fn.einstein_hodge_torsion(u, w, T, n, vector_coefficient=-2.0 / 3.0).value
    assert close(closed, fn.einstein_delta_general(u, w, hodge_torsion_B(T, rep), rep).value)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_chiral_einstein_spin(n, rng):
    rep = build_rep("spin", n)
    chi = build_spin_chirality(rep)
    T = random_torsion_jet(n, rng)
    u, w = rng.normal(size=n), random_one_form_jet(n, rng)
    closed = fn.chiral_einstein_spin_torsion(u, w, T, n).value
    assert close(closed, fn.einstein_delta_general(u, w, spin_torsion_B(T, rep), rep, chi).value)
    if n == 2:
        assert closed == 0


def test_chiral_einstein_spin_n8_vanishes():
    T = random_torsion_jet(8, 0)
    assert fn.chiral_einstein_spin_torsion(np.ones(8), np.ones(8), T, 8).value == 0


@given(seed=seeds)
def test_total_derivative_identity(seed):
    rng = np.random.default_rng(seed)
    T = random_torsion_jet(4, rng)
    u, w = random_one_form_jet(4, rng), random_one_form_jet(4, rng)
    lhs, rhs = fn.total_derivative_identity(u, w, T)
    assert abs(lhs - rhs) <= 1e-12 * max(1, abs(lhs))


# -- torsion functional --------------------------------------------------------------


def test_torsion_spin_example():
    n = 4
    rep = build_rep("spin", n)
    T = TorsionJet.constant(eps_torsion(n))
    u, v, w = e[0, :n], e[1, :n], e[2, :n]
    expected = -1.5j * 2 * math.pi**2 * 4
    assert fn.torsion_spin_closed(u, v, w, T, n) == pytest.approx(expected)
    assert fn.torsion_functional(u, v, w, spin_torsion_B(T, rep).B0, rep).value == pytest.approx(expected)


def test_torsion_zero_cases(rng):
    n = 4
    rep = build_rep("hodge", n)
    V = rng.normal(size=n)
    Tvec = np.einsum("ik,j->ijk", np.eye(n), V)
    Tvec = Tvec - Tvec.transpose(1, 0, 2)
    assert np.abs(Tvec).max() > 0
    B = hodge_torsion_B(TorsionJet.constant(Tvec), rep)
    u, v, w = rng.normal(size=(3, n))
    assert abs(fn.torsion_functional(u, v, w, B.B0, rep).value) < 1e-10
    assert fn.torsion_hodge_closed(u, v, w, TorsionJet.constant(Tvec), n) == pytest.approx(0, abs=1e-12)
    assert abs(fn.torsion_functional(u, u, w, random_perturbation(rep, rng).B0, rep).value) < 1e-10
    assert fn.torsion_spin_closed(u, v, w, TorsionJet.zero(n), n) == 0


@pytest.mark.parametrize("kind", ["spin", "hodge"])
@given(seed=seeds)
def test_torsion_coefficients_antisymmetric(kind, seed):
    rep = build_rep(kind, 4)
    B0 = random_perturbation(rep, seed).B0
    C = fn.torsion_coefficients(B0, rep)
    for p in itertools.permutations(range(3)):
        assert_allclose(np.transpose(C, p), permutation_sign(p) * C, atol=1e-11 * max(1, np.abs(C).max()))


@pytest.mark.parametrize("kind", ["spin", "hodge"])
@pytest.mark.parametrize("n", [2, 4, 6])
def test_torsion_two_paths(kind, n, rng):
    rep = build_rep(kind, n)
    T = random_torsion_jet(n, rng, symmetry="antisymmetric" if kind == "spin" else "torsion")
    u, v, w = rng.normal(size=(3, n))
    closed = (fn.torsion_spin_closed if kind == "spin" else fn.torsion_hodge_closed)(u, v, w, T, n)
    B = spin_torsion_B(T, rep) if kind == "spin" else hodge_torsion_B(T, rep)
    assert close(closed, fn.torsion_functional(u, v, w, B.B0, rep).value)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_chiral_torsion_spin(n, rng):
    rep = build_rep("spin", n)
    T = random_torsion_jet(n, rng)
    u, v, w = rng.normal(size=(3, n))
    closed = fn.chiral_torsion_spin(u, v, w, T, n)
    engine = fn.torsion_functional(u, v, w, spin_torsion_B(T, rep).B0, rep, build_spin_chirality(rep)).value
    assert close(closed, engine)
    if n in (2, 8):
        assert closed == 0


def test_chiral_torsion_n6_epsilon():
    n = 6
    T = TorsionJet.constant(eps_torsion(n, (3, 4, 5)))
    u, v, w = e[0], e[1], e[2]
    contraction = np.einsum("a,b,c,ijk,abcijk->", u, v, w, T.value, levi_civita(6))
    assert fn.chiral_torsion_spin(u, v, w, T, n) == pytest.approx(math.pi**3 / 4 * 8 * contraction)
    assert contraction == 6


def test_chiral_torsion_n4_equal_arguments(rng):
    rep = build_rep("spin", 4)
    T = random_torsion_jet(4, rng)
    u, w = rng.normal(size=(2, 4))
    engine = fn.torsion_functional(u, u, w, spin_torsion_B(T, rep).B0, rep, build_spin_chirality(rep)).value
    assert close(engine, fn.chiral_torsion_spin(u, u, w, T, 4))


# -- scalar curvature ----------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 4, 6])
def test_scalar_spin_two_paths(n, rng):
    rep = build_rep("spin", n)
    geom = random_geometry_jet(n, rng)
    T = random_torsion_jet(n, rng)
    lj = perturb_laplace_data(spin_laplace_jet(geom, rep), spin_torsion_B(T, rep), rep)
    assert close(fn.scalar_spin_closed(0.7, T, geom.scalar, n), fn.scalar_density_laplace(0.7, lj, geom))
    assert close(fn.scalar_density(0.7, spin_torsion_B(T, rep).B0, rep, geom), fn.scalar_spin_closed(0.7, T, geom.scalar, n))


@pytest.mark.parametrize("n", [2, 4, 6])
def test_scalar_hodge_two_paths(n, rng):
    rep = build_rep("hodge", n)
    geom = random_geometry_jet(n, rng)
    T = random_torsion_jet(n, rng, symmetry="torsion")
    tP, tQ = hodge_laplace_trace_data(geom, rep)
    engine = fn.scalar_density_from_traces(1.3, hodge_torsion_B(T, rep), rep, tP, tQ, geom.scalar)
    assert close(fn.scalar_hodge_closed(1.3, T, geom.scalar, n), engine)
    assert close(fn.scalar_hodge_closed(1.3, T, geom.scalar, n, expanded=True), engine)


def test_scalar_flat_zero():
    rep = build_rep("hodge", 4)
    assert fn.scalar_density(1.0, np.zeros((16, 16)), rep, GeometryJet.flat(4)) == 0


def test_effective_RT(rng):
    A = random_torsion_jet(4, rng).value
    assert fn.effective_RT(np.zeros((4, 4, 4)), "spin", 2.5) == 2.5
    assert fn.effective_RT(A, "spin", 1.0) == pytest.approx(fn.effective_RT(A, "hodge", 1.0))
    V = rng.normal(size=4)
    Tv = np.einsum("ik,j->ijk", np.eye(4), V)
    Tv = Tv - Tv.transpose(1, 0, 2)
    Vt = np.einsum("baa->b", Tv)
    assert fn.effective_RT(Tv, "hodge", 1.0) == pytest.approx(1.0 + 3 * np.dot(Vt, Vt))
    assert fn.effective_RT(Tv, "hodge", 1.0) > 1.0


def test_chiral_scalar(rng):
    n = 4
    rep = build_rep("spin", n)
    chi = build_spin_chirality(rep)
    assert fn.chiral_scalar_density(1.0, PerturbationJet(random_perturbation(rep, rng).B0, np.zeros((n, 4, 4))), rep, chi) == 0
    deriv = np.zeros((n,) * 4)
    deriv[0] = eps_torsion(n, (1, 2, 3))
    T = TorsionJet(np.zeros((n,) * 3, dtype=complex), deriv.astype(complex))
    s = np.einsum("abcd,abcd->", levi_civita(4), deriv)
    assert fn.chiral_scalar_spin_closed(1.0, T, n) == pytest.approx(-4 * 2 * math.pi**2 / 8 * s)
    assert close(fn.chiral_scalar_density(1.0, spin_torsion_B(T, rep), rep, chi), fn.chiral_scalar_spin_closed(1.0, T, n))
    rep6 = build_rep("spin", 6)
    T6 = random_torsion_jet(6, rng)
    assert fn.chiral_scalar_spin_closed(1.0, T6, 6) == 0
    assert abs(fn.chiral_scalar_density(1.0, spin_torsion_B(T6, rep6), rep6, build_spin_chirality(rep6))) < 1e-9


def test_chiral_remark(rng):
    from specwres.wres import wres_density_ED

    n = 4
    rep = build_rep("spin", n)
    T = TorsionJet.constant(eps_torsion(n, (1, 2, 3)))
    u = np.eye(4)[0]
    s = np.einsum("a,ijk,aijk->", u, T.value, levi_civita(4))
    assert fn.chiral_remark_density(u, T, n) == pytest.approx(4 * 1j * 2 * math.pi**2 / 4 * s)
    engine = wres_density_ED(fn.chiral_remark_endomorphism(u, rep), spin_torsion_B(T, rep).B0, rep)
    assert close(engine, fn.chiral_remark_density(u, T, n))
    assert fn.chiral_remark_density(np.ones(6), random_torsion_jet(6, rng), 6) == 0


def test_spin_closed_forms_reject_non_antisymmetric():
    T = random_torsion_jet(4, 0, symmetry="torsion")
    with pytest.raises(fn.FunctionalError):
        fn.einstein_spin_torsion(np.ones(4), np.ones(4), T)
    with pytest.raises(fn.FunctionalError):
        fn.torsion_spin_closed(np.ones(4), np.ones(4), np.ones(4), T)
