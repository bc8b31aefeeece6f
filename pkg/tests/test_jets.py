import numpy as np
import pytest
from numpy.testing import assert_allclose

from specwres.clifford import build_rep
from specwres.jets import (
    GeometryJet,
    LaplaceJet,
    PerturbationJet,
    TorsionJet,
    hodge_laplace_trace_data,
    perturb_laplace_data,
    random_geometry_jet,
    random_perturbation,
    random_torsion_jet,
    riemann_projection,
    sphere_geometry_jet,
    spin_laplace_jet,
)
from specwres.operators import torsion_B


@pytest.mark.parametrize("n", [2, 4, 6])
def test_random_riemann_has_curvature_symmetries(n):
    g = random_geometry_jet(n, 1)
    R = g.riemann
    assert_allclose(R, -R.transpose(1, 0, 2, 3), atol=1e-14)
    assert_allclose(R, -R.transpose(0, 1, 3, 2), atol=1e-14)
    assert_allclose(R, R.transpose(2, 3, 0, 1), atol=1e-14)
    bianchi = R + np.einsum("acdb->abcd", R) + np.einsum("adbc->abcd", R)
    assert_allclose(bianchi, 0, atol=1e-13)
    assert_allclose(riemann_projection(R), R, atol=1e-13)
    assert_allclose(g.ricci, g.ricci.T, atol=1e-13)


def test_zero_seed_is_flat():
    g = GeometryJet.from_riemann(riemann_projection(np.zeros((4,) * 4)))
    assert g.scalar == 0 and not np.any(g.riemann)


def test_sphere_scalar_curvature():
    assert sphere_geometry_jet(4, 1.0).scalar == pytest.approx(12.0)


def test_flat_laplace_data_is_zero():
    rep = build_rep("spin", 4)
    lj = spin_laplace_jet(GeometryJet.flat(4), rep)
    assert not np.any(lj.P) and not np.any(lj.S) and not np.any(lj.Q)


def test_perturb_with_zero_is_identity():
    rep = build_rep("spin", 4)
    base = spin_laplace_jet(random_geometry_jet(4, 2), rep)
    out = perturb_laplace_data(base, PerturbationJet.zero(4, rep.fiber_dim), rep)
    assert_allclose(out.P, base.P)
    assert_allclose(out.Q, base.Q)


def test_perturb_example_S():
    rep = build_rep("spin", 2)
    g = rep.gammas
    B = PerturbationJet(g[0], np.zeros((2, 2, 2)))
    lj = perturb_laplace_data(LaplaceJet.zero(2, 2), B, rep)
    assert_allclose(lj.S[0], 2j * np.eye(2))
    assert_allclose(lj.S[1], 0)


def test_perturb_Q_relation(rng):
    rep = build_rep("hodge", 2)
    B = random_perturbation(rep, rng)
    lj = perturb_laplace_data(LaplaceJet.zero(2, 4), B, rep)
    assert_allclose(lj.Q - B.B0 @ B.B0, 1j * np.einsum("aij,ajk->ik", rep.gammas, B.Ba), atol=1e-14)


def test_perturb_rejects_nonzero_reference_S():
    rep = build_rep("spin", 2)
    base = LaplaceJet(np.zeros((2, 2, 2, 2)), np.ones((2, 2, 2)), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        perturb_laplace_data(base, PerturbationJet.zero(2, 2), rep)


@pytest.mark.parametrize("R, n, expected", [(0.0, 4, (0, 0)), (3.0, 4, (16, 4)), (6.0, 2, (8, 2))])
def test_hodge_trace_data(R, n, expected):
    rep = build_rep("hodge", n)
    riem = sphere_geometry_jet(n, 1.0)
    geom = GeometryJet(riem.riemann, riem.ricci, R)
    assert_allclose(hodge_laplace_trace_data(geom, rep), expected)


@pytest.mark.parametrize("sym", ["antisymmetric", "torsion", "general"])
def test_random_torsion_symmetry(sym):
    T = random_torsion_jet(4, 0, symmetry=sym)
    if sym == "antisymmetric":
        assert T.is_antisymmetric()
    if sym == "torsion":
        assert_allclose(T.value, -T.value.transpose(1, 0, 2))
        assert_allclose(T.deriv, -T.deriv.transpose(0, 2, 1, 3))
    with pytest.raises(ValueError):
        random_torsion_jet(4, 0, symmetry="other")


@pytest.mark.parametrize("kind", ["spin", "hodge"])
def test_zero_torsion_gives_zero_perturbation(kind):
    rep = build_rep(kind, 4)
    B = torsion_B(TorsionJet.zero(4), rep)
    assert not np.any(B.B0) and not np.any(B.Ba)
