import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from specwres.clifford import build_hodge_gradings, build_rep, build_spin_chirality
from specwres.jets import TorsionJet, random_torsion_jet
from specwres.operators import (
    OperatorError,
    clifford_fluctuation,
    clifford_one_form,
    grading_compatibility,
    hodge_torsion_B,
    hodge_torsion_endomorphism,
    hodge_torsion_endomorphism_alt,
    hodge_trace_identities,
    is_torsion_like,
    spin_torsion_B,
    spin_trace_identities,
)
from specwres.tensor_core import total_antisymmetrization

seeds = st.integers(min_value=0, max_value=2**31 - 1)


def test_clifford_one_form_basis_vector():
    rep = build_rep("spin", 4)
    assert_allclose(clifford_one_form(np.eye(4)[0], rep), rep.gammas[0])


@pytest.mark.parametrize("n", [2, 4, 6])
@given(seed=seeds)
def test_spin_trace_identities(n, seed):
    rep = build_rep("spin", n)
    T = total_antisymmetrization(np.random.default_rng(seed).normal(size=(n,) * 3)).real
    for name, (lhs, rhs) in spin_trace_identities(T, rep).items():
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.max(np.abs(rhs))), name


@pytest.mark.parametrize("n", [2, 4])
def test_hodge_trace_identities_for_torsion_type(n):
    rep = build_rep("hodge", n)
    T = random_torsion_jet(n, 5, symmetry="torsion").value
    for name, (lhs, rhs) in hodge_trace_identities(T, rep).items():
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.max(np.abs(rhs))), name


def test_hodge_trace_identities_need_torsion_antisymmetry():
    rep = build_rep("hodge", 4)
    T = random_torsion_jet(4, 5, symmetry="general").value
    worst = max(np.max(np.abs(l - r)) for l, r in hodge_trace_identities(T, rep).values())
    assert worst > 1e-3


def test_hodge_normal_orderings_agree_for_torsion():
    rep = build_rep("hodge", 4)
    T = random_torsion_jet(4, 1, symmetry="torsion").value
    assert_allclose(hodge_torsion_endomorphism(T, rep), hodge_torsion_endomorphism_alt(T, rep), atol=1e-12)
    assert is_torsion_like(T)


def test_spin_B_rejects_non_antisymmetric():
    rep = build_rep("spin", 4)
    with pytest.raises(OperatorError):
        spin_torsion_B(random_torsion_jet(4, 0, symmetry="torsion"), rep)
    with pytest.raises(OperatorError):
        hodge_torsion_B(random_torsion_jet(4, 0), rep)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_gradings(n):
    rep = build_rep("hodge", n)
    chi_e, chi_h, _ = build_hodge_gradings(rep)
    T = random_torsion_jet(n, 3, symmetry="torsion")
    assert grading_compatibility(hodge_torsion_B(T, rep), chi_e)[0]
    # T_122 = 1 (with its torsion partner) has a nonzero vector part
    T0 = np.zeros((n,) * 3)
    T0[0, 1, 1], T0[1, 0, 1] = 1.0, -1.0
    assert not grading_compatibility(hodge_torsion_B(TorsionJet.constant(T0), rep), chi_h)[0]
    A = TorsionJet(total_antisymmetrization(T.value), np.array([total_antisymmetrization(d) for d in T.deriv]))
    assert grading_compatibility(hodge_torsion_B(A, rep), chi_h)[0]
    srep = build_rep("spin", n)
    assert grading_compatibility(spin_torsion_B(random_torsion_jet(n, 3), srep), build_spin_chirality(srep))[0]


def test_fluctuation_shape():
    rep = build_rep("spin", 2)
    F = clifford_fluctuation([1.0, 2.0], rep, np.eye(2))
    assert_allclose(F.B0, rep.gammas[0] + 2 * rep.gammas[1])
    assert F.Ba.shape == (2, 2, 2)


def test_hodge_normal_orderings_differ_for_general_rank3():
    rep = build_rep("hodge", 4)
    T = random_torsion_jet(4, 1, symmetry="general").value
    assert np.max(np.abs(hodge_torsion_endomorphism(T, rep) - hodge_torsion_endomorphism_alt(T, rep))) > 1e-3


@pytest.mark.parametrize("kind", ["spin", "hodge"])
def test_torsion_term_hermitian_for_real_T(kind):
    rep = build_rep(kind, 4)
    T = random_torsion_jet(4, 2, symmetry="antisymmetric" if kind == "spin" else "torsion")
    B0 = (spin_torsion_B if kind == "spin" else hodge_torsion_B)(T, rep).B0
    assert_allclose(B0, B0.conj().T, atol=1e-13)
