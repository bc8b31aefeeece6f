"""Torsion perturbations of the spin-Dirac and Hodge-Dirac operators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import HODGE, SPIN, CliffordRep, Grading
from .jets import PerturbationJet, TorsionJet


class OperatorError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PerturbedDirac:
    """``D = D0 + B`` at a point, described by the jet of ``B``."""

    rep: CliffordRep
    B: PerturbationJet
    kind: str = "custom"  # spin_torsion | hodge_torsion | custom


def cubic_contraction(T: np.ndarray, A: np.ndarray, B: np.ndarray, C: np.ndarray) -> np.ndarray:
    """``sum_pqr T[p, q, r] A[p] @ B[q] @ C[r]`` via pairwise matrix products."""
    M = np.tensordot(T, C, axes=([2], [0]))  # (n, n, d, d)
    N = np.matmul(B[None, :], M).sum(axis=1)
    return np.matmul(A, N).sum(axis=0)


def spin_torsion_endomorphism(T: np.ndarray, rep: CliffordRep) -> np.ndarray:
    """``-(i/8) T_ijk g^i g^j g^k`` for one totally antisymmetric slice."""
    g = rep.gammas
    return -0.125j * cubic_contraction(T, g, g, g)


def spin_torsion_B(T: TorsionJet, rep: CliffordRep) -> PerturbationJet:
    """Perturbation of the spin Dirac operator by totally antisymmetric torsion.

    Raises
    ------
    OperatorError
        If the torsion jet (value or any derivative slice) is not totally
        antisymmetric, or the module is not the spin module.
    """
    if rep.kind != SPIN:
        raise OperatorError("spin torsion needs the spin module")
    if not T.is_antisymmetric():
        raise OperatorError("spin torsion must be totally antisymmetric")
    B0 = spin_torsion_endomorphism(T.value, rep)
    Ba = np.array([spin_torsion_endomorphism(d, rep) for d in T.deriv])
    return PerturbationJet(B0, Ba)


def hodge_torsion_endomorphism(T: np.ndarray, rep: CliffordRep) -> np.ndarray:
    """``T_ijk (l+^j l+^i l-^k + l+^k l-^i l-^j) / 2``."""
    lp, lm = rep.lambda_plus, rep.lambda_minus
    first = cubic_contraction(np.einsum("ijk->jik", T), lp, lp, lm)
    second = cubic_contraction(np.einsum("ijk->kij", T), lp, lm, lm)
    return 0.5 * (first + second)


def hodge_torsion_endomorphism_alt(T: np.ndarray, rep: CliffordRep) -> np.ndarray:
    """Same endomorphism, reordered as
    ``T_ijk [delta_ik (l+^j + l-^j) - l+^j l-^k l+^i + l-^j l+^k l-^i] / 2``.
    """
    lp, lm = rep.lambda_plus, rep.lambda_minus
    lin = np.einsum("iji->j", T)
    out = np.einsum("j,jps->ps", lin, lp + lm)
    Tjki = np.einsum("ijk->jki", T)
    out = out - cubic_contraction(Tjki, lp, lm, lp)
    out = out + cubic_contraction(Tjki, lm, lp, lm)
    return 0.5 * out


def hodge_torsion_B(T: TorsionJet, rep: CliffordRep, check: bool = True) -> PerturbationJet:
    """Torsion perturbation of the Hodge-Dirac operator ``d + d*``.

    Any rank-3 ``T`` is accepted.  With ``check`` set and ``T`` antisymmetric
    in its first two slots (a genuine torsion), the two normal-ordered forms
    of the endomorphism are compared and a mismatch raises; the reordering
    relies on that antisymmetry.
    """
    if rep.kind != HODGE:
        raise OperatorError("Hodge torsion needs the exterior-algebra module")
    B0 = hodge_torsion_endomorphism(T.value, rep)
    if check and is_torsion_like(T.value):
        alt = hodge_torsion_endomorphism_alt(T.value, rep)
        if np.max(np.abs(B0 - alt)) > 1e-10 * max(1.0, np.max(np.abs(B0))):
            raise OperatorError("normal-ordered forms of the Hodge torsion term disagree")
    Ba = np.array([hodge_torsion_endomorphism(d, rep) for d in T.deriv])
    return PerturbationJet(B0, Ba)


def is_torsion_like(T: np.ndarray, tol: float = 1e-12) -> bool:
    """``T_ijk = -T_jik``."""
    return bool(np.max(np.abs(T + np.swapaxes(T, 0, 1)), initial=0.0) <= tol * max(1.0, np.max(np.abs(T), initial=0.0)))


def torsion_B(T: TorsionJet, rep: CliffordRep) -> PerturbationJet:
    return spin_torsion_B(T, rep) if rep.kind == SPIN else hodge_torsion_B(T, rep)


def perturbed_dirac(T: TorsionJet, rep: CliffordRep) -> PerturbedDirac:
    kind = "spin_torsion" if rep.kind == SPIN else "hodge_torsion"
    return PerturbedDirac(rep, torsion_B(T, rep), kind)


def grading_compatibility(B: PerturbationJet, chi: Grading, tol: float = 1e-10) -> tuple[bool, float]:
    """Whether ``chi`` anticommutes with ``B0`` and every ``B_a``.

    Returns ``(compatible, max_residual)``.
    """
    X = chi.matrix
    res = np.max(np.abs(X @ B.B0 + B.B0 @ X), initial=0.0)
    for Ba in B.Ba:
        res = max(res, np.max(np.abs(X @ Ba + Ba @ X), initial=0.0))
    scale = max(1.0, np.max(np.abs(B.B0), initial=0.0), np.max(np.abs(B.Ba), initial=0.0))
    return bool(res <= tol * scale), float(res)


def clifford_one_form(u, rep: CliffordRep) -> np.ndarray:
    """``u_a gamma^a``."""
    return rep.slash(u)


def clifford_fluctuation(A, rep: CliffordRep, A_deriv=None) -> PerturbationJet:
    """``A_a gamma^a`` with scalar coefficients, optionally x-dependent."""
    n = rep.n
    A = np.asarray(A, dtype=complex)
    A_deriv = np.zeros((n, n), dtype=complex) if A_deriv is None else np.asarray(A_deriv, dtype=complex)
    B0 = rep.slash(A)
    Ba = np.array([rep.slash(A_deriv[:, c]) for c in range(n)])
    return PerturbationJet(B0, Ba)


# -- trace identities -------------------------------------------------------------------

def _ggg(g):
    return np.einsum("abij,cjk->abcik", np.einsum("aij,bjk->abik", g, g), g)


def spin_trace_identities(T: np.ndarray, rep: CliffordRep) -> dict:
    """Matrix-trace checks for the spin torsion term ``B``.

    Returns ``name -> (lhs, rhs)``:

    * ``contraction``: ``g^a {g^a, B}`` against ``6 B``;
    * ``anticommutator``: ``{g^a, B}`` against ``-(3i/4) T_ajk g^j g^k``;
    * ``trace``: ``Tr(g^a g^b {g^c, B})`` against ``-2^m (3i/2) T_cba``.
    """
    T = np.asarray(T, dtype=complex)
    g = rep.gammas
    B = spin_torsion_endomorphism(T, rep)
    anti = np.einsum("aij,jk->aik", g, B) + np.einsum("ij,ajk->aik", B, g)
    gg = np.einsum("aij,bjk->abik", g, g)
    return {
        "contraction": (np.einsum("aij,ajk->ik", g, anti), 6 * B),
        "anticommutator": (anti, -0.75j * np.einsum("ajk,jkpq->apq", T, gg)),
        "trace": (np.einsum("abij,cji->abc", gg, anti), -(2 ** rep.m) * 1.5j * np.einsum("cba->abc", T)),
    }


def hodge_trace_identities(T: np.ndarray, rep: CliffordRep) -> dict:
    """Matrix-trace checks for the Hodge torsion term ``B`` of a torsion ``T``.

    Returns ``name -> (lhs, rhs)`` for the seven identities ``Tr(g^a B)``,
    ``Tr(g^a g^b g^c B)``, ``Tr(g^a g^b {g^c, B})``,
    ``Tr(g^a g^b g^c g^d {g^d, B})``, ``Tr(B^2)``, ``Tr(g^a {g^b, B} B)`` and
    ``Tr(g^c g^a {g^b, B}{g^c, B})``.
    """
    T = np.asarray(T, dtype=complex)
    n = rep.n
    g = rep.gammas
    B = hodge_torsion_endomorphism(T, rep)
    anti = np.einsum("aij,jk->aik", g, B) + np.einsum("ij,ajk->aik", B, g)
    gg = np.einsum("aij,bjk->abik", g, g)
    ggg = _ggg(g)
    cyc = T + np.einsum("cab->abc", T) + np.einsum("bca->abc", T)  # T_abc + T_cab + T_bca
    V = np.einsum("baa->b", T)
    Y = np.einsum("dij,djk->ik", g, anti)
    p = 2.0 ** (n - 3)
    ga_anti = np.einsum("aij,bjk->abik", g, anti)
    rhs_quad = 2 * p * (
        -np.einsum("ajk,bkj->ab", T, T) + np.einsum("ajk,bjk->ab", T, T)
    ) + p * np.einsum("jka,jkb->ab", T, T)
    rhs_last = 4 * p * (
        np.einsum("jkb,jka->ab", T, T) + np.einsum("jkb,ajk->ab", T, T)
        + np.einsum("bkj,kja->ab", T, T) + 2 * np.einsum("bkj,akj->ab", T, T)
        - 2 * np.einsum("bkj,ajk->ab", T, T)
    )
    return {
        "g B": (np.einsum("aij,ji->a", g, B), np.zeros(n)),
        "ggg B": (np.einsum("abcij,ji->abc", ggg, B), 2j * p * cyc),
        "gg {g,B}": (np.einsum("abij,cji->abc", gg, anti), 4j * p * cyc),
        "gggg {g,B}": (np.einsum("abcij,ji->abc", ggg, Y), 12j * p * cyc),
        "B B": (np.trace(B @ B), 2 * p * V @ V + p * np.sum(T * T)),
        "g {g,B} B": (np.einsum("abij,ji->ab", ga_anti, B), rhs_quad),
        "g g {g,B}{g,B}": (np.einsum("caij,bjk,cki->ab", gg, anti, anti, optimize=True), rhs_last),
    }
