"""Closed-form residue densities for second-order operators times ``L^-m``.

``L`` is of Laplace type with data ``(P, S, Q)`` and curvature from a
:class:`~specwres.jets.GeometryJet`.  All functions return the pointwise
density, the integrand of the residue with respect to the volume form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import CliffordRep, Grading
from .jets import GeometryJet, LaplaceJet
from .tensor_core import sphere_volume


class WresError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class OperatorData:
    """Coefficients of ``F^{ab} xi_a xi_b + i G^a xi_a + H`` at the origin.

    Attributes
    ----------
    F : ndarray, shape (n, n, d, d)
        Symmetric in the first two axes.
    G : ndarray, shape (n, d, d)
    H : ndarray, shape (d, d)
    """

    F: np.ndarray
    G: np.ndarray
    H: np.ndarray

    def __post_init__(self):
        F, G, H = (np.asarray(a, dtype=complex) for a in (self.F, self.G, self.H))
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "H", H)
        n, d = G.shape[0], H.shape[0]
        if F.shape != (n, n, d, d) or G.shape != (n, d, d) or H.shape != (d, d):
            raise WresError(f"inconsistent shapes F{F.shape} G{G.shape} H{H.shape}")
        if np.max(np.abs(F - F.transpose(1, 0, 2, 3)), initial=0.0) > 1e-12 * max(1.0, np.max(np.abs(F), initial=0.0)):
            raise WresError("F must be symmetric in its two form indices")

    @property
    def n(self) -> int:
        return self.G.shape[0]

    @property
    def fiber_dim(self) -> int:
        return self.H.shape[0]

    @classmethod
    def zero(cls, n: int, dim: int) -> "OperatorData":
        return cls(np.zeros((n, n, dim, dim)), np.zeros((n, dim, dim)), np.zeros((dim, dim)))

    @classmethod
    def symmetrized(cls, F, G, H) -> "OperatorData":
        F = np.asarray(F, dtype=complex)
        return cls((F + F.transpose(1, 0, 2, 3)) / 2, G, H)

    def left_multiply(self, M) -> "OperatorData":
        M = np.asarray(M, dtype=complex)
        return OperatorData(M @ self.F, M @ self.G, M @ self.H)

    def __add__(self, other: "OperatorData") -> "OperatorData":
        return OperatorData(self.F + other.F, self.G + other.G, self.H + other.H)

    def scale(self, c) -> "OperatorData":
        return OperatorData(c * self.F, c * self.G, c * self.H)


def _check(od: OperatorData, lj: LaplaceJet, geom: GeometryJet) -> None:
    if (od.n, od.fiber_dim) != (lj.n, lj.fiber_dim) or geom.n != lj.n:
        raise WresError("operator, Laplace and geometry data disagree on shapes")


def _tr(M) -> complex:
    return complex(np.trace(M))


def scalar_bracket(lj: LaplaceJet, geom: GeometryJet) -> np.ndarray:
    """Endomorphism ``-12 Q + 6 P_bb - 2 R - 3 S_b S_b``."""
    d = lj.fiber_dim
    P_bb = np.einsum("bbij->ij", lj.P)
    SS = np.einsum("bij,bjk->ik", lj.S, lj.S)
    return -12 * lj.Q + 6 * P_bb - 2 * geom.scalar * np.eye(d) - 3 * SS


def wres_density_general(od: OperatorData, lj: LaplaceJet, geom: GeometryJet) -> complex:
    """Residue density of ``O L^-m`` for second-order ``O``.

    ``(nu/24) Tr[24 H + 12 G^a S_a + F^aa (-12 Q + 6 P_bb - 2 R - 3 S_b S_b)
    + 2 F^ab (-6 P_ab + 2 Ric_ab - 3 S_a S_b)]`` with ``nu`` the area of the
    unit sphere in ``R^n``.
    """
    _check(od, lj, geom)
    n, d = lj.n, lj.fiber_dim
    nu = sphere_volume(n)
    F_aa = np.einsum("aaij->ij", od.F)
    total = 24 * _tr(od.H)
    total += 12 * complex(np.einsum("aij,aji->", od.G, lj.S))
    total += _tr(F_aa @ scalar_bracket(lj, geom))
    SaSb = np.einsum("aij,bjk->abik", lj.S, lj.S)
    K = -6 * lj.P + 2 * np.einsum("ab,ij->abij", geom.ricci, np.eye(d)) - 3 * SaSb
    total += 2 * complex(np.einsum("abij,abji->", od.F, K))
    return nu / 24 * total


def wres_density_endo(E, lj: LaplaceJet, geom: GeometryJet) -> complex:
    """Residue density of ``E L^(-m+1)``: ``(n-2) nu/24 Tr[E(-12Q + 6P_aa - 2R - 3 S_a S_a)]``."""
    E = np.asarray(E, dtype=complex)
    if E.shape != (lj.fiber_dim,) * 2:
        raise WresError(f"endomorphism shape {E.shape} does not match fiber {lj.fiber_dim}")
    n = lj.n
    return (n - 2) * sphere_volume(n) / 24 * _tr(E @ scalar_bracket(lj, geom))


def wres_density_reduced(od: OperatorData, lj: LaplaceJet, geom: GeometryJet) -> complex:
    """Residue density of ``(O - F^aa L/(n-2)) L^-m``.

    ``(nu/24) Tr[24 H + 12 G^a S_a + 2 F^ab (-6 P_ab + 2 Ric_ab - 3 S_a S_b)]``.

    Raises
    ------
    WresError
        For ``n = 2``, where the subtraction is undefined.
    """
    _check(od, lj, geom)
    n, d = lj.n, lj.fiber_dim
    if n == 2:
        raise WresError("the reduced formula needs n > 2")
    nu = sphere_volume(n)
    total = 24 * _tr(od.H) + 12 * complex(np.einsum("aij,aji->", od.G, lj.S))
    SaSb = np.einsum("aij,bjk->abik", lj.S, lj.S)
    K = -6 * lj.P + 2 * np.einsum("ab,ij->abij", geom.ricci, np.eye(d)) - 3 * SaSb
    total += 2 * complex(np.einsum("abij,abji->", od.F, K))
    return nu / 24 * total


def laplacian_operator_data(F_aa, lj: LaplaceJet, n: int) -> OperatorData:
    """Leading operator data of ``F_aa L / (n-2)`` at the origin.

    Only the principal part ``delta^bc F_aa/(n-2)`` and the origin values of
    the lower coefficients enter: ``G^a = F_aa S_a/(n-2)``, ``H = F_aa Q/(n-2)``.
    """
    F_aa = np.asarray(F_aa, dtype=complex)
    c = 1.0 / (n - 2)
    eye = np.eye(n)
    F = c * np.einsum("bc,ij->bcij", eye, F_aa)
    G = c * np.einsum("ij,ajk->aik", F_aa, lj.S)
    H = c * F_aa @ lj.Q
    return OperatorData(F, G, H)


def ed_operator_data(E, B0, rep: CliffordRep) -> OperatorData:
    """Operator data of ``E D`` at the origin: ``F = 0``, ``G^a = i E gamma^a``, ``H = E B0``."""
    E = np.asarray(E, dtype=complex)
    n, d = rep.n, rep.fiber_dim
    G = 1j * np.einsum("ij,ajk->aik", E, rep.gammas)
    return OperatorData(np.zeros((n, n, d, d)), G, E @ np.asarray(B0, dtype=complex))


def clifford_contraction(B0, rep: CliffordRep) -> np.ndarray:
    """``gamma^a {gamma^a, B0}``."""
    g = rep.gammas
    B0 = np.asarray(B0, dtype=complex)
    return np.einsum("aij,ajk->ik", g, np.einsum("aij,jk->aik", g, B0) + np.einsum("ij,ajk->aik", B0, g))


def wres_density_ED(E, B0, rep: CliffordRep, chi: Grading | None = None) -> complex:
    """Residue density of ``(chi) E D D^-2m``: ``(nu/2) Tr[(chi) E (2 B0 - gamma^a{gamma^a, B0})]``."""
    E = np.asarray(E, dtype=complex)
    B0 = np.asarray(B0, dtype=complex)
    d = rep.fiber_dim
    if E.shape != (d, d) or B0.shape != (d, d):
        raise WresError("E and B0 must be fiber endomorphisms")
    if chi is not None:
        E = chi.matrix @ E
    inner = 2 * B0 - clifford_contraction(B0, rep)
    return sphere_volume(rep.n) / 2 * _tr(E @ inner)
