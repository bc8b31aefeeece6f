"""Pointwise densities of the metric, Einstein, torsion and scalar curvature
functionals and their chiral variants.

Each functional comes in a general form driven by an arbitrary
perturbation ``B`` and, where available, a closed form for torsion
perturbations of the spin-Dirac and Hodge-Dirac operators.  Einstein and
torsion densities are returned as :class:`DensityReport` objects carrying
the multilinear coefficient tensors.

Index conventions: ``w.deriv[b, c] = d_c w_b`` and
``T.deriv[c, i, j, k] = d_c T_ijk``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .clifford import HODGE, SPIN, CliffordRep, Grading, build_spin_chirality
from .jets import GeometryJet, LaplaceJet, OneFormJet, PerturbationJet, TorsionJet
from .tensor_core import antisymmetrize_torsion, as_tensor, levi_civita, sphere_volume
from .wres import clifford_contraction, wres_density_endo

MATCHED = "matched"
ENGINE_ONLY = "engine-only"
MISMATCH = "mismatch"


class FunctionalError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DensityReport:
    """Density of a functional at a point.

    Attributes
    ----------
    functional : str
    n : int
    kind : str
        ``"spin"``, ``"hodge"`` or ``"custom"``.
    chiral : bool
    value : complex or None
        Contraction with the supplied jets.
    coeff_uw : ndarray or None
        ``(n, n)`` coefficients of ``u_a w_b``.
    coeff_u_dw : ndarray or None
        ``(n, n, n)`` coefficients of ``u_a w_bc``.
    coeff_uvw : ndarray or None
        ``(n, n, n)`` coefficients of ``u_a v_b w_c``.
    """

    functional: str
    n: int
    kind: str
    chiral: bool = False
    value: complex | None = None
    coeff_uw: np.ndarray | None = None
    coeff_u_dw: np.ndarray | None = None
    coeff_uvw: np.ndarray | None = None
    notes: tuple = field(default=())

    def contract(self, u=None, w: OneFormJet | None = None, v=None) -> complex:
        """Contract the coefficient tensors with ``u``, ``v`` and the jet ``w``."""
        total = 0j
        if self.coeff_uw is not None:
            total += complex(np.einsum("ab,a,b->", self.coeff_uw, _vec(u), w.value))
        if self.coeff_u_dw is not None:
            total += complex(np.einsum("abc,a,bc->", self.coeff_u_dw, _vec(u), w.deriv))
        if self.coeff_uvw is not None:
            wv = w.value if isinstance(w, OneFormJet) else _vec(w)
            total += complex(np.einsum("abc,a,b,c->", self.coeff_uvw, _vec(u), _vec(v), wv))
        return total

    def with_value(self, value) -> "DensityReport":
        return DensityReport(
            self.functional, self.n, self.kind, self.chiral, complex(value),
            self.coeff_uw, self.coeff_u_dw, self.coeff_uvw, self.notes,
        )


def _vec(u) -> np.ndarray:
    if isinstance(u, OneFormJet):
        return u.value
    return np.asarray(u, dtype=complex)


def _jet(w) -> OneFormJet:
    return w if isinstance(w, OneFormJet) else OneFormJet.constant(w)


def _chi_matrix(rep: CliffordRep, chi: Grading | None) -> np.ndarray:
    return rep.identity if chi is None else chi.matrix


def _anti(g, B):
    """``{g^a, B}`` stacked over ``a``."""
    return np.einsum("aij,jk->aik", g, B) + np.einsum("ij,ajk->aik", B, g)


# -- metric ---------------------------------------------------------------------

def metric_density(u, w, rep: CliffordRep) -> complex:
    """``dim(V) nu u.w``; independent of any bounded perturbation."""
    return rep.fiber_dim * sphere_volume(rep.n) * complex(np.dot(_vec(u), _vec(w)))


def metric_density_trace(u, w, rep: CliffordRep, chi: Grading | None = None) -> complex:
    """Matrix-trace form ``nu Tr((chi) u^ w^)``, valid for any ``n``."""
    uh, wh = rep.slash(_vec(u)), rep.slash(_vec(w))
    return sphere_volume(rep.n) * complex(np.trace(_chi_matrix(rep, chi) @ uh @ wh))


def chiral_metric_density(u, w, rep: CliffordRep, chi: Grading) -> complex:
    """Closed-form chiral metric density of the torsionless operator.

    Spin: ``4 pi i 2^m u_a w_b eps^ab`` at ``n = 2``, else 0.  Hodge grading:
    ``-8 pi i u_a w_b eps^ab`` at ``n = 2``, else 0.  Euler grading: 0.
    Other gradings have no closed form and raise.
    """
    n = rep.n
    uw_eps = complex(_vec(u)[0] * _vec(w)[1] - _vec(u)[1] * _vec(w)[0]) if n == 2 else 0j
    if chi.kind == "spin_gamma":
        return 4j * math.pi * 2 ** rep.m * uw_eps if n == 2 else 0j
    if chi.kind == "hodge":
        return -8j * math.pi * uw_eps if n == 2 else 0j
    if chi.kind == "euler":
        return 0j
    raise FunctionalError(f"no closed form for the {chi.kind!r} grading")


# -- Einstein ------------------------------------------------------------------

def einstein_coefficients(B: PerturbationJet, rep: CliffordRep, chi: Grading | None = None):
    """Coefficient tensors ``(coeff_uw, coeff_u_dw)`` of the Einstein delta."""
    n = rep.n
    g = rep.gammas
    nu = sphere_volume(n)
    B0 = np.asarray(B.B0, dtype=complex)
    Ba = np.asarray(B.Ba, dtype=complex)
    eye_n = np.eye(n)
    gg = np.einsum("aij,bjk->abik", g, g)
    if chi is None:
        comm = gg - gg.transpose(1, 0, 2, 3)
        acB0 = _anti(g, B0)
        sum_acBc = np.einsum("cij,cjk->ik", g, Ba) + np.einsum("cij,cjk->ik", Ba, g)
        coeff_u_dw = 0.5j * nu * np.einsum("abij,cji->abc", comm, acB0)
        K = np.einsum("cij,cjk->ik", acB0, g) - 2 * B0
        left = np.einsum("ab,ij->abij", eye_n, B0) - np.einsum("aij,bjk->abik", g, acB0)
        coeff_uw = 0.5 * nu * (
            0.5j * np.einsum("abij,ji->ab", comm, sum_acBc)
            + np.einsum("abij,ji->ab", left, K)
        )
        return coeff_uw, coeff_u_dw
    X = chi.matrix
    Xg = np.einsum("ij,ajk->aik", X, g)
    ggg = np.einsum("abij,cjk->abcik", gg, g)
    B0X = B0 @ X
    tr_g_B0 = np.einsum("aij,ji->a", g, B0X)  # Tr(chi g^a B0)
    tr_ggg_B0 = np.einsum("abcij,ji->abc", ggg, B0X)
    coeff_u_dw = 1j * nu * (
        2 * (3 - n) * np.einsum("a,bc->abc", tr_g_B0, eye_n)
        + 2 * np.einsum("ab,c->abc", eye_n, tr_g_B0)
        - 2 * np.einsum("ac,b->abc", eye_n, tr_g_B0)
        - (4 - n) * tr_ggg_B0
    )
    tr_gB = np.einsum("aij,bji->ab", Xg, Ba)  # Tr(chi g^a B_b)
    trace_gc_Bc = np.trace(tr_gB)
    tr_gggB = np.einsum("abcij,cjk,ki->ab", ggg, Ba, X, optimize=True)
    linear = (3 - n) * tr_gB - tr_gB.T + eye_n * trace_gc_Bc - tr_gggB
    M = np.einsum("cij,jk,ckl->il", g, B0, g, optimize=True)  # g^c B0 g^c
    comm_ba = gg.transpose(1, 0, 2, 3) - gg  # [g^b, g^a] at [a, b]
    quad = np.einsum("abij,jk,kl,li->ab", comm_ba, B0, M, X, optimize=True)
    quad -= 2 * np.einsum("aij,jk,bkl,lm,mi->ab", g, B0, g, M, X, optimize=True)
    coeff_uw = nu * (1j * linear + 0.25 * quad)
    return coeff_uw, coeff_u_dw


def einstein_delta_general(u, w, B: PerturbationJet, rep: CliffordRep, chi: Grading | None = None, kind: str = "custom") -> DensityReport:
    """Change of the Einstein density caused by ``B``.

    Non-chiral::

        (nu/2) Tr{ i u_a w_bc [g^a, g^b]{g^c, B0} + (i/2) u_a w_b [g^a, g^b]{g^c, B_c}
                   + u_a w_b (delta^ab B0 - g^a{g^b, B0})({g^c, B0} g^c - 2 B0) }

    With a grading ``chi`` the chiral expression with its ``(3 - n)``,
    ``(4 - n)`` coefficients and the quadratic term
    ``(1/4) u_a w_b Tr chi([g^b, g^a] B0 - 2 g^a B0 g^b) g^c B0 g^c`` is used.
    """
    w = _jet(w)
    uw, udw = einstein_coefficients(B, rep, chi)
    rep_ = DensityReport("einstein", rep.n, kind, chi is not None, None, uw, udw)
    return rep_.with_value(rep_.contract(u, w))


def _spin_antisymmetric(T: TorsionJet) -> None:
    if not T.is_antisymmetric():
        raise FunctionalError("spin torsion must be totally antisymmetric")


def _deriv_trace(deriv: np.ndarray) -> np.ndarray:
    """``T^c_abc = d_c T_abc`` summed over ``c``."""
    return np.einsum("cabc->ab", deriv)


def einstein_spin_torsion(u, w, T: TorsionJet, n: int | None = None, prefactor: float | None = None) -> DensityReport:
    """Closed-form Einstein delta for spin torsion.

    ``3 2^(n-1) nu [ -u_a w_bc T_abc + (1/8) u_a w_b (delta^ab T.T - 4 T^c_abc - 6 T_ajk T_bjk) ]``

    ``prefactor`` replaces ``3 2^(n-1) nu`` when given.
    """
    w = _jet(w)
    _spin_antisymmetric(T)
    n = T.n if n is None else n
    K = 3 * 2 ** (n - 1) * sphere_volume(n) if prefactor is None else prefactor
    T0 = T.value
    udw = -K * T0
    uw = K / 8 * (
        np.eye(n) * np.sum(T0 * T0)
        - 4 * _deriv_trace(T.deriv)
        - 6 * np.einsum("ajk,bjk->ab", T0, T0)
    )
    r = DensityReport("einstein", n, SPIN, False, None, uw, udw)
    return r.with_value(r.contract(u, w))


def nontensorial_part(u: OneFormJet, w: OneFormJet, T: TorsionJet) -> complex:
    """``-u_a w_bc T_abc - (1/2) u_a w_b T^c_abc`` with ``w_bc = d_c w_b``."""
    return complex(
        -np.einsum("a,bc,abc->", u.value, w.deriv, T.value)
        - 0.5 * np.einsum("a,b,ab->", u.value, w.value, _deriv_trace(T.deriv))
    )


def total_derivative_identity(u: OneFormJet, w: OneFormJet, T: TorsionJet) -> tuple[complex, complex]:
    """Both sides of the exchange relation for the non-tensorial Einstein part.

    Returns ``(lhs, rhs)`` where ``lhs`` is the non-tensorial part and ``rhs``
    is ``-d_c(u_a w_b T_abc)`` plus the same part with ``u`` and ``w``
    exchanged; they agree for totally antisymmetric ``T``.
    """
    total = (
        np.einsum("ac,b,abc->", u.deriv, w.value, T.value)
        + np.einsum("a,bc,abc->", u.value, w.deriv, T.value)
        + np.einsum("a,b,cabc->", u.value, w.value, T.deriv)
    )
    return nontensorial_part(u, w, T), complex(-total) + nontensorial_part(w, u, T)


def einstein_hodge_torsion(u, w, T: TorsionJet, n: int | None = None, vector_coefficient: float = -4.0 / 3.0) -> DensityReport:
    """Closed-form Einstein delta for Hodge torsion.

    ``3 nu 2^(n-3) u_a [ -4 w_bc A_abc - 2 w_b A^c_abc - (4/3) w_a T_jii T_jkk
    + w_b A_cjk A_djk (delta_ab delta_cd / 2 - 3 delta_ac delta_bd) ]`` with
    ``A`` the cyclic average of ``T``.

    ``vector_coefficient`` replaces the ``-4/3`` in front of the vector-part
    square.  The matrix-trace engine and the raw symbol oracle both give
    ``-2/3``; the default keeps the published form.
    """
    w = _jet(w)
    n = T.n if n is None else n
    K = 3 * sphere_volume(n) * 2 ** (n - 3)
    A0 = antisymmetrize_torsion(T.value)
    Ad = np.array([antisymmetrize_torsion(d) for d in T.deriv])
    V = np.einsum("jii->j", T.value)
    udw = -4 * K * A0
    uw = K * (
        -2 * _deriv_trace(Ad)
        + vector_coefficient * np.eye(n) * np.dot(V, V)
        + 0.5 * np.eye(n) * np.sum(A0 * A0)
        - 3 * np.einsum("ajk,bjk->ab", A0, A0)
    )
    r = DensityReport("einstein", n, HODGE, False, None, uw, udw)
    return r.with_value(r.contract(u, w))


def chiral_einstein_spin_torsion(u, w, T: TorsionJet, n: int | None = None) -> DensityReport:
    """Closed-form chiral Einstein density for spin torsion.

    Zero unless ``n`` is 4 or 6.  ``n = 4``::

        2 pi^2 u_a [ T_ijk (eps_ijka w_bb - eps_ijkc w_ac + eps_ijkb w_ba)
                     + w_b eps_ijka T^b_ijk + (3/4) w_b eps_ijkl T_ijk T_abl ]

    ``n = 6``: ``i pi^3 u_a (2 w_bc T_ijk eps_ijkabc - w_b T^c_ijk eps_ijkabc)``.
    Here ``T^b_ijk = d_b T_ijk``.
    """
    w = _jet(w)
    _spin_antisymmetric(T)
    n = T.n if n is None else n
    T0, Td = T.value, T.deriv
    uw = np.zeros((n, n), dtype=complex)
    udw = np.zeros((n, n, n), dtype=complex)
    if n == 4:
        eps = levi_civita(4)
        t = np.einsum("ijk,ijka->a", T0, eps)  # T_ijk eps_ijka
        eye = np.eye(n)
        # w_bb -> (b, c) with b = c; w_ac; w_ba
        udw += np.einsum("a,bc->abc", t, eye)
        udw -= np.einsum("c,ab->abc", t, eye)
        udw += np.einsum("b,ac->abc", t, eye)
        uw += np.einsum("ijka,bijk->ab", eps, Td)
        uw += 0.75 * np.einsum("ijkl,ijk,abl->ab", eps, T0, T0)
        uw *= 2 * math.pi**2
        udw *= 2 * math.pi**2
    elif n == 6:
        eps = levi_civita(6)
        udw = 2j * math.pi**3 * np.einsum("ijk,ijkabc->abc", T0, eps)
        uw = -1j * math.pi**3 * np.einsum("cijk,ijkabc->ab", Td, eps)
    r = DensityReport("einstein", n, SPIN, True, None, uw, udw)
    return r.with_value(r.contract(u, w))


# -- torsion functional -----------------------------------------------------------------

def torsion_coefficients(B0, rep: CliffordRep, chi: Grading | None = None) -> np.ndarray:
    """``coeff[a, b, c]`` multiplying ``u_a v_b w_c``.

    Non-chiral: ``(nu/2) Tr([g^b, g^a]{g^c, B0})``; chiral:
    ``(nu/2) Tr[chi g^a g^b g^c (2 B0 - g^d{g^d, B0})]``.
    """
    g = rep.gammas
    nu = sphere_volume(rep.n)
    B0 = np.asarray(B0, dtype=complex)
    gg = np.einsum("aij,bjk->abik", g, g)
    if chi is None:
        comm = gg.transpose(1, 0, 2, 3) - gg  # [g^b, g^a] at [a, b]
        return 0.5 * nu * np.einsum("abij,cji->abc", comm, _anti(g, B0))
    inner = (2 * B0 - clifford_contraction(B0, rep)) @ chi.matrix  # cyclic: Tr(chi ggg X)
    ggg = np.einsum("abij,cjk->abcik", gg, g)
    return 0.5 * nu * np.einsum("abcij,ji->abc", ggg, inner)


def torsion_functional(u, v, w, B0, rep: CliffordRep, chi: Grading | None = None, kind: str = "custom") -> DensityReport:
    """Torsion functional density ``(nu/2) u_a v_b w_c Tr[(chi)...]``; see :func:`torsion_coefficients`."""
    coeff = torsion_coefficients(B0, rep, chi)
    r = DensityReport("torsion", rep.n, kind, chi is not None, None, coeff_uvw=coeff)
    return r.with_value(r.contract(u, w, v))


def torsion_spin_closed(u, v, w, T: TorsionJet, n: int | None = None) -> complex:
    """``-(3i/2) nu 2^m u_a v_b w_c T_abc``."""
    _spin_antisymmetric(T)
    n = T.n if n is None else n
    return -1.5j * sphere_volume(n) * 2 ** (n // 2) * _uvwT(u, v, w, T.value)


def torsion_hodge_closed(u, v, w, T: TorsionJet, n: int | None = None) -> complex:
    """``-3i nu 2^(n-1) u_a v_b w_c A_abc`` with ``A`` the cyclic average of ``T``."""
    n = T.n if n is None else n
    return -3j * sphere_volume(n) * 2 ** (n - 1) * _uvwT(u, v, w, antisymmetrize_torsion(T.value))


def _uvwT(u, v, w, T) -> complex:
    return complex(np.einsum("a,b,c,abc->", _vec(u), _vec(v), _vec(w), T))


def chiral_torsion_spin(u, v, w, T: TorsionJet, n: int | None = None) -> complex:
    """Closed-form chiral torsion density for spin torsion.

    ``n = 4``: ``-i (pi^2/2) 2^m u_a v_b w_c T_ijk eps_ijkl (d_ab d_cl + d_al d_bc - d_ac d_bl)``;
    ``n = 6``: ``(pi^3/4) 2^m u_a v_b w_c T_ijk eps_abcijk``; otherwise 0.
    """
    _spin_antisymmetric(T)
    n = T.n if n is None else n
    uu, vv, ww = _vec(u), _vec(v), _vec(w)
    if n == 4:
        t = np.einsum("ijk,ijkl->l", T.value, levi_civita(4))
        s = np.dot(uu, vv) * np.dot(ww, t) + np.dot(uu, t) * np.dot(vv, ww) - np.dot(uu, ww) * np.dot(vv, t)
        return complex(-0.5j * math.pi**2 * 4 * s)
    if n == 6:
        s = np.einsum("a,b,c,ijk,abcijk->", uu, vv, ww, T.value, levi_civita(6))
        return complex(math.pi**3 / 4 * 8 * s)
    return 0j


# -- scalar curvature -------------------------------------------------------------------

def scalar_reference_density(f: float, n: int, fiber_dim: int, scalar: float) -> float:
    """Torsionless scalar curvature density ``(n-2) nu/24 dim(V) f (-R)``."""
    return (n - 2) * sphere_volume(n) / 24 * fiber_dim * f * (-scalar)


def scalar_perturbation_trace(B0, rep: CliffordRep) -> complex:
    """``Tr(-12 B0^2 + 6 g^a{g^a, B0} B0)``."""
    B0 = np.asarray(B0, dtype=complex)
    return complex(np.trace(-12 * B0 @ B0 + 6 * clifford_contraction(B0, rep) @ B0))


def scalar_density(f: float, B0, rep: CliffordRep, geom: GeometryJet | None = None, scalar: float | None = None) -> complex:
    """Scalar curvature density of ``D0 + B``.

    ``(n-2) nu/24 f [dim(V)(-R) + Tr(-12 B0^2 + 6 g^a{g^a, B0} B0)]``.
    """
    n = rep.n
    R = (geom.scalar if geom is not None else 0.0) if scalar is None else scalar
    ref = scalar_reference_density(f, n, rep.fiber_dim, R)
    return ref + (n - 2) * sphere_volume(n) / 24 * f * scalar_perturbation_trace(B0, rep)


def scalar_density_from_traces(f: float, B: PerturbationJet, rep: CliffordRep, trace_P: complex, trace_Q: complex, scalar: float) -> complex:
    """Scalar density from ``Tr P0_aa``, ``Tr Q0`` and the full perturbation.

    Evaluates ``(n-2) nu/24 f Tr(-12 Q + 6 P_aa - 2R - 3 S_a S_a)`` with
    ``P, S, Q`` perturbed by ``B`` (derivative terms included).
    """
    n, d = rep.n, rep.fiber_dim
    g = rep.gammas
    B0, Ba = np.asarray(B.B0, dtype=complex), np.asarray(B.Ba, dtype=complex)
    S = 1j * _anti(g, B0)
    dQ = 1j * np.einsum("aij,aji->", g, Ba) + np.trace(B0 @ B0)
    dP = 1j * (np.einsum("aij,aji->", g, Ba) + np.einsum("aij,aji->", Ba, g))
    total = -12 * (trace_Q + dQ) + 6 * (trace_P + dP) - 2 * scalar * d - 3 * np.einsum("aij,aji->", S, S)
    return (n - 2) * sphere_volume(n) / 24 * f * complex(total)


def scalar_density_laplace(f: float, lj: LaplaceJet, geom: GeometryJet, chi: Grading | None = None) -> complex:
    """Endomorphism residue route with ``E = f (chi)``."""
    E = f * (np.eye(lj.fiber_dim) if chi is None else chi.matrix)
    return wres_density_endo(E, lj, geom)


def scalar_spin_closed(f: float, T: TorsionJet, scalar: float = 0.0, n: int | None = None) -> float:
    """``2^m (n-2) nu/24 f (-R + (9/4) T.T)``."""
    _spin_antisymmetric(T)
    n = T.n if n is None else n
    TT = float(np.sum(np.abs(T.value) ** 2))
    return 2 ** (n // 2) * (n - 2) * sphere_volume(n) / 24 * f * (-scalar + 2.25 * TT)


def scalar_hodge_closed(f: float, T: TorsionJet, scalar: float = 0.0, n: int | None = None, expanded: bool = False) -> complex:
    """``2^(n-3)/3 (n-2) nu f (-R - 3 T_baa T_bcc + (9/4) A.A)``.

    ``expanded`` uses the equivalent ``(3/4)(T_abc T_abc + 2 T_abc T_cab)``
    instead of ``(9/4) A.A``; the two agree for ``T`` antisymmetric in its
    first pair.
    """
    n = T.n if n is None else n
    T0 = T.value
    V = np.einsum("baa->b", T0)
    if expanded:
        quad = 0.75 * (np.sum(T0 * T0) + 2 * np.einsum("abc,cab->", T0, T0))
    else:
        A = antisymmetrize_torsion(T0)
        quad = 2.25 * np.sum(A * A)
    return complex(2 ** (n - 3) / 3 * (n - 2) * sphere_volume(n) * f * (-scalar - 3 * np.dot(V, V) + quad))


def effective_RT(T, kind: str, scalar: float = 0.0) -> float:
    """Effective scalar curvature ``R - (9/4) A.A`` plus ``3 T_baa T_bcc`` for Hodge."""
    T0 = T.value if isinstance(T, TorsionJet) else as_tensor(T, rank=3)
    A = antisymmetrize_torsion(T0)
    out = scalar - 2.25 * float(np.real(np.sum(A * A)))
    if kind == HODGE:
        V = np.einsum("baa->b", T0)
        out += 3 * float(np.real(np.dot(V, V)))
    elif kind != SPIN:
        raise FunctionalError(f"unknown kind {kind!r}")
    return out


def chiral_scalar_density(f: float, B: PerturbationJet, rep: CliffordRep, chi: Grading) -> complex:
    """B-dependent part of the chiral scalar density: ``-(i/2)(n-2) nu f Tr(chi g^a B_a)``.

    For the spin module the torsionless part vanishes, so this is the whole
    density.
    """
    n = rep.n
    tr = np.einsum("ij,ajk,aki->", chi.matrix, rep.gammas, np.asarray(B.Ba, dtype=complex))
    return complex(-0.5j * (n - 2) * sphere_volume(n) * f * tr)


def chiral_scalar_spin_closed(f: float, T: TorsionJet, n: int | None = None) -> complex:
    """``-2^m (nu_3/8) delta_{n,4} eps^abcd d_a T_bcd``."""
    n = T.n if n is None else n
    if n != 4:
        return 0j
    s = np.einsum("abcd,abcd->", levi_civita(4), T.deriv)
    return complex(-4 * sphere_volume(4) / 8 * f * s)


def chiral_remark_density(u, T: TorsionJet, n: int | None = None) -> complex:
    """``2^m (i nu_3/4) delta_{n,4} u_a T_ijk eps_aijk``."""
    n = T.n if n is None else n
    if n != 4:
        return 0j
    s = np.einsum("a,ijk,aijk->", _vec(u), T.value, levi_civita(4))
    return complex(4 * 1j * sphere_volume(4) / 4 * s)


def chiral_remark_endomorphism(u, rep: CliffordRep) -> np.ndarray:
    """``u_a gamma gamma^a`` for the spin chirality ``gamma``."""
    return build_spin_chirality(rep).matrix @ rep.slash(_vec(u))
