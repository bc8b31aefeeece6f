"""Brute-force residue densities straight from the symbol calculus.

Each functional is evaluated from its defining residue by composing the
operator symbols and extracting the order ``-n`` part, independently of the
closed-form density formulas.  Jets are extended as exact polynomials
(affine ``B`` and one-forms, flat metric unless a spin geometry is given),
which is one admissible extension; densities at the origin depend on the
jets only.
"""

from __future__ import annotations

import numpy as np

from .clifford import CliffordRep, Grading
from .jets import GeometryJet, OneFormJet, PerturbationJet
from .symbols import (
    SymbolPoly,
    clifford_one_form_symbol,
    compose,
    dirac_symbol,
    endomorphism_symbol,
    identity_symbol,
    parametrix,
    power_symbol,
    raw_wres,
)


def _chi(sym: SymbolPoly, chi: Grading | None) -> SymbolPoly:
    return sym if chi is None else sym.left_multiply(chi.matrix)


def _slash(u, rep: CliffordRep) -> SymbolPoly:
    u = u.value if isinstance(u, OneFormJet) else u
    return endomorphism_symbol(rep.slash(np.asarray(u, dtype=complex)), rep.n)


class ResidueOracle:
    """Inverse powers of ``D^2`` for one operator, cached for reuse.

    Parameters
    ----------
    rep : CliffordRep
    B : PerturbationJet, optional
    geom : GeometryJet, optional
        Curvature for the spin module (normal-coordinate Dirac operator).
    """

    def __init__(self, rep: CliffordRep, B: PerturbationJet | None = None, geom: GeometryJet | None = None):
        self.rep = rep
        self.n = rep.n
        self.D = dirac_symbol(rep, B, geom, exact=True)
        self._b = parametrix(compose(self.D, self.D), depth=2)
        self._powers: dict = {}

    def inverse_power(self, k: int) -> SymbolPoly:
        """Symbol of ``D^-2k``; ``k = 0`` gives the identity."""
        if k == 0:
            return identity_symbol(self.n, self.rep.fiber_dim)
        if k not in self._powers:
            self._powers[k] = power_symbol(self._b, k)
        return self._powers[k]

    def wres(self, op: SymbolPoly, k: int) -> complex:
        return raw_wres(op, self.inverse_power(k), self.n)

    # -- functionals -----------------------------------------------------------------

    def metric(self, u, w, chi: Grading | None = None) -> complex:
        """``Wres((chi) u^ w^ D^-n)``."""
        op = compose(_slash(u, self.rep), _slash(w, self.rep))
        return self.wres(_chi(op, chi), self.n // 2)

    def einstein(self, u, w: OneFormJet, chi: Grading | None = None) -> complex:
        """``Wres((chi) u^ {D, w^} D D^-n)``."""
        wh = clifford_one_form_symbol(w, self.rep, exact=True)
        anti = compose(self.D, wh) + compose(wh, self.D)
        op = compose(compose(_slash(u, self.rep), anti), self.D)
        return self.wres(_chi(op, chi), self.n // 2)

    def torsion(self, u, v, w, chi: Grading | None = None) -> complex:
        """``Wres((chi) u^ v^ w^ D D^-n)``."""
        uvw = compose(compose(_slash(u, self.rep), _slash(v, self.rep)), _slash(w, self.rep))
        return self.wres(_chi(compose(uvw, self.D), chi), self.n // 2)

    def endo_dirac(self, E) -> complex:
        """``Wres(E D D^-n)``."""
        return self.wres(compose(endomorphism_symbol(E, self.n), self.D), self.n // 2)

    def scalar(self, f: float = 1.0, chi: Grading | None = None) -> complex:
        """``Wres((chi) f D^(-n+2))``."""
        op = endomorphism_symbol(f * (self.rep.identity if chi is None else chi.matrix), self.n)
        return self.wres(op, self.n // 2 - 1)


def einstein_delta_raw(u, w: OneFormJet, B: PerturbationJet, rep: CliffordRep, chi: Grading | None = None, geom: GeometryJet | None = None) -> complex:
    """Einstein density of ``D0 + B`` minus that of ``D0``, both by brute force."""
    return ResidueOracle(rep, B, geom).einstein(u, w, chi) - ResidueOracle(rep, None, geom).einstein(u, w, chi)


def printed_inverse_power_deltas(B: PerturbationJet, rep: CliffordRep, k: int, xi) -> tuple[np.ndarray, np.ndarray]:
    """B-dependent parts of the orders ``-(2k+1)`` and ``-(2k+2)`` of ``D^-2k`` at the origin.

    ``k xi_a |xi|^(-2k-2) {g^a, B0}`` and
    ``-k |xi|^(-2k-2)(i g^a B_a + B0^2)
    + k(k+1) |xi|^(-2k-4)(i{g^a, B_b} + (1/2){g^a, B0}{g^b, B0}) xi_a xi_b``.
    """
    g = rep.gammas
    xi = np.asarray(xi, dtype=float)
    r2 = float(xi @ xi)
    B0, Ba = np.asarray(B.B0, dtype=complex), np.asarray(B.Ba, dtype=complex)
    anti0 = np.einsum("aij,jk->aik", g, B0) + np.einsum("ij,ajk->aik", B0, g)
    a_xi = np.einsum("a,aij->ij", xi, anti0)
    odd = k * r2 ** (-k - 1) * a_xi
    gB = np.einsum("a,aij->ij", xi, g)
    Bx = np.einsum("b,bij->ij", xi, Ba)
    even = -k * r2 ** (-k - 1) * (1j * np.einsum("aij,ajk->ik", g, Ba) + B0 @ B0)
    even = even + k * (k + 1) * r2 ** (-k - 2) * (1j * (gB @ Bx + Bx @ gB) + 0.5 * a_xi @ a_xi)
    return odd, even


def inverse_power_delta_residual(B: PerturbationJet, rep: CliffordRep, k: int, samples: int = 6, seed=0) -> float:
    """Max deviation between parametrix deltas of ``D^-2k`` and the printed deltas.

    Both sides are evaluated at random unit covectors at the origin.
    """
    with_B = ResidueOracle(rep, B).inverse_power(k)
    without = ResidueOracle(rep).inverse_power(k)
    delta = with_B - without
    odd_part = delta.part(homogeneity=-2 * k - 1, xdeg=0)
    even_part = delta.part(homogeneity=-2 * k - 2, xdeg=0)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        xi = rng.normal(size=rep.n)
        xi /= np.linalg.norm(xi)
        odd, even = printed_inverse_power_deltas(B, rep, k, xi)
        worst = max(worst, float(np.max(np.abs(odd_part.evaluate(xi) - odd))), float(np.max(np.abs(even_part.evaluate(xi) - even))))
    return worst
