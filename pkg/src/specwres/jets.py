"""Pointwise normal-coordinate data.

A *jet* is the finite list of values and first derivatives at the centre
of normal coordinates that the density formulas consume.  Conventions:

* ``riemann[a, b, c, d] = R_abcd``; ``ricci[a, b] = R_cacb``; ``scalar = Ric_aa``.
  With these, the unit round sphere has positive scalar curvature.
* ``TorsionJet.deriv[c, i, j, k]`` is ``d_c T_ijk``.
* ``OneFormJet.deriv[b, c]`` is ``d_c w_b``.
* ``LaplaceJet`` holds ``P[a, b]``, ``S[a]``, ``Q`` of the Laplace-type symbol
  ``(delta_ab + R_acbd x^c x^d / 3) xi_a xi_b + i (P_ab x^b + S_a) xi_a + Q``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import CliffordRep, anticommutator
from .tensor_core import as_tensor, is_totally_antisymmetric, total_antisymmetrization


@dataclass(frozen=True, eq=False)
class GeometryJet:
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: float

    @property
    def n(self) -> int:
        return self.riemann.shape[0]

    @classmethod
    def from_riemann(cls, R) -> "GeometryJet":
        R = np.real_if_close(as_tensor(R, rank=4)).astype(float)
        ricci = np.einsum("cacb->ab", R)
        return cls(R, ricci, float(np.trace(ricci)))

    @classmethod
    def flat(cls, n: int) -> "GeometryJet":
        return cls.from_riemann(np.zeros((n,) * 4))


@dataclass(frozen=True, eq=False)
class TorsionJet:
    value: np.ndarray
    deriv: np.ndarray

    @property
    def n(self) -> int:
        return self.value.shape[0]

    @classmethod
    def constant(cls, value) -> "TorsionJet":
        value = as_tensor(value, rank=3)
        return cls(value, np.zeros((value.shape[0],) * 4, dtype=complex))

    @classmethod
    def zero(cls, n: int) -> "TorsionJet":
        return cls.constant(np.zeros((n,) * 3))

    def is_antisymmetric(self, tol: float = 1e-12) -> bool:
        return is_totally_antisymmetric(self.value, tol) and all(
            is_totally_antisymmetric(d, tol) for d in self.deriv
        )

    def vector_part(self) -> np.ndarray:
        """``T_jii`` (contraction of the last two slots), value only."""
        return np.einsum("jii->j", self.value)


@dataclass(frozen=True, eq=False)
class OneFormJet:
    value: np.ndarray
    deriv: np.ndarray

    @classmethod
    def constant(cls, value) -> "OneFormJet":
        value = as_tensor(value, rank=1)
        return cls(value, np.zeros((value.shape[0],) * 2, dtype=complex))

    @property
    def n(self) -> int:
        return self.value.shape[0]


@dataclass(frozen=True, eq=False)
class PerturbationJet:
    """Endomorphism ``B = B0 + Ba[a] x^a + o(x)``."""

    B0: np.ndarray
    Ba: np.ndarray

    @classmethod
    def zero(cls, n: int, dim: int) -> "PerturbationJet":
        return cls(np.zeros((dim, dim), dtype=complex), np.zeros((n, dim, dim), dtype=complex))

    def __add__(self, other: "PerturbationJet") -> "PerturbationJet":
        return PerturbationJet(self.B0 + other.B0, self.Ba + other.Ba)


@dataclass(frozen=True, eq=False)
class LaplaceJet:
    P: np.ndarray  # (n, n, d, d)
    S: np.ndarray  # (n, d, d)
    Q: np.ndarray  # (d, d)

    @property
    def n(self) -> int:
        return self.S.shape[0]

    @property
    def fiber_dim(self) -> int:
        return self.Q.shape[0]

    @classmethod
    def zero(cls, n: int, dim: int) -> "LaplaceJet":
        return cls(
            np.zeros((n, n, dim, dim), dtype=complex),
            np.zeros((n, dim, dim), dtype=complex),
            np.zeros((dim, dim), dtype=complex),
        )


# -- random data ----------------------------------------------------------------

def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def riemann_projection(X) -> np.ndarray:
    """Project a rank-4 array onto algebraic curvature tensors.

    Antisymmetrize each index pair, symmetrize under pair exchange, then
    subtract the totally antisymmetric part (which is what the first Bianchi
    identity forbids).
    """
    X = np.asarray(X, dtype=float)
    A = X - np.einsum("bacd->abcd", X)
    A = (A - np.einsum("abdc->abcd", A)) / 4.0
    S = (A + np.einsum("cdab->abcd", A)) / 2.0
    return S - total_antisymmetrization(S).real


def random_geometry_jet(n: int, seed=None, scale: float = 1.0) -> GeometryJet:
    X = _rng(seed).normal(size=(n,) * 4) * scale
    return GeometryJet.from_riemann(riemann_projection(X))


def sphere_geometry_jet(n: int, curvature: float = 1.0) -> GeometryJet:
    """Round sphere of sectional curvature ``curvature``."""
    d = np.eye(n)
    R = curvature * (np.einsum("ac,bd->abcd", d, d) - np.einsum("ad,bc->abcd", d, d))
    return GeometryJet.from_riemann(R)


def random_torsion_jet(n: int, seed=None, symmetry: str = "antisymmetric", scale: float = 1.0) -> TorsionJet:
    """Random real torsion jet.

    ``symmetry`` is ``"antisymmetric"`` (totally), ``"torsion"`` (antisymmetric
    in the first two slots only) or ``"general"``.
    """
    rng = _rng(seed)
    value = rng.normal(size=(n,) * 3) * scale
    deriv = rng.normal(size=(n,) * 4) * scale
    if symmetry == "antisymmetric":
        value = total_antisymmetrization(value).real
        deriv = np.array([total_antisymmetrization(d).real for d in deriv])
    elif symmetry == "torsion":
        value = (value - value.transpose(1, 0, 2)) / 2
        deriv = (deriv - deriv.transpose(0, 2, 1, 3)) / 2
    elif symmetry != "general":
        raise ValueError(f"unknown symmetry {symmetry!r}")
    return TorsionJet(value.astype(complex), deriv.astype(complex))


def random_one_form_jet(n: int, seed=None) -> OneFormJet:
    rng = _rng(seed)
    return OneFormJet(rng.normal(size=n).astype(complex), rng.normal(size=(n, n)).astype(complex))


def random_endomorphism(dim: int, seed=None, hermitian: bool = False) -> np.ndarray:
    rng = _rng(seed)
    M = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (M + M.conj().T) / 2 if hermitian else M


def random_perturbation(rep: CliffordRep, seed=None, hermitian: bool = False) -> PerturbationJet:
    rng = _rng(seed)
    d = rep.fiber_dim
    B0 = random_endomorphism(d, rng, hermitian)
    Ba = np.array([random_endomorphism(d, rng, hermitian) for _ in range(rep.n)])
    return PerturbationJet(B0, Ba)


# -- Laplace data -------------------------------------------------------------

def perturb_laplace_data(base: LaplaceJet, B: PerturbationJet, rep: CliffordRep) -> LaplaceJet:
    """Laplace data of ``(D0 + B)^2`` from that of ``D0^2``.

    ``P_ab += i{g^a, B_b}``, ``S_a = i{g^a, B0}``, ``Q += i g^a B_a + B0^2``.
    The reference operator must have ``S = 0``.
    """
    if np.any(base.S):
        raise ValueError("reference Laplace data must have S = 0")
    g = rep.gammas
    gB = np.einsum("aij,bjk->abik", g, B.Ba)
    Bg = np.einsum("bij,ajk->abik", B.Ba, g)
    P = base.P + 1j * (gB + Bg)
    S = 1j * np.array([anticommutator(ga, B.B0) for ga in g])
    Q = base.Q + 1j * np.einsum("aij,ajk->ik", g, B.Ba) + B.B0 @ B.B0
    return LaplaceJet(P, S, Q)


def spin_laplace_jet(geom: GeometryJet, rep: CliffordRep) -> LaplaceJet:
    """Laplace data of the squared torsion-free spin Dirac operator."""
    n, d = rep.n, rep.fiber_dim
    g = rep.gammas
    gg = np.einsum("jpq,kqr->jkpr", g, g)
    P = (2.0 / 3.0) * np.einsum("ab,ij->abij", geom.ricci, np.eye(d))
    P = P + 0.25 * np.einsum("abjk,jkpr->abpr", geom.riemann, gg)
    S = np.zeros((n, d, d), dtype=complex)
    Q = 0.25 * geom.scalar * np.eye(d, dtype=complex)
    return LaplaceJet(P.astype(complex), S, Q)


def hodge_laplace_trace_data(geom: GeometryJet, rep: CliffordRep) -> tuple[float, float]:
    """``(Tr P_aa, Tr Q)`` for the squared Hodge-Dirac operator.

    Only the traces are known in closed form; they are all the scalar
    curvature functional needs.
    """
    n = rep.n
    return 2**n * geom.scalar / 3.0, 2 ** (n - 2) * geom.scalar / 3.0
