"""Explicit matrix representations of Clifford generators.

Two modules are provided for even ``n = 2m``:

* the spin module of dimension ``2**m``, built as a Jordan-Wigner ladder of
  Pauli matrices, with its chirality operator;
* the exterior algebra of dimension ``2**n`` (the Hodge module), with the
  raising/lowering operators ``lambda_plus``/``lambda_minus``, the two
  commuting Clifford families ``gamma`` and ``gamma_tilde`` and the Euler,
  Hodge and composite gradings.

All generators carry the normalization ``{g^a, g^b} = 2 delta_ab``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache, reduce

import numpy as np

from .tensor_core import epsilon_generalized, kronecker_delta2

SPIN = "spin"
HODGE = "hodge"

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class CliffordError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CliffordRep:
    """Clifford module at a point.

    Attributes
    ----------
    n : int
        Even dimension of the manifold.
    kind : str
        ``"spin"`` or ``"hodge"``.
    gammas : ndarray, shape (n, d, d)
        Hermitian generators.
    lambda_plus, lambda_minus, gamma_tilde : ndarray or None
        Hodge-only extras, same shape as ``gammas``.
    basis : tuple of tuple of int
        Hodge-only: ordered multi-indices labelling the form basis.
    """

    n: int
    kind: str
    gammas: np.ndarray
    lambda_plus: np.ndarray | None = None
    lambda_minus: np.ndarray | None = None
    gamma_tilde: np.ndarray | None = None
    basis: tuple = field(default=())

    @property
    def fiber_dim(self) -> int:
        return self.gammas.shape[1]

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.fiber_dim, dtype=complex)

    def slash(self, u) -> np.ndarray:
        """Clifford multiplication ``u_a gamma^a``."""
        return np.einsum("a,aij->ij", np.asarray(u, dtype=complex), self.gammas)


@dataclass(frozen=True, eq=False)
class Grading:
    matrix: np.ndarray
    kind: str  # spin_gamma | euler | hodge | hat


def _check_n(n: int, upper: int) -> None:
    if n % 2 or not 2 <= n <= upper:
        raise CliffordError(f"n must be even with 2 <= n <= {upper}, got {n}")


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def build_spin_gammas(n: int) -> CliffordRep:
    """Spin representation of dimension ``2**(n/2)``.

    Generator ``2j`` (zero-based) is ``Z x ... x Z x X x 1 x ... x 1`` and
    generator ``2j+1`` the same with ``Y``; entries lie in ``{0, +-1, +-i}``.
    """
    _check_n(n, 8)
    m = n // 2
    gammas = []
    for j in range(m):
        for pauli in (_X, _Y):
            factors = [_Z] * j + [pauli] + [_I2] * (m - j - 1)
            gammas.append(reduce(np.kron, factors))
    return CliffordRep(n=n, kind=SPIN, gammas=_readonly(np.array(gammas)))


def ordered_product(mats) -> np.ndarray:
    return reduce(np.matmul, mats)


def chirality_phase(n: int) -> complex:
    """Phase ``c`` in ``gamma = c * gamma^1 ... gamma^n`` for the spin module.

    ``c = -i**m`` makes the chirality hermitian and involutive, gives
    ``Tr(gamma g^1 g^2) = 2i`` for ``n = 2`` and ``Tr(gamma g^1 g^2 g^3 g^4) = +4``
    for ``n = 4``.
    """
    return -(1j ** (n // 2))


@lru_cache(maxsize=None)
def _spin_chirality(n: int) -> np.ndarray:
    rep = build_spin_gammas(n)
    return _readonly(chirality_phase(n) * ordered_product(rep.gammas))


def build_spin_chirality(rep: CliffordRep) -> Grading:
    if rep.kind != SPIN:
        raise CliffordError("chirality is defined here for the spin module only")
    return Grading(_spin_chirality(rep.n), "spin_gamma")


# -- Hodge module ----------------------------------------------------------

def form_basis(n: int) -> tuple[tuple[int, ...], ...]:
    """Multi-indices sorted by degree, then lexicographically."""
    return tuple(c for p in range(n + 1) for c in itertools.combinations(range(n), p))


@lru_cache(maxsize=None)
def build_lambda_ops(n: int) -> CliffordRep:
    """Exterior-algebra module with ``lambda_plus^p = dx^p wedge``.

    Matrix entries are ``(lambda_plus^p)[I, J] = eps^I_{pJ}`` and
    ``(lambda_minus^p)[I, J] = eps^{pI}_J``; ``gamma^p = -i(l+ - l-)`` and
    ``gamma_tilde^p = l+ + l-``.
    """
    _check_n(n, 6)
    basis = form_basis(n)
    index = {I: k for k, I in enumerate(basis)}
    dim = len(basis)
    lp = np.zeros((n, dim, dim), dtype=complex)
    for p in range(n):
        for J in basis:
            if p in J:
                continue
            I = tuple(sorted((p,) + J))
            lp[p, index[I], index[J]] = epsilon_generalized(I, (p,) + J)
    lm = np.transpose(lp, (0, 2, 1)).copy()
    gammas = -1j * (lp - lm)
    gtilde = lp + lm
    return CliffordRep(
        n=n,
        kind=HODGE,
        gammas=_readonly(gammas),
        lambda_plus=_readonly(lp),
        lambda_minus=_readonly(lm),
        gamma_tilde=_readonly(gtilde),
        basis=basis,
    )


def build_rep(kind: str, n: int) -> CliffordRep:
    if kind == SPIN:
        return build_spin_gammas(n)
    if kind == HODGE:
        return build_lambda_ops(n)
    raise CliffordError(f"unknown module kind {kind!r}")


def form_degrees(rep: CliffordRep) -> np.ndarray:
    return np.array([len(I) for I in rep.basis])


def build_hodge_gradings(rep: CliffordRep) -> tuple[Grading, Grading, Grading]:
    """Euler, Hodge and composite gradings ``(chi_e, chi_h, chi_hat)``.

    ``chi_e = g^1..g^n gt^1..gt^n``, ``chi_h = i**m g^1..g^n`` and
    ``chi_hat = chi_h chi_e``.
    """
    if rep.kind != HODGE:
        raise CliffordError("Hodge gradings need the exterior-algebra module")
    chi_e = ordered_product(list(rep.gammas) + list(rep.gamma_tilde))
    chi_h = (1j ** rep.m) * ordered_product(rep.gammas)
    chi_hat = chi_h @ chi_e
    return (
        Grading(_readonly(chi_e), "euler"),
        Grading(_readonly(chi_h), "hodge"),
        Grading(_readonly(chi_hat), "hat"),
    )


def grading(rep: CliffordRep, name: str | None) -> Grading | None:
    """Look up a grading by name: ``gamma`` (spin), ``euler``, ``hodge``, ``hat``."""
    if name in (None, "", "none"):
        return None
    if rep.kind == SPIN:
        if name in ("gamma", "chirality", "spin_gamma"):
            return build_spin_chirality(rep)
        raise CliffordError(f"grading {name!r} is not available on the spin module")
    table = dict(zip(("euler", "hodge", "hat"), build_hodge_gradings(rep)))
    aliases = {"chi_e": "euler", "chi_h": "hodge", "chi_hat": "hat"}
    name = aliases.get(name, name)
    if name not in table:
        raise CliffordError(f"grading {name!r} is not available on the Hodge module")
    return table[name]


def default_grading(rep: CliffordRep) -> Grading:
    return build_spin_chirality(rep) if rep.kind == SPIN else build_hodge_gradings(rep)[1]


def commutant_basis(rep: CliffordRep) -> np.ndarray:
    """Basis of the endomorphisms commuting with every ``gamma^a``.

    Spin: the identity.  Hodge: products of an even number of ``gamma_tilde``
    and products of an odd number of them times ``g^1 ... g^n``; ``2**n``
    matrices in total.
    """
    d = rep.fiber_dim
    if rep.kind == SPIN:
        return np.eye(d, dtype=complex)[None]
    omega = ordered_product(rep.gammas)
    out = []
    for r in range(rep.n + 1):
        for idx in itertools.combinations(range(rep.n), r):
            prod = ordered_product([rep.gamma_tilde[i] for i in idx]) if idx else np.eye(d, dtype=complex)
            out.append(prod if r % 2 == 0 else prod @ omega)
    return np.array(out)


# -- checks ------------------------------------------------------------------

def anticommutator(a, b):
    return a @ b + b @ a


def clifford_residual(gammas: np.ndarray, norm: float = 2.0) -> float:
    """Max entry of ``{g^a, g^b} - norm * delta_ab``."""
    n, d, _ = gammas.shape
    prods = np.einsum("aij,bjk->abik", gammas, gammas)
    anti = prods + np.transpose(prods, (1, 0, 2, 3))
    target = norm * np.einsum("ab,ij->abij", np.eye(n), np.eye(d))
    return float(np.max(np.abs(anti - target)))


def car_residual(rep: CliffordRep) -> float:
    """Max deviation from the canonical anticommutation relations."""
    lp, lm = rep.lambda_plus, rep.lambda_minus
    n, d, _ = lp.shape
    target = np.einsum("ab,ij->abij", np.eye(n), np.eye(d))

    def anti(x, y):
        p = np.einsum("aij,bjk->abik", x, y)
        q = np.einsum("bij,ajk->abik", y, x)
        return p + q

    return float(max(
        np.max(np.abs(anti(lp, lp))),
        np.max(np.abs(anti(lm, lm))),
        np.max(np.abs(anti(lp, lm) - target)),
    ))


def hodge_trace_lemma_rhs(n: int) -> dict[str, np.ndarray]:
    """Closed-form right-hand sides of the six Hodge trace identities.

    Keys name the identity and the sign choice (``upper`` takes the top
    sign of every ``+-``/``-+`` pair).  Index order of each array follows
    the order of free indices in the key.
    """
    d = np.eye(n)
    e2 = kronecker_delta2(n)  # e2[i, j, a, b] = eps^{ij}_{ab}
    dim = 2**n
    out = {}
    for s, tag in ((1, "upper"), (-1, "lower")):
        out[f"g.l[{tag}]:ai"] = s * 1j * dim / 2 * d
        two = np.einsum("ai,kj->ajki", d, d) + np.einsum("aj,ki->ajki", d, d)
        out[f"g.lll[{tag}]:ajki"] = -s * 1j * dim / 4 * two
        three = (
            np.einsum("ai,bc->abci", d, d)
            - np.einsum("bi,ac->abci", d, d)
            + np.einsum("ci,ab->abci", d, d)
        )
        out[f"ggg.l[{tag}]:abci"] = s * 1j * dim / 2 * three
        four = (
            2 * np.einsum("bc,ai,kj->abcjki", d, d, d)
            + 2 * np.einsum("bc,aj,ki->abcjki", d, d, d)
            - 2 * np.einsum("ac,bi,kj->abcjki", d, d, d)
            - 2 * np.einsum("ac,bj,ki->abcjki", d, d, d)
            + 2 * np.einsum("ab,ic,kj->abcjki", d, d, d)
            + 2 * np.einsum("ab,cj,ki->abcjki", d, d, d)
            + np.einsum("ka,jibc->abcjki", d, e2)
            + np.einsum("kb,jica->abcjki", d, e2)
            + np.einsum("kc,jiab->abcjki", d, e2)
        )
        out[f"ggg.lll[{tag}]:abcjki"] = s * 1j * dim / 8 * four
        out[f"gg.ll[{tag}]:abji"] = -dim / 4 * np.einsum("ijab->abji", e2)
        six = (
            np.einsum("ab,jicd->abcdji", d, e2)
            + np.einsum("ac,jidb->abcdji", d, e2)
            + np.einsum("ad,jibc->abcdji", d, e2)
            + np.einsum("bc,jiad->abcdji", d, e2)
            + np.einsum("bd,jica->abcdji", d, e2)
            + np.einsum("cd,jiab->abcdji", d, e2)
        )
        out[f"gggg.ll[{tag}]:abcdji"] = dim / 4 * six
    return out


def _traces(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """``Tr(L_x R_y)`` for stacks ``L`` (..., d, d) and ``R`` (..., d, d)."""
    ls, rs = left.shape[:-2], right.shape[:-2]
    d = left.shape[-1]
    t = np.einsum("xpq,yqp->xy", left.reshape(-1, d, d), right.reshape(-1, d, d))
    return t.reshape(ls + rs)


def hodge_trace_lemma_lhs(rep: CliffordRep) -> dict[str, np.ndarray]:
    """Brute-force matrix traces matching :func:`hodge_trace_lemma_rhs`."""
    if rep.kind != HODGE:
        raise CliffordError("trace lemma applies to the Hodge module")
    g, lp, lm = rep.gammas, rep.lambda_plus, rep.lambda_minus
    gg = np.einsum("aij,bjk->abik", g, g)
    ggg = np.einsum("abij,cjk->abcik", gg, g)
    gggg = np.einsum("abcij,djk->abcdik", ggg, g)
    out = {}
    for tag, lam, bar in (("upper", lp, lm), ("lower", lm, lp)):
        out[f"g.l[{tag}]:ai"] = _traces(g, lam)
        out[f"g.lll[{tag}]:ajki"] = _traces(g, np.einsum("jpq,kqr,irs->jkips", bar, lam, bar, optimize=True))
        out[f"ggg.l[{tag}]:abci"] = _traces(ggg, lam)
        out[f"ggg.lll[{tag}]:abcjki"] = _traces(ggg, np.einsum("jpq,kqr,irs->jkips", lam, bar, lam, optimize=True))
        # identity five carries lambda with the opposite sign label
        out[f"gg.ll[{tag}]:abji"] = _traces(gg, np.einsum("jpq,iqr->jipr", bar, bar))
        out[f"gggg.ll[{tag}]:abcdji"] = _traces(gggg, np.einsum("jpq,iqr->jipr", lam, lam))
    return out


def verify_trace_lemma_hodge(rep: CliffordRep) -> dict:
    """Compare all six identities over full index sweeps.

    Returns a report with per-identity max absolute residual and the
    overall maximum under ``"max_residual"``.  Residuals are reported, not
    raised.
    """
    lhs = hodge_trace_lemma_lhs(rep)
    rhs = hodge_trace_lemma_rhs(rep.n)
    per = {k: float(np.max(np.abs(lhs[k] - rhs[k]))) for k in lhs}
    return {"n": rep.n, "residuals": per, "max_residual": max(per.values())}
