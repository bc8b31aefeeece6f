"""Matrix-valued pseudodifferential symbols in normal coordinates.

A symbol is a finite sum of terms

    C * x^alpha * xi^beta * |xi|^(-2k)

with ``C`` a fiber matrix, ``alpha`` and ``beta`` multi-indices and ``k`` an
integer.  The quantization is ``sigma(d_a) = i xi_a``, so the flat Dirac
symbol is ``-gamma^a xi_a``.

Truncation is tracked by *weight*, the xi-homogeneity minus the x-degree.
Both derivatives in the composition formula preserve weight, so weights
add under composition and a symbol that is exact for weights ``>= floor``
composes predictably.  Every symbol carries ``top`` (largest weight
present) and ``floor`` (smallest weight that is still exact);
:func:`compose` refuses to produce terms below what its inputs resolve.

Terms are kept in a canonical form modulo ``|xi|^2 = sum xi_a^2``: the
exponent of ``xi_1`` is reduced to 0 or 1.  With this normal form a symbol
that vanishes as a function has no terms (up to rounding).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .clifford import CliffordRep
from .jets import GeometryJet, LaplaceJet, OneFormJet, PerturbationJet
from .tensor_core import sphere_monomial_integral

EXACT = -(10**6)  # floor of a symbol with no truncation error
MAX_PARAMETRIX_STEPS = 24
PRUNE_TOL = 1e-14


class SymbolError(ValueError):
    pass


class TruncationError(SymbolError):
    pass


Key = tuple  # (alpha, beta, k)


def _weight(key: Key) -> int:
    alpha, beta, k = key
    return sum(beta) - 2 * k - sum(alpha)


def _unit(n: int, j: int, times: int = 1) -> tuple:
    return tuple(times if i == j else 0 for i in range(n))


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _accumulate(terms: dict, key: Key, coef) -> None:
    if key in terms:
        terms[key] = terms[key] + coef
    else:
        terms[key] = coef


def _canonical(terms: dict, n: int) -> dict:
    """Reduce ``xi_1^2`` to ``|xi|^2 - xi_2^2 - ... - xi_n^2`` until every
    exponent of ``xi_1`` is 0 or 1, then drop negligible coefficients."""
    out: dict = {}
    work = list(terms.items())
    while work:
        (alpha, beta, k), coef = work.pop()
        if beta[0] < 2:
            _accumulate(out, (alpha, beta, k), coef)
            continue
        low = (beta[0] - 2,) + beta[1:]
        work.append(((alpha, low, k - 1), coef))
        for a in range(1, n):
            work.append(((alpha, _add(low, _unit(n, a, 2)), k), -coef))
    return _prune(out)


def _prune(terms: dict) -> dict:
    if not terms:
        return terms
    scale = max(float(np.max(np.abs(c))) for c in terms.values())
    cut = PRUNE_TOL * max(1.0, scale)
    return {key: c for key, c in terms.items() if np.max(np.abs(c)) > cut}


@dataclass(frozen=True, eq=False)
class SymbolPoly:
    """Finite sum of matrix-valued symbol terms with a weight window.

    Attributes
    ----------
    n : int
        Base dimension.
    dim : int
        Fiber dimension.
    terms : dict
        ``(alpha, beta, k) -> (dim, dim) complex array``.
    top : int
        Largest weight the symbol carries.
    floor : int
        Smallest weight computed exactly; terms below it are absent by
        construction and must not be trusted.
    """

    n: int
    dim: int
    terms: dict = field(default_factory=dict)
    top: int = 0
    floor: int = EXACT

    @property
    def fiber_dim(self) -> int:
        return self.dim

    # -- arithmetic -----------------------------------------------------------

    def _check_compatible(self, other: "SymbolPoly") -> None:
        if (self.n, self.dim) != (other.n, other.dim):
            raise SymbolError(
                f"incompatible symbols: (n, dim) = {(self.n, self.dim)} vs {(other.n, other.dim)}"
            )

    def __add__(self, other: "SymbolPoly") -> "SymbolPoly":
        self._check_compatible(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(terms, key, c)
        return SymbolPoly(
            self.n, self.dim, _prune(terms), max(self.top, other.top), max(self.floor, other.floor)
        )

    def __neg__(self) -> "SymbolPoly":
        return self.scale(-1.0)

    def __sub__(self, other: "SymbolPoly") -> "SymbolPoly":
        return self + (-other)

    def scale(self, c: complex) -> "SymbolPoly":
        return SymbolPoly(self.n, self.dim, {k: c * v for k, v in self.terms.items()}, self.top, self.floor)

    def left_multiply(self, M) -> "SymbolPoly":
        """Multiply every coefficient on the left by a constant matrix."""
        M = np.asarray(M, dtype=complex)
        return SymbolPoly(self.n, self.dim, _prune({k: M @ v for k, v in self.terms.items()}), self.top, self.floor)

    def truncate(self, floor: int) -> "SymbolPoly":
        """Drop every term of weight below ``floor``."""
        floor = max(floor, self.floor)
        terms = {k: v for k, v in self.terms.items() if _weight(k) >= floor}
        return SymbolPoly(self.n, self.dim, terms, self.top, floor)

    # -- inspection ------------------------------------------------------------

    def weights(self) -> list[int]:
        return sorted({_weight(k) for k in self.terms}, reverse=True)

    def max_xdeg(self) -> int:
        return max((sum(k[0]) for k in self.terms), default=0)

    def part(self, homogeneity: int | None = None, xdeg: int | None = None) -> "SymbolPoly":
        """Terms with the given xi-homogeneity and/or total x-degree."""
        keep = {}
        for key, c in self.terms.items():
            alpha, beta, k = key
            if homogeneity is not None and sum(beta) - 2 * k != homogeneity:
                continue
            if xdeg is not None and sum(alpha) != xdeg:
                continue
            keep[key] = c
        return SymbolPoly(self.n, self.dim, keep, self.top, self.floor)

    def at_origin(self) -> "SymbolPoly":
        return self.part(xdeg=0)

    def evaluate(self, xi, x=None) -> np.ndarray:
        """Matrix value at ``(x, xi)``; ``x`` defaults to the origin."""
        xi = np.asarray(xi, dtype=float)
        x = np.zeros(self.n) if x is None else np.asarray(x, dtype=float)
        norm2 = float(xi @ xi)
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for (alpha, beta, k), c in self.terms.items():
            out += c * (np.prod(x**np.array(alpha)) * np.prod(xi**np.array(beta)) * norm2 ** (-k))
        return out

    def to_json(self) -> dict:
        """Debug dump; coefficients as nested ``[re, im]`` pairs."""
        rows = []
        for (alpha, beta, k), c in sorted(self.terms.items(), key=lambda kv: (-_weight(kv[0]), kv[0])):
            rows.append(
                {
                    "x": list(alpha),
                    "xi": list(beta),
                    "norm_power": -2 * k,
                    "weight": _weight((alpha, beta, k)),
                    "coef": [[[float(z.real), float(z.imag)] for z in row] for row in c],
                }
            )
        return {"n": self.n, "fiber_dim": self.dim, "top": self.top, "floor": self.floor, "terms": rows}


# -- derivatives ------------------------------------------------------------------

def _d_xi(terms: dict, j: int, n: int) -> dict:
    """``d/dxi_j`` using ``d_j(xi^b |xi|^-2k) = b_j xi^(b-e_j)|xi|^-2k - 2k xi^(b+e_j)|xi|^(-2k-2)``."""
    out: dict = {}
    e = _unit(n, j)
    for (alpha, beta, k), c in terms.items():
        if beta[j]:
            lower = tuple(b - d for b, d in zip(beta, e))
            _accumulate(out, (alpha, lower, k), beta[j] * c)
        if k:
            _accumulate(out, (alpha, _add(beta, e), k + 1), (-2 * k) * c)
    return out


def _d_x(terms: dict, j: int, n: int) -> dict:
    out: dict = {}
    for (alpha, beta, k), c in terms.items():
        if alpha[j]:
            lower = tuple(a - (i == j) for i, a in enumerate(alpha))
            _accumulate(out, (lower, beta, k), alpha[j] * c)
    return out


def _multi_indices(n: int, order: int):
    for combo in itertools.combinations_with_replacement(range(n), order):
        alpha = [0] * n
        for j in combo:
            alpha[j] += 1
        yield tuple(alpha)


# -- composition -------------------------------------------------------------------

def composition_floor(a: SymbolPoly, b: SymbolPoly) -> int:
    """Smallest weight at which ``a o b`` is exact given the inputs' windows."""
    if not a.terms or not b.terms:
        return max(a.floor, b.floor)
    return max(a.floor + b.top, a.top + b.floor, EXACT)


def compose(a: SymbolPoly, b: SymbolPoly, drop_below: int | None = None, max_xdeg: int | None = None) -> SymbolPoly:
    """Symbol of the operator product ``AB``.

    ``sigma(AB) = sum_alpha (1/alpha!) d_xi^alpha sigma(A) (-i)^|alpha| d_x^alpha sigma(B)``.

    Parameters
    ----------
    a, b : SymbolPoly
    drop_below : int, optional
        Weight floor for the result (equal to the xi-homogeneity for terms
        at the origin).  Defaults to the best floor the inputs support.
    max_xdeg : int, optional
        Discard result terms of higher x-degree (they do not affect lower
        x-degree terms of later products on the right of this one).

    Raises
    ------
    SymbolError
        On incompatible shapes.
    TruncationError
        If ``drop_below`` lies below what the inputs resolve.
    """
    a._check_compatible(b)
    n = a.n
    floor = composition_floor(a, b)
    if drop_below is not None:
        if drop_below < floor:
            raise TruncationError(f"requested weight {drop_below} but inputs only resolve down to {floor}")
        floor = drop_below
    top = a.top + b.top
    out: dict = {}
    max_order = b.max_xdeg()
    da = {(0,) * n: a.terms}
    for order in range(max_order + 1):
        if order:
            # extend derivatives of a by one more xi direction
            nxt = {}
            for alpha in _multi_indices(n, order):
                j = next(i for i, v in enumerate(alpha) if v)
                prev = tuple(v - (i == j) for i, v in enumerate(alpha))
                nxt[alpha] = _d_xi(da[prev], j, n)
            da = nxt
        for alpha, dterms in da.items():
            if not dterms:
                continue
            db = b.terms
            for j, cnt in enumerate(alpha):
                for _ in range(cnt):
                    db = _d_x(db, j, n)
            if not db:
                continue
            factor = (-1j) ** order / math.prod(math.factorial(v) for v in alpha)
            for ka, ca in dterms.items():
                wa = _weight(ka)
                for kb, cb in db.items():
                    if wa + _weight(kb) < floor:
                        continue
                    xa = _add(ka[0], kb[0])
                    if max_xdeg is not None and sum(xa) > max_xdeg:
                        continue
                    key = (xa, _add(ka[1], kb[1]), ka[2] + kb[2])
                    _accumulate(out, key, factor * (ca @ cb))
    return SymbolPoly(n, a.dim, _canonical(out, n), top, floor)


def mul(a: SymbolPoly, b: SymbolPoly) -> SymbolPoly:
    """Pointwise product of symbols (no derivative corrections)."""
    a._check_compatible(b)
    out: dict = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            _accumulate(out, (_add(ka[0], kb[0]), _add(ka[1], kb[1]), ka[2] + kb[2]), ca @ cb)
    return SymbolPoly(a.n, a.dim, _canonical(out, a.n), a.top + b.top, composition_floor(a, b))


# -- constructors --------------------------------------------------------------------

def _zero_key(n: int) -> tuple:
    return (0,) * n


def identity_symbol(n: int, dim: int) -> SymbolPoly:
    return SymbolPoly(n, dim, {(_zero_key(n), _zero_key(n), 0): np.eye(dim, dtype=complex)}, 0, EXACT)


def endomorphism_symbol(E, n: int, E_deriv=None, floor: int | None = None) -> SymbolPoly:
    """``E + E_deriv[a] x^a``.

    A constant endomorphism is exact.  With ``E_deriv`` the symbol is a
    first-order jet and is exact for weights ``>= -1``.
    """
    E = np.asarray(E, dtype=complex)
    z = _zero_key(n)
    terms = {(z, z, 0): E}
    if E_deriv is not None:
        for a in range(n):
            terms[(_unit(n, a), z, 0)] = np.asarray(E_deriv[a], dtype=complex)
        default_floor = -1
    else:
        default_floor = EXACT
    return SymbolPoly(n, E.shape[0], _prune(terms), 0, default_floor if floor is None else floor)


def clifford_one_form_symbol(w: OneFormJet, rep: CliffordRep, exact: bool = False) -> SymbolPoly:
    """``w_b(x) gamma^b`` with ``w_b(x) = w_b + w_bc x^c``.

    By default only the jet is trusted (weights >= -1); ``exact`` declares the
    affine extension to be the actual one-form.
    """
    g = rep.gammas
    value = np.einsum("b,bij->ij", w.value, g)
    deriv = np.einsum("bc,bij->cij", w.deriv, g)
    return endomorphism_symbol(value, rep.n, deriv, floor=EXACT if exact else None)


def dirac_symbol(
    rep: CliffordRep,
    B: PerturbationJet | None = None,
    geom: GeometryJet | None = None,
    exact: bool = False,
) -> SymbolPoly:
    """Symbol of ``D = D0 + B`` to the jet order of its data (weights >= -1).

    ``D0`` is the flat Dirac symbol ``-gamma^a xi_a``.  With ``geom`` the
    normal-coordinate spin Dirac operator is used instead:
    ``i gamma^a (d_a - R_abcd x^b x^c d_d / 6 - Ric_ab x^b / 4)``.

    With ``exact`` the polynomial data are taken as the operator itself
    (``B`` exactly affine), which is one admissible extension of the jet.
    """
    n, d = rep.n, rep.fiber_dim
    g = rep.gammas
    z = _zero_key(n)
    terms: dict = {}
    for a in range(n):
        terms[(z, _unit(n, a), 0)] = -g[a]
    if geom is not None and np.any(geom.riemann):
        if rep.kind != "spin":
            raise SymbolError("curved Dirac symbols are available for the spin module only")
        # (1/6) gamma^a R_abcd x^b x^c xi_d
        for b, c, dd in itertools.product(range(n), repeat=3):
            coef = np.einsum("a,aij->ij", geom.riemann[:, b, c, dd], g) / 6.0
            if np.any(coef):
                _accumulate(terms, (_add(_unit(n, b), _unit(n, c)), _unit(n, dd), 0), coef.astype(complex))
        # -(i/4) gamma^a Ric_ab x^b
        for b in range(n):
            coef = -0.25j * np.einsum("a,aij->ij", geom.ricci[:, b], g)
            if np.any(coef):
                _accumulate(terms, (_unit(n, b), z, 0), coef)
    if B is not None:
        _accumulate(terms, (z, z, 0), np.asarray(B.B0, dtype=complex))
        for a in range(n):
            _accumulate(terms, (_unit(n, a), z, 0), np.asarray(B.Ba[a], dtype=complex))
    return SymbolPoly(n, d, _canonical(terms, n), 1, EXACT if exact else -1)


def laplace_symbol(lj: LaplaceJet, geom: GeometryJet) -> SymbolPoly:
    """``(delta_ab + R_acbd x^c x^d / 3) xi_a xi_b + i(P_ab x^b + S_a) xi_a + Q``; weights >= 0."""
    n, d = lj.n, lj.fiber_dim
    eye = np.eye(d, dtype=complex)
    z = _zero_key(n)
    terms: dict = {}
    for a in range(n):
        _accumulate(terms, (z, _unit(n, a, 2), 0), eye)
    for a, b, c, e in itertools.product(range(n), repeat=4):
        r = geom.riemann[a, c, b, e] / 3.0
        if r:
            _accumulate(terms, (_add(_unit(n, c), _unit(n, e)), _add(_unit(n, a), _unit(n, b)), 0), r * eye)
    for a in range(n):
        _accumulate(terms, (z, _unit(n, a), 0), 1j * lj.S[a])
        for b in range(n):
            _accumulate(terms, (_unit(n, b), _unit(n, a), 0), 1j * lj.P[a, b])
    _accumulate(terms, (z, z, 0), lj.Q)
    return SymbolPoly(n, d, _canonical(terms, n), 2, 0)


def second_order_symbol(F, G, H, exact: bool = True) -> SymbolPoly:
    """``F^{ab} xi_a xi_b + i G^a xi_a + H`` with x-constant coefficients."""
    F = np.asarray(F, dtype=complex)
    G = np.asarray(G, dtype=complex)
    H = np.asarray(H, dtype=complex)
    n, d = G.shape[0], H.shape[0]
    z = _zero_key(n)
    terms: dict = {}
    for a, b in itertools.product(range(n), repeat=2):
        _accumulate(terms, (z, _add(_unit(n, a), _unit(n, b)), 0), F[a, b])
    for a in range(n):
        _accumulate(terms, (z, _unit(n, a), 0), 1j * G[a])
    _accumulate(terms, (z, z, 0), H)
    return SymbolPoly(n, d, _canonical(terms, n), 2, EXACT if exact else 0)


# -- parametrix ------------------------------------------------------------------------

def _norm_power_symbol(n: int, dim: int, k: int, floor: int) -> SymbolPoly:
    z = _zero_key(n)
    return SymbolPoly(n, dim, {(z, z, k): np.eye(dim, dtype=complex)}, -2 * k, floor)


def principal_is_laplacian(sym: SymbolPoly, tol: float = 1e-12) -> bool:
    """Whether the top-weight part is ``|xi|^2 Id`` (x-independent)."""
    top = {k: c for k, c in sym.terms.items() if _weight(k) == sym.top}
    if sym.top != 2 or not top:
        return False
    target = _canonical({(_zero_key(sym.n), _zero_key(sym.n), -1): np.eye(sym.dim, dtype=complex)}, sym.n)
    keys = set(top) | set(target)
    return all(
        np.max(np.abs(top.get(k, 0) - target.get(k, 0))) <= tol for k in keys
    )


def parametrix(L: SymbolPoly, depth: int | None = None) -> SymbolPoly:
    """Right parametrix ``b`` with ``L o b = Id`` on the weights ``L`` resolves.

    Starting from ``|xi|^-2 Id`` the correction ``b <- b - |xi|^-2 (L o b - Id)``
    is applied until the residual vanishes in the window.  The operator
    ``r -> L o (|xi|^-2 r) - r`` lowers either the weight or the x-degree,
    so the loop terminates.

    ``depth`` counts weights below the top that are made exact; it
    defaults to what ``L`` resolves, capped at 2 (all a residue density of a
    second-order operator needs).

    Raises
    ------
    SymbolError
        If the principal part is not ``|xi|^2 Id``.
    TruncationError
        If ``depth`` exceeds what ``L`` resolves.
    """
    if not principal_is_laplacian(L):
        raise SymbolError("principal symbol must be |xi|^2 Id (elliptic Laplace type)")
    resolved = L.top - L.floor
    if depth is None:
        depth = min(resolved, 2)
    elif depth > resolved:
        raise TruncationError(f"depth {depth} exceeds the {resolved} weights resolved by the input")
    floor = -2 - depth
    n, d = L.n, L.dim
    inv_principal = _norm_power_symbol(n, d, 1, EXACT)
    b = _norm_power_symbol(n, d, 1, floor)
    ident = identity_symbol(n, d)
    for _ in range(MAX_PARAMETRIX_STEPS):
        r = compose(L, b) - ident
        if not r.terms:
            return b
        b = (b - mul(inv_principal, r).truncate(floor))
        b = SymbolPoly(n, d, b.terms, -2, floor)
    raise SymbolError("parametrix iteration did not converge")


def parametrix_inverse_square(d_symbol: SymbolPoly) -> SymbolPoly:
    """Symbol of ``D^-2`` from the symbol of ``D``: weights -2, -3 and -4."""
    return parametrix(compose(d_symbol, d_symbol), depth=2)


def power_symbol(b: SymbolPoly, k: int) -> SymbolPoly:
    """``b o b o ... o b`` (``k`` factors), truncated to the common window.

    Raises
    ------
    ValueError
        For ``k < 1``.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    out = b
    for _ in range(k - 1):
        out = compose(out, b)
    return out


# -- residue -----------------------------------------------------------------------------

def cosphere_trace_integral(sym: SymbolPoly, homogeneity: int) -> complex:
    """``int_{|xi|=1} Tr`` of the x-independent part of the given homogeneity."""
    total = 0.0 + 0.0j
    for (alpha, beta, k), c in sym.terms.items():
        if sum(alpha) or sum(beta) - 2 * k != homogeneity:
            continue
        integral = sphere_monomial_integral(beta, sym.n, max_degree=sum(beta))
        if integral:
            total += np.trace(c) * integral
    return complex(total)


def raw_wres(op: SymbolPoly, inv: SymbolPoly, n: int | None = None) -> complex:
    """Residue density of ``op o inv`` at the origin.

    Composes the symbols keeping only x-independent terms, extracts the
    part of homogeneity ``-n`` and integrates its trace over the unit
    cosphere.

    Raises
    ------
    TruncationError
        If the inputs do not resolve homogeneity ``-n``.
    """
    n = op.n if n is None else n
    if composition_floor(op, inv) > -n:
        raise TruncationError(
            f"homogeneity {-n} not resolved (inputs reach {composition_floor(op, inv)})"
        )
    prod = compose(op, inv, drop_below=-n, max_xdeg=0)
    return cosphere_trace_integral(prod, -n)
