"""Seeded verification groups driving every identity and two-path check.

Each group returns a list of :class:`Check` records.  A check passes when its
residual is at most its tolerance; residual definitions are given per group.
The same groups back the ``verify`` command and the acceptance tests.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

import numpy as np

from . import functionals as fn
from .clifford import (
    HODGE,
    SPIN,
    build_hodge_gradings,
    build_rep,
    build_spin_chirality,
    car_residual,
    clifford_residual,
    commutant_basis,
    verify_trace_lemma_hodge,
)
from .jets import (
    GeometryJet,
    LaplaceJet,
    PerturbationJet,
    TorsionJet,
    hodge_laplace_trace_data,
    perturb_laplace_data,
    random_endomorphism,
    random_geometry_jet,
    random_one_form_jet,
    random_perturbation,
    random_torsion_jet,
    spin_laplace_jet,
)
from .operators import (
    clifford_fluctuation,
    grading_compatibility,
    hodge_torsion_B,
    hodge_trace_identities,
    spin_torsion_B,
    spin_trace_identities,
)
from .oracles import ResidueOracle, einstein_delta_raw, inverse_power_delta_residual
from .symbols import compose, dirac_symbol, endomorphism_symbol, parametrix, raw_wres, second_order_symbol
from .tensor_core import max_abs, residual, sphere_volume
from .wres import OperatorData, clifford_contraction, wres_density_ED, wres_density_general

DEFAULT_TOL = 1e-9
IDENTITY_TOL = 1e-12
PARAMETRIX_TOL = 1e-10


@dataclass(frozen=True)
class Check:
    group: str
    name: str
    residual: float
    tolerance: float
    samples: int = 1
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tolerance)

    def to_json(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


@dataclass
class SuiteConfig:
    """Sweep parameters; ``count`` is the number of random draws per cell."""

    ns: tuple = (2, 4, 6)
    count: int = 50
    seed: int = 0
    tolerance: float = DEFAULT_TOL
    options: dict = field(default_factory=dict)

    def rng(self, *salt) -> np.random.Generator:
        return np.random.default_rng([self.seed, *[_salt(s) for s in salt]])


def _salt(s) -> int:
    if isinstance(s, int):
        return s
    return sum((i + 1) * ord(c) for i, c in enumerate(str(s)))


def rel(a, b) -> float:
    """Max-norm difference over the larger operand, with unit floor."""
    return residual(a, b) / max(1.0, max_abs(a, b))


def _seed(rng) -> int:
    return int(rng.integers(2**31))


def _torsion(kind: str, n: int, rng, symmetry: str | None = None) -> TorsionJet:
    sym = symmetry or ("antisymmetric" if kind == SPIN else "torsion")
    return random_torsion_jet(n, _seed(rng), symmetry=sym)


def remove_vector_part(T: np.ndarray) -> np.ndarray:
    """Subtract the pure-trace part so that ``T_ijj = 0``, keeping ``T_ijk = -T_jik``."""
    n = T.shape[0]
    A = np.einsum("ijj->i", T) / (1 - n)
    e = np.eye(n)
    return T - (np.einsum("ik,j->ijk", e, A) - np.einsum("jk,i->ijk", e, A))


def anticommuting_part(B: PerturbationJet, chi) -> PerturbationJet:
    X = chi.matrix
    return PerturbationJet((B.B0 - X @ B.B0 @ X) / 2, np.array([(b - X @ b @ X) / 2 for b in B.Ba]))


# -- groups -----------------------------------------------------------------------------

def group_clifford(cfg: SuiteConfig) -> list[Check]:
    """Clifford and CAR relations; exact (residual 0)."""
    out = []
    for n in (2, 4, 6, 8):
        rep = build_rep(SPIN, n)
        out.append(Check("clifford", f"spin n={n} clifford", clifford_residual(rep.gammas), 0.0))
        chi = build_spin_chirality(rep).matrix
        inv = max(residual(chi @ chi, rep.identity), residual(chi, chi.conj().T))
        anti = max(residual(chi @ g, -g @ chi) for g in rep.gammas)
        out.append(Check("clifford", f"spin n={n} chirality", max(inv, anti), 0.0))
    for n in (2, 4, 6):
        rep = build_rep(HODGE, n)
        out.append(Check("clifford", f"hodge n={n} clifford", clifford_residual(rep.gammas), 0.0))
        out.append(Check("clifford", f"hodge n={n} tilde clifford", clifford_residual(rep.gamma_tilde), 0.0))
        out.append(Check("clifford", f"hodge n={n} car", car_residual(rep), 0.0))
        mixed = max_abs(np.einsum("aij,bjk->abik", rep.gammas, rep.gamma_tilde) + np.einsum("bij,ajk->abik", rep.gamma_tilde, rep.gammas))
        out.append(Check("clifford", f"hodge n={n} tilde anticommutes", mixed, 0.0))
    return out


def group_trace_lemmas(cfg: SuiteConfig) -> list[Check]:
    """Six gamma/lambda trace identities and the seven torsion-term identities.

    Residual: max-norm difference over ``max(1, |rhs|)`` across full index
    sweeps.
    """
    out = []
    for n in cfg.ns:
        rep = build_rep(HODGE, n)
        rep_ = verify_trace_lemma_hodge(rep)
        out.append(Check("trace-lemmas", f"hodge n={n} lambda traces", rep_["max_residual"], IDENTITY_TOL, 1))
        rng = cfg.rng("trb", n)
        worst: dict = {}
        draws = max(1, min(cfg.count, 10))
        for _ in range(draws):
            T = _torsion(HODGE, n, rng).value
            for name, (lhs, rhs) in hodge_trace_identities(T, rep).items():
                worst[name] = max(worst.get(name, 0.0), rel(lhs, rhs))
        for name, r in worst.items():
            out.append(Check("trace-lemmas", f"hodge n={n} Tr[{name}]", r, IDENTITY_TOL, draws))
    return out


def group_spin_traces(cfg: SuiteConfig) -> list[Check]:
    """Spin torsion-term identities for ``count`` random antisymmetric ``T``."""
    out = []
    for n in cfg.ns:
        rep = build_rep(SPIN, n)
        rng = cfg.rng("spin-traces", n)
        worst: dict = {}
        for _ in range(cfg.count):
            T = _torsion(SPIN, n, rng).value
            for name, (lhs, rhs) in spin_trace_identities(T, rep).items():
                worst[name] = max(worst.get(name, 0.0), rel(lhs, rhs))
        for name, r in worst.items():
            out.append(Check("spin-traces", f"spin n={n} {name}", r, IDENTITY_TOL, cfg.count))
    return out


def _ed_scale(E, B0, rep) -> float:
    """Cauchy-Schwarz bound of the trace in the ED density."""
    inner = 2 * B0 - clifford_contraction(B0, rep)
    bound = np.linalg.norm(E) * (2 * np.linalg.norm(B0) + np.linalg.norm(inner))
    return sphere_volume(rep.n) / 2 * max(bound, 1e-300)


def group_vanishing(cfg: SuiteConfig) -> list[Check]:
    """Spectral closedness for one-form-type ``B`` and ``E``.

    Residual: ``|density|`` over the Cauchy-Schwarz bound of its trace;
    the absolute maximum is given in ``detail``.
    """
    out = []
    for n in cfg.ns:
        for kind in (SPIN, HODGE):
            rep = build_rep(kind, n)
            d = rep.fiber_dim
            rng = cfg.rng("vanishing", kind, n)
            basis = commutant_basis(rep)
            cases = {"scalar B": [], "scalar E": []}
            if kind == HODGE:
                cases.update({"commutant B": [], "commutant E": []})
            for _ in range(cfg.count):
                E = random_endomorphism(d, rng)
                B0 = random_endomorphism(d, rng)
                b = rng.normal(size=n)
                cases["scalar B"].append((E, rep.slash(b)))
                cases["scalar E"].append((rep.slash(b), B0))
                if kind == HODGE:
                    pick = rng.choice(len(basis), size=(n, 3))
                    coeffs = rng.normal(size=(n, 3)) + 1j * rng.normal(size=(n, 3))
                    e = np.array([sum(c * basis[p] for c, p in zip(coeffs[a], pick[a])) for a in range(n)])
                    one_form = np.einsum("aij,ajk->ik", e, rep.gammas)
                    cases["commutant B"].append((E, one_form))
                    cases["commutant E"].append((one_form, B0))
            for name, pairs in cases.items():
                norm = max(abs(wres_density_ED(E, B0, rep)) / _ed_scale(E, B0, rep) for E, B0 in pairs)
                absolute = max(abs(wres_density_ED(E, B0, rep)) for E, B0 in pairs)
                out.append(Check("vanishing", f"{kind} n={n} {name}", norm, IDENTITY_TOL, len(pairs), f"max |density| = {absolute:.3e}"))
    return out


def group_parametrix(cfg: SuiteConfig) -> list[Check]:
    """Inverse-power deltas of ``D^-2k`` against the printed expansion, ``k = 1, 2``.

    Also checks ``L o b - Id`` vanishes through the resolved window.
    """
    out = []
    for n in [n for n in cfg.ns if n in (2, 4)]:
        for kind in (SPIN, HODGE):
            rep = build_rep(kind, n)
            rng = cfg.rng("parametrix", kind, n)
            draws = max(1, min(cfg.count, 5))
            worst = {1: 0.0, 2: 0.0}
            res_inv = 0.0
            for _ in range(draws):
                B = random_perturbation(rep, _seed(rng))
                for k in (1, 2):
                    worst[k] = max(worst[k], inverse_power_delta_residual(B, rep, k, seed=_seed(rng)))
                D = dirac_symbol(rep, B, exact=True)
                L = compose(D, D)
                b = parametrix(L, depth=2)
                prod = compose(L, b, drop_below=-2)
                diff = prod - endomorphism_symbol(rep.identity, n)
                xi = rng.normal(size=n)
                xi /= np.linalg.norm(xi)
                for h in (0, -1, -2):
                    res_inv = max(res_inv, max_abs(diff.part(homogeneity=h, xdeg=0).evaluate(xi)))
            for k in (1, 2):
                out.append(Check("parametrix", f"{kind} n={n} D^-{2 * k} deltas", worst[k], PARAMETRIX_TOL, draws))
            out.append(Check("parametrix", f"{kind} n={n} L b - Id", res_inv, PARAMETRIX_TOL, draws))
    return out


def group_raw_oracle(cfg: SuiteConfig) -> list[Check]:
    """Closed-form residue densities against the brute-force symbol oracle.

    Flat background with random ``B`` for x-constant operators, plus the
    x-dependent Einstein operator and curved spin backgrounds.
    """
    out = []
    tol = cfg.tolerance
    for n in [n for n in cfg.ns if n in (2, 4)]:
        for kind in (SPIN, HODGE):
            rep = build_rep(kind, n)
            d = rep.fiber_dim
            rng = cfg.rng("raw", kind, n)
            draws = max(1, min(cfg.count, 5))
            r_ed = r_gen = r_ein = 0.0
            for _ in range(draws):
                B = random_perturbation(rep, _seed(rng))
                o = ResidueOracle(rep, B)
                E = random_endomorphism(d, rng)
                r_ed = max(r_ed, rel(wres_density_ED(E, B.B0, rep), o.endo_dirac(E)))
                F = np.array([[random_endomorphism(d, rng) for _ in range(n)] for _ in range(n)])
                od = OperatorData.symmetrized(F, np.array([random_endomorphism(d, rng) for _ in range(n)]), random_endomorphism(d, rng))
                lj = perturb_laplace_data(LaplaceJet.zero(n, d), B, rep)
                engine = wres_density_general(od, lj, GeometryJet.flat(n))
                raw = raw_wres(second_order_symbol(od.F, od.G, od.H), o.inverse_power(n // 2), n)
                r_gen = max(r_gen, rel(engine, raw))
                u = rng.normal(size=n)
                w = random_one_form_jet(n, _seed(rng))
                r_ein = max(r_ein, rel(fn.einstein_delta_general(u, w, B, rep).value, einstein_delta_raw(u, w, B, rep)))
            out.append(Check("raw-oracle", f"{kind} n={n} E D density", r_ed, tol, draws))
            out.append(Check("raw-oracle", f"{kind} n={n} second-order density", r_gen, tol, draws))
            out.append(Check("raw-oracle", f"{kind} n={n} Einstein delta (x-dependent)", r_ein, tol, draws))
        rep = build_rep(SPIN, n)
        rng = cfg.rng("raw-curved", n)
        geom = random_geometry_jet(n, _seed(rng))
        lj = spin_laplace_jet(geom, rep)
        d = rep.fiber_dim
        F = np.array([[random_endomorphism(d, rng) for _ in range(n)] for _ in range(n)])
        od = OperatorData.symmetrized(F, np.array([random_endomorphism(d, rng) for _ in range(n)]), random_endomorphism(d, rng))
        o = ResidueOracle(rep, None, geom)
        raw = raw_wres(second_order_symbol(od.F, od.G, od.H), o.inverse_power(n // 2), n)
        out.append(Check("raw-oracle", f"spin n={n} curved second-order density", rel(wres_density_general(od, lj, geom), raw), tol))
        if n > 2:
            out.append(Check("raw-oracle", f"spin n={n} curved scalar density", rel(fn.scalar_density(1.0, np.zeros((d, d)), rep, geom), o.scalar()), tol))
    return out


def group_two_path(cfg: SuiteConfig) -> list[Check]:
    """Closed-form functionals against the general matrix-trace expressions.

    Residual: maximum over scenarios of :func:`rel`.  Hodge Einstein is run
    separately for totally antisymmetric torsion and for general torsion
    (antisymmetric in its first pair only).
    """
    out = []
    tol = cfg.tolerance
    for n in cfg.ns:
        for kind in (SPIN, HODGE):
            rep = build_rep(kind, n)
            rng = cfg.rng("two-path", kind, n)
            worst: dict = {}

            def note(name, a, b):
                worst[name] = max(worst.get(name, 0.0), rel(a, b))

            for _ in range(cfg.count):
                geom = random_geometry_jet(n, _seed(rng))
                u, v = rng.normal(size=(2, n))
                w = random_one_form_jet(n, _seed(rng))
                f = float(rng.normal())
                if kind == SPIN:
                    T = _torsion(SPIN, n, rng)
                    B = spin_torsion_B(T, rep)
                    note("einstein", fn.einstein_spin_torsion(u, w, T, n).value, fn.einstein_delta_general(u, w, B, rep).value)
                    note("torsion", fn.torsion_spin_closed(u, v, w.value, T, n), fn.torsion_functional(u, v, w.value, B.B0, rep).value)
                    lj = perturb_laplace_data(spin_laplace_jet(geom, rep), B, rep)
                    note("scalar", fn.scalar_spin_closed(f, T, geom.scalar, n), fn.scalar_density_laplace(f, lj, geom))
                else:
                    for label, sym in (("antisymmetric T", "antisymmetric"), ("torsion T", "torsion")):
                        T = _torsion(HODGE, n, rng, sym)
                        B = hodge_torsion_B(T, rep)
                        note(f"einstein {label}", fn.einstein_hodge_torsion(u, w, T, n).value, fn.einstein_delta_general(u, w, B, rep).value)
                        note(f"torsion {label}", fn.torsion_hodge_closed(u, v, w.value, T, n), fn.torsion_functional(u, v, w.value, B.B0, rep).value)
                        tP, tQ = hodge_laplace_trace_data(geom, rep)
                        note(f"scalar {label}", fn.scalar_hodge_closed(f, T, geom.scalar, n), fn.scalar_density_from_traces(f, B, rep, tP, tQ, geom.scalar))
            for name, r in worst.items():
                out.append(Check("two-path", f"{kind} n={n} {name}", r, tol, cfg.count))
    return out


def group_fluctuation(cfg: SuiteConfig) -> list[Check]:
    """Einstein and torsion coefficient tensors under ``B -> B + A_a g^a``."""
    out = []
    for n in cfg.ns:
        for kind in (SPIN, HODGE):
            rep = build_rep(kind, n)
            rng = cfg.rng("fluctuation", kind, n)
            draws = max(1, min(cfg.count, 20))
            r_e = r_t = 0.0
            for _ in range(draws):
                B = random_perturbation(rep, _seed(rng), hermitian=True)
                Bf = B + clifford_fluctuation(rng.normal(size=n), rep, rng.normal(size=(n, n)))
                uw, udw = fn.einstein_coefficients(B, rep)
                uw2, udw2 = fn.einstein_coefficients(Bf, rep)
                r_e = max(r_e, rel(uw, uw2), rel(udw, udw2))
                r_t = max(r_t, rel(fn.torsion_coefficients(B.B0, rep), fn.torsion_coefficients(Bf.B0, rep)))
            out.append(Check("fluctuation", f"{kind} n={n} einstein", r_e, IDENTITY_TOL, draws))
            out.append(Check("fluctuation", f"{kind} n={n} torsion", r_t, IDENTITY_TOL, draws))
    return out


def group_chiral(cfg: SuiteConfig) -> list[Check]:
    """Chiral metric, torsion, Einstein and scalar functionals."""
    out = []
    tol = cfg.tolerance
    e = np.eye(2)
    # metric: published values against the trace engine and the raw oracle
    rep = build_rep(SPIN, 2)
    chi = build_spin_chirality(rep)
    engine = fn.metric_density_trace(e[0], e[1], rep, chi)
    out.append(Check("chiral", "spin n=2 metric: trace engine vs raw", rel(engine, ResidueOracle(rep).metric(e[0], e[1], chi)), tol))
    out.append(Check("chiral", "spin n=2 metric: published 8 pi i vs engine", rel(fn.chiral_metric_density(e[0], e[1], rep, chi), engine), tol,
                     detail=f"engine {engine.imag:.6f}i, published {fn.chiral_metric_density(e[0], e[1], rep, chi).imag:.6f}i"))
    rep = build_rep(HODGE, 2)
    chi_e, chi_h, _ = build_hodge_gradings(rep)
    engine = fn.metric_density_trace(e[0], e[1], rep, chi_h)
    out.append(Check("chiral", "hodge n=2 metric chi_h: -8 pi i vs engine", rel(-8j * np.pi, engine), tol))
    out.append(Check("chiral", "hodge n=2 metric chi_h: engine vs raw", rel(engine, ResidueOracle(rep).metric(e[0], e[1], chi_h)), tol))
    for n in cfg.ns:
        rng = cfg.rng("chiral-metric", n)
        u, w = rng.normal(size=(2, n))
        rep_h = build_rep(HODGE, n)
        r = max(abs(fn.metric_density_trace(u, w, rep_h, build_hodge_gradings(rep_h)[0])), abs(fn.chiral_metric_density(u, w, rep_h, build_hodge_gradings(rep_h)[0])))
        out.append(Check("chiral", f"hodge n={n} metric chi_e vanishes", r, tol))
        if n > 2:
            rep_s = build_rep(SPIN, n)
            chi_s = build_spin_chirality(rep_s)
            r = rel(fn.metric_density_trace(u, w, rep_s, chi_s), fn.chiral_metric_density(u, w, rep_s, chi_s))
            out.append(Check("chiral", f"spin n={n} metric vanishes", r, tol))
    # torsion and Einstein, spin
    for n in sorted(set(cfg.ns) | {8}):
        rep = build_rep(SPIN, n)
        chi = build_spin_chirality(rep)
        rng = cfg.rng("chiral-spin", n)
        draws = max(1, min(cfg.count, 10 if n < 8 else 2))
        r_t = r_e = r_s = r_r = 0.0
        for _ in range(draws):
            T = _torsion(SPIN, n, rng)
            B = spin_torsion_B(T, rep)
            u, v = rng.normal(size=(2, n))
            w = random_one_form_jet(n, _seed(rng))
            r_t = max(r_t, rel(fn.chiral_torsion_spin(u, v, w.value, T, n), fn.torsion_functional(u, v, w.value, B.B0, rep, chi).value))
            if n < 8:
                r_e = max(r_e, rel(fn.chiral_einstein_spin_torsion(u, w, T, n).value, fn.einstein_delta_general(u, w, B, rep, chi).value))
                r_s = max(r_s, rel(fn.chiral_scalar_spin_closed(1.0, T, n), fn.chiral_scalar_density(1.0, B, rep, chi)))
                r_r = max(r_r, rel(fn.chiral_remark_density(u, T, n), wres_density_ED(fn.chiral_remark_endomorphism(u, rep), B.B0, rep)))
        out.append(Check("chiral", f"spin n={n} torsion closed form vs engine", r_t, tol, draws))
        if n < 8:
            out.append(Check("chiral", f"spin n={n} Einstein closed form vs engine", r_e, tol, draws))
            out.append(Check("chiral", f"spin n={n} scalar closed form vs engine", r_s, tol, draws))
            out.append(Check("chiral", f"spin n={n} gamma-gamma^a E D density", r_r, tol, draws))
    # torsionless chiral Einstein vanishes (curved, brute force)
    for n in [n for n in cfg.ns if n <= cfg.options.get("max_curved_n", 4)]:
        rep = build_rep(SPIN, n)
        rng = cfg.rng("chiral-ein0", n)
        o = ResidueOracle(rep, None, random_geometry_jet(n, _seed(rng)))
        u = rng.normal(size=n)
        w = random_one_form_jet(n, _seed(rng))
        out.append(Check("chiral", f"spin n={n} torsionless Einstein vanishes (raw)", abs(o.einstein(u, w, build_spin_chirality(rep))), tol))
    # raw oracle for the chiral engine formulas, both modules
    for n in [n for n in cfg.ns if n in (2, 4)]:
        for kind in (SPIN, HODGE):
            rep = build_rep(kind, n)
            chi = build_spin_chirality(rep) if kind == SPIN else build_hodge_gradings(rep)[0]
            rng = cfg.rng("chiral-raw", kind, n)
            B = anticommuting_part(random_perturbation(rep, _seed(rng), hermitian=True), chi)
            o, o0 = ResidueOracle(rep, B), ResidueOracle(rep)
            u, v = rng.normal(size=(2, n))
            w = random_one_form_jet(n, _seed(rng))
            tag = f"{kind} n={n} ({'gamma' if kind == SPIN else 'chi_e'})"
            out.append(Check("chiral", f"{tag} scalar formula vs raw", rel(fn.chiral_scalar_density(1.0, B, rep, chi), o.scalar(1.0, chi) - o0.scalar(1.0, chi)), tol))
            out.append(Check("chiral", f"{tag} torsion formula vs raw", rel(fn.torsion_functional(u, v, w.value, B.B0, rep, chi).value, o.torsion(u, v, w, chi) - o0.torsion(u, v, w, chi)), tol))
            out.append(Check("chiral", f"{tag} Einstein formula vs raw", rel(fn.einstein_delta_general(u, w, B, rep, chi).value, einstein_delta_raw(u, w, B, rep, chi)), tol))
    return out


def group_grading(cfg: SuiteConfig) -> list[Check]:
    """Anticommutation of the torsion term with the gradings.

    Residual counts the draws where compatibility disagrees with the
    expectation (``T_ijj = 0`` for the Hodge grading, always for the Euler
    grading and the spin chirality).
    """
    out = []
    for n in cfg.ns:
        rep = build_rep(HODGE, n)
        chi_e, chi_h, _ = build_hodge_gradings(rep)
        rng = cfg.rng("grading", n)
        draws = max(1, min(cfg.count, 20))
        bad_h = bad_e = 0
        for i in range(draws):
            T = _torsion(HODGE, n, rng)
            if i % 2:
                T = TorsionJet(remove_vector_part(T.value), np.array([remove_vector_part(d) for d in T.deriv]))
            expected = bool(np.max(np.abs(np.einsum("ijj->i", T.value))) < 1e-12 and all(np.max(np.abs(np.einsum("ijj->i", d))) < 1e-12 for d in T.deriv))
            B = hodge_torsion_B(T, rep)
            bad_h += grading_compatibility(B, chi_h)[0] != expected
            bad_e += not grading_compatibility(B, chi_e)[0]
        # constructed counterexample: T_122 = 1 (torsion-antisymmetrized)
        T0 = np.zeros((n,) * 3)
        T0[0, 1, 1], T0[1, 0, 1] = 1.0, -1.0
        counter = hodge_torsion_B(TorsionJet.constant(T0), rep)
        bad_h += grading_compatibility(counter, chi_h)[0]
        out.append(Check("grading", f"hodge n={n} chi_h iff T_ijj = 0", float(bad_h), 0.0, draws + 1))
        out.append(Check("grading", f"hodge n={n} chi_e always", float(bad_e), 0.0, draws))
        rep_s = build_rep(SPIN, n)
        B = spin_torsion_B(_torsion(SPIN, n, rng), rep_s)
        out.append(Check("grading", f"spin n={n} chirality", float(not grading_compatibility(B, build_spin_chirality(rep_s))[0]), 0.0))
    return out


def group_antisymmetry(cfg: SuiteConfig) -> list[Check]:
    """Sign of the torsion functional under permutations of ``(u, v, w)``.

    With integer-valued torsion every trace is a dyadic rational, so the
    coefficient tensor must be exactly antisymmetric (tolerance 0).  The
    contracted values for real random jets are compared with :func:`rel`.
    Also checks the total-derivative identity of the non-tensorial Einstein
    part.
    """
    out = []
    for n in cfg.ns:
        for kind in (SPIN, HODGE):
            rep = build_rep(kind, n)
            rng = cfg.rng("antisym", kind, n)
            draws = max(1, min(cfg.count, 10))
            exact = worst = 0.0
            for _ in range(draws):
                T = rng.integers(-3, 4, size=(n,) * 3).astype(float)
                if kind == HODGE:
                    T = T - T.transpose(1, 0, 2)
                else:
                    T = sum(_perm_sign(p) * T.transpose(p) for p in itertools.permutations(range(3)))
                B0 = (spin_torsion_B if kind == SPIN else hodge_torsion_B)(TorsionJet.constant(T), rep).B0
                coeff = fn.torsion_coefficients(B0, rep)
                vecs = rng.normal(size=(3, n))
                base = fn.torsion_functional(*vecs, B0, rep).value
                for perm in itertools.permutations(range(3)):
                    sign = _perm_sign(perm)
                    exact = max(exact, float(np.max(np.abs(coeff.transpose(perm) - sign * coeff))))
                    worst = max(worst, rel(fn.torsion_functional(*vecs[list(perm)], B0, rep).value, sign * base))
            out.append(Check("antisymmetry", f"{kind} n={n} torsion coefficients (exact)", exact, 0.0, draws))
            out.append(Check("antisymmetry", f"{kind} n={n} torsion values", worst, IDENTITY_TOL, draws))
        rng = cfg.rng("tdi", n)
        worst = 0.0
        draws = max(1, min(cfg.count, 20))
        for _ in range(draws):
            T = _torsion(SPIN, n, rng)
            lhs, rhs = fn.total_derivative_identity(random_one_form_jet(n, _seed(rng)), random_one_form_jet(n, _seed(rng)), T)
            worst = max(worst, rel(lhs, rhs))
        out.append(Check("antisymmetry", f"n={n} total-derivative identity", worst, IDENTITY_TOL, draws))
    return out


def _perm_sign(p) -> int:
    p = list(p)
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


GROUPS = {
    "clifford": group_clifford,
    "trace-lemmas": group_trace_lemmas,
    "spin-traces": group_spin_traces,
    "vanishing": group_vanishing,
    "parametrix": group_parametrix,
    "raw-oracle": group_raw_oracle,
    "two-path": group_two_path,
    "fluctuation": group_fluctuation,
    "chiral": group_chiral,
    "grading": group_grading,
    "antisymmetry": group_antisymmetry,
}


def run(groups=None, cfg: SuiteConfig | None = None) -> list[Check]:
    cfg = cfg or SuiteConfig()
    names = list(GROUPS) if not groups else list(groups)
    unknown = [g for g in names if g not in GROUPS]
    if unknown:
        raise KeyError(f"unknown group(s): {', '.join(unknown)}")
    checks = []
    for g in names:
        checks.extend(GROUPS[g](cfg))
    return checks


def summary(checks: list[Check]) -> dict:
    groups: dict = {}
    for c in checks:
        g = groups.setdefault(c.group, {"max_residual": 0.0, "passed": True, "checks": {}})
        g["checks"][c.name] = c.to_json()
        g["passed"] = g["passed"] and c.passed
        g["max_residual"] = max(g["max_residual"], c.residual)
    return {"passed": all(c.passed for c in checks), "failed": [f"{c.group}: {c.name}" for c in checks if not c.passed], "groups": groups}
