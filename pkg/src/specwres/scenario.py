"""Scenario files and single-point density evaluation with an oracle check.

A scenario is a JSON object::

    {"n": 4, "module": "spin", "geometry": "flat",
     "torsion": {"value": ..., "deriv": ...},
     "u": [...], "v": [...], "w": {"value": [...], "deriv": [...]},
     "f": 1.0, "seed": 0}

Tensors are nested lists or ``{"rank", "dim", "entries"}`` objects.  The
geometry is ``"flat"``, ``{"riemann": R}``, ``{"sphere": k}`` or
``{"random": seed}``.  Missing torsion and one-form data are drawn from
``seed``; torsion is totally antisymmetric for the spin module and
antisymmetric in its first pair for the Hodge module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import functionals as fn
from .clifford import HODGE, SPIN, CliffordError, CliffordRep, Grading, build_rep, default_grading, grading
from .jets import (
    GeometryJet,
    OneFormJet,
    TorsionJet,
    hodge_laplace_trace_data,
    perturb_laplace_data,
    random_geometry_jet,
    random_one_form_jet,
    random_torsion_jet,
    riemann_projection,
    sphere_geometry_jet,
    spin_laplace_jet,
)
from .operators import OperatorError, is_torsion_like, torsion_B
from .oracles import ResidueOracle, einstein_delta_raw
from .tensor_core import TensorError, max_abs, residual, sphere_volume, tensor_from_json, tensor_to_json

FUNCTIONALS = ("metric", "einstein", "torsion", "scalar")
DENSITY_NS = (2, 4, 6)


class ScenarioError(ValueError):
    """Invalid scenario or option combination (an input error)."""


@dataclass(frozen=True, eq=False)
class Scenario:
    n: int
    kind: str
    geometry: GeometryJet
    torsion: TorsionJet
    u: np.ndarray
    v: np.ndarray
    w: OneFormJet
    f: float = 1.0
    seed: int = 0

    @property
    def flat(self) -> bool:
        return not np.any(self.geometry.riemann)


def _tensor(obj, rank: int, n: int, what: str) -> np.ndarray:
    try:
        return tensor_from_json(obj, rank=rank, dim=n)
    except (TensorError, TypeError, ValueError) as exc:
        raise ScenarioError(f"{what}: {exc}") from None


def _vector(obj, n: int, what: str) -> np.ndarray:
    if isinstance(obj, dict) and "value" in obj:
        obj = obj["value"]
    return _tensor(obj, 1, n, what)


def _geometry(obj, n: int) -> GeometryJet:
    if obj in (None, "flat") or obj == {}:
        return GeometryJet.flat(n)
    if not isinstance(obj, dict):
        raise ScenarioError(f"geometry must be 'flat' or an object, got {obj!r}")
    if "riemann" in obj:
        R = _tensor(obj["riemann"], 4, n, "geometry.riemann")
        if np.max(np.abs(R.imag)) > 0:
            raise ScenarioError("geometry.riemann must be real")
        R = R.real
        if residual(R, riemann_projection(R)) > 1e-10 * max(1.0, max_abs(R)):
            raise ScenarioError("geometry.riemann lacks the algebraic curvature symmetries")
        return GeometryJet.from_riemann(R)
    if "sphere" in obj:
        return sphere_geometry_jet(n, float(obj["sphere"]))
    if "random" in obj:
        return random_geometry_jet(n, int(obj["random"]))
    raise ScenarioError("geometry object needs one of 'riemann', 'sphere', 'random'")


def parse_scenario(data: dict, n: int | None = None, kind: str | None = None, seed: int | None = None) -> Scenario:
    """Build a :class:`Scenario`; ``n``, ``kind`` and ``seed`` override the file."""
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    n = int(n if n is not None else data.get("n", 4))
    kind = kind or data.get("module", SPIN)
    seed = int(seed if seed is not None else data.get("seed", 0))
    if n not in DENSITY_NS:
        raise ScenarioError(f"n must be one of {DENSITY_NS}, got {n}")
    if kind not in (SPIN, HODGE):
        raise ScenarioError(f"module must be 'spin' or 'hodge', got {kind!r}")
    rng = np.random.default_rng(seed)
    # draw everything up front so a given seed always yields the same jets
    drawn_T = random_torsion_jet(n, rng, symmetry="antisymmetric" if kind == SPIN else "torsion")
    drawn_u, drawn_v = rng.normal(size=(2, n))
    drawn_w = random_one_form_jet(n, rng)

    if "torsion" in data:
        t = data["torsion"]
        if not isinstance(t, dict) or "value" not in t:
            raise ScenarioError("torsion must be an object with 'value' (and optional 'deriv')")
        value = _tensor(t["value"], 3, n, "torsion.value")
        deriv = _tensor(t["deriv"], 4, n, "torsion.deriv") if "deriv" in t else np.zeros((n,) * 4, dtype=complex)
        T = TorsionJet(value, deriv)
    else:
        T = drawn_T
    if kind == SPIN and not T.is_antisymmetric():
        raise ScenarioError("spin torsion must be totally antisymmetric (value and every derivative slice)")

    u = _vector(data["u"], n, "u") if "u" in data else drawn_u.astype(complex)
    v = _vector(data["v"], n, "v") if "v" in data else drawn_v.astype(complex)
    if "w" in data:
        wd = data["w"]
        if isinstance(wd, dict):
            if "value" not in wd:
                raise ScenarioError("w must carry a 'value'")
            wv = _tensor(wd["value"], 1, n, "w.value")
            wdv = _tensor(wd["deriv"], 2, n, "w.deriv") if "deriv" in wd else np.zeros((n, n), dtype=complex)
        else:
            wv, wdv = _tensor(wd, 1, n, "w"), np.zeros((n, n), dtype=complex)
        w = OneFormJet(wv, wdv)
    else:
        w = drawn_w
    try:
        f = float(data.get("f", 1.0))
    except (TypeError, ValueError):
        raise ScenarioError("f must be a real number") from None
    return Scenario(n, kind, _geometry(data.get("geometry"), n), T, u, v, w, f, seed)


def load_scenario(path, **overrides) -> Scenario:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc}") from None
    return parse_scenario(data, **overrides)


# -- evaluation -----------------------------------------------------------------------

def cnum(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _rel(a, b) -> float:
    return residual(a, b) / max(1.0, max_abs(a, b))


def resolve_grading(sc: Scenario, rep: CliffordRep, name: str | None) -> Grading:
    """Grading for a chiral functional, checking it anticommutes with the operator."""
    try:
        chi = default_grading(rep) if name in (None, "") else grading(rep, name)
    except CliffordError as exc:
        raise ScenarioError(str(exc)) from None
    if chi is None:
        raise ScenarioError("a chiral functional needs a grading")
    if chi.kind == "hat":
        raise ScenarioError("chi_hat commutes with d + d*, so it cannot grade a chiral functional")
    if chi.kind == "hodge":
        V = np.einsum("ijj->i", sc.torsion.value)
        Vd = np.einsum("cijj->ci", sc.torsion.deriv)
        if max_abs(V, Vd) > 1e-12:
            raise ScenarioError(
                "the Hodge grading chi_h anticommutes with the torsion term only if T_ijj = 0; "
                f"this scenario has max |T_ijj| = {max_abs(V, Vd):.3e}"
            )
    return chi


def _closed_form(sc: Scenario, functional: str, chi: Grading | None, rep: CliffordRep):
    """Closed-form value, or ``None`` when no closed form applies."""
    T, u, v, w, n = sc.torsion, sc.u, sc.v, sc.w, sc.n
    spin = sc.kind == SPIN
    if functional == "metric":
        if chi is None:
            return fn.metric_density(u, w.value, rep)
        return fn.chiral_metric_density(u, w.value, rep, chi)
    if functional == "einstein":
        if chi is None:
            return (fn.einstein_spin_torsion if spin else fn.einstein_hodge_torsion)(u, w, T, n).value
        return fn.chiral_einstein_spin_torsion(u, w, T, n).value if spin else None
    if functional == "torsion":
        if chi is None:
            return (fn.torsion_spin_closed if spin else fn.torsion_hodge_closed)(u, v, w.value, T, n)
        return fn.chiral_torsion_spin(u, v, w.value, T, n) if spin else None
    if chi is None:
        R = sc.geometry.scalar
        return fn.scalar_spin_closed(sc.f, T, R, n) if spin else fn.scalar_hodge_closed(sc.f, T, R, n)
    return fn.chiral_scalar_spin_closed(sc.f, T, n) if spin else None


def evaluate(sc: Scenario, functional: str, chiral: bool = False, grading_name: str | None = None, tolerance: float = 1e-9) -> dict:
    """Density report for one scenario as a JSON-ready dict.

    The engine value comes from the general matrix-trace formulas.  The
    oracle is the brute-force symbol calculus (flat background for the
    torsion-dependent parts, full curvature for spin metric and scalar).
    Hodge chiral Einstein and torsion densities have no oracle.
    """
    if functional not in FUNCTIONALS:
        raise ScenarioError(f"unknown functional {functional!r}; choose from {', '.join(FUNCTIONALS)}")
    chiral = chiral or bool(grading_name)
    rep = build_rep(sc.kind, sc.n)
    chi = resolve_grading(sc, rep, grading_name) if chiral else None
    try:
        B = torsion_B(sc.torsion, rep)
    except OperatorError as exc:
        raise ScenarioError(str(exc)) from None
    n, d, nu = sc.n, rep.fiber_dim, sphere_volume(sc.n)
    spin = sc.kind == SPIN
    notes = []
    coeffs: dict = {}
    oracle_value = None
    engine_delta = None  # engine quantity comparable to a flat brute-force delta

    def flat_delta(method, *args):
        return getattr(ResidueOracle(rep, B), method)(*args, chi) - getattr(ResidueOracle(rep), method)(*args, chi)

    if functional == "metric":
        chi_m = rep.identity if chi is None else chi.matrix
        g = rep.gammas
        coeffs["coeff_uw"] = nu * np.einsum("ij,ajk,bki->ab", chi_m, g, g)
        value = fn.metric_density_trace(sc.u, sc.w.value, rep, chi)
        oracle_value = ResidueOracle(rep, B, sc.geometry if spin else None).metric(sc.u, sc.w.value, chi)
    elif functional == "einstein":
        rep_e = fn.einstein_delta_general(sc.u, sc.w, B, rep, chi, sc.kind)
        coeffs["coeff_uw"], coeffs["coeff_u_dw"] = rep_e.coeff_uw, rep_e.coeff_u_dw
        value = rep_e.value
        notes.append("value is the torsion-induced change of the Einstein density")
        if not (chiral and not spin):
            oracle_value = einstein_delta_raw(sc.u, sc.w, B, rep, chi)
    elif functional == "torsion":
        rep_t = fn.torsion_functional(sc.u, sc.v, sc.w.value, B.B0, rep, chi, sc.kind)
        coeffs["coeff_uvw"] = rep_t.coeff_uvw
        value = rep_t.value
        if not (chiral and not spin):
            oracle_value = flat_delta("torsion", sc.u, sc.v, sc.w)
    else:
        R = sc.geometry.scalar
        if chi is not None:
            value = fn.chiral_scalar_density(sc.f, B, rep, chi)
            if not spin:
                notes.append("value omits the torsionless chiral part, which has no closed form here")
            oracle_value = flat_delta("scalar", sc.f)
        elif spin:
            lj = perturb_laplace_data(spin_laplace_jet(sc.geometry, rep), B, rep)
            value = fn.scalar_density_laplace(sc.f, lj, sc.geometry)
            oracle_value = ResidueOracle(rep, B, sc.geometry).scalar(sc.f)
        else:
            tP, tQ = hodge_laplace_trace_data(sc.geometry, rep)
            value = fn.scalar_density_from_traces(sc.f, B, rep, tP, tQ, R)
            engine_delta = value - fn.scalar_reference_density(sc.f, n, d, R)
            oracle_value = flat_delta("scalar", sc.f)
            notes.append("oracle compares the torsion-induced change on a flat background")

    if oracle_value is not None and not sc.flat and functional in ("einstein", "torsion"):
        notes.append("oracle evaluated on a flat background; the change is curvature independent")

    closed = _closed_form(sc, functional, chi, rep)
    if sc.kind == HODGE and not is_torsion_like(sc.torsion.value):
        notes.append("closed forms assume T_ijk = -T_jik")

    report = {
        "functional": functional,
        "n": n,
        "kind": sc.kind,
        "chiral": chi is not None,
        "grading": None if chi is None else chi.kind,
        "seed": sc.seed,
        "value": cnum(value),
    }
    for key, arr in coeffs.items():
        report[key] = tensor_to_json(arr)
    report["closed_form"] = None if closed is None else cnum(closed)
    report["closed_form_residual"] = None if closed is None else _rel(value, closed)
    if oracle_value is None:
        report["oracle"] = fn.ENGINE_ONLY
        report["oracle_value"] = None
        report["residual"] = None
    else:
        compared = value if engine_delta is None else engine_delta
        r = _rel(compared, oracle_value)
        report["oracle"] = fn.MATCHED if r <= tolerance else fn.MISMATCH
        report["oracle_value"] = cnum(oracle_value)
        report["residual"] = r
    report["tolerance"] = tolerance
    report["notes"] = notes
    return report
