"""Closed-form coefficients of the functionals for a module kind and dimension.

Every row is labelled ``closed-form`` (the published constant) or
``engine`` (the value the matrix-trace engine and the brute-force oracle
produce, listed where the two disagree).
"""

from __future__ import annotations

import math

from .clifford import HODGE, SPIN
from .tensor_core import sphere_volume


def _row(name, value, formula, source="closed-form", case=None) -> dict:
    z = complex(value)
    return {"name": name, "value": [z.real, z.imag], "formula": formula, "source": source, "case": case}


def coefficient_table(kind: str, n: int) -> list[dict]:
    """Rows of closed-form constants for ``(kind, n)``.

    Raises
    ------
    ValueError
        For an unknown kind or an odd or non-positive ``n``.
    """
    if kind not in (SPIN, HODGE):
        raise ValueError(f"kind must be 'spin' or 'hodge', got {kind!r}")
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and at least 2, got {n}")
    nu = sphere_volume(n)
    m = n // 2
    nu3 = sphere_volume(4)
    if kind == SPIN:
        K = 3 * 2 ** (n - 1) * nu
        rows = [
            _row("metric constant", 2**m * nu, "dim V nu (times u.w)"),
            _row("einstein prefactor", K, "3 2^(n-1) nu"),
            _row("einstein prefactor", 3 * 2 ** (m - 1) * nu, "3 2^(m-1) nu", "engine"),
            _row("einstein u_a w_bc T_abc", -1, "-1 (inside the prefactor)"),
            _row("einstein u_a w_a T.T", 1 / 8, "1/8"),
            _row("einstein u_a w_b d_c T_abc", -4 / 8, "-4/8"),
            _row("einstein u_a w_b T_ajk T_bjk", -6 / 8, "-6/8"),
            _row("torsion constant", -1.5j * nu * 2**m, "-(3i/2) nu 2^m (times u_a v_b w_c T_abc)"),
            _row("scalar constant", 2**m * (n - 2) * nu / 24, "2^m (n-2) nu / 24 (times f(-R + 9/4 T.T))"),
            _row("scalar T.T coefficient", 9 / 4, "9/4"),
            _row("chiral metric", 4j * math.pi * 2**m if n == 2 else 0, "4 pi i 2^m u_a w_b eps_ab", case="n=2"),
            _row("chiral metric", 4j * math.pi if n == 2 else 0, "4 pi i u_a w_b eps_ab", "engine", case="n=2"),
            _row("chiral torsion", -0.5j * math.pi**2 * 2**m if n == 4 else 0,
                 "-i (pi^2/2) 2^m T_ijk eps_ijkl (d_ab d_cl + d_al d_bc - d_ac d_bl)", case="n=4"),
            _row("chiral torsion", math.pi**3 / 4 * 2**m if n == 6 else 0, "(pi^3/4) 2^m T_ijk eps_abcijk", case="n=6"),
            _row("chiral einstein", 2 * math.pi**2 if n == 4 else 0, "2 pi^2", case="n=4"),
            _row("chiral einstein", 1j * math.pi**3 if n == 6 else 0, "i pi^3", case="n=6"),
            _row("chiral scalar", -(2**m) * nu3 / 8 if n == 4 else 0, "-2^m nu_3/8 (times eps_abcd d_a T_bcd)", case="n=4"),
            _row("chiral gamma u^ E D density", 2**m * 1j * nu3 / 4 if n == 4 else 0,
                 "2^m i nu_3/4 (times u_a T_ijk eps_aijk)", case="n=4"),
        ]
    else:
        K = 3 * nu * 2 ** (n - 3)
        rows = [
            _row("metric constant", 2**n * nu, "dim V nu (times u.w)"),
            _row("einstein prefactor", K, "3 nu 2^(n-3)"),
            _row("einstein u_a w_bc A_abc", -4, "-4"),
            _row("einstein u_a w_b d_c A_abc", -2, "-2"),
            _row("einstein u_a w_a T_jii T_jkk", -4 / 3, "-4/3"),
            _row("einstein u_a w_a T_jii T_jkk", -2 / 3, "-2/3", "engine"),
            _row("einstein u_a w_a A.A", 1 / 2, "1/2"),
            _row("einstein u_a w_b A_ajk A_bjk", -3, "-3"),
            _row("torsion constant", -3j * nu * 2 ** (n - 1), "-3i nu 2^(n-1) (times u_a v_b w_c A_abc)"),
            _row("scalar constant", 2 ** (n - 3) / 3 * (n - 2) * nu,
                 "(2^(n-3)/3)(n-2) nu (times f(-R - 3 T_baa T_bcc + 9/4 A.A))"),
            _row("scalar T_baa T_bcc coefficient", -3, "-3"),
            _row("scalar A.A coefficient", 9 / 4, "9/4"),
            _row("chiral metric chi_h", -8j * math.pi if n == 2 else 0, "-8 pi i u_a w_b eps_ab", case="n=2"),
            _row("chiral metric chi_e", 0, "0"),
        ]
    for r in rows:
        if r["case"] and r["case"] != f"n={n}":
            r["note"] = f"vanishes unless {r['case']}"
    return rows


def format_table(kind: str, n: int, rows: list[dict]) -> str:
    lines = [f"{kind} n={n}"]
    width = max(len(r["name"]) for r in rows)
    for r in rows:
        re, im = r["value"]
        val = f"{re:.12g}" if im == 0 else f"{re:.12g}{im:+.12g}i"
        tag = "" if r["source"] == "closed-form" else f"  [{r['source']}]"
        lines.append(f"  {r['name']:<{width}}  {val:<28} {r['formula']}{tag}")
    return "\n".join(lines)
