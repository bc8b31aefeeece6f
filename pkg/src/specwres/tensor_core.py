"""Dense multi-index tensors, permutation symbols and cosphere integrals.

Tensors are plain ``numpy`` arrays of shape ``(n,) * rank`` with complex
entries.  Indices are zero-based in code; the JSON encoding stores entries
in row-major multi-index order.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_RANK = 6
MAX_SPHERE_DEGREE = 8
ABS_TOL = 1e-10


class TensorError(ValueError):
    pass


def as_tensor(data, rank: int | None = None, dim: int | None = None) -> np.ndarray:
    """Coerce ``data`` to a complex dense tensor and check its shape."""
    arr = np.asarray(data, dtype=complex)
    if arr.ndim > MAX_RANK:
        raise TensorError(f"rank {arr.ndim} exceeds {MAX_RANK}")
    if rank is not None and arr.ndim != rank:
        raise TensorError(f"expected rank {rank}, got {arr.ndim}")
    if arr.ndim and len(set(arr.shape)) != 1:
        raise TensorError(f"all axes must share one dimension, got {arr.shape}")
    if dim is not None and arr.ndim and arr.shape[0] != dim:
        raise TensorError(f"expected dimension {dim}, got {arr.shape[0]}")
    return arr


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if ``seq`` has repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    # selection sort, counting transpositions
    for i in range(len(seq)):
        j = min(range(i, len(seq)), key=seq.__getitem__)
        if j != i:
            seq[i], seq[j] = seq[j], seq[i]
            sign = -sign
    return sign


def epsilon_generalized(upper: Sequence[int], lower: Sequence[int]) -> int:
    """Generalized Kronecker symbol.

    Returns the sign of the permutation carrying ``upper`` to ``lower`` when
    both are repeat-free arrangements of the same index set, and 0
    otherwise.  With ``lower = (p, *J)`` this is the symbol used to build the
    exterior-algebra raising operators.

    >>> epsilon_generalized((1, 2), (1, 2))
    1
    >>> epsilon_generalized((1, 2), (2, 1))
    -1
    >>> epsilon_generalized((1, 3), (2, 1))
    0
    """
    if len(upper) != len(lower) or sorted(upper) != sorted(lower):
        return 0
    return permutation_sign(upper) * permutation_sign(lower)


@lru_cache(maxsize=None)
def _levi_civita(n: int) -> np.ndarray:
    eps = np.zeros((n,) * n)
    for perm in itertools.permutations(range(n)):
        eps[perm] = permutation_sign(perm)
    eps.setflags(write=False)
    return eps


def levi_civita(n: int) -> np.ndarray:
    """Totally antisymmetric symbol with ``eps[0, 1, ..., n-1] = 1``."""
    return _levi_civita(n)


def kronecker_delta2(n: int) -> np.ndarray:
    """``d[i, j, a, b] = delta_ia delta_jb - delta_ib delta_ja``."""
    eye = np.eye(n)
    return np.einsum("ia,jb->ijab", eye, eye) - np.einsum("ib,ja->ijab", eye, eye)


def antisymmetrize_torsion(T) -> np.ndarray:
    """Cyclic average ``(T_ijk + T_kij + T_jki) / 3`` of a rank-3 tensor.

    For a tensor already antisymmetric in its first index pair this is the
    totally antisymmetric part.
    """
    T = as_tensor(T, rank=3)
    return (T + np.einsum("kij->ijk", T) + np.einsum("jki->ijk", T)) / 3.0


def total_antisymmetrization(T) -> np.ndarray:
    """Average of ``sign(pi) * T`` over all index permutations."""
    T = as_tensor(T)
    out = np.zeros_like(T)
    perms = list(itertools.permutations(range(T.ndim)))
    for perm in perms:
        out += permutation_sign(perm) * np.transpose(T, perm)
    return out / len(perms)


def is_totally_antisymmetric(T, tol: float = ABS_TOL) -> bool:
    T = as_tensor(T)
    return bool(np.max(np.abs(T - total_antisymmetrization(T)), initial=0.0) <= tol * max(1.0, np.max(np.abs(T), initial=0.0)))


def sphere_volume(n: int) -> float:
    """Surface area of the unit sphere ``S^{n-1}`` in ``R^n``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)


@lru_cache(maxsize=None)
def _sphere_moment(degrees: tuple[int, ...]) -> float:
    if any(d % 2 for d in degrees):
        return 0.0
    n = len(degrees)
    num = 2.0
    for d in degrees:
        num *= math.gamma((d + 1) / 2)
    return num / math.gamma((sum(degrees) + n) / 2)


def sphere_monomial_integral(degrees: Iterable[int], n: int | None = None, max_degree: int = MAX_SPHERE_DEGREE) -> float:
    """Integral of ``prod_i xi_i**degrees[i]`` over the unit sphere in ``R^n``.

    Uses the Gaussian-moment identity, so the value is exact up to
    floating-point rounding.  Odd exponents give zero.

    Parameters
    ----------
    degrees : iterable of int
        Per-axis exponents.  Shorter than ``n`` means trailing zeros.
    n : int, optional
        Ambient dimension; defaults to ``len(degrees)``.
    max_degree : int
        Guard on the total degree.
    """
    degrees = tuple(int(d) for d in degrees)
    if n is None:
        n = len(degrees)
    if len(degrees) > n:
        raise ValueError("more exponents than axes")
    if any(d < 0 for d in degrees):
        raise ValueError("negative exponent")
    if sum(degrees) > max_degree:
        raise OverflowError(f"total degree {sum(degrees)} exceeds {max_degree}")
    return _sphere_moment(degrees + (0,) * (n - len(degrees)))


def max_abs(*arrays) -> float:
    return max((float(np.max(np.abs(np.asarray(a)), initial=0.0)) for a in arrays), default=0.0)


def residual(a, b) -> float:
    """Absolute max-norm difference."""
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0))


def relative_residual(a, b) -> float:
    """Max-norm difference scaled by the larger operand (floor 1e-300)."""
    scale = max(max_abs(a, b), 1e-300)
    return residual(a, b) / scale


def allclose(a, b, tol: float = ABS_TOL) -> bool:
    """Absolute tolerance ``tol`` scaled by the max-norm of the operands (at least 1)."""
    return residual(a, b) <= tol * max(1.0, max_abs(a, b))


# -- JSON ---------------------------------------------------------------

def tensor_to_json(T) -> dict:
    T = as_tensor(T)
    dim = T.shape[0] if T.ndim else 0
    return {
        "rank": T.ndim,
        "dim": dim,
        "entries": [[float(z.real), float(z.imag)] for z in T.ravel()],
    }


def tensor_from_json(obj, rank: int | None = None, dim: int | None = None) -> np.ndarray:
    """Decode the ``{"rank", "dim", "entries"}`` encoding.

    Plain nested lists of numbers are accepted as well.
    """
    if isinstance(obj, dict):
        try:
            r, n, entries = int(obj["rank"]), int(obj["dim"]), obj["entries"]
        except KeyError as exc:
            raise TensorError(f"tensor object missing key {exc}") from None
        if len(entries) != n**r:
            raise TensorError(f"expected {n ** r} entries, got {len(entries)}")
        flat = np.array([complex(re, im) for re, im in entries], dtype=complex)
        arr = flat.reshape((n,) * r) if r else flat.reshape(())
    else:
        arr = np.asarray(obj, dtype=complex)
    return as_tensor(arr, rank=rank, dim=dim)
