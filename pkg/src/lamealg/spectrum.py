"""Algebraic energies as eigenvalues of the Jacobi matrix of each recurrence."""

from dataclasses import dataclass
import math

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .elliptic import EllipticModulus
from .errors import DomainError
from .polyfam import FamilyTag, LameIndex, recurrence_arrays


@dataclass(frozen=True)
class SpectrumResult:
    family: FamilyTag
    energies: np.ndarray
    lam: LameIndex
    m: float


def tridiagonal_from_recurrence(family, idx, m: float):
    """Symmetric tridiagonal (diag, offdiag) whose characteristic polynomial is Phat_{n+1}.

    diag = (b_0..b_n), offdiag = (sqrt(a_1)..sqrt(a_n)).
    """
    a, b = recurrence_arrays(family, idx, m)
    if np.any(a[1:] <= 0.0):
        raise DomainError("recurrence coefficients a_j must be positive for 1 <= j <= n")
    return b.copy(), np.sqrt(a[1:])


def sturm_count(diag, off, x: float) -> int:
    """Number of eigenvalues strictly below x (LDL^T inertia count)."""
    count = 0
    q = diag[0] - x
    tiny = np.finfo(float).tiny
    for i in range(len(diag)):
        if i > 0:
            q = diag[i] - x - off[i - 1] ** 2 / q
        if q == 0.0:
            q = -tiny
        if q < 0.0:
            count += 1
    return count


def bisection_eigenvalues(diag, off, rtol: float = 1e-13):
    """All eigenvalues of a symmetric tridiagonal matrix by Sturm-count bisection."""
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    size = len(diag)
    radius = np.zeros(size)
    radius[:-1] += np.abs(off)
    radius[1:] += np.abs(off)
    lo0 = float(np.min(diag - radius))
    hi0 = float(np.max(diag + radius))
    scale = max(abs(lo0), abs(hi0), 1.0)
    out = np.empty(size)
    for k in range(size):
        lo, hi = lo0, hi0
        while hi - lo > rtol * max(abs(lo), abs(hi)) + 4e-16 * scale:
            mid = 0.5 * (lo + hi)
            if sturm_count(diag, off, mid) > k:
                hi = mid
            else:
                lo = mid
        out[k] = 0.5 * (lo + hi)
    return out


def family_energies(family, idx, m: float, method: str = "auto"):
    """Sorted roots of the critical polynomial of one family."""
    diag, off = tridiagonal_from_recurrence(family, idx, m)
    if method == "bisection" or len(diag) == 1:
        return bisection_eigenvalues(diag, off) if len(diag) > 1 else diag.copy()
    try:
        vals = eigh_tridiagonal(diag, off, eigvals_only=True)
    except LinAlgError:
        if method == "qr":
            raise
        vals = bisection_eigenvalues(diag, off)
    return np.sort(vals)


def algebraic_energies(idx, m: float) -> list:
    """One SpectrumResult per family available for this lambda, energies ascending."""
    idx = LameIndex.parse(idx)
    mod = EllipticModulus.coerce(m)
    if mod.m <= 0.0:
        raise DomainError(f"parameter m={mod.m!r} must lie in (0, 1)")
    out = []
    for family in idx.families:
        energies = family_energies(family, idx, mod.m)
        energies.setflags(write=False)
        out.append(SpectrumResult(family, energies, idx, mod.m))
    return out


def all_energies(idx, m: float) -> np.ndarray:
    """Union of the algebraic energies over families, sorted (2*lambda + 1 values)."""
    return np.sort(np.concatenate([r.energies for r in algebraic_energies(idx, m)]))


def min_relative_gap(energies) -> float:
    energies = np.sort(np.asarray(energies, dtype=float))
    if len(energies) < 2:
        return math.inf
    gaps = np.diff(energies)
    return float(np.min(gaps / (1.0 + np.abs(energies[1:]))))
