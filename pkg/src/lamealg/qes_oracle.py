"""Lie-algebraic cross-check of the algebraic spectrum.

The gauge Hamiltonian is a quadratic polynomial in the sl(2) generators

    J_- = d/dz,   J_0 = z d/dz - n/2,   J_+ = z^2 d/dz - n z,

which preserve the polynomials of degree <= n.  Restricting it to the monomial
basis {1, z, ..., z^n} gives a finite (generally non-symmetric, possibly
complex) matrix whose eigenvalues are Lame energies.  Nothing here uses the
recurrences of :mod:`lamealg.polyfam`.
"""

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .errors import DomainError, SpectralRealityError
from .polyfam import Kind, LameIndex


class Alg(Enum):
    ALG1 = 1
    ALG2 = 2
    ALG3 = 3
    ALG4 = 4


class Generator(Enum):
    JMINUS = "J-"
    J0 = "J0"
    JPLUS = "J+"


def c_star(n: int, c0: float, cplus: complex, cminus: complex, m: float) -> complex:
    """Constant term that removes the additive constant from the potential."""
    quad = ((2 * m - 1) * cminus ** 2 + (1 - m) * (c0 ** 2 + 2 * cplus * cminus) - cplus ** 2) / (4 * m * m)
    return quad + c0 * (n + 1) / (2 * m) - 0.25 * n * (n + 2)


@dataclass(frozen=True)
class AlgebraizationId:
    value: Alg
    n: int
    c0: float
    cplus: complex
    cminus: complex
    cstar: complex

    @classmethod
    def build(cls, alg, idx, m: float) -> "AlgebraizationId":
        alg = Alg(alg) if not isinstance(alg, Alg) else alg
        idx = LameIndex.parse(idx)
        lam = float(idx.lam)
        if alg in (Alg.ALG1, Alg.ALG2):
            if idx.kind is not Kind.INTEGER:
                raise DomainError(f"{alg.name} needs an integer lambda, got {idx}")
            if alg is Alg.ALG1:
                n, c0 = int(lam), -m * lam
            else:
                if lam < 1:
                    raise DomainError("ALG2 needs lambda >= 1")
                n, c0 = int(lam) - 1, -m * (lam + 1)
            cp = cm = 0j
        else:
            if idx.kind is not Kind.HALF_INTEGER:
                raise DomainError(f"{alg.name} needs a half-integer lambda, got {idx}")
            n, c0 = int(lam - 0.5), -m * (lam + 0.5)
            sign = 1.0 if alg is Alg.ALG3 else -1.0
            cp = cm = sign * 1j * math.sqrt(1.0 - m)
        return cls(alg, n, c0, cp, cm, c_star(n, c0, cp, cm, m))


def generator_action(which, n: int, p: int) -> dict:
    """Image of z^p under a generator, as {power: coefficient}."""
    which = Generator(which) if not isinstance(which, Generator) else which
    if not 0 <= p <= n:
        raise DomainError(f"monomial power {p} outside 0..{n}")
    if which is Generator.JMINUS:
        return {p - 1: float(p)} if p > 0 else {}
    if which is Generator.J0:
        return {p: p - 0.5 * n}
    coeff = float(p - n)
    return {p + 1: coeff} if coeff != 0.0 else {}


def generator_matrix(which, n: int) -> np.ndarray:
    """Matrix of a generator on {1, z, ..., z^n}; column p holds the image of z^p."""
    mat = np.zeros((n + 1, n + 1))
    for p in range(n + 1):
        for q, c in generator_action(which, n, p).items():
            mat[q, p] = c
    return mat


def gauge_hamiltonian_matrix(alg, idx, m: float) -> np.ndarray:
    """Matrix of the gauge Hamiltonian, -H = (1-m)J+^2 + (2-m)J0^2 + J-^2 + c+ J+ + c0 J0 + c- J- + c*."""
    if not 0.0 < m < 1.0:
        raise DomainError(f"parameter m={m!r} must lie in (0, 1)")
    aid = AlgebraizationId.build(alg, idx, m)
    n = aid.n
    jm = generator_matrix(Generator.JMINUS, n)
    j0 = generator_matrix(Generator.J0, n)
    jp = generator_matrix(Generator.JPLUS, n)
    minus_h = (
        (1 - m) * jp @ jp
        + (2 - m) * j0 @ j0
        + jm @ jm
        + aid.cplus * jp
        + aid.c0 * j0
        + aid.cminus * jm
        + aid.cstar * np.eye(n + 1)
    )
    h = -minus_h
    if aid.value in (Alg.ALG1, Alg.ALG2):
        return np.real(h)
    return h.astype(complex)


def casimir_matrix(n: int) -> np.ndarray:
    """J0^2 - (J+J- + J-J+)/2, which equals n(n+2)/4 times the identity."""
    jm = generator_matrix(Generator.JMINUS, n)
    j0 = generator_matrix(Generator.J0, n)
    jp = generator_matrix(Generator.JPLUS, n)
    return j0 @ j0 - 0.5 * (jp @ jm + jm @ jp)


def oracle_energies(alg, idx, m: float, imag_tol: float = 1e-10) -> np.ndarray:
    """Sorted real parts of the gauge-matrix eigenvalues (dense Hessenberg QR)."""
    h = gauge_hamiltonian_matrix(alg, idx, m)
    vals = np.linalg.eigvals(h)
    scale = 1.0 + np.max(np.abs(vals))
    if np.max(np.abs(vals.imag)) > imag_tol * scale:
        raise SpectralRealityError(
            f"gauge matrix spectrum is not real: max |Im| = {np.max(np.abs(vals.imag)):.3e}"
        )
    return np.sort(vals.real)
