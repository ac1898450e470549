"""Weakly orthogonal polynomial families attached to the Lame equation.

Three families are supported:

* ``INT_FIRST``  (integer lambda, n = lambda): eigenfunctions cn^lambda * chi(sn/cn)
* ``INT_SECOND`` (integer lambda >= 1, n = lambda - 1): an extra dn prefactor
* ``HALF``       (half-integer lambda, n = lambda - 1/2): the non-meromorphic case

Each family is defined by a monic three-term recurrence

    Phat_{j+1}(E) = (E - b_j) Phat_j(E) - a_j Phat_{j-1}(E),   Phat_{-1} = 0, Phat_0 = 1,

whose member Phat_{n+1} (the critical polynomial) has the n+1 algebraic
energies as its roots.  The eigenfunction coefficients p_ij = pi_j(E_i) come
from a rescaled version of the same recurrence (see :func:`pi_recurrence_terms`).
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import warnings

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DomainError, InconsistentInputError

MAX_DEGREE = 64
CONDITIONING_WARN_DEGREE = 40
# energies closer than this (relative) are treated as a tie
TIE_RTOL = 1e-13


class Kind(Enum):
    INTEGER = "integer"
    HALF_INTEGER = "half-integer"


class FamilyTag(str, Enum):
    INT_FIRST = "int-first"
    INT_SECOND = "int-second"
    HALF = "half"

    @classmethod
    def parse(cls, value) -> "FamilyTag":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"first": "int-first", "second": "int-second", "1": "int-first",
                   "2": "int-second", "intfirst": "int-first", "intsecond": "int-second"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown family {value!r}") from None


@dataclass(frozen=True)
class LameIndex:
    """The Lame index lambda, stored exactly as the integer 2*lambda."""

    twice_lambda: int

    def __post_init__(self):
        if not isinstance(self.twice_lambda, (int, np.integer)) or self.twice_lambda < 0:
            raise DomainError(f"2*lambda must be a non-negative integer, got {self.twice_lambda!r}")
        object.__setattr__(self, "twice_lambda", int(self.twice_lambda))

    @classmethod
    def parse(cls, value) -> "LameIndex":
        """Accept 2, "2", "3/2", Fraction(3, 2), or 1.5 (floats must be exact half-integers)."""
        if isinstance(value, cls):
            return value
        if isinstance(value, float):
            twice = 2.0 * value
            if not twice.is_integer():
                raise DomainError(f"lambda={value!r} is neither an integer nor a half-integer")
            return cls(int(twice))
        try:
            frac = Fraction(value.strip()) if isinstance(value, str) else Fraction(value)
        except (ValueError, ZeroDivisionError, TypeError):
            raise DomainError(f"cannot parse lambda from {value!r}") from None
        twice = 2 * frac
        if twice.denominator != 1:
            raise DomainError(f"lambda={value!r} is neither an integer nor a half-integer")
        if twice < 0:
            raise DomainError(f"lambda={value!r} must be non-negative")
        return cls(int(twice))

    @property
    def lam(self) -> Fraction:
        return Fraction(self.twice_lambda, 2)

    @property
    def kind(self) -> Kind:
        return Kind.INTEGER if self.twice_lambda % 2 == 0 else Kind.HALF_INTEGER

    @property
    def families(self) -> tuple:
        if self.kind is Kind.HALF_INTEGER:
            return (FamilyTag.HALF,)
        if self.twice_lambda == 0:
            return (FamilyTag.INT_FIRST,)
        return (FamilyTag.INT_FIRST, FamilyTag.INT_SECOND)

    def n(self, family) -> int:
        family = FamilyTag.parse(family)
        self.check_family(family)
        if family is FamilyTag.INT_FIRST:
            return self.twice_lambda // 2
        if family is FamilyTag.INT_SECOND:
            return self.twice_lambda // 2 - 1
        return (self.twice_lambda - 1) // 2

    def check_family(self, family):
        if family not in self.families:
            raise DomainError(f"family {family.value!r} is not available for lambda={self}")

    def __str__(self):
        lam = self.lam
        return str(lam.numerator) if lam.denominator == 1 else f"{lam.numerator}/{lam.denominator}"


@dataclass(frozen=True)
class RecurrencePair:
    a: float
    b: float


def recurrence_coefficients(family, idx, m: float, j: int) -> RecurrencePair:
    """Coefficients (a_j, b_j) of the monic recurrence for the given family."""
    family = FamilyTag.parse(family)
    idx = LameIndex.parse(idx)
    n = idx.n(family)
    if not 0 <= j <= n + 1:
        raise DomainError(f"j={j} outside 0..{n + 1}")
    lam = float(idx.lam)
    if family is FamilyTag.INT_FIRST:
        a = 0.25 * m * m * j * (2 * j - 1) * (2 * lam - 2 * j + 1) * (lam - j + 1)
        b = 0.5 * m * lam * (lam + 1) + 0.5 * (2 - m) * (lam - 2 * j) ** 2
    elif family is FamilyTag.INT_SECOND:
        a = 0.25 * m * m * j * (2 * j + 1) * (2 * lam - 2 * j + 1) * (lam - j)
        b = 0.5 * m * lam * (lam + 1) + 0.5 * (2 - m) * (lam - 2 * j - 1) ** 2
    else:
        a = 0.25 * m * m * j * (2 * j - 1) * (2 * n - 2 * j + 3) * (n - j + 1)
        b = 0.25 * (2 * n + 1) * (m + 2 * n + 1) - (2 - m) * j * (2 * n - 2 * j + 1)
    return RecurrencePair(float(a), float(b))


def recurrence_arrays(family, idx, m: float):
    """Arrays (a_0..a_n, b_0..b_n) for the critical recurrence (a_0 is unused, 0)."""
    family = FamilyTag.parse(family)
    idx = LameIndex.parse(idx)
    n = idx.n(family)
    pairs = [recurrence_coefficients(family, idx, m, j) for j in range(n + 1)]
    return np.array([p.a for p in pairs]), np.array([p.b for p in pairs])


def _check_degree(degree: int):
    if degree > MAX_DEGREE:
        raise DomainError(f"critical polynomial degree {degree} exceeds the cap {MAX_DEGREE}")
    if degree > CONDITIONING_WARN_DEGREE:
        warnings.warn(
            f"degree {degree} monic polynomial: coefficient-form roots are badly conditioned",
            RuntimeWarning,
            stacklevel=3,
        )


def hat_polynomials(family, idx, m: float) -> list:
    """[Phat_0, ..., Phat_{n+1}] as numpy Polynomials in E."""
    family = FamilyTag.parse(family)
    idx = LameIndex.parse(idx)
    n = idx.n(family)
    _check_degree(n + 1)
    a, b = recurrence_arrays(family, idx, m)
    E = Polynomial([0.0, 1.0])
    prev, cur = Polynomial([0.0]), Polynomial([1.0])
    out = [cur]
    for j in range(n + 1):
        prev, cur = cur, (E - b[j]) * cur - a[j] * prev
        out.append(cur)
    return out


def critical_polynomial(family, idx, m: float) -> Polynomial:
    """Monic Phat_{n+1}(E); coefficients ascending (``.coef``)."""
    return hat_polynomials(family, idx, m)[-1]


def hat_values(family, idx, m: float, E):
    """Evaluate Phat_0..Phat_{n+1} at E by running the recurrence numerically.

    Returns an array of shape (n+2,) + shape(E).
    """
    family = FamilyTag.parse(family)
    idx = LameIndex.parse(idx)
    n = idx.n(family)
    a, b = recurrence_arrays(family, idx, m)
    E = np.asarray(E, dtype=float)
    prev, cur = np.zeros_like(E), np.ones_like(E)
    vals = [cur]
    for j in range(n + 1):
        prev, cur = cur, (E - b[j]) * cur - a[j] * prev
        vals.append(cur)
    return np.array(vals)


def pi_recurrence_terms(family, idx, j: int):
    """(A_j, C_j) with A_j pi_{j+1} = (2/m)(b_j - E) pi_j - C_j pi_{j-1}.

    pi_j = (-1)^j P_j / j! is the unscaled family; P_j and Phat_j differ by the
    family's normalisation factor, which is absorbed into A_j and C_j.
    """
    family = FamilyTag.parse(family)
    idx = LameIndex.parse(idx)
    lam = float(idx.lam)
    if family is FamilyTag.INT_FIRST:
        return (j + 1) * (2 * lam - 2 * j - 1), (2 * j - 1) * (lam - j + 1)
    if family is FamilyTag.INT_SECOND:
        return (j + 1) * (2 * lam - 2 * j - 1), (2 * j + 1) * (lam - j)
    n = idx.n(family)
    return (j + 1) * (2 * j + 1), (2 * n - 2 * j + 3) * (n - j + 1)


def pi_values(family, idx, m: float, E, upto=None):
    """pi_0(E), ..., pi_upto(E) (default upto = n + 1); shape (upto+1,) + shape(E)."""
    family = FamilyTag.parse(family)
    idx = LameIndex.parse(idx)
    n = idx.n(family)
    upto = n + 1 if upto is None else upto
    if not 0 <= upto <= n + 1:
        raise DomainError(f"upto={upto} outside 0..{n + 1}")
    _, b = recurrence_arrays(family, idx, m)
    E = np.asarray(E, dtype=float)
    prev, cur = np.zeros_like(E), np.ones_like(E)
    vals = [cur]
    for j in range(upto):
        A, C = pi_recurrence_terms(family, idx, j)
        prev, cur = cur, ((2.0 / m) * (b[j] - E) * cur - C * prev) / A
        vals.append(cur)
    return np.array(vals)


def pi_row(family, idx, m: float, E: float) -> np.ndarray:
    """pi_0(E)..pi_n(E) at a root E of the critical polynomial.

    The recurrence is run forward from (pi_{-1}, pi_0) = (0, 1) and backward from
    (pi_{n+1}, pi_n) = (0, 1); the two are matched where the forward solution
    peaks.  A purely forward sweep amplifies the rounding error of E by the
    growth of the recurrence, which is severe near the top of the spectrum.
    """
    family = FamilyTag.parse(family)
    idx = LameIndex.parse(idx)
    n = idx.n(family)
    _, b = recurrence_arrays(family, idx, m)
    E = float(E)
    fwd = pi_values(family, idx, m, E, upto=n)
    bwd = np.zeros(n + 2)
    bwd[n] = 1.0
    for j in range(n, 0, -1):
        A, C = pi_recurrence_terms(family, idx, j)
        bwd[j - 1] = ((2.0 / m) * (b[j] - E) * bwd[j] - A * bwd[j + 1]) / C
    k = int(np.argmax(np.abs(fwd)))
    if bwd[k] == 0.0:
        return fwd
    row = fwd.copy()
    row[k + 1 :] = bwd[k + 1 : n + 1] * (fwd[k] / bwd[k])
    return row


@dataclass(frozen=True)
class CoeffTable:
    """p_ij = pi_j(E_i) for 0 <= i, j <= n, plus the folded combinations.

    sigma_ij = p_ij + p_{i,n-j} and rho_ij = p_ij - p_{i,n-j}.
    """

    family: FamilyTag
    lam: LameIndex
    m: float
    energies: np.ndarray
    p: np.ndarray
    sigma: np.ndarray
    rho: np.ndarray
    pi_next: np.ndarray  # pi_{n+1}(E_i); vanishes up to rounding

    @property
    def n(self) -> int:
        return len(self.energies) - 1


def _root_tolerance(poly: Polynomial, E: float) -> float:
    mag = np.sum(np.abs(poly.coef) * np.abs(E) ** np.arange(len(poly.coef)))
    return 1e-8 * mag


def coeff_table(family, idx, m: float, energies) -> CoeffTable:
    family = FamilyTag.parse(family)
    idx = LameIndex.parse(idx)
    n = idx.n(family)
    energies = np.asarray(energies, dtype=float)
    if energies.shape != (n + 1,):
        raise InconsistentInputError(f"expected {n + 1} energies, got {energies.shape}")
    if n > 0:
        gaps = np.diff(energies)
        if np.any(gaps <= TIE_RTOL * (1.0 + np.abs(energies[1:]))):
            raise InconsistentInputError("energies must be strictly increasing and simple")
    crit = critical_polynomial(family, idx, m)
    resid = hat_values(family, idx, m, energies)[-1]
    for E, r in zip(energies, resid):
        if abs(r) > _root_tolerance(crit, E):
            raise InconsistentInputError(f"E={E!r} is not a root of the critical polynomial")

    p = np.array([pi_row(family, idx, m, E) for E in energies])
    _, b = recurrence_arrays(family, idx, m)
    A, C = pi_recurrence_terms(family, idx, n)
    prev = p[:, n - 1] if n > 0 else np.zeros(n + 1)
    pi_next = ((2.0 / m) * (b[n] - energies) * p[:, n] - C * prev) / A
    sigma = p + p[:, ::-1]
    rho = p - p[:, ::-1]
    for arr in (p, sigma, rho, pi_next):
        arr.setflags(write=False)
    energies = energies.copy()
    energies.setflags(write=False)
    return CoeffTable(family, idx, float(m), energies, p, sigma, rho, pi_next)
