"""Jacobi elliptic functions and the complete elliptic integral of the first kind.

Everything here works with the parameter ``m = k**2`` on ``0 <= m <= 1 - 1e-12``.
The quarter period is obtained from the arithmetic-geometric mean and the
functions ``sn, cn, dn, am`` from the descending Landen (AGM) sequence run on
the argument reduced modulo ``4K``.
"""

from dataclasses import dataclass, field
import math
from typing import NamedTuple

import numpy as np

from .errors import DomainError

M_MAX = 1.0 - 1e-12
_SMALL_M = 1e-12
_MAX_AGM_STEPS = 64


def _agm_sequence(kprime: float):
    """Return the AGM sequences (a_n, c_n) starting from a=1, b=k', c=k."""
    a, b = 1.0, kprime
    c = math.sqrt(max(0.0, 1.0 - kprime * kprime))
    avals, cvals = [a], [c]
    for _ in range(_MAX_AGM_STEPS):
        if abs(c) <= 1e-17 * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        avals.append(a)
        cvals.append(c)
    return avals, cvals


def _check_m(m) -> float:
    m = float(m)
    if not (0.0 <= m <= M_MAX) or math.isnan(m):
        raise DomainError(f"parameter m={m!r} outside the supported range [0, 1-1e-12]")
    return m


def complete_K(m: float) -> float:
    """Complete elliptic integral of the first kind, K(m) = pi / (2 AGM(1, sqrt(1-m)))."""
    m = _check_m(m)
    if m == 0.0:
        return 0.5 * math.pi
    kprime = math.sqrt(1.0 - m)
    avals, _ = _agm_sequence(kprime)
    return 0.5 * math.pi / avals[-1]


@dataclass(frozen=True)
class EllipticModulus:
    """Immutable elliptic parameter with its derived constants."""

    m: float
    k: float = field(init=False)
    kprime: float = field(init=False)
    bigK: float = field(init=False)

    def __post_init__(self):
        m = _check_m(self.m)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "k", math.sqrt(m))
        object.__setattr__(self, "kprime", math.sqrt(1.0 - m))
        object.__setattr__(self, "bigK", complete_K(m))

    @classmethod
    def coerce(cls, mod) -> "EllipticModulus":
        return mod if isinstance(mod, cls) else cls(mod)


class JacobiTriple(NamedTuple):
    sn: np.ndarray
    cn: np.ndarray
    dn: np.ndarray


def reduce_argument(x, mod: EllipticModulus):
    """Split x = x0 + 4K q with x0 in [-2K, 2K). Returns (x0, q)."""
    period = 4.0 * mod.bigK
    x = np.asarray(x, dtype=float)
    q = np.floor((x + 2.0 * mod.bigK) / period)
    x0 = x - q * period
    # guard rounding at the interval ends
    hi = x0 >= 2.0 * mod.bigK
    x0 = np.where(hi, x0 - period, x0)
    q = np.where(hi, q + 1, q)
    lo = x0 < -2.0 * mod.bigK
    x0 = np.where(lo, x0 + period, x0)
    q = np.where(lo, q - 1, q)
    return x0, q.astype(np.int64)


def _amplitude_reduced(x0, mod: EllipticModulus):
    """am(x0) for |x0| <= 2K via the descending AGM amplitude recursion."""
    m = mod.m
    if m < _SMALL_M:
        s, c = np.sin(x0), np.cos(x0)
        return x0 - 0.25 * m * (x0 - s * c)
    avals, cvals = _agm_sequence(mod.kprime)
    n = len(avals) - 1
    phi = (2.0 ** n) * avals[n] * x0
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(cvals[j] / avals[j] * np.sin(phi)))
    return phi


def _reduced_state(x, mod: EllipticModulus):
    """Internal: (x0, q, am(x0), sn, cn, dn) with x reduced into [-2K, 2K)."""
    x0, q = reduce_argument(x, mod)
    phi = _amplitude_reduced(x0, mod)
    sn0 = np.sin(phi)
    cn0 = np.cos(phi)
    if mod.m < _SMALL_M:
        dn = 1.0 - 0.5 * mod.m * sn0 * sn0
    else:
        # dn^2 = cn^2 + k'^2 sn^2 has no cancellation
        dn = np.sqrt(cn0 * cn0 + (mod.kprime * sn0) ** 2)
    # sn(x0 + 4Kq) = sn(x0), same for cn and dn
    return x0, q, phi, sn0, cn0, dn


def _out(a, scalar):
    return float(a) if scalar else a


def jacobi(x, mod) -> JacobiTriple:
    """Return (sn x, cn x, dn x). Accepts scalars or arrays; mod may be a bare m."""
    mod = EllipticModulus.coerce(mod)
    scalar = np.ndim(x) == 0
    _, _, _, sn, cn, dn = _reduced_state(x, mod)
    return JacobiTriple(_out(sn, scalar), _out(cn, scalar), _out(dn, scalar))


def jacobi_am(x, mod):
    """Continuous amplitude am x, with am(x + 4K) = am(x) + 2 pi."""
    mod = EllipticModulus.coerce(mod)
    scalar = np.ndim(x) == 0
    _, q, phi, _, _, _ = _reduced_state(x, mod)
    return _out(phi + 2.0 * math.pi * q, scalar)
