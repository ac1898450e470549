"""Closed-form algebraic eigenfunctions of the Lame equation.

Integer lambda (Lame polynomials), with c = cn x and prefactor 1 (INT_FIRST) or
dn x (INT_SECOND):

    even index:  prefactor * [p_{n/2} + sum_{j<n/2} sigma_j T_{n-2j}(c)]
    odd index:   prefactor * sn x * sum_{j<n/2} rho_j U_{n-2j-1}(c)

Half-integer lambda (non-meromorphic Lame functions), with c = cd x = cn/dn and
n = lambda - 1/2, one energy carries two real solutions

    branch One:  sqrt(dn + cn)        dn^n [A(c) + (c - 1) B(c)]      (even in x)
    branch Two:  eps(x) sqrt(dn - cn) dn^n [A(c) + (c + 1) B(c)]      (odd in x)

with the sign of branch Two chosen so that phi2(x) = phi1(x + 2K) for every n
(for even n this is -1 times the displayed form),

where A = p_{n/2} + sum sigma_j T_{n-2j} and B = sum rho_j U_{n-2j-1}; both are
extended outside [-2K, 2K) by f(x + 4K) = -f(x).

Every spec is rescaled so that its polynomial factor in sn^2 x is monic; the
scale applied to the raw Chebyshev form is kept in ``EigenfunctionSpec.scale``.
"""

from dataclasses import dataclass, field
from enum import Enum
import math

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import chebyshev as npcheb

from ._jet import Jet
from .elliptic import EllipticModulus, _reduced_state
from .errors import DomainError
from .polyfam import FamilyTag, Kind, LameIndex, coeff_table
from .spectrum import family_energies

ZERO_COUNT_SAMPLES = 4096


# --------------------------------------------------------------------------
# Chebyshev polynomials


class ChebKind(Enum):
    T = "T"
    U = "U"
    TTILDE = "Ttilde"
    UTILDE = "Utilde"


def _basis(kind: ChebKind, degree: int, t):
    """Values B_0(t)..B_degree(t) for T or U; t may be a float, array or Jet."""
    one = t * 0.0 + 1.0
    vals = [one]
    if degree == 0:
        return vals
    vals.append(t if kind is ChebKind.T else 2.0 * t)
    for _ in range(1, degree):
        vals.append(2.0 * t * vals[-1] - vals[-2])
    return vals


def _tilde_basis(kind: ChebKind, degree: int, t):
    """Values Btilde_0, Btilde_2, ..., Btilde_degree (even degrees only).

    Uses Btilde_{2j+2} = 2 T_2(t) Btilde_{2j} - Btilde_{2j-2}, so t = 0 is regular.
    """
    one = t * 0.0 + 1.0
    if kind is ChebKind.TTILDE:
        prev, cur = one, one  # Ttilde_{-2} = T_{-1}/t = 1
    else:
        prev, cur = 0.0 * one, 2.0 * one  # Utilde_{-2} = U_{-1}/t = 0
    vals = [cur]
    two_t2 = 2.0 * (2.0 * t * t - 1.0)
    for _ in range(degree // 2):
        prev, cur = cur, two_t2 * cur - prev
        vals.append(cur)
    return vals


def _cheb_value(kind: ChebKind, degree: int, t):
    if degree < 0:
        if kind is ChebKind.U and degree == -1:
            return t * 0.0
        raise DomainError(f"negative degree {degree} for {kind.value}")
    if kind in (ChebKind.T, ChebKind.U):
        return _basis(kind, degree, t)[degree]
    if degree % 2:
        raise DomainError(f"{kind.value} is only defined for even degrees, got {degree}")
    return _tilde_basis(kind, degree, t)[degree // 2]


def chebyshev_eval(kind, degree: int, t, derivatives: bool = False):
    """T_j, U_j, Ttilde_j or Utilde_j at t; with ``derivatives`` returns (f, f', f'')."""
    kind = ChebKind(kind) if not isinstance(kind, ChebKind) else kind
    if derivatives:
        jet = _cheb_value(kind, degree, Jet.variable(t))
        if not isinstance(jet, Jet):
            jet = Jet.const(jet)
        return jet.as_tuple()
    return _cheb_value(kind, degree, t)


def _series(kind: ChebKind, coeffs, t):
    """sum_k coeffs[k] B_k(t) for B = T or U."""
    coeffs = np.asarray(coeffs, dtype=float)
    if len(coeffs) == 0:
        return t * 0.0
    basis = _basis(kind, len(coeffs) - 1, t)
    total = t * 0.0
    for c, b in zip(coeffs, basis):
        if c != 0.0:
            total = total + c * b
    return total


def _u_to_power(coeffs) -> np.ndarray:
    """Power-basis coefficients of sum_k coeffs[k] U_k(t)."""
    coeffs = np.asarray(coeffs, dtype=float)
    out = Polynomial([0.0])
    tpoly = Polynomial([0.0, 1.0])
    prev, cur = Polynomial([0.0]), Polynomial([1.0])
    for k, c in enumerate(coeffs):
        if k == 1:
            prev, cur = cur, 2 * tpoly
        elif k > 1:
            prev, cur = cur, 2 * tpoly * cur - prev
        out = out + c * cur
    return _pad(out.coef, len(coeffs))


def _t_to_power(coeffs) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=float)
    if len(coeffs) == 0:
        return np.zeros(0)
    return _pad(npcheb.cheb2poly(coeffs), len(coeffs))


def _pad(c, length):
    c = np.asarray(c, dtype=float)
    if len(c) >= length:
        return c[:length] if length else c[:0]
    return np.concatenate([c, np.zeros(length - len(c))])


def _even_part(c, odd: bool):
    """Coefficients r_{2k} of an even polynomial (after dividing an odd one by t)."""
    c = np.asarray(c, dtype=float)
    return c[1::2] if odd else c[0::2]


def _to_sn2(even_coeffs, m: float, hom_degree=None) -> np.ndarray:
    """Rewrite an even polynomial R(c) = sum r_k c^{2k} in t = sn^2.

    Without ``hom_degree``, c = cn and cn^2 = 1 - t.  With ``hom_degree = 2d``
    the homogeneous form dn^{2d} R(cn/dn) = sum r_k (1-t)^k (1-mt)^{d-k} is used.
    """
    u = Polynomial([1.0, -1.0])
    w = Polynomial([1.0, -m])
    out = Polynomial([0.0])
    for k, r in enumerate(even_coeffs):
        term = u ** k
        if hom_degree is not None:
            term = term * w ** (hom_degree // 2 - k)
        out = out + r * term
    return out.coef


# --------------------------------------------------------------------------
# Specs


class Branch(Enum):
    ONE = 1
    TWO = 2


class Factor(Enum):
    ONE = "1"
    SN_CN = "sn cn"
    CN_DN = "cn dn"
    SN_DN = "sn dn"
    CN = "cn"
    SN = "sn"
    DN = "dn"
    SN_CN_DN = "sn cn dn"
    EC_LIKE = "Ec"
    ES_LIKE = "Es"


_FACTORS = {
    (False, False, False): Factor.ONE,
    (True, True, False): Factor.SN_CN,
    (False, True, True): Factor.CN_DN,
    (True, False, True): Factor.SN_DN,
    (False, True, False): Factor.CN,
    (True, False, False): Factor.SN,
    (False, False, True): Factor.DN,
    (True, True, True): Factor.SN_CN_DN,
}


@dataclass(frozen=True)
class ClassTag:
    factor: Factor
    zero_count: int = None

    @property
    def has_sn(self):
        return "sn" in self.factor.value.split()

    @property
    def has_cn(self):
        return "cn" in self.factor.value.split()

    @property
    def has_dn(self):
        return "dn" in self.factor.value.split()


@dataclass(frozen=True, eq=False)
class EigenfunctionSpec:
    """One algebraic eigenfunction, immutable; evaluate with ``spec(x)``.

    t_series / u_series are the Chebyshev coefficients (ascending degree) of the
    cos-type and sin-type parts; alpha / beta are the monic-normalised
    polynomial factors in t = sn^2 x (beta only for half-integer lambda).
    """

    lam: LameIndex
    m: float
    family: FamilyTag
    index: int
    energy: float
    cls: ClassTag
    t_series: np.ndarray
    u_series: np.ndarray
    scale: float
    alpha: np.ndarray
    beta: np.ndarray = field(default_factory=lambda: np.zeros(0))
    branch: Branch = None

    @property
    def modulus(self) -> EllipticModulus:
        return EllipticModulus(self.m)

    @property
    def n(self) -> int:
        return self.lam.n(self.family)

    @property
    def parity(self) -> int:
        """+1 for even functions of x, -1 for odd ones."""
        if self.branch is not None:
            return 1 if self.branch is Branch.ONE else -1
        return -1 if self.cls.has_sn else 1

    @property
    def sign(self) -> int:
        """Sign in front of the alpha/beta closed form (only -1 for branch Two with even n)."""
        return -1 if self.branch is Branch.TWO and self.n % 2 == 0 else 1

    @property
    def ince_label(self) -> str:
        if self.branch is None or self.cls.zero_count is None:
            return ""
        base = "Ec" if self.branch is Branch.ONE else "Es"
        return f"{base}_{self.lam}^({2 * self.cls.zero_count + 1}/2)"

    def __call__(self, x):
        return evaluate(self, x)

    def eval(self, x):
        return evaluate(self, x)

    def eval_with_derivatives(self, x, stabilized=True):
        return evaluate_with_derivatives(self, x, stabilized=stabilized)

    def describe(self) -> dict:
        return {
            "lambda": str(self.lam),
            "m": self.m,
            "family": self.family.value,
            "index": self.index,
            "branch": None if self.branch is None else self.branch.value,
            "energy": self.energy,
            "class": self.cls.factor.value,
            "zero_count": self.cls.zero_count,
            "ince_label": self.ince_label,
            "scale": self.scale,
            "sign": self.sign,
            "alpha": [float(c) for c in self.alpha],
            "beta": [float(c) for c in self.beta],
        }


def _series_for_row(n: int, p_row, sigma_row, rho_row):
    """T- and U-basis coefficient arrays of A(c) and B(c) for one energy."""
    t_series = np.zeros(n + 1)
    u_series = np.zeros(max(n, 0))
    for j in range(n + 1):
        if 2 * j < n:
            t_series[n - 2 * j] = sigma_row[j]
            u_series[n - 2 * j - 1] = rho_row[j]
        elif 2 * j == n:
            t_series[0] = p_row[j]
    return t_series, u_series


def _normalise(poly, expected_degree: int):
    poly = _pad(poly, expected_degree + 1)
    lead = poly[expected_degree]
    if abs(lead) <= 1e-12 * max(np.max(np.abs(poly)), 1e-300):
        raise ArithmeticError("leading coefficient of the polynomial factor vanishes")
    return 1.0 / lead


def _integer_spec(table, i: int) -> EigenfunctionSpec:
    family, n, m = table.family, table.n, table.m
    t_series, u_series = _series_for_row(n, table.p[i], table.sigma[i], table.rho[i])
    cos_type = i % 2 == 0
    if cos_type:
        u_series = np.zeros_like(u_series)
        q = _t_to_power(t_series)
        deg_q = n
    else:
        t_series = np.zeros_like(t_series)
        q = _u_to_power(u_series)
        deg_q = n - 1
    q_is_odd = deg_q % 2 == 1
    poly = _to_sn2(_even_part(q, q_is_odd), m)
    expected = deg_q // 2
    scale = _normalise(poly, expected)
    alpha = _pad(poly, expected + 1) * scale
    factor = _FACTORS[(not cos_type, q_is_odd, family is FamilyTag.INT_SECOND)]
    return EigenfunctionSpec(
        lam=table.lam, m=m, family=family, index=i, energy=float(table.energies[i]),
        cls=ClassTag(factor), t_series=t_series, u_series=u_series, scale=scale, alpha=alpha,
    )


def _half_polys(n: int, t_series, u_series, m: float):
    """(alpha, beta) in t = sn^2 with phi1 = sqrt(dn+cn) [P alpha + Q beta]."""
    a_pow = _t_to_power(t_series)
    b_pow = _u_to_power(u_series)
    if n % 2 == 1:
        # A odd, B even: phi1 = sqrt(dn+cn) [cn alpha + dn beta]
        a_over_c = _even_part(a_pow, True)
        b_even = _even_part(b_pow, False)
        size = max(len(a_over_c), len(b_even))
        alpha = _to_sn2(_pad(a_over_c, size) + _pad(b_even, size), m, hom_degree=n - 1)
        beta = -_to_sn2(b_even, m, hom_degree=n - 1)
        return _pad(alpha, (n - 1) // 2 + 1), _pad(beta, (n - 1) // 2 + 1)
    # A even, B odd: phi1 = sqrt(dn+cn) [alpha + cn dn beta]
    a_even = _even_part(a_pow, False)
    if n == 0:
        return _pad(_to_sn2(a_even, m, hom_degree=0), 1), np.zeros(0)
    b_over_c = _even_part(b_pow, True)
    # A + c^2 Btilde in even coefficients: c^2 shifts Btilde up by one slot
    shifted = np.concatenate([[0.0], b_over_c])
    size = max(len(a_even), len(shifted))
    alpha = _to_sn2(_pad(a_even, size) + _pad(shifted, size), m, hom_degree=n)
    beta = -_to_sn2(b_over_c, m, hom_degree=n - 2)
    return _pad(alpha, n // 2 + 1), _pad(beta, n // 2)


def _half_specs(table, i: int):
    n, m = table.n, table.m
    t_series, u_series = _series_for_row(n, table.p[i], table.sigma[i], table.rho[i])
    alpha, beta = _half_polys(n, t_series, u_series, m)
    expected = (n - 1) // 2 if n % 2 == 1 else n // 2
    scale = _normalise(alpha, expected)
    common = dict(
        lam=table.lam, m=m, family=table.family, index=i, energy=float(table.energies[i]),
        t_series=t_series, u_series=u_series, scale=scale,
        alpha=alpha * scale, beta=beta * scale,
    )
    one = EigenfunctionSpec(cls=ClassTag(Factor.EC_LIKE), branch=Branch.ONE, **common)
    r = count_zeros(one)
    # branch Two is pinned by phi2(x) = phi1(x + 2K); for even n that is minus the
    # eps sqrt(dn - cn) [...] form, so the sign goes into the recorded scale
    two = dict(common, scale=scale if n % 2 == 1 else -scale)
    return [
        EigenfunctionSpec(cls=ClassTag(Factor.EC_LIKE, r), branch=Branch.ONE, **common),
        EigenfunctionSpec(cls=ClassTag(Factor.ES_LIKE, r), branch=Branch.TWO, **two),
    ]


def build_eigenfunctions(idx, m: float) -> list:
    """All 2*lambda + 1 algebraic eigenfunctions (two branches per energy when lambda is half-integer)."""
    idx = LameIndex.parse(idx)
    mod = EllipticModulus.coerce(m)
    if mod.m <= 0.0:
        raise DomainError(f"parameter m={mod.m!r} must lie in (0, 1)")
    specs = []
    for family in idx.families:
        energies = family_energies(family, idx, mod.m)
        table = coeff_table(family, idx, mod.m, energies)
        for i in range(len(energies)):
            if idx.kind is Kind.INTEGER:
                specs.append(_integer_spec(table, i))
            else:
                specs.extend(_half_specs(table, i))
    return specs


def select(specs, family=None, index=None, branch=None) -> EigenfunctionSpec:
    """Pick one spec out of :func:`build_eigenfunctions` output."""
    family = None if family is None else FamilyTag.parse(family)
    branch = None if branch is None else Branch(int(branch) if not isinstance(branch, Branch) else branch.value)
    for s in specs:
        if family is not None and s.family is not family:
            continue
        if index is not None and s.index != index:
            continue
        if branch is not None and s.branch is not None and s.branch is not branch:
            continue
        return s
    raise DomainError(f"no eigenfunction with family={family}, index={index}, branch={branch}")


# --------------------------------------------------------------------------
# Evaluation


def _elliptic_jets(x, mod: EllipticModulus):
    x0, q, phi, sn, cn, dn = _reduced_state(x, mod)
    m = mod.m
    sn_j = Jet(sn, cn * dn, -sn * (dn * dn + m * cn * cn))
    cn_j = Jet(cn, -sn * dn, -cn * (dn * dn - m * sn * sn))
    dn_j = Jet(dn, -m * sn * cn, -m * dn * (cn * cn - sn * sn))
    return x0, q, phi, sn_j, cn_j, dn_j


def _root_jets(sn, cn, dn, phi, mod: EllipticModulus, stabilized: bool):
    """Jets of g = sqrt(dn + cn) and h = eps(x) sqrt(dn - cn) on [-2K, 2K).

    g h = k' sn, so whichever of the two is well away from zero fixes the other
    without cancellation.
    """
    m, kp = mod.m, mod.kprime
    eps = np.sign(phi)
    if stabilized:
        pos = cn >= 0.0
        g_pos = np.sqrt(np.where(pos, dn + cn, 1.0))
        h_neg = eps * np.sqrt(np.where(pos, 1.0, dn - cn))
        g = np.where(pos, g_pos, kp * sn / np.where(pos, 1.0, h_neg))
        h = np.where(pos, kp * sn / g_pos, h_neg)
    else:
        g = np.sqrt(np.maximum(dn + cn, 0.0))
        h = eps * np.sqrt(np.maximum(dn - cn, 0.0))
    g1 = -(m * cn + dn) * h / (2.0 * kp)
    h1 = (dn - m * cn) * g / (2.0 * kp)
    g2 = (m * sn * g * g * h - (m * cn + dn) * h1) / (2.0 * kp)
    h2 = (m * sn * h * h * g + (dn - m * cn) * g1) / (2.0 * kp)
    return Jet(g, g1, g2), Jet(h, h1, h2)


def _evaluate_jet(spec: EigenfunctionSpec, x, stabilized=True) -> Jet:
    mod = EllipticModulus(spec.m)
    x0, q, phi, sn, cn, dn = _elliptic_jets(x, mod)
    if spec.branch is None:
        if spec.cls.has_sn:
            val = sn * _series(ChebKind.U, spec.u_series, cn)
        else:
            val = _series(ChebKind.T, spec.t_series, cn)
        if spec.family is FamilyTag.INT_SECOND:
            val = dn * val
        return val * spec.scale

    if not stabilized:
        near = np.abs(np.abs(x0) - 2.0 * mod.bigK) < 1e-9
        if np.any(near):
            raise DomainError("evaluation within 1e-9 of x = 2K (mod 4K) needs the stabilised form")
    g, h = _root_jets(sn.v, cn.v, dn.v, phi, mod, stabilized)
    cd = cn / dn
    a_part = _series(ChebKind.T, spec.t_series, cd)
    b_part = _series(ChebKind.U, spec.u_series, cd)
    if spec.branch is Branch.ONE:
        val = g * (a_part + (cd - 1.0) * b_part)
    else:
        val = h * (a_part + (cd + 1.0) * b_part)
    val = val * dn ** spec.n
    sign = np.where(q % 2 == 0, 1.0, -1.0)
    return val * (sign * spec.scale)


def _unwrap(arr, scalar):
    return float(arr) if scalar else np.asarray(arr, dtype=float)


def evaluate(spec: EigenfunctionSpec, x):
    """psi(x) for the monic-normalised eigenfunction."""
    scalar = np.ndim(x) == 0
    return _unwrap(_evaluate_jet(spec, x).v, scalar)


def evaluate_with_derivatives(spec: EigenfunctionSpec, x, stabilized=True):
    """(psi, psi', psi'') from analytic differentiation of the closed form."""
    scalar = np.ndim(x) == 0
    jet = _evaluate_jet(spec, x, stabilized=stabilized)
    return tuple(_unwrap(np.broadcast_to(c, np.shape(jet.v)), scalar) for c in jet.as_tuple())


def count_zeros(spec: EigenfunctionSpec, samples: int = ZERO_COUNT_SAMPLES) -> int:
    """Number of sign changes of the eigenfunction on the open interval (0, 2K)."""
    if spec.branch is None:
        raise DomainError("zero counting is defined for half-integer specs")
    bigK = EllipticModulus(spec.m).bigK
    xs = 2.0 * bigK * (np.arange(1, samples + 1) - 0.5) / samples
    vals = evaluate(spec, xs)
    count = 0
    for k in range(samples - 1):
        a, b = vals[k], vals[k + 1]
        if a == 0.0 or a * b < 0.0:
            lo, hi = xs[k], xs[k + 1]
            fa = a
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                fm = evaluate(spec, mid)
                if fa * fm <= 0.0:
                    hi = mid
                else:
                    lo, fa = mid, fm
            if 0.0 < 0.5 * (lo + hi) < 2.0 * bigK:
                count += 1
    return count
