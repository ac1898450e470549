"""Property checks with machine-readable pass/fail reports.

Every check is deterministic: the grids are fixed, nothing is sampled at
random, so identical inputs give bit-identical reports.
"""

from dataclasses import dataclass, field
import json
import math
import sys

import numpy as np

from .elliptic import EllipticModulus, jacobi
from .errors import DomainError, SpectralRealityError
from .lamefun import Branch, build_eigenfunctions, evaluate, evaluate_with_derivatives
from .polyfam import (
    FamilyTag, Kind, LameIndex, TIE_RTOL, coeff_table, hat_polynomials, pi_recurrence_terms, recurrence_arrays,
)
from .qes_oracle import Alg, casimir_matrix, gauge_hamiltonian_matrix, oracle_energies
from .spectrum import bisection_eigenvalues, family_energies, tridiagonal_from_recurrence

ODE_TOL = 1e-9
FD_TOL = 1e-6
ORACLE_TOL = 1e-10
BISECTION_TOL = 1e-11
STRUCTURE_TOL = 1e-9
PARITY_TOL = 1e-11
SHIFT_TOL = 1e-10
INTERLACE_MARGIN = 1e-12
DEFAULT_GRID = 1001

_ALGS = {
    FamilyTag.INT_FIRST: (Alg.ALG1,),
    FamilyTag.INT_SECOND: (Alg.ALG2,),
    FamilyTag.HALF: (Alg.ALG3, Alg.ALG4),
}


@dataclass(frozen=True)
class Check:
    """One named measurement; ``bound`` says whether tolerance is an upper ("max") or lower ("min") limit."""

    name: str
    measured: float
    tolerance: float
    passed: bool
    bound: str = "max"

    @classmethod
    def at_most(cls, name, measured, tolerance):
        measured = float(measured)
        if not math.isfinite(measured):
            return cls(name, sys.float_info.max, float(tolerance), False)
        return cls(name, measured, float(tolerance), measured <= tolerance)

    @classmethod
    def at_least(cls, name, measured, tolerance):
        measured = float(measured)
        if math.isnan(measured):
            return cls(name, -sys.float_info.max, float(tolerance), False, "min")
        measured = min(measured, sys.float_info.max)
        return cls(name, measured, float(tolerance), measured >= tolerance, "min")

    def to_dict(self):
        return {"name": self.name, "measured": self.measured, "tolerance": self.tolerance,
                "bound": self.bound, "pass": self.passed}


@dataclass
class VerificationReport:
    subject: dict
    checks: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check):
        self.checks.append(check)

    def extend(self, checks):
        self.checks.extend(checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {"subject": self.subject, "checks": [c.to_dict() for c in self.checks], "overall": self.overall}

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _label(spec) -> str:
    tag = f"{spec.family.value}[{spec.index}]"
    if spec.branch is not None:
        tag += f".{spec.branch.value}"
    return tag


def _grid(bigK: float, size: int) -> np.ndarray:
    return np.linspace(-2.0 * bigK, 2.0 * bigK, size)


def _rel(values, scale) -> float:
    scale = float(scale)
    return float(np.max(np.abs(values))) / scale if scale > 0.0 else float(np.max(np.abs(values)))


# --------------------------------------------------------------------------
# eigenfunction checks


def ode_residual(spec, x) -> float:
    """max |psi'' + (E - m lam(lam+1) sn^2) psi| / max |psi| over the points x."""
    lam = float(spec.lam.lam)
    psi, _, d2 = evaluate_with_derivatives(spec, x)
    sn = jacobi(x, spec.modulus).sn
    res = d2 + (spec.energy - spec.m * lam * (lam + 1.0) * sn * sn) * psi
    return _rel(res, np.max(np.abs(psi)))


def check_ode_residual(spec, grid_size: int = DEFAULT_GRID) -> Check:
    if grid_size < 3:
        raise DomainError(f"grid_size={grid_size} must be at least 3")
    x = _grid(spec.modulus.bigK, grid_size)
    return Check.at_most(f"ode_residual:{_label(spec)}", ode_residual(spec, x), ODE_TOL)


def check_fd_consistency(spec, grid_size: int = DEFAULT_GRID, h: float = 1e-3) -> Check:
    """Analytic psi' and psi'' against five-point central differences."""
    x = _grid(spec.modulus.bigK, grid_size)
    psi, d1, d2 = evaluate_with_derivatives(spec, x)
    f = [evaluate(spec, x + k * h) for k in (-2, -1, 1, 2)]
    fd1 = (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h)
    fd2 = (-f[0] + 16.0 * f[1] - 30.0 * psi + 16.0 * f[2] - f[3]) / (12.0 * h * h)
    scale1 = max(np.max(np.abs(d1)), np.max(np.abs(psi)))
    scale2 = max(np.max(np.abs(d2)), np.max(np.abs(psi)))
    err = max(_rel(d1 - fd1, scale1), _rel(d2 - fd2, scale2))
    return Check.at_most(f"fd_consistency:{_label(spec)}", err, FD_TOL)


def check_parity(spec, grid_size: int = DEFAULT_GRID) -> Check:
    x = _grid(spec.modulus.bigK, grid_size)
    f, g = evaluate(spec, x), evaluate(spec, -x)
    return Check.at_most(f"parity:{_label(spec)}", _rel(f - spec.parity * g, np.max(np.abs(f))), PARITY_TOL)


def check_periodicity(spec, grid_size: int = DEFAULT_GRID) -> list:
    """Integer: period 4K and the 2K sign of the prefactor; half-integer: f(x+4K) = -f(x), period 8K."""
    K = spec.modulus.bigK
    x = _grid(K, grid_size)
    f = evaluate(spec, x)
    scale = np.max(np.abs(f))
    tag = _label(spec)
    if spec.branch is None:
        half_sign = (-1) ** (int(spec.cls.has_sn) + int(spec.cls.has_cn))
        return [
            Check.at_most(f"period_4K:{tag}", _rel(evaluate(spec, x + 4 * K) - f, scale), SHIFT_TOL),
            Check.at_most(f"shift_2K:{tag}", _rel(evaluate(spec, x + 2 * K) - half_sign * f, scale), SHIFT_TOL),
        ]
    return [
        Check.at_most(f"antiperiod_4K:{tag}", _rel(evaluate(spec, x + 4 * K) + f, scale), SHIFT_TOL),
        Check.at_most(f"period_8K:{tag}", _rel(evaluate(spec, x + 8 * K) - f, scale), SHIFT_TOL),
    ]


def check_branch_pair(one, two, grid_size: int = DEFAULT_GRID) -> list:
    """phi2(x) = phi1(x + 2K) and the quasi-momentum identity for one energy."""
    K = one.modulus.bigK
    x = _grid(K, grid_size)
    f1, f2 = evaluate(one, x), evaluate(two, x)
    s1, s2 = evaluate(one, x + 2 * K), evaluate(two, x + 2 * K)
    scale = max(np.max(np.abs(f1)), np.max(np.abs(f2)))
    qm = 0.0
    for pm in (1.0, -1.0):
        lhs = s1 + pm * 1j * s2
        rhs = -pm * 1j * (f1 + pm * 1j * f2)
        qm = max(qm, _rel(lhs - rhs, scale))
    tag = f"{one.family.value}[{one.index}]"
    return [
        Check.at_most(f"branch_relation:{tag}", _rel(f2 - s1, scale), SHIFT_TOL),
        Check.at_most(f"quasi_momentum:{tag}", qm, SHIFT_TOL),
    ]


def _expected_alpha_degree(spec) -> int:
    lam = spec.lam
    if spec.branch is not None:
        n = spec.n
        return (n - 1) // 2 if n % 2 == 1 else n // 2
    twice = lam.twice_lambda
    N, odd_lambda = divmod(twice // 2, 2)
    odd_index = spec.index % 2 == 1
    if not odd_lambda:
        # lambda = 2N
        if spec.family is FamilyTag.INT_FIRST:
            return N - 1 if odd_index else N
        return N - 1
    # lambda = 2N + 1
    if spec.family is FamilyTag.INT_FIRST:
        return N
    return N - 1 if odd_index else N


def check_degree(spec) -> Check:
    """Degree of the monic sn^2 factor, and that it is monic."""
    alpha = np.asarray(spec.alpha)
    nz = np.nonzero(np.abs(alpha) > 1e-12 * max(np.max(np.abs(alpha)), 1.0))[0]
    deg = int(nz[-1]) if len(nz) else 0
    expected = _expected_alpha_degree(spec)
    err = abs(deg - expected) + abs(alpha[expected] - 1.0) if expected < len(alpha) else math.inf
    return Check.at_most(f"degree:{_label(spec)}", err, 1e-12)


def check_prefactor(spec) -> Check:
    """Integer classes: sn for odd index, dn exactly for the second family."""
    if spec.branch is not None:
        ok = spec.cls.factor.value == ("Ec" if spec.branch is Branch.ONE else "Es")
    else:
        ok = spec.cls.has_sn == (spec.index % 2 == 1) and spec.cls.has_dn == (spec.family is FamilyTag.INT_SECOND)
    return Check(f"class:{_label(spec)}", 0.0 if ok else 1.0, 0.0, ok)


def verify_eigenfunction(spec, grid_size: int = DEFAULT_GRID) -> VerificationReport:
    rep = VerificationReport(
        {"lambda": str(spec.lam), "m": spec.m, "family": spec.family.value,
         "branch": None if spec.branch is None else spec.branch.value, "index": spec.index}
    )
    rep.add(check_ode_residual(spec, grid_size))
    rep.add(check_fd_consistency(spec, grid_size))
    rep.add(check_parity(spec, grid_size))
    rep.extend(check_periodicity(spec, grid_size))
    rep.add(check_degree(spec))
    rep.add(check_prefactor(spec))
    return rep


# --------------------------------------------------------------------------
# spectral and coefficient checks


def _family_checks(family, idx, m) -> list:
    tag = family.value
    out = []
    energies = family_energies(family, idx, m)
    n = idx.n(family)
    a, _ = recurrence_arrays(family, idx, m)
    if n > 0:
        out.append(Check(f"a_positive:{tag}", float(np.min(a[1:])), 0.0, bool(np.min(a[1:]) > 0.0), "min"))

    hats = hat_polynomials(family, idx, m)
    lead = max(abs(p.coef[-1] - 1.0) for p in hats)
    degs = max(abs(p.degree() - j) for j, p in enumerate(hats))
    out.append(Check.at_most(f"monic:{tag}", lead + degs, 0.0))

    diag, off = tridiagonal_from_recurrence(family, idx, m)
    if n + 1 <= 8:
        dense = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
        charpoly = np.poly(dense)[::-1]
        crit = hats[-1].coef
        out.append(Check.at_most(
            f"charpoly:{tag}", np.max(np.abs(charpoly - crit)) / max(1.0, np.max(np.abs(crit))), 1e-10))

    scale = 1.0 + np.abs(energies)
    bis = bisection_eigenvalues(diag, off) if len(diag) > 1 else diag
    out.append(Check.at_most(f"tridiagonal_vs_bisection:{tag}", np.max(np.abs(bis - energies) / scale), BISECTION_TOL))

    if n > 0:
        gap = float(np.min(np.diff(energies) / scale[1:]))
        out.append(Check.at_least(f"simple_roots:{tag}", gap, TIE_RTOL))

    if n > 0:
        inner = np.linalg.eigvalsh(np.diag(diag[:n]) + np.diag(off[:n - 1], 1) + np.diag(off[:n - 1], -1))
        width = max(1.0, float(np.max(np.abs(energies))))
        margin = min(np.min(inner - energies[:-1]), np.min(energies[1:] - inner)) / width
        out.append(Check.at_least(f"interlacing:{tag}", margin, INTERLACE_MARGIN))

    for alg in _ALGS[family]:
        try:
            orc = oracle_energies(alg, idx, m)
            err = np.max(np.abs(orc - energies) / scale)
        except SpectralRealityError:
            err = math.inf
        out.append(Check.at_most(f"oracle_{alg.name.lower()}:{tag}", err, ORACLE_TOL))
    if family is FamilyTag.HALF:
        e3 = oracle_energies(Alg.ALG3, idx, m)
        e4 = oracle_energies(Alg.ALG4, idx, m)
        out.append(Check.at_most("alg3_equals_alg4", np.max(np.abs(e3 - e4) / scale), ORACLE_TOL))
        h3 = gauge_hamiltonian_matrix(Alg.ALG3, idx, m)
        h4 = gauge_hamiltonian_matrix(Alg.ALG4, idx, m)
        out.append(Check.at_most("alg3_conjugate_alg4", np.max(np.abs(h3 - np.conj(h4))), 1e-12))

    table = coeff_table(family, idx, m, energies)
    p = table.p
    out.append(Check.at_most(f"p_i0_one:{tag}", np.max(np.abs(p[:, 0] - 1.0)), 0.0))
    signs = np.sign(p[:, n])
    wanted = (-1.0) ** np.arange(n + 1)
    out.append(Check.at_most(f"sign_rule:{tag}", float(np.count_nonzero(signs != wanted)), 0.0))

    row_scale = np.max(np.abs(p), axis=1)
    if idx.kind is Kind.INTEGER:
        even = np.arange(n + 1) % 2 == 0
        vanish = max(
            np.max(np.abs(table.rho[even]) / row_scale[even, None]),
            np.max(np.abs(table.sigma[~even]) / row_scale[~even, None]) if np.any(~even) else 0.0,
        )
        out.append(Check.at_most(f"sigma_rho_vanishing:{tag}", vanish, STRUCTURE_TOL))
        out.append(Check.at_most(
            f"sigma_rho_recurrence:{tag}", _sigma_rho_recurrence_residual(family, idx, m, table), STRUCTURE_TOL))
    return out


def _sigma_rho_recurrence_residual(family, idx, m, table) -> float:
    """Residual of A_j y_{j+1} - (2/m)(b_j - E) y_j + C_j y_{j-1} for y in {sigma, rho}, j < n."""
    n = table.n
    _, b = recurrence_arrays(family, idx, m)
    worst = 0.0
    for i, E in enumerate(table.energies):
        for row in (table.sigma[i], table.rho[i]):
            scale = max(np.max(np.abs(table.p[i])), 1e-300)
            for j in range(n):
                A, C = pi_recurrence_terms(family, idx, j)
                prev = row[j - 1] if j > 0 else 0.0
                res = A * row[j + 1] - (2.0 / m) * (b[j] - E) * row[j] + C * prev
                denom = scale * (abs(A) + 2.0 / m * abs(b[j] - E) + abs(C))
                worst = max(worst, abs(res) / denom)
    return worst


def check_structure(idx, m: float, grid_size: int = DEFAULT_GRID) -> VerificationReport:
    """Full invariant battery for one (lambda, m)."""
    idx = LameIndex.parse(idx)
    mod = EllipticModulus.coerce(m)
    if not 0.0 < mod.m < 1.0:
        raise DomainError(f"parameter m={mod.m!r} must lie in (0, 1)")
    m = mod.m
    rep = VerificationReport({"lambda": str(idx), "m": m, "family": None, "branch": None, "index": None})
    twice = idx.twice_lambda

    energies = np.sort(np.concatenate([family_energies(f, idx, m) for f in idx.families]))
    if idx.kind is Kind.INTEGER:
        distinct = len(energies) if len(energies) < 2 else 1 + int(np.count_nonzero(
            np.diff(energies) > TIE_RTOL * (1.0 + np.abs(energies[1:]))))
        rep.add(Check.at_most("energy_count", abs(distinct - (twice + 1)), 0.0))
        if twice >= 2:
            dims = (idx.n(FamilyTag.INT_FIRST) + 1, idx.n(FamilyTag.INT_SECOND) + 1)
            rep.add(Check.at_most("family_dimensions", abs(dims[0] - (twice // 2 + 1)) + abs(dims[1] - twice // 2), 0.0))
    else:
        rep.add(Check.at_most("energy_count", abs(len(energies) - (twice + 1) // 2), 0.0))

    for family in idx.families:
        rep.extend(_family_checks(family, idx, m))

    n_cas = max(idx.n(f) for f in idx.families)
    cas = casimir_matrix(n_cas) - 0.25 * n_cas * (n_cas + 2) * np.eye(n_cas + 1)
    rep.add(Check.at_most("casimir", np.max(np.abs(cas)), 1e-12))

    specs = build_eigenfunctions(idx, m)
    rep.add(Check.at_most("eigenfunction_count", abs(len(specs) - (twice + 1)), 0.0))
    for spec in specs:
        rep.extend(verify_eigenfunction(spec, grid_size).checks)
    if idx.kind is Kind.HALF_INTEGER:
        ones = [s for s in specs if s.branch is Branch.ONE]
        twos = {s.index: s for s in specs if s.branch is Branch.TWO}
        for one in ones:
            rep.extend(check_branch_pair(one, twos[one.index], grid_size))
        labels = [s.ince_label for s in ones]
        rep.add(Check.at_most("ince_labels_distinct", len(labels) - len(set(labels)), 0.0))
        counts = [s.cls.zero_count for s in ones]
        rep.add(Check.at_most("zero_count_monotone", sum(1 for a, b in zip(counts, counts[1:]) if b < a), 0.0))
    return rep


def run_suite(lambdas=None, ms=(0.3, 0.7), grid_size: int = DEFAULT_GRID) -> list:
    """check_structure over a (lambda, m) sweep; defaults to lambda in {0, 1/2, ..., 6}."""
    if lambdas is None:
        lambdas = [LameIndex(t) for t in range(13)]
    return [check_structure(lam, m, grid_size) for lam in lambdas for m in ms]
