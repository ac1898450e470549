import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lamealg.elliptic import EllipticModulus, jacobi
from lamealg.errors import DomainError
from lamealg.lamefun import (
    Branch,
    ChebKind,
    Factor,
    build_eigenfunctions,
    chebyshev_eval,
    count_zeros,
    evaluate,
    evaluate_with_derivatives,
    select,
)
from lamealg.polyfam import FamilyTag, LameIndex

FIRST, SECOND, HALF = FamilyTag.INT_FIRST, FamilyTag.INT_SECOND, FamilyTag.HALF


# --------------------------------------------------------------------------
# Chebyshev


def test_chebyshev_examples():
    assert chebyshev_eval(ChebKind.T, 3, 0.5) == pytest.approx(-1.0, abs=1e-15)
    assert chebyshev_eval(ChebKind.U, 0, 0.123) == 1.0
    assert chebyshev_eval(ChebKind.U, -1, 0.7) == 0.0
    assert chebyshev_eval(ChebKind.TTILDE, 2, 0.0) == -3.0
    assert chebyshev_eval("Ttilde", 2, 0.4) == pytest.approx(4 * 0.16 - 3)
    with pytest.raises(DomainError):
        chebyshev_eval(ChebKind.TTILDE, 3, 0.2)
    with pytest.raises(DomainError):
        chebyshev_eval(ChebKind.T, -1, 0.2)


@pytest.mark.parametrize("j", range(0, 12))
def test_chebyshev_trig_identities(j):
    a = np.linspace(0.05, 3.1, 37)
    t = np.cos(a)
    assert np.allclose(chebyshev_eval(ChebKind.T, j, t), np.cos(j * a), atol=1e-13)
    assert np.allclose(chebyshev_eval(ChebKind.U, j - 1, t) * np.sin(a), np.sin(j * a), atol=1e-13)


@pytest.mark.parametrize("j", [0, 2, 4, 8, 12])
def test_tilde_kinds(j):
    t = np.array([-0.9, -0.3, 0.25, 0.8])
    assert np.allclose(chebyshev_eval(ChebKind.TTILDE, j, t), chebyshev_eval(ChebKind.T, j + 1, t) / t, atol=1e-13)
    assert np.allclose(chebyshev_eval(ChebKind.UTILDE, j, t), chebyshev_eval(ChebKind.U, j + 1, t) / t, atol=1e-13)
    # the polynomial recurrence is regular at the origin
    assert chebyshev_eval(ChebKind.TTILDE, j, 0.0) == pytest.approx((-1) ** (j // 2) * (j + 1))
    assert chebyshev_eval(ChebKind.UTILDE, j, 0.0) == pytest.approx((-1) ** (j // 2) * (j + 2))


@pytest.mark.parametrize("kind,j", [("T", 5), ("U", 4), ("Ttilde", 6), ("Utilde", 4)])
def test_chebyshev_derivatives(kind, j):
    t = 0.37
    f, d1, d2 = chebyshev_eval(kind, j, t, derivatives=True)
    h = 1e-4
    fp, fm = chebyshev_eval(kind, j, t + h), chebyshev_eval(kind, j, t - h)
    assert f == pytest.approx(chebyshev_eval(kind, j, t))
    assert d1 == pytest.approx((fp - fm) / (2 * h), rel=1e-7)
    assert d2 == pytest.approx((fp - 2 * f + fm) / h**2, rel=1e-5)


# --------------------------------------------------------------------------
# construction and classes


@pytest.mark.parametrize("twice", range(0, 13))
def test_spec_count_and_families(twice):
    specs = build_eigenfunctions(LameIndex(twice), 0.4)
    assert len(specs) == twice + 1
    if twice % 2:
        assert {s.branch for s in specs} == {Branch.ONE, Branch.TWO}
    else:
        assert all(s.branch is None for s in specs)


def test_lambda_one_functions_are_cn_sn_dn():
    m = 0.55
    specs = build_eigenfunctions(1, m)
    factors = {(s.family, s.index): s.cls.factor for s in specs}
    assert factors == {(FIRST, 0): Factor.CN, (FIRST, 1): Factor.SN, (SECOND, 0): Factor.DN}
    x = np.linspace(-5, 5, 41)
    sn, cn, dn = jacobi(x, m)
    assert np.allclose(evaluate(select(specs, FIRST, 0), x), cn, atol=1e-14)
    assert np.allclose(evaluate(select(specs, FIRST, 1), x), sn, atol=1e-14)
    assert np.allclose(evaluate(select(specs, SECOND, 0), x), dn, atol=1e-14)
    assert [s.energy for s in specs] == pytest.approx([1.0, 1.0 + m, m])


def test_eight_classes_appear():
    seen = set()
    for lam in (2, 3, 4, 5):
        seen |= {s.cls.factor for s in build_eigenfunctions(lam, 0.3)}
    assert seen == {Factor.ONE, Factor.SN_CN, Factor.CN_DN, Factor.SN_DN, Factor.CN, Factor.SN, Factor.DN, Factor.SN_CN_DN}


def _closed_form(factor, alpha, x, m):
    sn, cn, dn = jacobi(x, m)
    pre = {"1": 1.0, "sn": sn, "cn": cn, "dn": dn, "sn cn": sn * cn, "sn dn": sn * dn, "cn dn": cn * dn,
           "sn cn dn": sn * cn * dn}[factor.value]
    return pre * np.polynomial.polynomial.polyval(sn * sn, alpha)


@pytest.mark.parametrize("lam", [2, 3, 4, 6])
def test_integer_specs_equal_prefactor_times_monic_polynomial(lam):
    m = 0.63
    x = np.linspace(-7, 7, 131)
    for s in build_eigenfunctions(lam, m):
        assert s.alpha[-1] == pytest.approx(1.0, abs=1e-14)
        assert np.allclose(evaluate(s, x), _closed_form(s.cls.factor, s.alpha, x, m), atol=1e-11)


def test_lambda_two_golden_form():
    m = 0.3
    root = math.sqrt(m * m - m + 1)
    specs = build_eigenfunctions(2, m)
    for i, sgn in ((0, 1), (2, -1)):
        alpha = select(specs, FIRST, i).alpha
        assert alpha[0] == pytest.approx(-(1 + m + sgn * root) / (3 * m), abs=1e-12)


@settings(max_examples=30, deadline=None, derandomize=True)
@given(st.floats(0.02, 0.98))
def test_lambda_three_golden_forms_property(m):
    specs = build_eigenfunctions(3, m)
    sq = math.sqrt
    expect = {
        (FIRST, 0): -(m + 2 + sq(m * m - m + 4)) / (5 * m),
        (FIRST, 2): -(m + 2 - sq(m * m - m + 4)) / (5 * m),
        (FIRST, 1): -(2 * (m + 1) + sq(4 * m * m - 7 * m + 4)) / (5 * m),
        (FIRST, 3): -(2 * (m + 1) - sq(4 * m * m - 7 * m + 4)) / (5 * m),
        (SECOND, 0): -(2 * m + 1 + sq(4 * m * m - m + 1)) / (5 * m),
        (SECOND, 2): -(2 * m + 1 - sq(4 * m * m - m + 1)) / (5 * m),
    }
    for (fam, i), c in expect.items():
        assert select(specs, fam, i).alpha[0] == pytest.approx(c, rel=1e-10, abs=1e-10)
    assert select(specs, SECOND, 1).cls.factor is Factor.SN_CN_DN


# --------------------------------------------------------------------------
# half-integer lambda


def test_lambda_half_values():
    m = 0.5
    K = EllipticModulus(m).bigK
    specs = build_eigenfunctions("1/2", m)
    one, two = select(specs, HALF, 0, 1), select(specs, HALF, 0, 2)
    assert one(0.0) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert one(4 * K) == pytest.approx(-math.sqrt(2), abs=1e-13)
    assert two(0.0) == 0.0
    x = np.linspace(-1.9 * K, 1.9 * K, 77)
    sn, cn, dn = jacobi(x, m)
    assert np.allclose(one(x), np.sqrt(dn + cn), atol=1e-14)
    # branch Two = phi1(x + 2K) = -eps sqrt(dn - cn) for n = 0
    assert np.allclose(two(x), -np.sign(sn) * np.sqrt(dn - cn), atol=1e-14)
    assert two.sign == -1 and one.sign == 1
    assert count_zeros(one) == 0


def test_three_halves_matches_ince_closed_form():
    m = 0.45
    root = math.sqrt(m * m - m + 1)
    specs = build_eigenfunctions("3/2", m)
    x = np.linspace(-3, 3, 61)
    sn, cn, dn = jacobi(x, m)
    for i, sgn in ((0, 1), (1, -1)):
        c = 1 - m + sgn * root
        phi1 = np.sqrt(dn + cn) * (m * cn + c * dn)
        phi2 = np.sign(sn) * np.sqrt(dn - cn) * (m * cn - c * dn)
        f1, f2 = evaluate(select(specs, HALF, i, 1), x), evaluate(select(specs, HALF, i, 2), x)
        k1 = phi1[30] / f1[30]
        assert np.allclose(f1 * k1, phi1, atol=1e-13)
        assert np.allclose(f2 * k1, phi2, atol=1e-13)


def test_ince_labels_distinct_and_increasing():
    for twice in (3, 5, 7, 9):
        ones = [s for s in build_eigenfunctions(LameIndex(twice), 0.5) if s.branch is Branch.ONE]
        counts = [s.cls.zero_count for s in ones]
        assert counts == sorted(counts)
        assert len({s.ince_label for s in ones}) == len(ones)
    s = select(build_eigenfunctions("5/2", 0.5), HALF, 1, 1)
    assert s.ince_label == "Ec_5/2^(3/2)"
    assert count_zeros(s) == 1


def test_count_zeros_rejects_integer_spec():
    with pytest.raises(DomainError):
        count_zeros(build_eigenfunctions(1, 0.5)[0])


def _mp_ode_residual(f, E, lam, m, x):
    """Residual of the ODE with f and its second derivative computed in mpmath."""
    with mp.workdps(30):
        m = mp.mpf(m)
        x = mp.mpf(x)
        sn = mp.ellipfun("sn", x, m=m)
        return mp.diff(f, x, 2) + (E - m * lam * (lam + 1) * sn * sn) * f(x)


def test_ince_form_is_a_solution_in_high_precision():
    # the closed form itself, evaluated independently of lamealg
    m = 0.5
    E = build_eigenfunctions("3/2", m)[0].energy
    c = 1 - m + math.sqrt(m * m - m + 1)

    def phi(t):
        sn, cn, dn = (mp.ellipfun(k, t, m=mp.mpf(m)) for k in ("sn", "cn", "dn"))
        return mp.sqrt(dn + cn) * (m * cn + c * dn)

    assert abs(_mp_ode_residual(phi, E, 1.5, m, 0.9)) < 1e-12
    assert E == pytest.approx(1.25 * (1 + m) - math.sqrt(m * m - m + 1), abs=1e-13)


# --------------------------------------------------------------------------
# derivatives and evaluation


def test_derivatives_at_origin():
    cn_spec = select(build_eigenfunctions(1, 0.3), FIRST, 0)
    assert evaluate_with_derivatives(cn_spec, 0.0) == pytest.approx((1.0, 0.0, -1.0), abs=1e-15)
    for s in build_eigenfunctions(4, 0.3) + build_eigenfunctions("5/2", 0.3):
        if s.parity == 1:
            assert abs(evaluate_with_derivatives(s, 0.0)[1]) < 1e-13


@pytest.mark.parametrize("lam", ["3/2", 3, "7/2", 5])
def test_first_derivative_against_central_difference(lam):
    m = 0.5
    K = EllipticModulus(m).bigK
    x = np.linspace(-2 * K, 2 * K, 201)
    h = 1e-6
    for s in build_eigenfunctions(lam, m):
        psi, d1, _ = evaluate_with_derivatives(s, x)
        fd = (evaluate(s, x + h) - evaluate(s, x - h)) / (2 * h)
        assert np.max(np.abs(d1 - fd)) <= 1e-7 * max(1.0, np.max(np.abs(psi)))


def test_three_halves_ode_at_point():
    m = 0.5
    for s in build_eigenfunctions("3/2", m):
        psi, _, d2 = evaluate_with_derivatives(s, 0.9)
        sn = jacobi(0.9, m).sn
        assert abs(d2 - (m * 1.5 * 2.5 * sn * sn - s.energy) * psi) <= 1e-12


def test_stabilised_evaluation_near_two_K():
    m = 0.5
    K = EllipticModulus(m).bigK
    s = select(build_eigenfunctions("3/2", m), HALF, 0, 1)
    near = 2 * K - 1e-11
    with pytest.raises(DomainError):
        evaluate_with_derivatives(s, near, stabilized=False)
    psi, d1, d2 = evaluate_with_derivatives(s, near)
    left = evaluate_with_derivatives(s, 2 * K - 1e-3)
    assert abs(psi - left[0]) < 1e-2
    assert np.isfinite([psi, d1, d2]).all()
    # smooth across 2K once prolonged anti-periodically
    xs = np.linspace(2 * K - 0.05, 2 * K + 0.05, 101)
    vals = evaluate(s, xs)
    assert np.max(np.abs(np.diff(vals, 2))) < 1e-3


def test_select_errors():
    specs = build_eigenfunctions(2, 0.5)
    with pytest.raises(DomainError):
        select(specs, SECOND, 5)


def test_lambda_zero_constant():
    (s,) = build_eigenfunctions(0, 0.5)
    assert s.energy == 0.0
    assert evaluate_with_derivatives(s, 1.3) == (1.0, 0.0, 0.0)


def test_describe_is_json_ready():
    import json

    for s in build_eigenfunctions("5/2", 0.4)[:2] + build_eigenfunctions(3, 0.4)[:1]:
        d = json.loads(json.dumps(s.describe()))
        assert d["lambda"] in ("5/2", "3") and d["family"] == s.family.value


def test_m_domain():
    with pytest.raises(DomainError):
        build_eigenfunctions(2, 0.0)
