from fractions import Fraction
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lamealg.errors import DomainError, InconsistentInputError
from lamealg.polyfam import (
    FamilyTag,
    Kind,
    LameIndex,
    coeff_table,
    critical_polynomial,
    hat_polynomials,
    pi_row,
    pi_values,
    recurrence_arrays,
    recurrence_coefficients,
)
from lamealg.spectrum import family_energies

from _oracles import exact_hat_coefficients, mp_pi_row

FIRST, SECOND, HALF = FamilyTag.INT_FIRST, FamilyTag.INT_SECOND, FamilyTag.HALF


# --------------------------------------------------------------------------
# LameIndex / FamilyTag


@pytest.mark.parametrize("value,twice", [(2, 4), ("2", 4), ("3/2", 3), (Fraction(5, 2), 5), (1.5, 3), ("0", 0), ("4/2", 4)])
def test_parse_lambda(value, twice):
    assert LameIndex.parse(value).twice_lambda == twice


@pytest.mark.parametrize("value", ["3/4", "-1", 1.25, "x", "1/0", -2])
def test_parse_lambda_rejects(value):
    with pytest.raises(DomainError):
        LameIndex.parse(value)


def test_index_kind_and_families():
    assert LameIndex(4).kind is Kind.INTEGER
    assert LameIndex(3).kind is Kind.HALF_INTEGER
    assert LameIndex(0).families == (FIRST,)
    assert LameIndex(2).families == (FIRST, SECOND)
    assert LameIndex(5).families == (HALF,)
    assert str(LameIndex(5)) == "5/2" and str(LameIndex(6)) == "3"


def test_n_per_family():
    idx = LameIndex(8)
    assert idx.n(FIRST) == 4 and idx.n(SECOND) == 3
    assert LameIndex(7).n(HALF) == 3
    with pytest.raises(DomainError):
        LameIndex(0).n(SECOND)
    with pytest.raises(DomainError):
        LameIndex(3).n(FIRST)
    with pytest.raises(DomainError):
        LameIndex(4).n(HALF)


def test_family_aliases():
    assert FamilyTag.parse("first") is FIRST
    assert FamilyTag.parse("int_second") is SECOND
    with pytest.raises(DomainError):
        FamilyTag.parse("third")


# --------------------------------------------------------------------------
# recurrence coefficients


def test_recurrence_examples():
    m = 0.37
    assert recurrence_coefficients(FIRST, 1, m, 0).b == pytest.approx(m + (2 - m) / 2, abs=1e-15)
    assert recurrence_coefficients(HALF, "1/2", m, 0).b == pytest.approx(0.25 * (1 + m), abs=1e-15)
    assert recurrence_coefficients(SECOND, 1, m, 0).b == pytest.approx(m, abs=1e-15)


def test_recurrence_j_range():
    with pytest.raises(DomainError):
        recurrence_coefficients(FIRST, 2, 0.5, 4)
    recurrence_coefficients(FIRST, 2, 0.5, 3)


@pytest.mark.parametrize("twice", range(1, 25))
def test_a_positive(twice):
    idx = LameIndex(twice)
    for fam in idx.families:
        a, _ = recurrence_arrays(fam, idx, 0.42)
        assert np.all(a[1:] > 0)
        assert a[0] == 0


# --------------------------------------------------------------------------
# critical polynomials


def _coef(fam, lam, m):
    return critical_polynomial(fam, lam, m).coef


@pytest.mark.parametrize("m", [0.1, 0.5, 0.83])
def test_critical_lambda_one(m):
    assert np.allclose(_coef(FIRST, 1, m), [m + 1, -(m + 2), 1], atol=1e-14)


@pytest.mark.parametrize("m", [0.1, 0.5, 0.83])
def test_critical_lambda_two_second(m):
    assert np.allclose(_coef(SECOND, 2, m), [(m + 1) * (4 * m + 1), -(5 * m + 2), 1], atol=1e-13)


@pytest.mark.parametrize("m", [0.1, 0.5, 0.83])
def test_crit_three_halves_uses_22m(m):
    # constant term is (3/16)(3m^2 + 22m + 3); the 23m variant is not a root-consistent form
    got = _coef(HALF, "3/2", m)
    assert np.allclose(got, [3 / 16 * (3 * m * m + 22 * m + 3), -2.5 * (m + 1), 1], atol=1e-14)
    assert abs(got[0] - 3 / 16 * (3 * m * m + 23 * m + 3)) > 1e-3


@pytest.mark.parametrize("m", [0.2, 0.5, 0.9])
def test_critical_lambda_four_factorisations(m):
    quad = np.polynomial.Polynomial([64 + 136 * m + 9 * m * m, -10 * (2 + m), 1])
    cubic = np.polynomial.Polynomial([-640 * m * (1 + m), 16 * (4 + 21 * m + 4 * m * m), -20 * (1 + m), 1])
    assert np.allclose(_coef(FIRST, 4, m), (quad * cubic).coef, rtol=1e-13, atol=1e-10)
    q1 = np.polynomial.Polynomial([9 + 46 * m + 9 * m * m, -10 * (1 + m), 1])
    q2 = np.polynomial.Polynomial([9 + 136 * m + 64 * m * m, -10 * (1 + 2 * m), 1])
    assert np.allclose(_coef(SECOND, 4, m), (q1 * q2).coef, rtol=1e-13, atol=1e-10)


@pytest.mark.parametrize("fam,twice", [("int-first", 6), ("int-second", 8), ("half", 7), ("int-first", 10), ("half", 11)])
def test_critical_polynomial_matches_exact_rational(fam, twice):
    m = Fraction(3, 10)
    want = exact_hat_coefficients(fam, twice, m)
    got = _coef(FamilyTag(fam), LameIndex(twice), float(m))
    scale = np.max(np.abs(want))
    assert np.max(np.abs(np.asarray(want) - got)) / scale <= 1e-14


def test_hat_polynomials_monic_with_exact_degree():
    for twice in range(0, 21):
        idx = LameIndex(twice)
        for fam in idx.families:
            for j, p in enumerate(hat_polynomials(fam, idx, 0.6)):
                assert p.degree() == j
                assert p.coef[-1] == 1.0


def test_degree_cap_and_warning():
    with pytest.warns(RuntimeWarning):
        critical_polynomial(FIRST, 42, 0.5)
    with pytest.raises(DomainError):
        critical_polynomial(FIRST, 64, 0.5)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        critical_polynomial(FIRST, 39, 0.5)


# --------------------------------------------------------------------------
# coefficient tables


def test_table_lambda_one_by_hand():
    # A_0 pi_1 = (2/m)(b_0 - E) with A_0 = 1, b_0 = 1 + m/2, E_0 = 1  =>  pi_1 = 1
    m = 0.4
    t = coeff_table(FIRST, 1, m, [1.0, 1.0 + m])
    assert t.p[0, 0] == 1.0
    assert t.p[0, 1] == pytest.approx(1.0, abs=1e-14)
    assert t.sigma[0, 0] == pytest.approx(t.p[0, 0] + t.p[0, 1], abs=1e-15)
    assert t.p[1, 1] == pytest.approx(-1.0, abs=1e-14)


def test_table_lambda_zero():
    t = coeff_table(FIRST, 0, 0.5, [0.0])
    assert t.p.shape == (1, 1) and t.p[0, 0] == 1.0
    assert float(t.energies[0]) == 0.0


def test_table_lambda_two_odd_row_sigma_vanishes():
    m = 0.5
    E = family_energies(FIRST, 2, m)
    assert E[1] == pytest.approx(4 + m, abs=1e-12)
    t = coeff_table(FIRST, 2, m, E)
    assert np.max(np.abs(t.sigma[1])) <= 1e-12
    assert np.max(np.abs(t.rho[0])) <= 1e-12
    assert np.max(np.abs(t.rho[2])) <= 1e-12


def test_table_rejects_bad_input():
    with pytest.raises(InconsistentInputError):
        coeff_table(FIRST, 1, 0.4, [1.0, 1.5])
    with pytest.raises(InconsistentInputError):
        coeff_table(FIRST, 1, 0.4, [1.0])
    with pytest.raises(InconsistentInputError):
        coeff_table(FIRST, 1, 0.4, [1.4, 1.0])


def test_table_is_immutable():
    t = coeff_table(FIRST, 2, 0.5, family_energies(FIRST, 2, 0.5))
    with pytest.raises(ValueError):
        t.p[0, 0] = 2.0


@pytest.mark.parametrize("twice", range(1, 21))
@pytest.mark.parametrize("m", [0.3, 0.7])
def test_table_structure(twice, m):
    idx = LameIndex(twice)
    for fam in idx.families:
        E = family_energies(fam, idx, m)
        t = coeff_table(fam, idx, m, E)
        n = t.n
        assert np.all(t.p[:, 0] == 1.0)
        assert np.array_equal(np.sign(t.p[:, n]), (-1.0) ** np.arange(n + 1))
        assert np.max(np.abs(t.pi_next) / np.max(np.abs(t.p), axis=1)) <= 1e-9
        assert np.allclose(t.sigma, t.p + t.p[:, ::-1], atol=0)
        if idx.kind is Kind.INTEGER:
            # near-degenerate neighbours mix rows by about eps |E| / gap
            gaps = np.diff(E)
            for i in range(n + 1):
                near = min(gaps[i - 1] if i > 0 else np.inf, gaps[i] if i < n else np.inf)
                tol = 1e-9 if twice <= 12 else max(1e-9, 100 * np.finfo(float).eps * np.max(np.abs(E)) / near)
                assert abs(abs(t.p[i, n]) - 1.0) <= tol
                folded = t.rho[i] if i % 2 == 0 else t.sigma[i]
                assert np.max(np.abs(folded)) <= tol * np.max(np.abs(t.p[i]))


@pytest.mark.parametrize("fam,twice", [("int-first", 8), ("int-second", 10), ("half", 9), ("half", 13)])
def test_pi_row_against_high_precision(fam, twice):
    m = 0.3
    idx = LameIndex(twice)
    tag = FamilyTag(fam)
    for E in family_energies(tag, idx, m):
        want = np.array(mp_pi_row(fam, twice, m, E))[:-1]
        got = pi_row(tag, idx, m, E)
        assert np.max(np.abs(got - want)) <= 1e-9 * np.max(np.abs(want))


def test_pi_values_upto_guard():
    with pytest.raises(DomainError):
        pi_values(FIRST, 2, 0.5, 1.0, upto=4)
    assert pi_values(FIRST, 2, 0.5, 1.0, upto=0).shape == (1,)


@settings(max_examples=40, deadline=None, derandomize=True)
@given(st.integers(2, 16), st.floats(0.05, 0.95))
def test_roots_kill_the_critical_polynomial(twice, m):
    idx = LameIndex(twice)
    for fam in idx.families:
        crit = critical_polynomial(fam, idx, m)
        E = family_energies(fam, idx, m)
        mag = np.sum(np.abs(crit.coef)[None, :] * np.abs(E)[:, None] ** np.arange(len(crit.coef)), axis=1)
        assert np.all(np.abs(crit(E)) <= 1e-10 * mag)
        assert math.isclose(np.sum(E), -crit.coef[-2], rel_tol=1e-12)
