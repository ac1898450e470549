"""
Two routes to the same spectrum
===============================

The recurrence route finds energies as roots of a critical polynomial (via a
symmetric tridiagonal matrix).  The Lie-algebraic route writes the gauge
transformed operator as a quadratic in sl(2) generators acting on polynomials
of degree <= n and diagonalises that matrix.  Both must agree.
"""

import numpy as np

from lamealg import Alg, critical_polynomial, family_energies, oracle_energies, run_suite

m = 0.3
for lam, pairs in ((4, [("int-first", Alg.ALG1), ("int-second", Alg.ALG2)]), ("7/2", [("half", Alg.ALG3), ("half", Alg.ALG4)])):
    for fam, alg in pairs:
        E = family_energies(fam, lam, m)
        O = oracle_energies(alg, lam, m)
        print(f"lambda={lam} {fam:10s} {alg.name}: max |diff| = {np.max(np.abs(E - O)):.2e}")

# the critical polynomial for lambda = 3/2 in ascending powers of E
print("\ncritical polynomial lambda=3/2, m=0.5:", critical_polynomial("half", "3/2", 0.5).coef)

# the full invariant battery over lambda = 0..6
reports = run_suite()
bad = [r.subject for r in reports if not r.overall]
print(f"\nverification battery: {len(reports)} (lambda, m) cases, {sum(len(r.checks) for r in reports)} checks, failures: {bad or 'none'}")
