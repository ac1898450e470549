"""
Lame polynomials
================

Each algebraic eigenfunction for integer lambda is a prefactor built from
sn, cn, dn times a monic polynomial in sn^2.  We build them, print the
polynomial factors and check that they solve the equation.
"""

import numpy as np

from lamealg import EllipticModulus, build_eigenfunctions, evaluate_with_derivatives, jacobi

lam, m = 3, 0.4
specs = build_eigenfunctions(lam, m)
for s in specs:
    poly = " ".join(f"{c:+.6f} t^{k}" for k, c in enumerate(s.alpha))
    print(f"{s.family.value:10s} i={s.index}  E={s.energy:9.6f}  {s.cls.factor.value:9s} x ({poly}),  t = sn^2")

# residual of psi'' + (E - m lam(lam+1) sn^2) psi on a grid spanning one period
K = EllipticModulus(m).bigK
x = np.linspace(-2 * K, 2 * K, 1001)
sn = jacobi(x, m).sn
for s in specs:
    psi, _, d2 = evaluate_with_derivatives(s, x)
    res = d2 + (s.energy - m * lam * (lam + 1) * sn**2) * psi
    print(f"{s.family.value:10s} i={s.index}  max residual {np.max(np.abs(res)) / np.max(np.abs(psi)):.1e}")

# the number of nodes in one period grows with the energy (oscillation ordering)
for s in sorted(specs, key=lambda s: s.energy):
    psi = s(x[:-1])
    print(f"E={s.energy:8.4f}  sign changes on [-2K, 2K): {np.count_nonzero(np.diff(np.sign(psi)) != 0)}")
