"""
Non-meromorphic Lame functions
==============================

For half-integer lambda the algebraic solutions contain square roots of
dn +- cn.  They are anti-periodic over 4K (period 8K) and come in pairs with
the same energy, related by a half-period shift.
"""

import numpy as np

from lamealg import EllipticModulus, build_eigenfunctions, count_zeros, select

m = 0.5
K = EllipticModulus(m).bigK
specs = build_eigenfunctions("5/2", m)
for s in specs:
    print(f"branch {s.branch.value}  i={s.index}  E={s.energy:.10f}  {s.ince_label}")

# exact energies at m = 1/2: 35/8 and 35/8 -+ sqrt(7)
print("expected:", 35 / 8 - np.sqrt(7), 35 / 8, 35 / 8 + np.sqrt(7))

x = np.linspace(-2 * K, 2 * K, 9)
one = select(specs, "half", 1, 1)
two = select(specs, "half", 1, 2)
print("\nanti-periodicity f(x+4K) + f(x):", np.max(np.abs(one(x + 4 * K) + one(x))))
print("period 8K          f(x+8K) - f(x):", np.max(np.abs(one(x + 8 * K) - one(x))))
print("branch pair  phi2(x) - phi1(x+2K):", np.max(np.abs(two(x) - one(x + 2 * K))))

# the zeros of the even branch in (0, 2K) label the functions Ec^(2r+1)/2
print("\nzeros in (0, 2K):", [count_zeros(s) for s in specs if s.branch.value == 1])

# near x = 2K the radicand dn + cn is tiny; the stabilised form keeps full accuracy
for eps in (1e-3, 1e-8, 1e-12):
    print(f"phi1(2K - {eps:g}) = {one(2 * K - eps): .15f}")
