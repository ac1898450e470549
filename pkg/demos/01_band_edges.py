"""
Band edges of the Lame potential
================================

For integer lambda the equation has 2*lambda + 1 algebraic energies, the
edges of the allowed bands.  Half-integer lambda gives lambda + 1/2 doubly
degenerate levels instead.
"""

import numpy as np

from lamealg import algebraic_energies, all_energies

# lambda = 2 at m = 1/2: five band edges, three even in sn and two odd
for res in algebraic_energies(2, 0.5):
    print(res.family.value, np.round(res.energies, 12))

# the closed forms 2(1 + m -+ sqrt(m^2 - m + 1)) and 4 + m
m = 0.5
r = np.sqrt(m * m - m + 1)
print("closed form:", [float(2 * (1 + m - r)), 4 + m, float(2 * (1 + m + r))])

# sweep m and watch the bands: E rises with m and the gaps stay open for 0 < m < 1
ms = np.linspace(0.05, 0.95, 7)
print("\n  m  " + "".join(f"E{i}".rjust(10) for i in range(7)))
for m in ms:
    E = all_energies(3, m)
    print(f"{m:5.2f}  " + "  ".join(f"{e:8.4f}" for e in E))

# consecutive edges pair up into bands [E0,E1], [E2,E3], ... with an open top band
E = all_energies(3, 0.5)
for i in range(0, 6, 2):
    print(f"band [{E[i]:.6f}, {E[i + 1]:.6f}]")
print(f"band [{E[6]:.6f}, inf)")
