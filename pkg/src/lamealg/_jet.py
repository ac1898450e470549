"""Second-order forward-mode jets: (f, f', f'') carried through arithmetic.

Components may be floats or numpy arrays of matching shape.
"""

import numpy as np


class Jet:
    __slots__ = ("v", "d1", "d2")

    def __init__(self, v, d1=0.0, d2=0.0):
        self.v = v
        self.d1 = d1
        self.d2 = d2

    @classmethod
    def const(cls, c):
        return cls(c, 0.0 * c, 0.0 * c)

    @classmethod
    def variable(cls, t):
        t = np.asarray(t, dtype=float) if not np.isscalar(t) else float(t)
        return cls(t, 1.0 + 0.0 * t, 0.0 * t)

    def __repr__(self):
        return f"Jet({self.v!r}, {self.d1!r}, {self.d2!r})"

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.v + other.v, self.d1 + other.d1, self.d2 + other.d2)
        return Jet(self.v + other, self.d1, self.d2)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.v, -self.d1, -self.d2)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(
                self.v * other.v,
                self.d1 * other.v + self.v * other.d1,
                self.d2 * other.v + 2.0 * self.d1 * other.d1 + self.v * other.d2,
            )
        return Jet(self.v * other, self.d1 * other, self.d2 * other)

    __rmul__ = __mul__

    def reciprocal(self):
        r = 1.0 / self.v
        r1 = -self.d1 * r * r
        r2 = (2.0 * self.d1 * self.d1 * r - self.d2) * r * r
        return Jet(r, r1, r2)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return Jet(self.v / other, self.d1 / other, self.d2 / other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = Jet.const(1.0 + 0.0 * self.v)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def as_tuple(self):
        return self.v, self.d1, self.d2
