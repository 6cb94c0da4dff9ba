"""
Rational functions num/den in reduced form
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from errors import NotReducedError
from .poly import Number, Poly

# a denominator root this close to a numerator root counts as common
REDUCED_TOL = 1e-10


@dataclass(frozen=True)
class RationalFn:
    """Rational function num/den; den is nonzero and shares no root with num"""
    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise NotReducedError("denominator is the zero polynomial")
        num_roots = self.num.roots()
        den_roots = self.den.roots()
        if num_roots.size and den_roots.size:
            gap = np.min(np.abs(num_roots[:, None] - den_roots[None, :]))
            if gap <= REDUCED_TOL:
                raise NotReducedError(f"numerator and denominator share a root (distance {gap:.3e})")

    @classmethod
    def from_poly(cls, p: Poly) -> 'RationalFn':
        return cls(p, Poly.constant(1.0))

    @classmethod
    def from_coeffs(cls, num, den) -> 'RationalFn':
        return cls(Poly(num), Poly(den))

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError("rational function has poles")
        return self.num * (1.0 / self.den.coeffs[0])

    def poles(self) -> np.ndarray:
        return self.den.roots()

    def zeros(self) -> np.ndarray:
        return self.num.roots()

    def __mul__(self, other: Union['RationalFn', Poly, Number]) -> 'RationalFn':
        if isinstance(other, RationalFn):
            return RationalFn(self.num * other.num, self.den * other.den)
        if isinstance(other, Poly):
            return RationalFn(self.num * other, self.den)
        return RationalFn(self.num * other, self.den)

    __rmul__ = __mul__
