"""
Dense complex polynomials (coefficients lowest degree first)
"""

from dataclasses import dataclass
from typing import Iterable, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P

Number = Union[int, float, complex]


def _trim(coeffs: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        return np.zeros(0, dtype=complex)
    return coeffs[: nz[-1] + 1]


@dataclass(frozen=True, eq=False)
class Poly:
    """
    Polynomial Σ coeffs[k] z^k.

    The stored sequence never ends in an exact zero; the zero polynomial is
    the empty sequence and has degree -1.
    """
    coeffs: Tuple[complex, ...]

    def __init__(self, coeffs: Iterable[Number] = ()):
        arr = _trim(np.asarray(list(coeffs), dtype=complex).ravel())
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in arr))

    @classmethod
    def zero(cls) -> 'Poly':
        return cls(())

    @classmethod
    def constant(cls, c: Number) -> 'Poly':
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Number = 1.0) -> 'Poly':
        return cls([0.0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> 'Poly':
        """Monic polynomial Π (z - r)"""
        roots = list(roots)
        if not roots:
            return cls.constant(1.0)
        return cls(P.polyfromroots(np.asarray(roots, dtype=complex)))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def padded(self, length: int) -> np.ndarray:
        """Coefficient vector of the given length (truncating or zero-padding)"""
        out = np.zeros(length, dtype=complex)
        arr = self.array[:length]
        out[: arr.size] = arr
        return out

    def __call__(self, z):
        if self.is_zero():
            return np.zeros_like(np.asarray(z, dtype=complex))
        return P.polyval(z, self.array)

    def derivative(self, order: int = 1) -> 'Poly':
        if order == 0 or self.is_zero():
            return self
        return Poly(P.polyder(self.array, order))

    def roots(self) -> np.ndarray:
        if self.degree() < 1:
            return np.zeros(0, dtype=complex)
        return P.polyroots(self.array)

    def divmod(self, other: 'Poly') -> Tuple['Poly', 'Poly']:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return Poly.zero(), Poly.zero()
        quo, rem = P.polydiv(self.array, other.array)
        return Poly(quo), Poly(rem)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.array))) if self.coeffs else 0.0

    def __add__(self, other: Union['Poly', Number]) -> 'Poly':
        other = other if isinstance(other, Poly) else Poly.constant(other)
        n = max(len(self.coeffs), len(other.coeffs), 1)
        return Poly(self.padded(n) + other.padded(n))

    __radd__ = __add__

    def __neg__(self) -> 'Poly':
        return Poly(-self.array)

    def __sub__(self, other: Union['Poly', Number]) -> 'Poly':
        other = other if isinstance(other, Poly) else Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other: Number) -> 'Poly':
        return Poly.constant(other) - self

    def __mul__(self, other: Union['Poly', Number]) -> 'Poly':
        if not isinstance(other, Poly):
            return Poly(self.array * complex(other))
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        return Poly(P.polymul(self.array, other.array))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'Poly':
        out = Poly.constant(1.0)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"
