"""
Interpolation problems: nodes with multiplicities, jet targets and a space
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from rational import KernelFamily
from spaces import SpaceSpec


@dataclass(frozen=True)
class InterpolationProblem:
    """
    Find f in X with f^{(j)}(λ_i) = targets[(i, j)] of least norm.

    Targets follow the family's index order (node-major, ascending j).
    """
    space: SpaceSpec
    family: KernelFamily
    targets: np.ndarray

    def __post_init__(self):
        targets = np.asarray(self.targets, dtype=complex).ravel()
        if targets.size != self.family.total_dim:
            raise ValueError(f"{targets.size} targets for a family of dimension {self.family.total_dim}")
        object.__setattr__(self, "targets", targets)

    @classmethod
    def simple(cls, space: SpaceSpec, lams: Sequence[complex], values: Sequence[complex]) -> 'InterpolationProblem':
        return cls(space, KernelFamily.simple(lams), np.asarray(values, dtype=complex))

    @property
    def n(self) -> int:
        return self.family.total_dim

    def is_zero(self) -> bool:
        return not np.any(self.targets)

    def with_space(self, space: SpaceSpec) -> 'InterpolationProblem':
        return InterpolationProblem(space, self.family, self.targets)

    def scaled(self, c: complex) -> 'InterpolationProblem':
        return InterpolationProblem(self.space, self.family, c * self.targets)
