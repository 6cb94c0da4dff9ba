"""
Shared fixtures and seeded instance generators
"""

import json

import numpy as np
import pytest
import structlog

from config import SolverOpts
from rational import KernelFamily
from solvers import InterpolationProblem
from spaces import SpaceSpec


def random_nodes(rng: np.random.Generator, n: int, radius: float = 0.8, separation: float = 0.1) -> np.ndarray:
    """n points in |z| <= radius, pairwise at least `separation` apart"""
    nodes = []
    while len(nodes) < n:
        z = radius * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        if all(abs(z - other) >= separation for other in nodes):
            nodes.append(z)
    return np.array(nodes, dtype=complex)


def random_targets(rng: np.random.Generator, n: int) -> np.ndarray:
    """Targets with |w| <= 1"""
    return np.sqrt(rng.uniform(0, 1, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def random_problem(seed: int, n: int, space: SpaceSpec, radius: float = 0.8) -> InterpolationProblem:
    rng = np.random.default_rng(seed)
    return InterpolationProblem(space, KernelFamily.simple(random_nodes(rng, n, radius)), random_targets(rng, n))


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    structlog.reset_defaults()


@pytest.fixture
def fast_opts():
    return SolverOpts(restarts=4, seed=7, max_iter=4000)


@pytest.fixture
def unseeded_opts():
    return SolverOpts(restarts=2, max_iter=2000)


@pytest.fixture
def schwarz_family():
    """Nodes (0, 1/2); with targets (0, 1/2) the H^∞ interpolation norm is 1"""
    return KernelFamily.simple([0.0, 0.5])


@pytest.fixture
def problem_file(tmp_path):
    """Writes a problem-file dict to disk and returns its path"""
    def write(data, name="problem.json"):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)
    return write
