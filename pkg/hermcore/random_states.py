"""
Seeded random operators for property checks and demos.
"""

from typing import Optional, Union

import numpy as np

Seed = Union[int, np.random.Generator, None]


def _rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(0 if seed is None else seed)


def random_hermitian(dim: int, seed: Seed = None) -> np.ndarray:
    """GUE-style Hermitian matrix."""
    rng = _rng(seed)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2


def random_density(dim: int, seed: Seed = None, rank: Optional[int] = None) -> np.ndarray:
    """Random density operator G G† / Tr, with G of shape dim x rank."""
    rng = _rng(seed)
    k = dim if rank is None else rank
    g = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return m / np.real(np.trace(m))


def random_pd_density(dim: int, seed: Seed = None, floor: float = 0.05) -> np.ndarray:
    """Random full-rank density operator with smallest eigenvalue at least floor/dim."""
    rng = _rng(seed)
    m = random_density(dim, rng)
    return (1 - floor) * m + floor * np.eye(dim) / dim


def random_unit_vector(dim: int, seed: Seed = None) -> np.ndarray:
    rng = _rng(seed)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_probability(size: int, seed: Seed = None, floor: float = 0.0) -> np.ndarray:
    """Dirichlet(1) sample, optionally mixed with the uniform weight by `floor`."""
    rng = _rng(seed)
    p = rng.dirichlet(np.ones(size))
    return (1 - floor) * p + floor / size
