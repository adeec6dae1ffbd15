import os
import sys

import mpmath
import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from gallery.coin import coin_states  # noqa: E402
from gallery.noncommutative import minimal_triple  # noqa: E402
from hermcore.random_states import random_pd_density  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def triple():
    """The minimal qubit triple (rho, sigma1, sigma2)."""
    return minimal_triple()


@pytest.fixture
def coin_pair():
    """Fair coin against the 1/4-biased coin."""
    rho, sigma, _ = coin_states(1)
    return rho, sigma


@pytest.fixture
def qubit_pair(rng):
    return random_pd_density(2, rng), random_pd_density(2, rng)


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON payload under tmp_path and return its path as a string."""
    import json

    def _write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)

    return _write


def matrix_json(m):
    m = np.asarray(m, dtype=complex)
    return {"dim": int(m.shape[0]), "re": m.real.tolist(), "im": m.imag.tolist()}


ORACLE_DPS = 40


def mp_matrix(m):
    return mpmath.matrix([[complex(x) for x in row] for row in np.asarray(m)])


def mp_geometric_mean(a, b):
    """B^1/2 (B^-1/2 A B^-1/2)^1/2 B^1/2 in mpmath; call inside mpmath.workdps."""
    A, B = mp_matrix(a), mp_matrix(b)
    b_half = mpmath.sqrtm(B)
    b_inv_half = mpmath.inverse(b_half)
    return b_half * mpmath.sqrtm(b_inv_half * A * b_inv_half) * b_half


def mp_rel_entropy_pure(rho, sigma):
    """-Tr rho log sigma at ORACLE_DPS digits; rho must be a rank-one projector, so S(rho) = 0."""
    with mpmath.workdps(ORACLE_DPS):
        log_sigma = mpmath.logm(sigma if isinstance(sigma, mpmath.matrix) else mp_matrix(sigma))
        value = mp_matrix(rho) * log_sigma
        return -float(mpmath.re(sum(value[i, i] for i in range(value.rows))))


def mp_rel_entropy_pure_geommean(rho, sigma1, sigma2):
    """D(rho || sigma1 # sigma2) with the geometric mean itself taken in mpmath."""
    with mpmath.workdps(ORACLE_DPS):
        return mp_rel_entropy_pure(rho, mp_geometric_mean(sigma1, sigma2))
