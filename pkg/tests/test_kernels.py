import math

import numpy as np
import pytest

from fuzzycolor import kernels
from fuzzycolor.fuzzy_color import membership_vector

from conftest import random_fuzzy_set


def _arrays(balls):
    return np.array([b.center for b in balls]), np.array([b.jnd for b in balls])


@pytest.mark.parametrize("literal", [False, True])
def test_membership_matrix_matches_scalar(backend, rng, literal):
    for trial in range(40):
        balls = random_fuzzy_set(rng, int(rng.integers(1, 8)), overlapping=bool(trial % 2))
        X = rng.uniform([0, -90, -90], [100, 90, 90], size=(30, 3))
        near = np.array([b.center for b in balls[:3]])
        X[: len(near)] = near + rng.normal(0, 0.1, size=near.shape)
        U = backend.membership_matrix(*_arrays(balls), X, literal)
        expected = np.array([membership_vector(balls, x, literal) for x in X]).T
        assert np.max(np.abs(U - expected)) < 1e-12


def test_backends_agree(rng):
    names = kernels.available_backends()
    if len(names) < 2:
        pytest.skip("compiled kernels not built")
    py, cy = (kernels.load_backend(n) for n in ("python", "cython"))
    balls = random_fuzzy_set(rng, 6, overlapping=True)
    centers, jnds = _arrays(balls)
    X = rng.uniform([0, -90, -90], [100, 90, 90], size=(2000, 3))
    U = py.membership_matrix(centers, jnds, X)
    assert np.max(np.abs(U - cy.membership_matrix(centers, jnds, X))) < 1e-13
    for a, b in zip(py.weighted_centers(U, X), cy.weighted_centers(U, X)):
        assert np.allclose(a, b, rtol=1e-13, atol=0)
    assert py.objective(U, centers, jnds, X) == pytest.approx(cy.objective(U, centers, jnds, X), rel=1e-12)


def test_threaded_membership_is_identical(rng):
    if "cython" not in kernels.available_backends():
        pytest.skip("compiled kernels not built")
    cy = kernels.load_backend("cython")
    balls = random_fuzzy_set(rng, 5)
    X = rng.uniform([0, -90, -90], [100, 90, 90], size=(5000, 3))
    one = cy.membership_matrix(*_arrays(balls), X, False, 1e-9, 1)
    four = cy.membership_matrix(*_arrays(balls), X, False, 1e-9, 4)
    assert np.array_equal(one, four)


def test_weighted_centers_match_exact_sums(backend, rng):
    X = rng.uniform(-50, 50, size=(500, 3))
    U = rng.uniform(0, 1, size=(4, 500))
    centers, mass = backend.weighted_centers(U, X)
    for i in range(4):
        m = math.fsum(U[i])
        assert mass[i] == pytest.approx(m, rel=1e-13)
        for k in range(3):
            assert centers[i, k] == pytest.approx(math.fsum(U[i] * X[:, k]) / m, rel=1e-12, abs=1e-12)


def test_weighted_centers_large_input_is_sequential(backend, rng):
    # longer than the fallback's chunk size
    X = rng.uniform(-50, 50, size=(70000, 3))
    U = rng.uniform(0, 1, size=(2, 70000))
    centers, mass = backend.weighted_centers(U, X)
    acc = np.zeros((2, 3))
    for j in range(0, 70000, 1):
        acc += U[:, j, None] * X[j]
    assert np.allclose(centers, acc / mass[:, None], rtol=1e-12)


def test_objective_matches_double_loop(backend, rng):
    balls = random_fuzzy_set(rng, 3)
    centers, jnds = _arrays(balls)
    X = rng.uniform([0, -90, -90], [100, 90, 90], size=(40, 3))
    X[0] = centers[0]
    U = rng.dirichlet(np.ones(3), size=40).T
    total = clamped = 0.0
    for i in range(3):
        for j in range(40):
            d = math.dist(centers[i], X[j]) - jnds[i]
            total += U[i, j] ** 2 * d
            clamped += U[i, j] ** 2 * max(d, 0.0)
    J, Jc = backend.objective(U, centers, jnds, X)
    assert J == pytest.approx(total, abs=1e-9)
    assert Jc == pytest.approx(clamped, abs=1e-9)


def test_forced_backend_env(monkeypatch):
    with pytest.raises(ValueError):
        kernels.load_backend("fortran")
    assert kernels.BACKEND in kernels.available_backends()
