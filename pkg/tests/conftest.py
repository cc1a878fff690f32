import numpy as np
import pytest

from fuzzycolor import kernels
from fuzzycolor.colorspace import LabColor
from fuzzycolor.fuzzy_color import FuzzyColor


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    return kernels.load_backend(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20021027)


def random_fuzzy_set(rng, k, overlapping=False):
    """``k`` random balls; non-overlapping unless asked otherwise."""
    if overlapping:
        centers = rng.uniform([20, -40, -40], [80, 40, 40], size=(k, 3))
        jnds = rng.uniform(1.0, 25.0, size=k)
        return [FuzzyColor(LabColor(*c), r) for c, r in zip(centers, jnds)]
    balls = []
    while len(balls) < k:
        c = rng.uniform([5, -80, -80], [95, 80, 80])
        r = rng.uniform(0.5, 8.0)
        if all(np.linalg.norm(c - np.asarray(b.center)) > r + b.jnd for b in balls):
            balls.append(FuzzyColor(LabColor(*c), r))
    return balls


def blobs(rng, centers, per_blob, sigma):
    centers = np.asarray(centers, dtype=float)
    X = np.concatenate([c + rng.normal(0.0, sigma, size=(per_blob, 3)) for c in centers])
    y = np.repeat(np.arange(len(centers)), per_blob)
    return X, y


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
