import numpy as np
import pytest

from larspath.core import fit_path
from larspath.datasets import load_diabetes
from larspath.preprocess import quadratic_expand, standardize


@pytest.fixture(scope="session")
def diabetes():
    """Raw diabetes table: (matrix, response, names)."""
    return load_diabetes()


@pytest.fixture(scope="session")
def design(diabetes):
    matrix, response, names = diabetes
    return standardize(matrix, response, names)


@pytest.fixture(scope="session")
def quad_design(diabetes):
    matrix, response, names = diabetes
    expanded, labels = quadratic_expand(matrix, 1, names)
    return standardize(expanded, response, labels)


@pytest.fixture(scope="session")
def diabetes_paths(design):
    return {v: fit_path(design, v)
            for v in ("lars", "lasso", "stagewise", "positive-lasso")}


@pytest.fixture(scope="session")
def quad_paths(quad_design):
    return {v: fit_path(quad_design, v)
            for v in ("lars", "lasso", "stagewise")}


@pytest.fixture(scope="session")
def random_paths():
    """Small random designs fitted under every variant."""
    rng = np.random.default_rng(7)
    out = []
    for i in range(8):
        X = rng.normal(size=(40, 6))
        y = X @ rng.normal(size=6) + rng.normal(size=40)
        d = standardize(X, y)
        variant = ("lars", "lasso", "stagewise", "positive-lasso")[i % 4]
        out.append(fit_path(d, variant))
    return out
