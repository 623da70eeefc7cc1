import numpy as np

from src.errors import DimensionError


def _as_matrix(X, name):
    X = np.asarray(X)
    if X.ndim != 2:
        raise DimensionError(f"{name} must be a matrix, got {X.ndim} dimensions")
    return X


def vec(X):
    """Column-stacking vectorization: vec([[1, 2], [3, 4]]) = [1, 3, 2, 4]."""
    return _as_matrix(X, "vec argument").reshape(-1, order="F")


def unvec(x, n_rows):
    x = np.asarray(x)
    if x.ndim != 1 or n_rows <= 0 or x.size % n_rows:
        raise DimensionError(f"cannot fold {x.shape} into {n_rows} rows")
    return x.reshape((n_rows, -1), order="F")


def kron(A, B):
    return np.kron(_as_matrix(A, "left factor"), _as_matrix(B, "right factor"))
