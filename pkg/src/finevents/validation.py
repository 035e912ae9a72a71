"""Input validation helpers shared by the estimators and numeric ops."""

from __future__ import annotations

import numpy as np


def check_vector(value, dim: int | None = None, name: str = "vector") -> np.ndarray:
    """Coerce to a finite 1-D float64 array, optionally enforcing a dimension."""
    vec = np.asarray(value, dtype=np.float64)
    if vec.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise ValueError(f"{name} contains non-finite values")
    if dim is not None and vec.shape[0] != dim:
        raise ValueError(f"{name} has dimension {vec.shape[0]}, expected {dim}")
    return vec


def check_nonzero(vec: np.ndarray, name: str = "vector") -> float:
    """Return the Euclidean norm, rejecting all-zero vectors."""
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise ValueError(f"{name} is all-zero")
    return norm


def check_in_range(value: float, lo: float, hi: float, name: str) -> float:
    value = float(value)
    if not np.isfinite(value) or value < lo or value > hi:
        raise ValueError(f"{name} must be in [{lo}, {hi}], got {value}")
    return value


def check_positive_int(value, name: str) -> int:
    ivalue = int(value)
    if ivalue < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return ivalue
