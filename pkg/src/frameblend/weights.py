"""Weight vectors used to blend a frame sub-sequence into one image.

Three kinds are supported:

* ``ramp``     -- linearly increasing weights 1..n, favouring late frames.
* ``gaussian`` -- a Gaussian bump over the frame positions 1..n.
* ``uniform``  -- equal weights, i.e. the plain mean frame.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateWeightsError, InvalidParameterError

WEIGHT_KINDS = ("ramp", "gaussian", "uniform")


@dataclass(frozen=True)
class WeightVector:
    """Raw (unnormalized) blend weights plus how they were built.

    Invariants: length >= 1, all entries finite and >= 0, at least one > 0.
    """

    values: np.ndarray
    kind: str
    mu: float | None = None
    sigma: float | None = None

    def __len__(self) -> int:
        return len(self.values)

    def normalized(self) -> np.ndarray:
        """Weights scaled to sum to one."""
        return normalize_weights(self.values)


def _check_length(length: int) -> int:
    length = int(length)
    if length < 1:
        raise InvalidParameterError(f"weight vector length must be >= 1, got {length}")
    return length


def ramp_weights(length: int) -> WeightVector:
    """Weights [1, 2, ..., length]: each frame counts more than the one before."""
    length = _check_length(length)
    return WeightVector(np.arange(1, length + 1, dtype=np.float64), kind="ramp")


def gaussian_weights(length: int, mu: float | None = None, sigma: float | None = None) -> WeightVector:
    """Gaussian bump exp(-(q - mu)^2 / (2 sigma^2)) over positions q = 1..length.

    Defaults center the bump on the window and keep +-3 sigma inside it:
    mu = (length + 1) / 2 and sigma = length / 6.
    """
    length = _check_length(length)
    if mu is None:
        mu = (length + 1) / 2.0
    if sigma is None:
        sigma = length / 6.0
    mu = float(mu)
    sigma = float(sigma)
    if not np.isfinite(mu):
        raise InvalidParameterError(f"mu must be finite, got {mu}")
    if not np.isfinite(sigma) or sigma <= 0.0:
        raise InvalidParameterError(f"sigma must be > 0, got {sigma}")
    positions = np.arange(1, length + 1, dtype=np.float64)
    values = np.exp(-((positions - mu) ** 2) / (2.0 * sigma * sigma))
    return WeightVector(values, kind="gaussian", mu=mu, sigma=sigma)


def uniform_weights(length: int) -> WeightVector:
    """Equal weights; blending reduces to the arithmetic mean frame."""
    length = _check_length(length)
    return WeightVector(np.ones(length, dtype=np.float64), kind="uniform")


def make_weights(kind: str, length: int, mu: float | None = None, sigma: float | None = None) -> WeightVector:
    """Build a weight vector by kind name ("ramp", "gaussian" or "uniform")."""
    if kind == "ramp":
        return ramp_weights(length)
    if kind == "gaussian":
        return gaussian_weights(length, mu=mu, sigma=sigma)
    if kind == "uniform":
        return uniform_weights(length)
    raise InvalidParameterError(f"unknown weight kind {kind!r}; expected one of {WEIGHT_KINDS}")


def normalize_weights(values: np.ndarray | WeightVector) -> np.ndarray:
    """Divide weights by their sum so they form a convex combination.

    Raises DegenerateWeightsError when every weight is zero and
    InvalidParameterError on negative or non-finite entries.
    """
    if isinstance(values, WeightVector):
        values = values.values
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidParameterError(f"weights must be a non-empty 1-D vector, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise InvalidParameterError("weights must be finite")
    if (arr < 0).any():
        raise InvalidParameterError("weights must be non-negative")
    total = arr.sum()
    if total <= 0.0:
        raise DegenerateWeightsError("all weights are zero; nothing to normalize")
    return arr / total
