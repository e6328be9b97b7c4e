"""Scikit-learn style transformer wrapping the video encoder.

The encoder is stateless, so ``fit`` only validates parameters; it exists to
compose with pipelines, grid search and anything else expecting the
estimator API.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .encoding import encode_video
from .validation import TAIL_POLICIES, check_jobs, check_subseq_len, check_tail
from .weights import WEIGHT_KINDS, make_weights


class SubsequenceImageEncoder(BaseEstimator, TransformerMixin):
    """Collapse runs of consecutive video frames into single images.

    Parameters
    ----------
    subseq_len : int, default=40
        Frames per sub-sequence; the last segment of a video may be shorter.
    weights : {"ramp", "gaussian", "uniform"}, default="ramp"
        Blend profile over each sub-sequence.
    mu, sigma : float, optional
        Gaussian center/width over frame positions 1..subseq_len. Defaults
        are (subseq_len + 1) / 2 and subseq_len / 6.
    tail : {"keep", "drop"}, default="keep"
        Keep a short final segment (weights renormalized) or drop it.
    n_jobs : int, optional
        Worker threads for independent sub-sequences. Output is bitwise
        identical regardless of the value.

    Examples
    --------
    >>> import numpy as np
    >>> video = np.random.default_rng(0).integers(0, 256, (120, 8, 8, 3), dtype=np.uint8)
    >>> enc = SubsequenceImageEncoder(subseq_len=40)
    >>> images = enc.fit_transform(video)
    >>> images.shape
    (3, 8, 8, 3)
    """

    def __init__(
        self,
        subseq_len: int = 40,
        weights: str = "ramp",
        mu: float | None = None,
        sigma: float | None = None,
        tail: str = "keep",
        n_jobs: int | None = None,
    ):
        self.subseq_len = subseq_len
        self.weights = weights
        self.mu = mu
        self.sigma = sigma
        self.tail = tail
        self.n_jobs = n_jobs

    def _validate_params(self) -> None:
        check_subseq_len(self.subseq_len)
        check_tail(self.tail)
        check_jobs(self.n_jobs)
        # builds the vector purely to validate kind/mu/sigma early
        make_weights(self.weights, check_subseq_len(self.subseq_len), mu=self.mu, sigma=self.sigma)

    def fit(self, X=None, y=None):
        """Validate parameters; no state is learned from the data."""
        self._validate_params()
        return self

    def transform(self, X) -> np.ndarray:
        """Encode a video into a (n_segments, H, W, C) float64 array.

        X is an (N, H, W[, C]) array or an iterable of frames.
        """
        self._validate_params()
        images = encode_video(
            X,
            subseq_len=self.subseq_len,
            weights=self.weights,
            mu=self.mu,
            sigma=self.sigma,
            tail=self.tail,
            jobs=self.n_jobs,
        )
        if images:
            return np.stack([img.values for img in images])
        # a short video under tail="drop" encodes to nothing
        if isinstance(X, np.ndarray) and X.ndim == 4:
            return np.empty((0, *X.shape[1:]), dtype=np.float64)
        if isinstance(X, np.ndarray) and X.ndim == 3:
            return np.empty((0, *X.shape[1:], 1), dtype=np.float64)
        return np.empty((0, 0, 0, 0), dtype=np.float64)

    def encode(self, X):
        """Like transform but returns the EncodedImage records with
        per-segment provenance instead of a bare array."""
        self._validate_params()
        return encode_video(
            X,
            subseq_len=self.subseq_len,
            weights=self.weights,
            mu=self.mu,
            sigma=self.sigma,
            tail=self.tail,
            jobs=self.n_jobs,
        )

    def __sklearn_is_fitted__(self) -> bool:
        # stateless: nothing is learned, so the estimator is always "fitted"
        return True


__all__ = ["SubsequenceImageEncoder", "WEIGHT_KINDS", "TAIL_POLICIES"]
