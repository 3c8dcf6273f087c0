"""scikit-learn style wrappers around the functional API.

``fit`` takes a single tensor (``SparseTensor``, dense cubical array or a
JSON-style dict) and stores the results in trailing-underscore attributes.
Hyper-parameters follow the ``get_params``/``set_params``/``clone`` protocol.
"""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bounds import full_report
from .digraph import build_digraph, is_weakly_irreducible
from .exceptions import NotWeaklyIrreducibleError
from .spectral import IterationConfig, perron_pair
from .tensor_core import SparseTensor, diagonal_similarity

__all__ = ["check_tensor", "PerronEstimator", "DiagonalBalancer", "SpectralBoundsEstimator"]


def check_tensor(X, *, weakly_irreducible: bool = False) -> SparseTensor:
    """Coerce ``X`` to a :class:`SparseTensor`, optionally requiring weak irreducibility."""
    if isinstance(X, SparseTensor):
        t = X
    elif isinstance(X, Mapping):
        t = SparseTensor.from_json_dict(X)
    else:
        t = SparseTensor.from_dense(np.asarray(X))
    if weakly_irreducible and not is_weakly_irreducible(build_digraph(t)):
        raise NotWeaklyIrreducibleError("tensor is not weakly irreducible")
    return t


class _IterationParams(BaseEstimator):
    def __init__(self, tolerance=1e-10, max_iter=100_000, shift=1.0):
        self.tolerance = tolerance
        self.max_iter = max_iter
        self.shift = shift

    def _config(self):
        return IterationConfig(tolerance=self.tolerance, max_iterations=self.max_iter, shift=self.shift)


class PerronEstimator(_IterationParams):
    """Fit the Perron pair of a nonnegative weakly irreducible tensor.

    Attributes
    ----------
    rho_ : float
    eigenvector_ : ndarray of shape (n,)
        Positive eigenvector, max entry 1.
    bracket_ : tuple of float
        Final Collatz-Wielandt enclosure of ``rho_``.
    residual_ : float
    n_iter_ : int
    """

    def fit(self, X, y=None):
        t = check_tensor(X)
        pair = perron_pair(t, self._config())
        self.rho_ = pair.rho
        self.eigenvector_ = pair.vector
        self.bracket_ = pair.bracket
        self.residual_ = pair.residual
        self.n_iter_ = pair.iterations
        self.n_features_in_ = t.dim
        return self


class DiagonalBalancer(TransformerMixin, _IterationParams):
    """Diagonal similarity that equalises slice sums.

    ``fit`` finds the Perron vector ``x`` of a tensor; ``transform`` maps a
    tensor ``A`` of the same dimension to ``X^{-(m-1)} A X`` with
    ``X = diag(x)``.  On the fitted tensor all slice sums of the result equal
    the spectral radius.
    """

    def fit(self, X, y=None):
        t = check_tensor(X)
        self.scaling_ = perron_pair(t, self._config()).vector
        self.n_features_in_ = t.dim
        return self

    def transform(self, X):
        check_is_fitted(self, "scaling_")
        t = check_tensor(X)
        if t.dim != self.n_features_in_:
            raise ValueError(f"tensor has dimension {t.dim}, balancer was fitted on {self.n_features_in_}")
        return diagonal_similarity(t, self.scaling_)


class SpectralBoundsEstimator(_IterationParams):
    """Spectral radius together with all digraph-circuit intervals.

    Attributes
    ----------
    report_ : BoundsReport
    rho_ : float
    intervals_ : dict
        Theorem name to ``(low, high)``.
    """

    def fit(self, X, y=None):
        t = check_tensor(X)
        self.report_ = full_report(t, self._config())
        self.rho_ = self.report_.rho
        self.intervals_ = {iv.theorem.value: (iv.low, iv.high) for iv in self.report_.intervals}
        self.n_features_in_ = t.dim
        return self
