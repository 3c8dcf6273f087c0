"""Perron pair of a nonnegative weakly irreducible tensor by shifted power iteration."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .digraph import build_digraph, is_weakly_irreducible
from .exceptions import ConvergenceError, NotWeaklyIrreducibleError
from .tensor_core import SparseTensor, check_positive_vector, contract, eigen_residual

__all__ = ["IterationConfig", "PerronPair", "perron_pair", "collatz_wielandt_bracket"]

logger = logging.getLogger(__name__)

UNDERFLOW_FLOOR = 1e-300


@dataclass(frozen=True)
class IterationConfig:
    tolerance: float = 1e-10
    max_iterations: int = 100_000
    shift: float = 1.0

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance!r}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ValueError(f"max_iterations must be an integer >= 1, got {self.max_iterations!r}")
        if not self.shift >= 0:
            raise ValueError(f"shift must be >= 0, got {self.shift!r}")


@dataclass(frozen=True)
class PerronPair:
    """Spectral radius estimate with its positive eigenvector.

    ``vector`` is normalised to max-entry 1.  ``bracket_low <= rho <=
    bracket_high`` is a Collatz-Wielandt enclosure of the true spectral
    radius and ``rho`` is its midpoint.
    """

    rho: float
    vector: np.ndarray
    bracket_low: float
    bracket_high: float
    residual: float
    iterations: int

    @property
    def bracket(self):
        return (self.bracket_low, self.bracket_high)

    @property
    def width(self) -> float:
        return self.bracket_high - self.bracket_low


def collatz_wielandt_bracket(t: SparseTensor, x):
    """``(min_i, max_i)`` of ``(A x^{m-1})_i / x_i^{m-1}``; encloses ``rho(A)`` for positive ``x``."""
    x = check_positive_vector(x, t.dim)
    ratios = contract(t, x) / x ** (t.order - 1)
    return float(ratios.min()), float(ratios.max())


def perron_pair(
    t: SparseTensor,
    cfg: Optional[IterationConfig] = None,
    *,
    x0=None,
    callback: Optional[Callable[[int, float, float], None]] = None,
) -> PerronPair:
    """Spectral radius and positive eigenvector of a weakly irreducible tensor.

    Iterates ``y = B x^{m-1}``, ``x <- y^{1/(m-1)} / max`` on ``B = A + shift*I``
    starting from ``x0`` (all ones by default).  The ratios ``y_i / x_i^{m-1}``
    bracket ``rho(B)``; iteration stops once the bracket is narrower than
    ``cfg.tolerance``.  ``callback(k, low, high)`` receives the unshifted
    bracket of every step.

    Raises
    ------
    NotWeaklyIrreducibleError
        If the tensor digraph is not strongly connected.
    ConvergenceError
        On hitting ``cfg.max_iterations`` or if a component underflows.
    """
    cfg = cfg or IterationConfig()
    if not is_weakly_irreducible(build_digraph(t)):
        raise NotWeaklyIrreducibleError("Perron pair undefined: tensor is not weakly irreducible")

    m, n = t.order, t.dim
    shift = float(cfg.shift)
    idx, vals = t.indices, t.values
    rows, tails = idx[:, 0], idx[:, 1:]

    x = np.ones(n) if x0 is None else check_positive_vector(x0, n, "x0").copy()
    x /= x.max()
    best = (-np.inf, np.inf)
    for k in range(1, int(cfg.max_iterations) + 1):
        xm = x ** (m - 1)
        y = np.bincount(rows, weights=vals * np.prod(x[tails], axis=1), minlength=n) + shift * xm
        ratios = y / xm
        low, high = ratios.min() - shift, ratios.max() - shift
        if high - low < best[1] - best[0]:
            best = (float(low), float(high))
        if callback is not None:
            callback(k, float(low), float(high))
        if high - low <= cfg.tolerance:
            rho = 0.5 * (low + high)
            logger.debug("converged after %d iterations, bracket width %.3g", k, high - low)
            return PerronPair(
                rho=float(rho),
                vector=x,
                bracket_low=float(low),
                bracket_high=float(high),
                residual=eigen_residual(t, rho, x),
                iterations=k,
            )
        x = y ** (1.0 / (m - 1))
        x /= x.max()
        if x.min() < UNDERFLOW_FLOOR:
            raise ConvergenceError(
                f"eigenvector component underflowed below {UNDERFLOW_FLOOR:g} at iteration {k}",
                bracket=best,
                iterations=k,
            )
    raise ConvergenceError(
        f"no convergence within {cfg.max_iterations} iterations; best bracket {best}",
        bracket=best,
        iterations=int(cfg.max_iterations),
    )
