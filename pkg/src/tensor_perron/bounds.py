"""Certified intervals for the spectral radius from digraph circuits.

Four families of interval are computed:

* ``CircuitSliceSum``: extremal geometric means of the slice sums over the
  circuits of the tensor digraph.
* ``GirthSorted``: geometric means of the ``g`` smallest and ``g`` largest
  slice sums, ``g`` being the girth.
* ``ScaledCircuit``: the circuit bound applied to the ratios
  ``(A x^{m-1})_i / x_i^{m-1}`` for a positive ``x``.
* ``DiagonalBalanced``: the girth bound applied to ``D^{-(m-1)} A D``.

The last two collapse to a point at the Perron vector.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .digraph import Circuit, TensorDigraph, build_digraph, girth, is_weakly_irreducible, mean_cycle
from .exceptions import NotWeaklyIrreducibleError
from .spectral import IterationConfig, perron_pair
from .tensor_core import SparseTensor, check_positive_vector, contract, diagonal_similarity, slice_sums

__all__ = [
    "Theorem",
    "BoundInterval",
    "BoundsReport",
    "circuit_slice_bounds",
    "girth_sorted_bounds",
    "scaled_circuit_bounds",
    "minimax_certificate",
    "balanced_slice_bounds",
    "full_report",
    "contains",
]

logger = logging.getLogger(__name__)

SWAP_SLACK = 1e-12
CONTAIN_SLACK = 1e-8


class Theorem(str, enum.Enum):
    CIRCUIT_SLICE_SUM = "CircuitSliceSum"
    GIRTH_SORTED = "GirthSorted"
    SCALED_CIRCUIT = "ScaledCircuit"
    DIAGONAL_BALANCED = "DiagonalBalanced"


@dataclass(frozen=True)
class BoundInterval:
    low: float
    high: float
    theorem: Theorem
    low_witness: Optional[Circuit] = None
    high_witness: Optional[Circuit] = None
    # set when rounding left low > high by < SWAP_SLACK and the ends were swapped
    swapped: bool = False

    @property
    def width(self) -> float:
        return self.high - self.low

    def contains(self, value: float, slack: float = CONTAIN_SLACK) -> bool:
        return contains(self, value, slack)

    def to_json_dict(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "low": self.low,
            "high": self.high,
            "low_witness": list(self.low_witness.vertices) if self.low_witness else None,
            "high_witness": list(self.high_witness.vertices) if self.high_witness else None,
        }


@dataclass(frozen=True)
class BoundsReport:
    rho: float
    intervals: list = field(default_factory=list)
    all_contain_rho: bool = True

    def to_json_dict(self) -> dict:
        return {
            "rho": self.rho,
            "intervals": [iv.to_json_dict() for iv in self.intervals],
            "all_contain_rho": self.all_contain_rho,
        }


def contains(interval: BoundInterval, value: float, slack: float = CONTAIN_SLACK) -> bool:
    """``low - tol <= value <= high + tol`` with ``tol = slack * max(1, |value|)``."""
    tol = slack * max(1.0, abs(value))
    return interval.low - tol <= value <= interval.high + tol


def _make_interval(low, high, theorem, low_witness=None, high_witness=None) -> BoundInterval:
    swapped = False
    if low > high:
        if low - high >= SWAP_SLACK * max(1.0, abs(high)):
            raise ArithmeticError(f"{theorem.value}: lower bound {low!r} exceeds upper bound {high!r}")
        logger.warning("%s: swapping ends after rounding (%r > %r)", theorem.value, low, high)
        low, high, swapped = high, low, True
    return BoundInterval(float(low), float(high), theorem, low_witness, high_witness, swapped)


def _checked_digraph(t: SparseTensor) -> TensorDigraph:
    g = build_digraph(t)
    if not is_weakly_irreducible(g):
        raise NotWeaklyIrreducibleError("bounds need a weakly irreducible tensor")
    return g


def _circuit_interval(g: TensorDigraph, weights, theorem: Theorem) -> BoundInterval:
    low, low_w = mean_cycle(g, weights, "min")
    high, high_w = mean_cycle(g, weights, "max")
    return _make_interval(low, high, theorem, low_w, high_w)


def _sorted_interval(weights, g_len: int, theorem: Theorem) -> BoundInterval:
    # stable sort: ties broken by vertex index
    k = np.sort(np.asarray(weights, dtype=np.float64), kind="stable")
    return _make_interval(_geometric_mean(k[:g_len]), _geometric_mean(k[-g_len:]), theorem)


def _geometric_mean(values) -> float:
    if len(values) == 1:
        return float(values[0])
    return float(np.exp(np.mean(np.log(values))))


def circuit_slice_bounds(t: SparseTensor) -> BoundInterval:
    """Min/max over circuits of the geometric mean of the slice sums along the circuit."""
    g = _checked_digraph(t)
    return _circuit_interval(g, slice_sums(t), Theorem.CIRCUIT_SLICE_SUM)


def girth_sorted_bounds(t: SparseTensor) -> BoundInterval:
    """Geometric means of the ``g`` smallest and ``g`` largest slice sums (``g`` = girth)."""
    g = _checked_digraph(t)
    return _sorted_interval(slice_sums(t), girth(g), Theorem.GIRTH_SORTED)


def scaled_circuit_bounds(t: SparseTensor, x) -> BoundInterval:
    """Circuit bound on the ratios ``(A x^{m-1})_i / x_i^{m-1}`` for positive ``x``.

    Same as :func:`circuit_slice_bounds` on ``X^{-(m-1)} A X``, which has the
    same digraph as ``A``.
    """
    x = check_positive_vector(x, t.dim)
    g = _checked_digraph(t)
    ratios = contract(t, x) / x ** (t.order - 1)
    return _circuit_interval(g, ratios, Theorem.SCALED_CIRCUIT)


def balanced_slice_bounds(t: SparseTensor, d) -> BoundInterval:
    """Girth-sorted bound on the diagonally similar tensor ``D^{-(m-1)} A D``."""
    d = check_positive_vector(d, t.dim, "d")
    g = _checked_digraph(t)
    b = diagonal_similarity(t, d)
    return _sorted_interval(slice_sums(b), girth(g), Theorem.DIAGONAL_BALANCED)


def minimax_certificate(t: SparseTensor, cfg: Optional[IterationConfig] = None):
    """Evaluate the circuit minimax at the Perron vector.

    Returns ``(rho, x_star, gap)`` where ``gap`` is the width of
    :func:`scaled_circuit_bounds` at ``x_star``.  A gap within the iteration
    tolerance shows that both the min-max and the max-min over positive
    vectors are attained there.
    """
    pair = perron_pair(t, cfg)
    iv = scaled_circuit_bounds(t, pair.vector)
    return pair.rho, pair.vector, iv.width


def full_report(t: SparseTensor, cfg: Optional[IterationConfig] = None, x=None) -> BoundsReport:
    """Spectral radius plus all four intervals.

    ``x`` is the test vector of the scaled circuit interval (all ones when
    omitted).  The balanced interval always uses the Perron vector.
    """
    pair = perron_pair(t, cfg)
    x = np.ones(t.dim) if x is None else x
    intervals = [
        circuit_slice_bounds(t),
        girth_sorted_bounds(t),
        scaled_circuit_bounds(t, x),
        balanced_slice_bounds(t, pair.vector),
    ]
    ok = all(contains(iv, pair.rho) for iv in intervals)
    return BoundsReport(rho=pair.rho, intervals=intervals, all_contain_rho=ok)
