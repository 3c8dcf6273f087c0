"""Spectral radius of nonnegative weakly irreducible tensors, certified by digraph circuits."""

from .bounds import (
    BoundInterval,
    BoundsReport,
    Theorem,
    balanced_slice_bounds,
    circuit_slice_bounds,
    full_report,
    girth_sorted_bounds,
    minimax_certificate,
    scaled_circuit_bounds,
)
from .digraph import (
    Circuit,
    TensorDigraph,
    build_digraph,
    circuit_geometric_mean,
    enumerate_circuits,
    extremal_circuit,
    girth,
    is_weakly_irreducible,
    mean_cycle,
)
from .estimators import DiagonalBalancer, PerronEstimator, SpectralBoundsEstimator, check_tensor
from .exceptions import (
    ConvergenceError,
    NoCircuitError,
    NotWeaklyIrreducibleError,
    TensorFormatError,
    TensorPerronError,
)
from .hypergraph import (
    UniformHypergraph,
    adjacency_tensor,
    complete_hypergraph,
    degree_circuit_bounds,
    degree_stats,
    degree_tensor,
    hypergraph_tensor,
    is_connected,
    parse_hypergraph,
    read_hypergraph,
    signless_laplacian_tensor,
)
from .spectral import IterationConfig, PerronPair, collatz_wielandt_bracket, perron_pair
from .tensor_core import (
    SparseTensor,
    add_identity_shift,
    contract,
    diagonal_similarity,
    eigen_residual,
    is_symmetric,
    read_tensor,
    slice_sums,
    write_tensor,
)

__version__ = "0.1.0"
