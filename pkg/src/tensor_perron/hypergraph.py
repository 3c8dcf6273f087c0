"""k-uniform hypergraphs and their adjacency / signless Laplacian tensors.

Text format: the first non-blank line is ``k n``; every further line lists
the ``k`` distinct 1-based vertices of one edge.  Lines starting with ``#``
are comments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations
from pathlib import Path
from typing import Literal

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .bounds import BoundInterval, circuit_slice_bounds
from .digraph import build_digraph, girth
from .exceptions import NotWeaklyIrreducibleError, TensorFormatError
from .tensor_core import SparseTensor

__all__ = [
    "UniformHypergraph",
    "adjacency_tensor",
    "degree_tensor",
    "signless_laplacian_tensor",
    "is_connected",
    "degree_circuit_bounds",
    "degree_stats",
    "read_hypergraph",
    "parse_hypergraph",
    "complete_hypergraph",
    "hypergraph_tensor",
]

Which = Literal["adjacency", "laplacian"]


@dataclass(frozen=True)
class UniformHypergraph:
    """Hypergraph on vertices ``1..n_vertices`` whose edges all have ``k`` vertices."""

    k: int
    n_vertices: int
    edges: tuple

    def __post_init__(self):
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 2:
            raise TensorFormatError(f"k must be an integer >= 2, got {self.k!r}")
        if int(self.n_vertices) != self.n_vertices or self.n_vertices < 1:
            raise TensorFormatError(f"n must be an integer >= 1, got {self.n_vertices!r}")
        seen = set()
        canon = []
        for pos, edge in enumerate(self.edges):
            e = tuple(sorted(int(v) for v in edge))
            if len(e) != self.k or len(set(e)) != self.k:
                raise TensorFormatError(f"edge {pos} {list(edge)}: needs exactly {self.k} distinct vertices")
            if e[0] < 1 or e[-1] > self.n_vertices:
                raise TensorFormatError(f"edge {pos} {list(edge)}: vertex outside 1..{self.n_vertices}")
            if e in seen:
                raise TensorFormatError(f"edge {pos} {list(edge)}: duplicate edge")
            seen.add(e)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n_vertices, dtype=np.int64)
        for e in self.edges:
            d[np.asarray(e) - 1] += 1
        return d


def complete_hypergraph(k: int, n: int) -> UniformHypergraph:
    return UniformHypergraph(k, n, tuple(combinations(range(1, n + 1), k)))


def parse_hypergraph(text: str, source: str = "<string>") -> UniformHypergraph:
    lines = [
        (no, line.split())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise TensorFormatError(f"{source}: empty hypergraph file")

    def ints(no, fields):
        try:
            return [int(f) for f in fields]
        except ValueError:
            raise TensorFormatError(f"{source}:{no}: expected integers, got {' '.join(fields)!r}") from None

    no, header = lines[0]
    if len(header) != 2:
        raise TensorFormatError(f"{source}:{no}: header must be 'k n'")
    k, n = ints(no, header)
    edges, seen = [], set()
    for no, fields in lines[1:]:
        edge = ints(no, fields)
        try:
            UniformHypergraph(k, n, (edge,))
        except TensorFormatError as exc:
            raise TensorFormatError(f"{source}:{no}: {exc}") from None
        key = tuple(sorted(edge))
        if key in seen:
            raise TensorFormatError(f"{source}:{no}: duplicate edge {edge}")
        seen.add(key)
        edges.append(edge)
    return UniformHypergraph(k, n, tuple(edges))


def read_hypergraph(path) -> UniformHypergraph:
    return parse_hypergraph(Path(path).read_text(encoding="utf-8"), str(path))


def _edge_orderings(h: UniformHypergraph):
    rows = [p for e in h.edges for p in permutations(e)]
    return np.asarray(rows, dtype=np.int64).reshape(-1, h.k) - 1


def adjacency_tensor(h: UniformHypergraph) -> SparseTensor:
    """Every ordering of every edge gets ``1/(k-1)!``; slice sums are the degrees."""
    idx = _edge_orderings(h)
    return SparseTensor.from_arrays(h.k, h.n_vertices, idx, np.full(len(idx), 1.0 / math.factorial(h.k - 1)))


def degree_tensor(h: UniformHypergraph) -> SparseTensor:
    d = h.degrees
    verts = np.flatnonzero(d)
    return SparseTensor.from_arrays(h.k, h.n_vertices, np.repeat(verts[:, None], h.k, axis=1), d[verts])


def signless_laplacian_tensor(h: UniformHypergraph) -> SparseTensor:
    """``D + A``; the two supports are disjoint since edge vertices are distinct."""
    a, d = adjacency_tensor(h), degree_tensor(h)
    return SparseTensor.from_arrays(
        h.k,
        h.n_vertices,
        np.concatenate([a.indices, d.indices]),
        np.concatenate([a.values, d.values]),
    )


def is_connected(h: UniformHypergraph) -> bool:
    """Single component under edge incidence (isolated vertices disconnect)."""
    n = h.n_vertices
    if n == 1:
        return True
    rows, cols = [], []
    for e in h.edges:
        for u, v in zip(e, e[1:]):
            rows.append(u - 1)
            cols.append(v - 1)
    adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    return connected_components(adj, directed=False)[0] == 1


def hypergraph_tensor(h: UniformHypergraph, which: Which) -> SparseTensor:
    if which == "adjacency":
        return adjacency_tensor(h)
    if which == "laplacian":
        return signless_laplacian_tensor(h)
    raise ValueError(f"which must be 'adjacency' or 'laplacian', got {which!r}")


def degree_circuit_bounds(h: UniformHypergraph, which: Which = "adjacency") -> BoundInterval:
    """Circuit bound with weights ``d_i`` (adjacency) or ``2 d_i`` (signless Laplacian)."""
    if not is_connected(h):
        raise NotWeaklyIrreducibleError("degree bounds need a connected hypergraph")
    t = hypergraph_tensor(h, which)
    g_len = girth(build_digraph(t))
    expected = 2 if which == "adjacency" else 1
    if h.n_vertices > 1 and g_len != expected:
        raise AssertionError(f"girth of the {which} digraph is {g_len}, expected {expected}")
    return circuit_slice_bounds(t)


def degree_stats(h: UniformHypergraph):
    """``(max degree, average degree)``."""
    d = h.degrees
    return int(d.max()), float(d.mean())
