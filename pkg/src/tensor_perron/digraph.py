"""The digraph of a tensor and the circuit computations built on it.

Vertices are labelled ``1..n``.  Vertex-indexed arrays (weights, labels) are
ordinary 0-based numpy vectors, so vertex ``v`` lives at position ``v - 1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .exceptions import NoCircuitError, NotWeaklyIrreducibleError
from .tensor_core import SparseTensor

__all__ = [
    "TensorDigraph",
    "Circuit",
    "build_digraph",
    "is_weakly_irreducible",
    "girth",
    "extremal_circuit",
    "mean_cycle",
    "enumerate_circuits",
    "circuit_geometric_mean",
]

Sense = Literal["max", "min"]

ENUMERATION_MAX_VERTICES = 12


@dataclass(frozen=True)
class TensorDigraph:
    """Vertex/arc structure of a tensor digraph.

    ``arcs`` holds 1-based ordered pairs; ``out_neighbors[v - 1]`` is the
    sorted tuple of heads of arcs leaving ``v``.
    """

    n_vertices: int
    arcs: frozenset
    out_neighbors: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nbrs = [[] for _ in range(self.n_vertices)]
        for i, j in self.arcs:
            if not (1 <= i <= self.n_vertices and 1 <= j <= self.n_vertices):
                raise ValueError(f"arc {(i, j)} outside vertex range 1..{self.n_vertices}")
            nbrs[i - 1].append(j)
        object.__setattr__(self, "out_neighbors", tuple(tuple(sorted(a)) for a in nbrs))

    @classmethod
    def from_arcs(cls, n_vertices, arcs) -> "TensorDigraph":
        return cls(int(n_vertices), frozenset((int(i), int(j)) for i, j in arcs))

    def successors(self, v: int) -> tuple:
        return self.out_neighbors[v - 1]

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    def arc_arrays(self):
        """Sorted 0-based ``(tails, heads)`` arrays."""
        if not self.arcs:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty
        pairs = np.array(sorted(self.arcs), dtype=np.int64) - 1
        return pairs[:, 0], pairs[:, 1]

    def edge_lines(self) -> list:
        """Arcs as ``"i j"`` text lines, sorted."""
        return [f"{i} {j}" for i, j in sorted(self.arcs)]


@dataclass(frozen=True)
class Circuit:
    """A directed circuit ``v1 -> v2 -> ... -> vk -> v1``; a 1-vertex circuit is a loop."""

    vertices: tuple

    def __post_init__(self):
        if len(self.vertices) < 1:
            raise ValueError("a circuit has at least one vertex")
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    def __len__(self):
        return len(self.vertices)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def arcs(self):
        vs = self.vertices
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def canonical(self) -> "Circuit":
        """Rotation that puts the smallest vertex first."""
        k = self.vertices.index(min(self.vertices))
        return Circuit(self.vertices[k:] + self.vertices[:k])

    def is_valid_in(self, g: TensorDigraph) -> bool:
        return len(set(self.vertices)) == len(self.vertices) and all(a in g.arcs for a in self.arcs())

    def __str__(self):
        return ",".join(map(str, self.vertices))


def build_digraph(t: SparseTensor) -> TensorDigraph:
    """Arc ``(i, j)`` whenever a stored entry with first index ``i`` has ``j`` among its other indices."""
    idx = t.indices
    m = t.order
    tails = np.repeat(idx[:, 0], m - 1)
    heads = idx[:, 1:].ravel()
    pairs = np.unique(np.stack([tails, heads], axis=1), axis=0) + 1 if len(tails) else np.zeros((0, 2), int)
    return TensorDigraph(t.dim, frozenset(map(tuple, pairs.tolist())))


def is_weakly_irreducible(g: TensorDigraph) -> bool:
    """True iff ``g`` is strongly connected; a single vertex counts as strongly connected."""
    n = g.n_vertices
    if n == 1:
        return True
    tails, heads = g.arc_arrays()
    adj = csr_matrix((np.ones(len(tails)), (tails, heads)), shape=(n, n))
    n_comp, _ = connected_components(adj, directed=True, connection="strong")
    return n_comp == 1


def girth(g: TensorDigraph) -> int:
    """Length of the shortest circuit; loops give 1."""
    if any((v, v) in g.arcs for v in range(1, g.n_vertices + 1)):
        return 1
    best = None
    # BFS from each vertex: shortest cycle through s is dist(s, u) + 1 for an arc (u, s)
    for s in range(1, g.n_vertices + 1):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and dist[u] + 1 >= best:
                break
            for w in g.successors(u):
                if w == s:
                    length = dist[u] + 1
                    best = length if best is None else min(best, length)
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
    if best is None:
        raise NoCircuitError("no circuit: the digraph is acyclic")
    return best


def extremal_circuit(g: TensorDigraph, f, sense: Sense = "max", start: int = 1) -> Circuit:
    """Greedy circuit that always steps to the out-neighbour of extremal label.

    From ``start``, move to the successor with the largest (``sense="max"``)
    or smallest (``sense="min"``) label, smallest index on ties, until a
    vertex repeats; the repeated stretch of the walk is the circuit.  Every
    step of the returned circuit is an argmax/argmin step.
    """
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (g.n_vertices,) or not np.all(np.isfinite(f)):
        raise ValueError(f"labelling must be {g.n_vertices} finite reals")
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be 'max' or 'min', got {sense!r}")
    if not 1 <= start <= g.n_vertices:
        raise ValueError(f"start vertex {start} outside 1..{g.n_vertices}")
    for v in range(1, g.n_vertices + 1):
        if not g.successors(v):
            raise NoCircuitError(f"vertex {v} has no out-neighbours")

    pick = max if sense == "max" else min
    walk = [start]
    position = {start: 0}
    while True:
        nbrs = g.successors(walk[-1])
        best = pick(f[u - 1] for u in nbrs)
        nxt = next(u for u in nbrs if f[u - 1] == best)
        if nxt in position:
            return Circuit(walk[position[nxt]:])
        position[nxt] = len(walk)
        walk.append(nxt)


def circuit_geometric_mean(circuit: Circuit, w) -> float:
    """``(prod_{i in circuit} w_i) ** (1 / |circuit|)``, computed in log space."""
    w = np.asarray(w, dtype=np.float64)
    return float(np.exp(np.mean(np.log(w[np.asarray(circuit.vertices) - 1]))))


def mean_cycle(g: TensorDigraph, w, sense: Sense = "min"):
    """Extremal geometric mean of vertex weights over all circuits of ``g``.

    Uses Karp's minimum mean-cycle recurrence with arc weight
    ``log w[tail]``; the maximum is obtained by negating the weights.

    Returns
    -------
    value : float
        ``min`` or ``max`` over circuits of ``(prod w_i) ** (1/|circuit|)``.
    witness : Circuit
        A circuit attaining ``value`` (canonical rotation).
    """
    n = g.n_vertices
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (n,):
        raise ValueError(f"weights must be a vector of length {n}")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise ValueError("weights must be finite and strictly positive")
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be 'max' or 'min', got {sense!r}")
    if not is_weakly_irreducible(g):
        raise NotWeaklyIrreducibleError("mean_cycle needs a strongly connected digraph")
    if g.n_arcs == 0:
        raise NoCircuitError("no circuit: the digraph has no arcs")

    logw = np.log(w) if sense == "min" else -np.log(w)
    tails, heads = g.arc_arrays()
    arc_w = logw[tails]

    # dist[k, v]: lightest walk of exactly k arcs from vertex 0 to v
    dist = np.full((n + 1, n), np.inf)
    pred = np.full((n + 1, n), -1, dtype=np.int64)
    dist[0, 0] = 0.0
    by_head = np.argsort(heads, kind="stable")
    for k in range(1, n + 1):
        cand = dist[k - 1, tails] + arc_w
        order = by_head[np.lexsort((cand[by_head], heads[by_head]))]
        first = np.ones(len(order), dtype=bool)
        first[1:] = heads[order][1:] != heads[order][:-1]
        chosen = order[first]
        finite = np.isfinite(cand[chosen])
        chosen = chosen[finite]
        dist[k, heads[chosen]] = cand[chosen]
        pred[k, heads[chosen]] = tails[chosen]

    with np.errstate(invalid="ignore"):
        ks = np.arange(n)[:, None]
        ratios = (dist[n][None, :] - dist[:n]) / (n - ks)
    ratios[~np.isfinite(dist[:n])] = -np.inf
    per_vertex = ratios.max(axis=0)
    per_vertex[~np.isfinite(dist[n])] = np.inf
    v_star = int(np.argmin(per_vertex))
    best_mean = per_vertex[v_star]

    # the n-arc walk to v_star repeats a vertex; every circuit on it is optimal
    walk = [v_star]
    for k in range(n, 0, -1):
        walk.append(int(pred[k, walk[-1]]))
    walk.reverse()
    seen = {}
    for pos, v in enumerate(walk):
        if v in seen:
            witness = Circuit(tuple(u + 1 for u in walk[seen[v]:pos])).canonical()
            break
        seen[v] = pos

    value = float(np.exp(best_mean if sense == "min" else -best_mean))
    return value, witness


def enumerate_circuits(g: TensorDigraph, max_len: int | None = None) -> list:
    """All elementary circuits of length <= ``max_len``, each once, canonically rotated.

    Brute-force depth-first search from each start vertex through larger
    vertices only.  Meant as an oracle on small digraphs.
    """
    n = g.n_vertices
    if n > ENUMERATION_MAX_VERTICES:
        raise ValueError(f"enumerate_circuits is limited to {ENUMERATION_MAX_VERTICES} vertices, got {n}")
    max_len = n if max_len is None else min(int(max_len), n)
    out = []

    def extend(path, on_path):
        s = path[0]
        for u in g.successors(path[-1]):
            if u == s:
                out.append(Circuit(tuple(path)))
            elif u > s and u not in on_path and len(path) < max_len:
                path.append(u)
                on_path.add(u)
                extend(path, on_path)
                on_path.discard(u)
                path.pop()

    if max_len >= 1:
        for s in range(1, n + 1):
            extend([s], {s})
    return sorted(out, key=lambda c: (c.length, c.vertices))
