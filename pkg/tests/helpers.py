"""Random instance generators and independent oracles used across the test suite."""

import itertools

import numpy as np

from tensor_perron import SparseTensor, TensorDigraph, build_digraph, is_weakly_irreducible


def random_weakly_irreducible(rng, m, n, density=0.3, low=0.1, high=1.0):
    """Rejection-sample a weakly irreducible tensor with roughly ``density`` filled entries."""
    while True:
        mask = rng.random((n,) * m) < density
        dense = np.where(mask, rng.uniform(low, high, size=mask.shape), 0.0)
        t = SparseTensor.from_dense(dense)
        if t.nnz and is_weakly_irreducible(build_digraph(t)):
            return t


def random_corpus(seed, size):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(size):
        m = int(rng.choice([2, 3, 4]))
        n = int(rng.integers(2, 7))
        density = float(rng.uniform(0.3, 0.9))
        out.append(random_weakly_irreducible(rng, m, n, density))
    return out


def random_strong_digraph(rng, n, p=0.35, loops=True):
    loops = loops or n == 1
    while True:
        adj = rng.random((n, n)) < p
        if not loops:
            np.fill_diagonal(adj, False)
        arcs = [(i + 1, j + 1) for i, j in zip(*np.nonzero(adj))]
        g = TensorDigraph.from_arcs(n, arcs)
        if arcs and is_weakly_irreducible(g):
            return g


def dense_contract(dense, x):
    """``A x^{m-1}`` by repeated tensordot on the dense array."""
    out = dense
    for _ in range(dense.ndim - 1):
        out = out @ x
    return out


def brute_force_circuits(g):
    """Every elementary circuit by trying all vertex sequences (tiny graphs only)."""
    found = set()
    verts = range(1, g.n_vertices + 1)
    for length in range(1, g.n_vertices + 1):
        for seq in itertools.permutations(verts, length):
            if seq[0] != min(seq):
                continue
            if all((seq[k], seq[(k + 1) % length]) in g.arcs for k in range(length)):
                found.add(seq)
    return found


def brute_geometric_extremes(g, w):
    """(min, max) of the geometric circuit mean by enumeration, in plain Python floats."""
    from tensor_perron import enumerate_circuits

    means = [np.prod([w[v - 1] for v in c.vertices]) ** (1.0 / len(c)) for c in enumerate_circuits(g)]
    return min(means), max(means)


def matrix_power_iteration(a, tol=1e-15, max_iter=1_000_000):
    """Classical power iteration on ``a + I`` (2-norm normalisation), shifted back."""
    b = a + np.eye(len(a))
    x = np.ones(len(a)) / np.sqrt(len(a))
    for _ in range(max_iter):
        y = b @ x
        y /= np.linalg.norm(y)
        if np.linalg.norm(y - x) <= tol:
            x = y
            break
        x = y
    return float(np.linalg.norm(b @ x)) - 1.0
