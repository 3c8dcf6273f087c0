"""Sparse nonnegative tensors in coordinate form.

A tensor of order ``m`` and dimension ``n`` is stored as the list of its
strictly positive entries.  Index tuples are 1-based at the public boundary
(constructor, ``entries``, JSON files) and 0-based in the ``indices`` array
used by the numerical kernels.  Entries are kept sorted lexicographically so
every summation happens in a fixed order.
"""

from __future__ import annotations

import json
import math
from itertools import permutations
from pathlib import Path
from typing import Mapping

import numpy as np

from .exceptions import TensorFormatError

__all__ = [
    "SparseTensor",
    "contract",
    "slice_sums",
    "diagonal_similarity",
    "eigen_residual",
    "add_identity_shift",
    "is_symmetric",
    "check_positive_vector",
    "read_tensor",
    "write_tensor",
]


class SparseTensor:
    """Order-``m``, dimension-``n`` nonnegative tensor with positive stored entries.

    Parameters
    ----------
    order : int
        Number of indices ``m`` (at least 2).
    dim : int
        Range ``n`` of every index (at least 1).
    entries : mapping or iterable of pairs
        ``{(i1, ..., im): value}`` with 1-based indices, or an iterable of
        ``(index_tuple, value)`` pairs.  Values must be finite and > 0;
        duplicate index tuples are rejected rather than summed.

    Examples
    --------
    >>> t = SparseTensor(2, 2, {(1, 2): 2.0, (2, 1): 3.0})
    >>> slice_sums(t)
    array([2., 3.])
    """

    __slots__ = ("_order", "_dim", "_indices", "_values")

    def __init__(self, order: int, dim: int, entries=()):
        order, dim = _check_shape(order, dim)
        if isinstance(entries, Mapping):
            items = list(entries.items())
        else:
            items = list(entries)

        seen = set()
        idx = np.empty((len(items), order), dtype=np.int64)
        vals = np.empty(len(items), dtype=np.float64)
        for pos, (key, val) in enumerate(items):
            key = tuple(key)
            where = f"entry {pos} {list(key)}"
            if len(key) != order:
                raise TensorFormatError(f"{where}: expected {order} indices, got {len(key)}")
            for i in key:
                if isinstance(i, bool) or int(i) != i or not 1 <= i <= dim:
                    raise TensorFormatError(f"{where}: index {i!r} outside [1, {dim}]")
            key = tuple(int(i) for i in key)
            if key in seen:
                raise TensorFormatError(f"{where}: duplicate index tuple")
            seen.add(key)
            val = float(val)
            if not math.isfinite(val) or val <= 0.0:
                raise TensorFormatError(f"{where}: value must be finite and > 0, got {val!r}")
            idx[pos] = key
            vals[pos] = val
        self._init_arrays(order, dim, idx - 1, vals)

    def _init_arrays(self, order, dim, indices, values):
        order_key = np.lexsort(indices.T[::-1]) if len(values) else np.arange(0)
        indices = np.ascontiguousarray(indices[order_key], dtype=np.int64).reshape(-1, order)
        values = np.ascontiguousarray(values[order_key], dtype=np.float64)
        indices.setflags(write=False)
        values.setflags(write=False)
        self._order = order
        self._dim = dim
        self._indices = indices
        self._values = values

    @classmethod
    def from_arrays(cls, order: int, dim: int, indices, values) -> "SparseTensor":
        """Build from a 0-based ``(nnz, order)`` index array and matching values.

        Validation is the same as for the constructor but vectorised.
        """
        order, dim = _check_shape(order, dim)
        indices = np.asarray(indices, dtype=np.int64).reshape(-1, order)
        values = np.asarray(values, dtype=np.float64).ravel()
        if len(indices) != len(values):
            raise TensorFormatError("indices and values have different lengths")
        if indices.size and (indices.min() < 0 or indices.max() >= dim):
            raise TensorFormatError(f"index outside [1, {dim}]")
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise TensorFormatError("values must be finite and > 0")
        if len(values) and len(np.unique(indices, axis=0)) != len(values):
            raise TensorFormatError("duplicate index tuple")
        self = object.__new__(cls)
        self._init_arrays(order, dim, indices, values)
        return self

    @classmethod
    def from_dense(cls, array) -> "SparseTensor":
        """Convert a dense cubical nonnegative array; zeros are dropped."""
        array = np.asarray(array, dtype=np.float64)
        if array.ndim < 2 or len(set(array.shape)) != 1:
            raise TensorFormatError(f"dense tensor must be cubical with ndim >= 2, got shape {array.shape}")
        if np.any(array < 0) or not np.all(np.isfinite(array)):
            raise TensorFormatError("dense tensor must be finite and nonnegative")
        nz = np.nonzero(array)
        return cls.from_arrays(array.ndim, array.shape[0], np.stack(nz, axis=1), array[nz])

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self._dim,) * self._order)
        out[tuple(self._indices.T)] = self._values
        return out

    @property
    def order(self) -> int:
        return self._order

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def nnz(self) -> int:
        return len(self._values)

    @property
    def indices(self) -> np.ndarray:
        """Read-only 0-based index array of shape ``(nnz, order)``."""
        return self._indices

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def entries(self) -> dict:
        """1-based ``{index_tuple: value}`` view, in storage order."""
        return {tuple(int(i) + 1 for i in row): float(v) for row, v in zip(self._indices, self._values)}

    def scaled(self, factor: float) -> "SparseTensor":
        if not factor > 0:
            raise ValueError("scale factor must be > 0")
        return SparseTensor.from_arrays(self._order, self._dim, self._indices, self._values * factor)

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return (
            self._order == other._order
            and self._dim == other._dim
            and np.array_equal(self._indices, other._indices)
            and np.array_equal(self._values, other._values)
        )

    __hash__ = None

    def __repr__(self):
        return f"SparseTensor(order={self._order}, dim={self._dim}, nnz={self.nnz})"

    def to_json_dict(self) -> dict:
        return {
            "order": self._order,
            "dim": self._dim,
            "entries": [
                {"idx": [int(i) + 1 for i in row], "val": float(v)}
                for row, v in zip(self._indices, self._values)
            ],
        }

    @classmethod
    def from_json_dict(cls, doc) -> "SparseTensor":
        if not isinstance(doc, Mapping):
            raise TensorFormatError("tensor document must be a JSON object")
        for key in ("order", "dim", "entries"):
            if key not in doc:
                raise TensorFormatError(f"missing key {key!r}")
        if not isinstance(doc["entries"], list):
            raise TensorFormatError("'entries' must be an array")
        pairs = []
        for pos, item in enumerate(doc["entries"]):
            if not isinstance(item, Mapping) or "idx" not in item or "val" not in item:
                raise TensorFormatError(f"entry {pos}: expected object with 'idx' and 'val'")
            if not isinstance(item["idx"], list) or not all(
                isinstance(i, int) and not isinstance(i, bool) for i in item["idx"]
            ):
                raise TensorFormatError(f"entry {pos}: 'idx' must be an array of integers")
            val = item["val"]
            if isinstance(val, bool) or not isinstance(val, (int, float)):
                raise TensorFormatError(f"entry {pos}: 'val' must be a number")
            pairs.append((tuple(item["idx"]), val))
        return cls(doc["order"], doc["dim"], pairs)


def _check_shape(order, dim):
    if isinstance(order, bool) or not isinstance(order, (int, np.integer)) or order < 2:
        raise TensorFormatError(f"order must be an integer >= 2, got {order!r}")
    if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)) or dim < 1:
        raise TensorFormatError(f"dim must be an integer >= 1, got {dim!r}")
    return int(order), int(dim)


def check_positive_vector(x, n: int, name: str = "x") -> np.ndarray:
    """Validate a length-``n`` vector of finite, strictly positive reals."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or len(x) != n:
        raise ValueError(f"{name} must be a vector of length {n}, got shape {x.shape}")
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise ValueError(f"{name} must be finite and strictly positive")
    return x


def contract(t: SparseTensor, x) -> np.ndarray:
    """Return ``A x^{m-1}``, i.e. ``sum a[i, i2..im] * x[i2] * ... * x[im]`` per ``i``."""
    x = check_positive_vector(x, t.dim)
    idx = t.indices
    terms = t.values * np.prod(x[idx[:, 1:]], axis=1)
    # bincount accumulates in storage order, which is lexicographic
    return np.bincount(idx[:, 0], weights=terms, minlength=t.dim).astype(np.float64)


def slice_sums(t: SparseTensor) -> np.ndarray:
    """Slice sums ``K_i``: total of the entries whose first index is ``i``."""
    return contract(t, np.ones(t.dim))


def diagonal_similarity(t: SparseTensor, d) -> SparseTensor:
    """Return ``D^{-(m-1)} A D`` for the positive diagonal ``D = diag(d)``.

    Entry ``(i1, ..., im)`` becomes ``a / d[i1]**(m-1) * d[i2] * ... * d[im]``;
    the sparsity pattern is unchanged.
    """
    d = check_positive_vector(d, t.dim, "d")
    idx = t.indices
    factor = np.prod(d[idx[:, 1:]], axis=1) / d[idx[:, 0]] ** (t.order - 1)
    return SparseTensor.from_arrays(t.order, t.dim, idx, t.values * factor)


def eigen_residual(t: SparseTensor, lam: float, x) -> float:
    """Scaled residual ``max|Ax^{m-1} - lam x^{[m-1]}| / max(1, |lam| max x^{m-1})``."""
    x = check_positive_vector(x, t.dim)
    xm = x ** (t.order - 1)
    diff = np.abs(contract(t, x) - lam * xm)
    return float(diff.max() / max(1.0, abs(lam) * xm.max()))


def add_identity_shift(t: SparseTensor, s: float) -> SparseTensor:
    """Return ``A + s I`` where ``I`` is the order-``m`` unit diagonal tensor."""
    if not (s > 0 and math.isfinite(s)):
        raise ValueError(f"shift must be finite and > 0, got {s!r}")
    idx, vals = t.indices, t.values.copy()
    on_diag = np.all(idx == idx[:, :1], axis=1)
    vals[on_diag] += s
    missing = np.setdiff1d(np.arange(t.dim), idx[on_diag, 0])
    new_idx = np.repeat(missing[:, None], t.order, axis=1)
    return SparseTensor.from_arrays(
        t.order,
        t.dim,
        np.concatenate([idx, new_idx]),
        np.concatenate([vals, np.full(len(missing), float(s))]),
    )


def is_symmetric(t: SparseTensor, rtol: float = 0.0) -> bool:
    """True iff every entry is invariant under all permutations of its indices."""
    lookup = {tuple(row): v for row, v in zip(t.indices.tolist(), t.values.tolist())}
    for key, val in lookup.items():
        for perm in set(permutations(key)):
            other = lookup.get(perm)
            if other is None or abs(other - val) > rtol * abs(val):
                return False
    return True


def read_tensor(path) -> SparseTensor:
    """Load a tensor from the JSON format ``{"order", "dim", "entries": [{"idx", "val"}]}``."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TensorFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return SparseTensor.from_json_dict(doc)


def write_tensor(t: SparseTensor, path) -> None:
    Path(path).write_text(json.dumps(t.to_json_dict(), indent=1) + "\n", encoding="utf-8")

