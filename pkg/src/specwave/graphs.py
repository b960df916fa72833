"""Undirected graphs and their Laplacians in compressed sparse row form.

Graphs are simple (no self-loops, no multi-edges), unweighted, and stored as a
CSR adjacency structure: both directions of every undirected edge appear in
``col_indices``, and neighbor lists are sorted within each row. Laplacians are
symmetric sparse matrices with an explicitly stored diagonal, so a row of the
normalized Laplacian belonging to an isolated node is all zeros by convention
rather than absent.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .validation import as_float_array

__all__ = [
    "Graph",
    "SparseSymMatrix",
    "build_graph",
    "grid_graph",
    "combinatorial_laplacian",
    "normalized_laplacian",
    "spmv",
]


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph, CSR adjacency.

    Attributes
    ----------
    n : int
        Number of nodes, labelled 0..n-1.
    row_offsets : ndarray of int64, shape (n + 1,)
        Row pointers into ``col_indices``; neighbors of node ``u`` occupy
        ``col_indices[row_offsets[u]:row_offsets[u + 1]]``.
    col_indices : ndarray of int64, shape (2 * num_edges,)
        Concatenated sorted neighbor lists (each undirected edge stored in
        both directions).
    """

    n: int
    row_offsets: np.ndarray
    col_indices: np.ndarray

    @property
    def degrees(self) -> np.ndarray:
        """Per-node degree vector (int64, shape (n,))."""
        return np.diff(self.row_offsets)

    @property
    def num_edges(self) -> int:
        """Number of undirected edges."""
        return self.col_indices.size // 2

    def neighbors(self, u: int) -> np.ndarray:
        """Sorted neighbor ids of node ``u``."""
        if not 0 <= u < self.n:
            raise ValueError(f"node {u} out of range for graph with {self.n} nodes")
        return self.col_indices[self.row_offsets[u] : self.row_offsets[u + 1]]

    def __eq__(self, other):
        # structural equality (the CSR form is canonical), so copies compare
        # equal -- sklearn's clone() hands estimators a deep-copied graph
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.row_offsets, other.row_offsets)
            and np.array_equal(self.col_indices, other.col_indices)
        )


@dataclass(frozen=True, eq=False)
class SparseSymMatrix:
    """Symmetric sparse matrix in CSR form with an explicit diagonal.

    Attributes
    ----------
    n : int
        Matrix dimension.
    row_offsets : ndarray of int64, shape (n + 1,)
    col_indices : ndarray of int64
        Column ids per row, sorted, including the diagonal position.
    values : ndarray of float64
        Entry values aligned with ``col_indices``.
    """

    n: int
    row_offsets: np.ndarray
    col_indices: np.ndarray
    values: np.ndarray

    @cached_property
    def _coo_rows(self) -> np.ndarray:
        # row id of every stored entry; cached because matvecs reuse it heavily
        return np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.row_offsets))

    def dot(self, x: np.ndarray) -> np.ndarray:
        """Multiply by a vector (n,) or a matrix (n, d)."""
        x = np.asarray(x, dtype=float)
        if x.shape[0] != self.n:
            raise ValueError(f"operand has {x.shape[0]} rows, expected {self.n}")
        if x.ndim == 1:
            return np.bincount(
                self._coo_rows, weights=self.values * x[self.col_indices], minlength=self.n
            )
        if x.ndim != 2:
            raise ValueError(f"operand must be 1-D or 2-D, got ndim={x.ndim}")
        out = np.empty_like(x)
        for j in range(x.shape[1]):
            out[:, j] = np.bincount(
                self._coo_rows, weights=self.values * x[self.col_indices, j], minlength=self.n
            )
        return out

    def to_dense(self) -> np.ndarray:
        """Dense ndarray copy (for small-matrix oracles and reports)."""
        dense = np.zeros((self.n, self.n))
        dense[self._coo_rows, self.col_indices] = self.values
        return dense


def build_graph(n: int, edges) -> Graph:
    """Build a :class:`Graph` from an undirected edge list.

    Duplicate and reversed pairs are coalesced; self-loops are rejected.

    Parameters
    ----------
    n : int
        Number of nodes.
    edges : iterable of (int, int)
        Undirected edges; order and orientation are irrelevant.

    Returns
    -------
    Graph
    """
    if n < 1:
        raise ValueError(f"graph needs at least one node, got n={n}")
    pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    if pairs.size:
        if pairs.min() < 0 or pairs.max() >= n:
            raise ValueError(f"edge endpoint out of range [0, {n})")
        if np.any(pairs[:, 0] == pairs[:, 1]):
            raise ValueError("self-loops are not allowed")
        lo = pairs.min(axis=1)
        hi = pairs.max(axis=1)
        canonical = np.unique(lo * n + hi)
        lo, hi = canonical // n, canonical % n
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
    else:
        src = dst = np.empty(0, dtype=np.int64)
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    counts = np.bincount(src, minlength=n)
    row_offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=row_offsets[1:])
    return Graph(n=n, row_offsets=row_offsets, col_indices=dst)


def grid_graph(rows: int, cols: int) -> Graph:
    """4-neighbour grid on ``rows x cols`` nodes, node id = r * cols + c."""
    if rows < 1 or cols < 1:
        raise ValueError(f"grid dimensions must be positive, got {rows}x{cols}")
    ids = np.arange(rows * cols, dtype=np.int64).reshape(rows, cols)
    right = np.stack([ids[:, :-1].ravel(), ids[:, 1:].ravel()], axis=1)
    down = np.stack([ids[:-1, :].ravel(), ids[1:, :].ravel()], axis=1)
    return build_graph(rows * cols, np.concatenate([right, down], axis=0))


def _assemble_symmetric(g: Graph, offdiag_values: np.ndarray, diag_values: np.ndarray) -> SparseSymMatrix:
    """CSR matrix with the graph's adjacency pattern plus an explicit diagonal."""
    n = g.n
    adj_rows = np.repeat(np.arange(n, dtype=np.int64), g.degrees)
    rows = np.concatenate([adj_rows, np.arange(n, dtype=np.int64)])
    cols = np.concatenate([g.col_indices, np.arange(n, dtype=np.int64)])
    vals = np.concatenate([offdiag_values, diag_values])
    order = np.lexsort((cols, rows))
    counts = np.bincount(rows, minlength=n)
    row_offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=row_offsets[1:])
    return SparseSymMatrix(
        n=n, row_offsets=row_offsets, col_indices=cols[order], values=vals[order]
    )


def combinatorial_laplacian(g: Graph) -> SparseSymMatrix:
    """Degree matrix minus adjacency: positive semi-definite, row sums zero."""
    deg = g.degrees.astype(float)
    return _assemble_symmetric(g, -np.ones(g.col_indices.size), deg)


def normalized_laplacian(g: Graph) -> SparseSymMatrix:
    """Symmetric normalized Laplacian with spectrum contained in [0, 2].

    Entry (i, j) is ``-1/sqrt(d_i d_j)`` for an edge, 1 on the diagonal of a
    non-isolated node. Rows and columns of isolated nodes are all zero.
    """
    deg = g.degrees.astype(float)
    inv_sqrt = np.zeros_like(deg)
    np.divide(1.0, np.sqrt(deg), out=inv_sqrt, where=deg > 0)
    adj_rows = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees)
    offdiag = -inv_sqrt[adj_rows] * inv_sqrt[g.col_indices]
    diag = (deg > 0).astype(float)
    return _assemble_symmetric(g, offdiag, diag)


def spmv(m: SparseSymMatrix, x) -> np.ndarray:
    """Sparse matrix-vector product ``m @ x`` for a length-n vector."""
    x = as_float_array(x, "x")
    if x.ndim != 1:
        raise ValueError(f"x must be 1-D, got ndim={x.ndim}")
    if x.shape[0] != m.n:
        raise ValueError(f"x has length {x.shape[0]}, expected {m.n}")
    return m.dot(x)
