"""Immutable undirected simple graphs in compressed adjacency form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np


class GraphInputError(ValueError):
    """Raised for malformed graph or permutation input."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph on nodes ``0..n-1``.

    ``indptr``/``indices`` follow the usual CSR layout: the neighbors of node
    ``i`` are ``indices[indptr[i]:indptr[i + 1]]``, strictly increasing.
    Construct through :func:`build_graph` rather than directly.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    _lists: list = field(default=None, repr=False, compare=False)

    @property
    def m(self) -> int:
        return int(self.indices.size // 2)

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def adjacency_lists(self) -> list[list[int]]:
        """Plain-Python neighbor lists, cached; used by the BFS hot loops."""
        if self._lists is None:
            ptr = self.indptr.tolist()
            idx = self.indices.tolist()
            lists = [idx[ptr[i]:ptr[i + 1]] for i in range(self.n)]
            object.__setattr__(self, "_lists", lists)
        return self._lists

    def edges(self) -> np.ndarray:
        """Edge array of shape (m, 2) with ``u < v``, lexicographically sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        src = np.repeat(np.arange(self.n), self.degrees())
        a[src, self.indices] = 1
        return a

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    __hash__ = None


def build_graph(n: int, edges: Iterable | np.ndarray) -> Graph:
    """Build a graph from node pairs, dropping self-loops and duplicates."""
    if n < 0:
        raise GraphInputError(f"node count must be nonnegative, got {n}")
    if not isinstance(edges, np.ndarray):
        edges = list(edges)
    e = np.asarray(edges, dtype=np.int64)
    if e.size == 0:
        e = e.reshape(0, 2)
    if e.ndim != 2 or e.shape[1] != 2:
        raise GraphInputError("edges must be a sequence of node pairs")
    if e.size and (e.min() < 0 or e.max() >= n):
        bad = e[(e < 0).any(axis=1) | (e >= n).any(axis=1)][0]
        raise GraphInputError(f"edge endpoint out of range [0, {n}): {tuple(bad)}")

    e = e[e[:, 0] != e[:, 1]]
    both = np.concatenate([e, e[:, ::-1]])
    # one int64 key per directed edge; unique() both dedups and sorts
    keys = np.unique(both[:, 0] * max(n, 1) + both[:, 1])
    src = keys // max(n, 1)
    dst = keys % max(n, 1)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return Graph(n=n, indptr=indptr, indices=dst.astype(np.int64))


def degree(g: Graph, i: int) -> int:
    return int(g.indptr[i + 1] - g.indptr[i])


def bfs_layers(g: Graph, i: int, max_t: int) -> list[list[int]]:
    """Exact-distance layers ``[N_1(i), ..., N_max_t(i)]`` by single-source BFS.

    Layers past the eccentricity of ``i`` are empty lists.
    """
    adj = g.adjacency_lists()
    seen = {i}
    frontier = [i]
    layers = []
    for _ in range(max_t):
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        layers.append(nxt)
        frontier = nxt
    return layers


def neighbors_at_distance(g: Graph, i: int, t: int) -> set[int]:
    """Nodes whose shortest-path distance from ``i`` is exactly ``t``."""
    if not 0 <= i < g.n:
        raise GraphInputError(f"node {i} out of range [0, {g.n})")
    if t < 1:
        raise GraphInputError(f"distance must be >= 1, got {t}")
    return set(bfs_layers(g, i, t)[-1])


def as_permutation(perm, n: int | None = None) -> np.ndarray:
    """Validate ``perm`` as a bijection of ``0..len-1`` and return it as int64."""
    p = np.asarray(perm, dtype=np.int64)
    if p.ndim != 1:
        raise GraphInputError("permutation must be one-dimensional")
    if n is not None and p.size != n:
        raise GraphInputError(f"permutation length {p.size} does not match n={n}")
    if p.size and (p.min() < 0 or p.max() >= p.size or np.unique(p).size != p.size):
        raise GraphInputError("permutation is not a bijection")
    return p


def invert_permutation(perm) -> np.ndarray:
    p = as_permutation(perm)
    inv = np.empty_like(p)
    inv[p] = np.arange(p.size)
    return inv


def edge_disagreement(g_a: Graph, g_b: Graph, mapping) -> int:
    """Number of node pairs that are an edge in exactly one graph under ``mapping``.

    Equals ``0.5 * ||A_b - P^T A_a P||_F^2`` where ``P`` is the permutation
    matrix of ``mapping`` (node ``i`` of ``g_a`` maps to ``mapping[i]``).
    """
    if g_a.n != g_b.n:
        raise GraphInputError(f"graph sizes differ: {g_a.n} vs {g_b.n}")
    p = as_permutation(mapping, g_a.n)
    n = max(g_a.n, 1)
    ea = np.sort(p[g_a.edges()], axis=1)
    ka = ea[:, 0] * n + ea[:, 1]
    eb = g_b.edges()
    kb = eb[:, 0] * n + eb[:, 1]
    common = np.intersect1d(ka, kb, assume_unique=True).size
    return int(ka.size + kb.size - 2 * common)
