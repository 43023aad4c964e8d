"""Correlated Erdos-Renyi pairs and edge-subsampled copies of real graphs.

Every random draw comes from a dedicated child stream of a
:class:`numpy.random.SeedSequence`, so e.g. changing ``s`` leaves the parent
graph of a fixed seed untouched and the child masks are coupled across ``s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .graph import Graph, GraphInputError, as_permutation, build_graph

SeedLike = Union[int, np.random.SeedSequence]

P_MODES = ("explicit", "logn", "log2n")


def _seq(seed: SeedLike) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(int(seed))


def edge_probability(n: int, p_mode: str, p: float | None = None) -> float:
    """Edge probability for a regime: ``log(n)/n``, ``log(n)**2/n`` or explicit."""
    if p_mode == "explicit":
        if p is None:
            raise GraphInputError("p_mode 'explicit' needs a value for p")
        return float(p)
    if p_mode == "logn":
        return math.log(n) / n
    if p_mode == "log2n":
        return math.log(n) ** 2 / n
    raise GraphInputError(f"unknown p_mode {p_mode!r}; expected one of {P_MODES}")


@dataclass(frozen=True)
class CorrelatedErConfig:
    n: int
    s: float
    seed: int = 0
    p_mode: str = "logn"
    p_explicit: float | None = None

    def __post_init__(self):
        if self.n < 2:
            raise GraphInputError(f"n must be >= 2, got {self.n}")
        if not 0.0 <= self.s <= 1.0:
            raise GraphInputError(f"s must lie in [0, 1], got {self.s}")
        if not 0.0 <= self.p <= 1.0:
            raise GraphInputError(f"p must lie in [0, 1], got {self.p}")

    @property
    def p(self) -> float:
        return edge_probability(self.n, self.p_mode, self.p_explicit)


@dataclass(frozen=True, eq=False)
class GraphPair:
    g_a: Graph
    g_b: Graph
    truth: np.ndarray  # truth[i] = node of g_b corresponding to node i of g_a
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.g_a.n == self.g_b.n == len(self.truth):
            raise GraphInputError("g_a, g_b and truth must share the node count")


def _pair_index_to_nodes(n: int, idx: np.ndarray) -> np.ndarray:
    # row i of the strict upper triangle starts at i*(2n-i-1)/2
    rows = np.arange(n, dtype=np.int64)
    starts = rows * (2 * n - rows - 1) // 2
    i = np.searchsorted(starts, idx, side="right") - 1
    j = idx - starts[i] + i + 1
    return np.column_stack([i, j])


def generate_parent(n: int, p: float, seed: SeedLike) -> Graph:
    """G(n, p) with pairs visited in lexicographic ``(i < j)`` order.

    Uses geometric skips between successive edges, which is equivalent to one
    Bernoulli(p) trial per pair but costs O(m) instead of O(n^2).
    """
    if not 0.0 <= p <= 1.0:
        raise GraphInputError(f"p must lie in [0, 1], got {p}")
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return build_graph(n, np.empty((0, 2), dtype=np.int64))
    rng = np.random.default_rng(_seq(seed))
    chunk = int(total * p * 1.1) + 64
    positions = []
    last = -1
    while last < total:
        pos = last + np.cumsum(rng.geometric(p, size=chunk))
        positions.append(pos)
        last = int(pos[-1])
    idx = np.concatenate(positions)
    idx = idx[idx < total]
    return build_graph(n, _pair_index_to_nodes(n, idx))


def sample_child_pair(parent: Graph, s: float, seed: SeedLike) -> tuple[Graph, Graph]:
    """Keep each parent edge in child A and, independently, in child B with prob. ``s``."""
    if not 0.0 <= s <= 1.0:
        raise GraphInputError(f"s must lie in [0, 1], got {s}")
    seq_a, seq_b = _seq(seed).spawn(2)
    edges = parent.edges()
    keep_a = np.random.default_rng(seq_a).random(len(edges)) < s
    keep_b = np.random.default_rng(seq_b).random(len(edges)) < s
    return build_graph(parent.n, edges[keep_a]), build_graph(parent.n, edges[keep_b])


def permute_graph(g: Graph, perm) -> Graph:
    """Relabel node ``i`` as ``perm[i]``."""
    p = as_permutation(perm, g.n)
    return build_graph(g.n, p[g.edges()])


def random_permutation(n: int, seed: SeedLike) -> np.ndarray:
    return np.random.default_rng(_seq(seed)).permutation(n).astype(np.int64)


def generate_pair(config: CorrelatedErConfig) -> GraphPair:
    seq_parent, seq_children, seq_perm = _seq(config.seed).spawn(3)
    parent = generate_parent(config.n, config.p, seq_parent)
    child_a, child_b = sample_child_pair(parent, config.s, seq_children)
    truth = random_permutation(config.n, seq_perm)
    meta = {
        "n": config.n,
        "p_mode": config.p_mode,
        "p": config.p,
        "s": config.s,
        "seed": config.seed,
    }
    return GraphPair(child_a, permute_graph(child_b, truth), truth, meta)


def perturb_real(g: Graph, s: float, seed: SeedLike) -> GraphPair:
    """Pair ``g`` with a randomly relabeled copy that keeps each edge w.p. ``s``."""
    if not 0.0 <= s <= 1.0:
        raise GraphInputError(f"s must lie in [0, 1], got {s}")
    seq_mask, seq_perm = _seq(seed).spawn(2)
    edges = g.edges()
    kept = edges[np.random.default_rng(seq_mask).random(len(edges)) < s]
    truth = random_permutation(g.n, seq_perm)
    g_b = build_graph(g.n, truth[kept])
    seed_meta = seed if isinstance(seed, int) else None
    return GraphPair(g, g_b, truth, {"n": g.n, "s": s, "seed": seed_meta})
