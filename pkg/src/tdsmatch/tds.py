"""Tail Degree Signature features and the cross-graph distance matrix.

For each node and each exact distance ``t = 1..lam``, the degrees of the
nodes at that distance are sorted; the ``theta`` smallest and ``theta``
largest are kept. Blocks are concatenated into a vector of length
``2 * theta * lam``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphInputError, bfs_layers


@dataclass(frozen=True)
class FeatureConfig:
    theta: int = 10
    lam: int = 2
    pad_value: int = 0

    def __post_init__(self):
        if self.theta < 1 or self.lam < 1:
            raise GraphInputError(
                f"theta and lam must be >= 1, got theta={self.theta}, lam={self.lam}"
            )

    @property
    def length(self) -> int:
        return 2 * self.theta * self.lam


def layer_degrees(g: Graph, i: int, t: int) -> list[int]:
    """Degrees (with multiplicity) of the nodes at distance exactly ``t`` from ``i``."""
    deg = g.degrees()
    return [int(deg[v]) for v in bfs_layers(g, i, t)[-1]]


def tail_select(degrees, theta: int, pad_value: int = 0) -> list[int]:
    """Smallest ``theta`` then largest ``theta`` of ``degrees``, each half ascending.

    Short inputs are not an error: the halves may overlap, and each half is
    right-padded with ``pad_value`` up to ``theta`` entries.
    """
    d = sorted(degrees)
    k = min(theta, len(d))
    pad = [pad_value] * (theta - k)
    return d[:k] + pad + d[len(d) - k:] + pad


def extract_feature(g: Graph, i: int, cfg: FeatureConfig = FeatureConfig()) -> np.ndarray:
    deg = g.degrees()
    out = []
    for layer in bfs_layers(g, i, cfg.lam):
        out.extend(tail_select(deg[layer].tolist(), cfg.theta, cfg.pad_value))
    return np.asarray(out, dtype=np.int64)


def extract_all(g: Graph, cfg: FeatureConfig = FeatureConfig()) -> np.ndarray:
    """Feature matrix of shape ``(n, 2 * theta * lam)``, one row per node."""
    adj = g.adjacency_lists()
    deg = g.degrees().tolist()
    theta, pad = cfg.theta, cfg.pad_value
    out = np.empty((g.n, cfg.length), dtype=np.int64)
    for i in range(g.n):
        # inlined bfs_layers: this loop dominates runtime
        seen = {i}
        frontier = [i]
        row = []
        for _ in range(cfg.lam):
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            row.extend(tail_select([deg[v] for v in nxt], theta, pad))
            frontier = nxt
        out[i] = row
    return out


def similarity_matrix(fa: np.ndarray, fb: np.ndarray) -> np.ndarray:
    """Euclidean distances ``X[i, j] = ||fa[i] - fb[j]||``.

    Features are small integers, so the expanded-square form is evaluated
    exactly in float64 and identical rows give exactly zero.
    """
    fa = np.atleast_2d(np.asarray(fa, dtype=np.float64))
    fb = np.atleast_2d(np.asarray(fb, dtype=np.float64))
    if fa.shape[1] != fb.shape[1]:
        raise GraphInputError(
            f"feature lengths differ: {fa.shape[1]} vs {fb.shape[1]}"
        )
    sq = (fa * fa).sum(axis=1)[:, None] + (fb * fb).sum(axis=1)[None, :]
    sq -= 2.0 * (fa @ fb.T)
    np.maximum(sq, 0.0, out=sq)
    return np.sqrt(sq, out=sq)
