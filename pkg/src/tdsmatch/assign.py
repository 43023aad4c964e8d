"""Assignment solvers over a distance matrix: exact Hungarian and greedy."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .graph import GraphInputError, as_permutation

METHODS = ("hungarian", "greedy")


@dataclass(frozen=True, eq=False)
class Matching:
    pi_hat: np.ndarray  # pi_hat[i] = column matched to row i
    method: str
    mean_cost: float


def _check_square(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise GraphInputError(f"cost matrix must be square, got shape {x.shape}")
    if not np.isfinite(x).all():
        raise GraphInputError("cost matrix has non-finite entries")
    return x


def matching_cost(x, m: Matching | np.ndarray) -> float:
    """Mean selected entry ``(1/n) * sum_i x[i, pi(i)]``."""
    x = np.asarray(x, dtype=np.float64)
    pi = m.pi_hat if isinstance(m, Matching) else m
    pi = as_permutation(pi, x.shape[0])
    if pi.size == 0:
        return 0.0
    return float(x[np.arange(pi.size), pi].sum() / pi.size)


def hungarian_assignment(x) -> np.ndarray:
    """Minimum-cost perfect assignment by shortest augmenting paths.

    This is the potentials form of the Hungarian method (O(n^3)); rows are
    inserted one at a time and each insertion runs a Dijkstra-like search over
    reduced costs, with the inner column scan vectorized.
    """
    c = _check_square(x)
    n = c.shape[0]
    inf = np.inf
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    row_of = np.zeros(n + 1, dtype=np.int64)  # column j (1-based) -> row (1-based), 0 = free
    way = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        row_of[0] = i
        j0 = 0
        minv = np.full(n + 1, inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = row_of[j0]
            free = ~used
            free[0] = False
            cur = c[i0 - 1] - u[i0] - v[1:]
            better = free[1:] & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0
            masked = np.where(free[1:], minv[1:], inf)
            j1 = int(np.argmin(masked)) + 1
            delta = masked[j1 - 1]
            u[row_of[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if row_of[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            row_of[j0] = row_of[j1]
            j0 = j1
    pi = np.empty(n, dtype=np.int64)
    pi[row_of[1:] - 1] = np.arange(n)
    return pi


def greedy_assignment(x) -> np.ndarray:
    """Repeatedly take the global minimum and delete its row and column.

    Ties go to the smallest row, then the smallest column. Implemented with
    one ascending column order per row and a heap of each row's best free
    column, which selects exactly the same entries as the naive O(n^3) scan.
    """
    c = _check_square(x)
    n = c.shape[0]
    order = np.argsort(c, axis=1, kind="stable").astype(np.int32)
    ptr = np.zeros(n, dtype=np.int64)
    col_taken = np.zeros(n, dtype=bool)
    pi = np.full(n, -1, dtype=np.int64)
    heap = [(c[i, order[i, 0]], i, int(order[i, 0])) for i in range(n)]
    heapq.heapify(heap)
    while heap:
        val, i, j = heapq.heappop(heap)
        if not col_taken[j]:
            pi[i] = j
            col_taken[j] = True
            continue
        k = ptr[i] + 1
        row = order[i]
        while col_taken[row[k]]:
            k += 1
        ptr[i] = k
        j = int(row[k])
        heapq.heappush(heap, (c[i, j], i, j))
    return pi


def hungarian(x) -> Matching:
    pi = hungarian_assignment(x)
    return Matching(pi, "hungarian", matching_cost(x, pi))


def greedy(x) -> Matching:
    pi = greedy_assignment(x)
    return Matching(pi, "greedy", matching_cost(x, pi))


def solve(x, method: str) -> Matching:
    if method == "hungarian":
        return hungarian(x)
    if method == "greedy":
        return greedy(x)
    raise GraphInputError(f"unknown matcher {method!r}; expected one of {METHODS}")
