"""Degree normalization, degree correlation of matched nodes, tail/center
total-variation scores, and matching accuracy."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import GraphInputError
from .synth import CorrelatedErConfig, generate_pair

DIVISION_EPS = 1e-12


class DegenerateParametersError(ValueError):
    pass


@dataclass(frozen=True)
class DegreeStats:
    """Normal approximation of the degree law of a G(n, p*s) child graph."""

    n: int
    p: float
    s: float

    @property
    def mu(self) -> float:
        return (self.n - 1) * self.p * self.s

    @property
    def sigma(self) -> float:
        ps = self.p * self.s
        return math.sqrt((self.n - 1) * (1.0 - ps) * ps)


def normalize_degree(deg, stats: DegreeStats):
    """``(deg - mu) / sigma``; accepts a scalar or an array of degrees."""
    sigma = stats.sigma
    if sigma <= 0.0:
        raise DegenerateParametersError(
            f"sigma is zero for n={stats.n}, p={stats.p}, s={stats.s}"
        )
    return (np.asarray(deg, dtype=np.float64) - stats.mu) / sigma


def theoretical_rho(p: float, s: float) -> float:
    """Correlation of the degrees of a node and its counterpart: s(1-p)/(1-ps)."""
    if not (0.0 <= p <= 1.0 and 0.0 <= s <= 1.0):
        raise GraphInputError(f"p and s must lie in [0, 1], got p={p}, s={s}")
    if p * s >= 1.0:
        raise DegenerateParametersError("p*s = 1 leaves the degree variance at zero")
    return s * (1.0 - p) / (1.0 - p * s)


def empirical_rho(config: CorrelatedErConfig, trials: int) -> tuple[float, float]:
    """Pooled Pearson correlations of normalized degrees over ``trials`` pairs.

    Returns ``(matched, unmatched)``: node ``i`` of ``g_a`` against its true
    counterpart in ``g_b``, and against a uniformly drawn other node.
    """
    if trials < 30:
        raise GraphInputError(f"need at least 30 trials, got {trials}")
    stats = DegreeStats(config.n, config.p, config.s)
    seqs = np.random.SeedSequence(config.seed).spawn(trials)
    ua, ub_match, ub_other = [], [], []
    n = config.n
    for k, seq in enumerate(seqs):
        pair_seed, pick_seed = seq.generate_state(2)
        pr = generate_pair(
            CorrelatedErConfig(n, config.s, int(pair_seed), config.p_mode, config.p_explicit)
        )
        da = normalize_degree(pr.g_a.degrees(), stats)
        db = normalize_degree(pr.g_b.degrees(), stats)
        shift = np.random.default_rng(int(pick_seed)).integers(1, n, size=n)
        ua.append(da)
        ub_match.append(db[pr.truth])
        ub_other.append(db[(pr.truth + shift) % n])
    ua = np.concatenate(ua)
    rho_m = np.corrcoef(ua, np.concatenate(ub_match))[0, 1]
    rho_u = np.corrcoef(ua, np.concatenate(ub_other))[0, 1]
    return float(rho_m), float(rho_u)


def histogram_grid(bin_width: float = 0.25, support_clip: float = 6.0) -> np.ndarray:
    k = int(round(2 * support_clip / bin_width))
    return np.linspace(-support_clip, support_clip, k + 1)


def region_mask(edges: np.ndarray, region: str, threshold: float = 0.5) -> np.ndarray:
    centers = 0.5 * (edges[:-1] + edges[1:])
    tail = np.abs(centers) > threshold
    if region == "tail":
        return tail
    if region == "center":
        return ~tail
    raise GraphInputError(f"region must be 'tail' or 'center', got {region!r}")


def _pmf(samples, edges: np.ndarray) -> np.ndarray:
    x = np.clip(np.asarray(samples, dtype=np.float64), edges[0], edges[-1])
    counts, _ = np.histogram(x, bins=edges)
    return counts / x.size


def empirical_tv_region(
    samples_a,
    samples_b,
    region: str,
    bin_width: float = 0.25,
    support_clip: float = 6.0,
    threshold: float = 0.5,
) -> float:
    """Total-variation distance of two empirical histograms over one region.

    Samples beyond ``support_clip`` fall into the end bins. The ``tail``
    region holds the bins whose center satisfies ``|c| > threshold``.
    """
    if len(samples_a) == 0 or len(samples_b) == 0:
        raise GraphInputError("both sample lists must be nonempty")
    edges = histogram_grid(bin_width, support_clip)
    mask = region_mask(edges, region, threshold)
    diff = np.abs(_pmf(samples_a, edges) - _pmf(samples_b, edges))
    return float(0.5 * diff[mask].sum())


@dataclass(frozen=True)
class TailScoreConfig:
    n: int = 1000
    p: float | None = None  # None means log(n)/n
    s_grid: tuple = (0.5, 0.6, 0.7, 0.8, 0.9, 0.95)
    samples_per_instance: int = 100
    instances: int = 100
    threshold: float = 0.5
    bin_width: float = 0.25
    support_clip: float = 6.0
    seed: int = 0

    def __post_init__(self):
        if self.samples_per_instance < 2:
            raise GraphInputError("samples_per_instance must be >= 2")
        if self.threshold <= 0:
            raise GraphInputError("threshold must be positive")
        if self.instances < 1:
            raise GraphInputError("instances must be >= 1")

    @property
    def edge_prob(self) -> float:
        return math.log(self.n) / self.n if self.p is None else self.p


@dataclass
class TailScoreRow:
    s: float
    rho: float
    mean_s_tail: float
    mean_s_center: float
    dropped_instances: int
    # per-instance TV distances, columns: tail matched, tail unmatched,
    # center matched, center unmatched
    deltas: np.ndarray = field(repr=False)


@dataclass
class TailScoreReport:
    rows: list

    def grand_means(self) -> tuple[float, float]:
        tails = [r.mean_s_tail for r in self.rows if np.isfinite(r.mean_s_tail)]
        centers = [r.mean_s_center for r in self.rows if np.isfinite(r.mean_s_center)]
        return float(np.mean(tails)), float(np.mean(centers))


def tail_center_scores(cfg: TailScoreConfig) -> TailScoreReport:
    """Tail and center scores under the bivariate-normal degree model.

    For every ``s`` and instance, ``samples_per_instance`` draws of a
    normalized degree ``U_a`` are paired with ``U_b = rho*U_a + sqrt(1-rho^2)*Z``
    (matched, ``rho`` from :func:`theoretical_rho`) and with independent
    normals (unmatched). Each score is matched TV over unmatched TV in its
    region; instances with a near-zero denominator are dropped and counted.
    """
    p = cfg.edge_prob
    edges = histogram_grid(cfg.bin_width, cfg.support_clip)
    tail = region_mask(edges, "tail", cfg.threshold)
    k = cfg.samples_per_instance
    seqs = np.random.SeedSequence(cfg.seed).spawn(len(cfg.s_grid))
    rows = []
    for s, seq in zip(cfg.s_grid, seqs):
        rho = theoretical_rho(p, s)
        noise = math.sqrt(max(0.0, 1.0 - rho * rho))
        deltas = np.empty((cfg.instances, 4))
        for inst, sub in enumerate(seq.spawn(cfg.instances)):
            rng = np.random.default_rng(sub)
            ua = rng.standard_normal(k)
            ub_match = rho * ua + noise * rng.standard_normal(k)
            ub_other = rng.standard_normal(k)
            ha = _pmf(ua, edges)
            dm = np.abs(ha - _pmf(ub_match, edges))
            du = np.abs(ha - _pmf(ub_other, edges))
            deltas[inst] = 0.5 * np.array(
                [dm[tail].sum(), du[tail].sum(), dm[~tail].sum(), du[~tail].sum()]
            )
        ok = (deltas[:, 1] >= DIVISION_EPS) & (deltas[:, 3] >= DIVISION_EPS)
        if ok.any():
            s_tail = float(np.mean(deltas[ok, 0] / deltas[ok, 1]))
            s_center = float(np.mean(deltas[ok, 2] / deltas[ok, 3]))
        else:
            s_tail = s_center = float("nan")
        rows.append(TailScoreRow(s, rho, s_tail, s_center, int((~ok).sum()), deltas))
    return TailScoreReport(rows)


def accuracy(pi_hat, truth) -> float:
    """Fraction of nodes mapped to their true counterpart."""
    a = np.asarray(getattr(pi_hat, "pi_hat", pi_hat))
    b = np.asarray(truth)
    if a.shape != b.shape:
        raise GraphInputError(f"length mismatch: {a.size} vs {b.size}")
    if a.size == 0:
        return 1.0
    return float(np.mean(a == b))
