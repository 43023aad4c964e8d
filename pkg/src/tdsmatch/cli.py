"""Command-line front end: generate, match, eval, bench, tailscore."""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import io as tio
from .analysis import TailScoreConfig, accuracy, tail_center_scores
from .assign import METHODS, matching_cost, solve
from .graph import GraphInputError, edge_disagreement
from .synth import P_MODES, CorrelatedErConfig, generate_pair, perturb_real
from .tds import FeatureConfig, extract_all, similarity_matrix

log = logging.getLogger("tdsmatch")

BENCH_HEADER = [
    "n", "p_mode", "p", "s", "seed", "matcher", "accuracy", "mean_cost",
    "t_feature_ms", "t_matrix_ms", "t_assign_ms",
]
TAILSCORE_HEADER = [
    "s", "mean_s_tail", "mean_s_center", "dropped_instances",
    "mean_delta_tail_matched", "mean_delta_tail_unmatched",
    "mean_delta_center_matched", "mean_delta_center_unmatched",
]
EVAL_HEADER = ["accuracy", "edge_disagreement", "mean_cost"]
HUNGARIAN_MAX_N = 2000


def default_matcher(n: int) -> str:
    return "hungarian" if n <= HUNGARIAN_MAX_N else "greedy"


def replicate_seed(master: int, k: int) -> int:
    # same sub-seed for replicate k at every s, so s sweeps share parents
    return master * 1_000_003 + k


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _unit_float(text: str) -> float:
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{v} is outside [0, 1]")
    return v


def _pos_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _feature_config(args) -> FeatureConfig:
    return FeatureConfig(theta=args.theta, lam=args.lam)


def _er_config(args, s: float, seed: int) -> CorrelatedErConfig:
    if args.p_mode == "explicit" and args.p is None:
        raise GraphInputError("--p-mode explicit requires --p")
    if args.p is not None and args.p_mode != "explicit":
        raise GraphInputError("--p is only valid with --p-mode explicit")
    return CorrelatedErConfig(args.n, s, seed, args.p_mode, args.p)


def run_tds(g_a, g_b, cfg: FeatureConfig, matcher: str):
    """Full pipeline on one pair; returns the matching and per-stage seconds."""
    if g_a.n != g_b.n:
        raise GraphInputError(f"graphs differ in size: {g_a.n} vs {g_b.n} nodes")
    t0 = time.perf_counter()
    fa = extract_all(g_a, cfg)
    fb = extract_all(g_b, cfg)
    t1 = time.perf_counter()
    x = similarity_matrix(fa, fb)
    t2 = time.perf_counter()
    m = solve(x, matcher)
    t3 = time.perf_counter()
    return m, x, (fa, fb), (t1 - t0, t2 - t1, t3 - t2)


def cmd_generate(args) -> int:
    pair = generate_pair(_er_config(args, args.s, args.seed))
    tio.write_pair(args.out, pair)
    log.info("wrote pair n=%d m_a=%d m_b=%d to %s", pair.g_a.n, pair.g_a.m, pair.g_b.m, args.out)
    return 0


def cmd_match(args) -> int:
    g_a, labels_a = tio.read_edge_list(args.a, args.format, positive_only=args.positive_only)
    g_b, labels_b = tio.read_edge_list(args.b, args.format, positive_only=args.positive_only)
    matcher = args.matcher or default_matcher(g_a.n)
    cfg = _feature_config(args)
    m, _, (fa, fb), times = run_tds(g_a, g_b, cfg, matcher)
    tio.write_matching(args.out, m, labels_a, labels_b)
    # all-pad signatures carry no information; the bijection is arbitrary
    degenerate = int((fa == cfg.pad_value).all() and (fb == cfg.pad_value).all())
    print(
        f"n={g_a.n} matcher={matcher} mean_cost={_fmt(m.mean_cost)} "
        f"seconds={sum(times):.3f} degenerate={degenerate}"
    )
    return 0


def cmd_eval(args) -> int:
    g_a, labels_a = tio.read_edge_list(args.a, args.format)
    g_b, labels_b = tio.read_edge_list(args.b, args.format)
    if g_a.n != g_b.n:
        raise GraphInputError(f"graphs differ in size: {g_a.n} vs {g_b.n} nodes")
    pi_hat = tio.read_permutation(args.matching, labels_a, labels_b)
    truth = tio.read_permutation(args.truth, labels_a, labels_b)
    cfg = _feature_config(args)
    x = similarity_matrix(extract_all(g_a, cfg), extract_all(g_b, cfg))
    row = [
        _fmt(accuracy(pi_hat, truth)),
        edge_disagreement(g_a, g_b, pi_hat),
        _fmt(matching_cost(x, pi_hat)),
    ]
    tio.write_csv(args.out, EVAL_HEADER, [row])
    return 0


def _bench_rows(pair, matchers, cfg, p_mode, p, s, seed, timing):
    rows = []
    fa = fb = None
    t_feat = t_mat = 0.0
    x = None
    for matcher in matchers:
        if x is None:
            m, x, (fa, fb), (t_feat, t_mat, t_asg) = run_tds(pair.g_a, pair.g_b, cfg, matcher)
        else:
            t0 = time.perf_counter()
            m = solve(x, matcher)
            t_asg = time.perf_counter() - t0
        ms = [t * 1e3 if timing else 0.0 for t in (t_feat, t_mat, t_asg)]
        rows.append([
            pair.g_a.n, p_mode, _fmt(p), _fmt(s), seed, matcher,
            _fmt(accuracy(m, pair.truth)), _fmt(m.mean_cost),
            *(f"{t:.1f}" for t in ms),
        ])
    return rows


def cmd_bench(args) -> int:
    s_grid = args.s_grid if args.s_grid is not None else [args.s]
    matchers = [args.matcher] if args.matcher else list(METHODS)
    cfg = _feature_config(args)
    rows = []
    if args.graph:
        g, _ = tio.read_edge_list(args.graph, args.format, positive_only=args.positive_only)
        density = 2.0 * g.m / (g.n * (g.n - 1)) if g.n > 1 else 0.0
        for s in s_grid:
            for k in range(args.replicates):
                seed = replicate_seed(args.seed, k)
                pair = perturb_real(g, s, seed)
                rows += _bench_rows(pair, matchers, cfg, "real", density, s, seed, not args.no_timing)
                log.info("s=%g replicate=%d done", s, k)
    else:
        for s in s_grid:
            for k in range(args.replicates):
                seed = replicate_seed(args.seed, k)
                er = _er_config(args, s, seed)
                pair = generate_pair(er)
                rows += _bench_rows(pair, matchers, cfg, er.p_mode, er.p, s, seed, not args.no_timing)
                log.info("s=%g replicate=%d done", s, k)
    tio.write_csv(args.out, BENCH_HEADER, rows)
    return 0


def cmd_tailscore(args) -> int:
    cfg = TailScoreConfig(
        n=args.n,
        p=args.p,
        s_grid=tuple(args.s_grid),
        samples_per_instance=args.samples,
        instances=args.instances,
        threshold=args.threshold,
        bin_width=args.bin_width,
        support_clip=args.support_clip,
        seed=args.seed,
    )
    report = tail_center_scores(cfg)
    rows = []
    for r in report.rows:
        d = r.deltas.mean(axis=0)
        rows.append([
            _fmt(r.s), _fmt(r.mean_s_tail), _fmt(r.mean_s_center), r.dropped_instances,
            *(_fmt(v) for v in d),
        ])
    tio.write_csv(args.out, TAILSCORE_HEADER, rows)
    return 0


def _add_feature_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--theta", type=_pos_int, default=10, help="tail size per side (default 10)")
    p.add_argument("--lambda", dest="lam", type=_pos_int, default=2,
                   help="largest BFS distance used (default 2)")


def _add_er_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=_pos_int, default=1000)
    p.add_argument("--p", type=_unit_float, default=None, help="edge probability (explicit mode)")
    p.add_argument("--p-mode", choices=P_MODES, default="logn")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdsmatch",
        description="Seedless graph matching with tail degree signatures.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a correlated Erdos-Renyi pair")
    _add_er_flags(p)
    p.add_argument("--s", type=_unit_float, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("match", help="match two edge lists")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _add_feature_flags(p)
    p.add_argument("--matcher", choices=METHODS, default=None)
    p.add_argument("--format", choices=tio.FORMATS, default="whitespace")
    p.add_argument("--positive-only", action="store_true")
    p.add_argument("--out", required=True, help="matching file")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("eval", help="score a matching against ground truth")
    p.add_argument("--matching", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _add_feature_flags(p)
    p.add_argument("--format", choices=tio.FORMATS, default="whitespace")
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="accuracy/runtime sweep over s")
    _add_er_flags(p)
    p.add_argument("--s", type=_unit_float, default=0.98)
    p.add_argument("--s-grid", type=_float_list, default=None)
    p.add_argument("--replicates", type=_pos_int, default=1)
    p.add_argument("--matcher", choices=METHODS, default=None,
                   help="run one matcher only (default: both)")
    _add_feature_flags(p)
    p.add_argument("--graph", default=None, help="real edge list instead of synthetic pairs")
    p.add_argument("--format", choices=tio.FORMATS, default="whitespace")
    p.add_argument("--positive-only", action="store_true")
    p.add_argument("--no-timing", action="store_true", help="write 0 in timing columns")
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("tailscore", help="tail vs center total-variation scores")
    p.add_argument("--n", type=_pos_int, default=1000)
    p.add_argument("--p", type=_unit_float, default=None, help="default log(n)/n")
    p.add_argument("--s-grid", type=_float_list, default=list(TailScoreConfig.s_grid))
    p.add_argument("--instances", type=_pos_int, default=100)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--bin-width", type=float, default=0.25)
    p.add_argument("--support-clip", type=float, default=6.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.set_defaults(func=cmd_tailscore)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(message)s",
    )
    if getattr(args, "s_grid", None) is not None:
        bad = [s for s in args.s_grid if not 0.0 <= s <= 1.0]
        if bad or not args.s_grid:
            parser.error(f"--s-grid values must lie in [0, 1], got {args.s_grid}")
    try:
        return args.func(args)
    except (GraphInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
