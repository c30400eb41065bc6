"""Command-line entry point.

Every run writes a header line echoing the full configuration, then one
line per record. Exit status is 0 on success, 1 on a domain or input error
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import os
import sys
from typing import Callable, Iterable

import numpy as np

from . import __version__
from .errors import CogKernelError

TEXT = "text"
JSON_LINES = "json-lines"
THREADS_ENV = "COGKERNEL_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _uint64(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an unsigned integer: {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed out of the 64-bit unsigned range: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {text!r}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return value


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return value


def _id_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated atom ids: {text!r}")


def thread_cap(environ=os.environ) -> int | None:
    """Validated value of the thread-cap variable; all work currently runs on one thread."""
    raw = environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    if value < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


# -- output -----------------------------------------------------------------------------


def _jsonable(value):
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, (np.floating,)):
        return _jsonable(float(value))
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def _text_value(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return ",".join(_text_value(v) for v in items)
    if value is None:
        return "-"
    text = str(value)
    return text.replace(" ", "_") if text else "''"


class Emitter:
    def __init__(self, fmt: str, out):
        self.fmt = fmt
        self.out = out

    def header(self, config: dict) -> None:
        if self.fmt == JSON_LINES:
            self.out.write(json.dumps({"cogkernel": __version__, "config": _jsonable(config)}) + "\n")
        else:
            fields = " ".join(f"{k}={_text_value(v)}" for k, v in config.items())
            self.out.write(f"# cogkernel {__version__} {fields}\n")

    def record(self, **fields) -> None:
        if self.fmt == JSON_LINES:
            self.out.write(json.dumps(_jsonable(fields)) + "\n")
        else:
            self.out.write(" ".join(f"{k}={_text_value(v)}" for k, v in fields.items()) + "\n")


# -- graph ------------------------------------------------------------------------------


def _cmd_graph_stats(args, em: Emitter) -> None:
    from .metagraph import read_graph

    g = read_graph(args.graph)
    em.record(**g.stats())
    for label, n in g.label_counts().items():
        em.record(label=label, count=n)


def _cmd_graph_graphtropy(args, em: Emitter) -> None:
    from .metagraph import distinction_view, graphtropy, read_graph

    g = read_graph(args.graph)
    dg = distinction_view(g, args.observations, threshold=args.threshold)
    em.record(mode=args.mode, observations=len(dg), links=len(dg.indistinct), graphtropy=graphtropy(dg, args.mode))


def _cmd_graph_negate(args, em: Emitter) -> None:
    from .metagraph import read_graph, subgraph_negation, write_graph

    g = read_graph(args.graph)
    sub = subgraph_negation(g, args.nodes)
    em.record(nodes=sorted(sub.nodes), edges=sorted(sub.edges))
    if args.output:
        keep = sub.nodes | sub.edges
        h = g.copy()
        for a in sorted((a.id for a in g if a.id not in keep), reverse=True):
            h.remove_atom(a)
        write_graph(h, args.output)


# -- logic ------------------------------------------------------------------------------


def _cmd_logic_table(args, em: Emitter) -> None:
    from .logic import connective_tables

    for name, rows in connective_tables().items():
        for row in rows:
            em.record(connective=name, row=row)


# -- cosm -------------------------------------------------------------------------------


def _context(args) -> list[str]:
    return [c for c in (args.context or "").split(",") if c]


def _cmd_cosm_solve(args, em: Emitter) -> None:
    from .simplicity import conditional_simplicity, cosm_residual, read_system

    system, base = read_system(args.system)
    sol = conditional_simplicity(system, base, _context(args), None)
    for e in system.entities:
        via = sol.via[e]
        em.record(entity=e, sigma=sol.sigma[e], via="-" if via is None else f"{via[0]}:{via[1]}:{via[2]}")
    em.record(residual=cosm_residual(system, sol))


def _cmd_cosm_patterns(args, em: Emitter) -> None:
    from .simplicity import PatternScorer, read_system

    system, base = read_system(args.system)
    scorer = PatternScorer(system, base, _context(args), _ops(args))
    recs = [r for r in scorer.records() if r.intensity >= args.min_intensity]
    recs.sort(key=lambda r: (-r.intensity, r.op, system.rank(r.y), system.rank(r.z), system.rank(r.x)))
    for r in recs:
        em.record(x=r.x, y=r.y, z=r.z, op=r.op, intensity=r.intensity)


def _ops(args) -> tuple[int, ...]:
    text = getattr(args, "reference_ops", "") or ""
    try:
        return tuple(int(t) for t in text.split(",") if t)
    except ValueError:
        raise UsageError(f"--reference-ops: expected comma-separated integers, got {text!r}")


def _cmd_cosm_hierarchy(args, em: Emitter) -> None:
    from .simplicity import build_subpattern_hierarchy, read_system

    system, base = read_system(args.system)
    for x, y in build_subpattern_hierarchy(system, base, _context(args), _ops(args)):
        em.record(sub=x, sup=y)


def _cmd_cosm_check_assoc(args, em: Emitter) -> None:
    from .simplicity import check_approx_cost_associativity, check_mutual_associativity, read_system

    system, _ = read_system(args.system)
    bad = check_mutual_associativity(system)
    if bad is not None:
        em.record(mutually_associative=False, counterexample=list(bad))
        return
    inner = _ops(args) or None
    result = check_approx_cost_associativity(system, inner_ops=inner)
    em.record(mutually_associative=True, deviation=result.deviation, triples=result.triples, witness=result.witness)


def _cmd_cosm_check_thm2(args, em: Emitter) -> None:
    from .simplicity import run_order_bound_check

    trials = run_order_bound_check(args.trials, args.seed)
    for t in trials:
        em.record(
            trial=t.trial,
            carrier=t.carrier,
            entities=t.entities,
            ops=t.ops,
            c=t.deviation,
            chains=t.chains,
            relations=t.relations,
            ok=t.ok,
        )
    violations = sum(1 for t in trials if not t.ok)
    em.record(trials=len(trials), chains=sum(t.chains for t in trials), violations=violations)


# -- decision ---------------------------------------------------------------------------


def _cmd_dds_run(args, em: Emitter) -> None:
    from .decision import BUILTIN_PROBLEMS, run_greedy, run_policy, run_stochastic_dp, solve_exact_dp

    p = BUILTIN_PROBLEMS[args.problem]()
    if args.mode == "greedy":
        traj = run_greedy(p, args.seed, args.temperature)
    elif args.mode == "dp":
        traj = run_policy(p, solve_exact_dp(p).policy, args.seed)
    else:
        traj = run_stochastic_dp(p, args.rollouts, args.seed)
    for t, (a, r) in enumerate(zip(traj.actions, traj.rewards)):
        em.record(step=t, state=str(traj.states[t]), action=str(a), reward=r, next=str(traj.states[t + 1]))
    em.record(total_reward=traj.total_reward)


def _cmd_cofo_run(args, em: Emitter) -> None:
    from .decision import OBJECTIVES, run_cofo

    kwargs = dict(budget=args.budget, rho=args.rho, guidance=args.guidance, seed=args.seed)
    if args.objective == "onemax":
        kwargs["n_bits"] = args.bits
    p = OBJECTIVES[args.objective](**kwargs)
    result = run_cofo(p, args.mode, args.seed)
    for s in result.steps:
        em.record(step=s.step, z=p.format_point(s.z), fz=s.fz, reward=s.reward, best_f=s.best_f)
    em.record(best_x=p.format_point(result.best_x), best_f=result.best_f, evaluations=result.evaluations)


# -- cognitive processes ----------------------------------------------------------------


def _cmd_ecan_run(args, em: Emitter) -> None:
    from .cogproc import EcanParams, attentional_focus, ecan_spread
    from .metagraph import read_graph, write_graph

    g = read_graph(args.graph)
    params = EcanParams(args.spread, args.decay, args.iters, args.focus_threshold)
    sti, lti = ecan_spread(g, params, write=True)
    for n in sorted(sti):
        em.record(node=n, sti=sti[n], lti=lti[n])
    em.record(total_sti=math.fsum(sti.values()), focus=attentional_focus(g, args.focus_threshold))
    if args.output:
        write_graph(g, args.output)


def _load_points(path) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            rows = [line.split("#", 1)[0].replace(",", " ").split() for line in fh]
    except OSError:
        raise
    rows = [r for r in rows if r]
    try:
        pts = np.array([[float(v) for v in r] for r in rows], dtype=float)
    except ValueError as exc:
        raise CogKernelError(f"{path}: points must be numeric rows ({exc})")
    if rows and len({len(r) for r in rows}) != 1:
        raise CogKernelError(f"{path}: every point needs the same number of coordinates")
    return pts


def _cmd_cluster_run(args, em: Emitter) -> None:
    from .cogproc import agglomerative_cluster
    from .metagraph import Metagraph, write_graph

    pts = _load_points(args.points)
    g = Metagraph() if args.output else None
    model = agglomerative_cluster(pts, args.k, args.stop_distance, g=g)
    for ci, c in enumerate(model.clusters):
        for i in c:
            em.record(point=i, cluster=ci)
    em.record(clusters=len(model.clusters), objective=model.objective)
    if g is not None:
        write_graph(g, args.output)


def _cmd_mine_run(args, em: Emitter) -> None:
    from .cogproc import mine_patterns
    from .metagraph import read_graph

    g = read_graph(args.graph)
    for rank, p in enumerate(mine_patterns(g, args.max_size, args.min_support, args.min_intensity)):
        em.record(rank=rank, size=p.template.size, matches=p.match_count, intensity=p.intensity, template=p.template.describe())


# -- intellimetrics ---------------------------------------------------------------------


METRICS = ("universal", "pragmatic", "efficient", "breadth")


def _cmd_intel_bench(args, em: Emitter) -> None:
    from .intellimetrics import (
        ENV_CLASSES,
        default_goals,
        efficient_pragmatic_intelligence,
        intellectual_breadth,
        make_agent,
        pragmatic_intelligence,
        universal_intelligence,
    )

    cls = ENV_CLASSES[args.env_class]()
    agent = make_agent(args.agent)
    goals = default_goals()
    metrics = args.metrics.split(",")
    for m in metrics:
        if m not in METRICS:
            raise UsageError(f"--metrics: unknown metric {m!r}")
    for m in metrics:
        if m == "universal":
            est = universal_intelligence(cls, agent, args.horizon, args.trials, args.seed)
        elif m == "pragmatic":
            est = pragmatic_intelligence(cls, goals, agent, args.trials, args.seed)
        elif m == "efficient":
            est = efficient_pragmatic_intelligence(cls, goals, agent, args.trials, args.seed)
        else:
            em.record(agent=args.agent, metric=m, value=intellectual_breadth(cls, goals, agent, args.trials, args.seed), stderr=None)
            continue
        em.record(agent=args.agent, metric=m, value=est.value, stderr=est.stderr)


def _cmd_intel_jgc(args, em: Emitter) -> None:
    from .intellimetrics import joy_growth_choice, read_snapshots

    if not os.path.isdir(args.snapshots):
        raise CogKernelError(f"{args.snapshots}: not a directory")
    for s in joy_growth_choice(read_snapshots(args.snapshots), args.max_size, args.min_support):
        em.record(step=s.step, joy=s.joy, growth=s.growth, choice=s.choice)


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=(TEXT, JSON_LINES), default=argparse.SUPPRESS, help="output format")

    parser = _Parser(prog="cogkernel", description="Metagraph, simplicity, decision and intelligence toolkit.")
    parser.add_argument("--format", choices=(TEXT, JSON_LINES), default=TEXT, help="output format")
    parser.add_argument("--version", action="version", version=f"cogkernel {__version__}")
    groups = parser.add_subparsers(dest="group", required=True, metavar="GROUP", parser_class=_Parser)

    def leaf(sub, name: str, func: Callable, help: str, stochastic: bool = False):
        p = sub.add_parser(name, parents=[fmt], help=help)
        p.set_defaults(func=func)
        if stochastic:
            p.add_argument("--seed", type=_uint64, required=True, help="64-bit unsigned seed")
        return p

    def group(name: str, help: str):
        g = groups.add_parser(name, help=help)
        return g.add_subparsers(dest="command", required=True, metavar="COMMAND", parser_class=_Parser)

    graph = group("graph", "metagraph files")
    p = leaf(graph, "stats", _cmd_graph_stats, "atom and label counts")
    p.add_argument("--graph", required=True)
    p = leaf(graph, "graphtropy", _cmd_graph_graphtropy, "graphtropy of the distinction view")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", choices=("distinct_pairs", "ordered_with_diagonal"), default="distinct_pairs")
    p.add_argument("--observations", type=_id_list, default=None, help="observation node ids")
    p.add_argument("--threshold", type=_finite_float, default=0.5)
    p = leaf(graph, "negate", _cmd_graph_negate, "intuitionistic negation of a node set")
    p.add_argument("--graph", required=True)
    p.add_argument("--nodes", type=_id_list, required=True)
    p.add_argument("--output", default=None, help="write the negation as a graph file")

    logic = group("logic", "truth values")
    leaf(logic, "table", _cmd_logic_table, "four-valued connective tables")

    cosm = group("cosm", "combination systems and simplicity")
    for name, func, help in (
        ("solve", _cmd_cosm_solve, "least simplicity assignment"),
        ("patterns", _cmd_cosm_patterns, "pattern intensities"),
        ("hierarchy", _cmd_cosm_hierarchy, "subpattern hierarchy edges"),
        ("check-assoc", _cmd_cosm_check_assoc, "mutual and approximate cost associativity"),
    ):
        p = leaf(cosm, name, func, help)
        p.add_argument("--system", required=True)
        if name != "check-assoc":
            p.add_argument("--context", default="", help="comma-separated context entities")
        if name in ("patterns", "hierarchy", "check-assoc"):
            p.add_argument("--reference-ops", default="", help="comma-separated operator indices")
        if name == "patterns":
            p.add_argument("--min-intensity", type=_finite_float, default=0.0)
    p = leaf(cosm, "check-thm2", _cmd_cosm_check_thm2, "approximate partial order on random systems", stochastic=True)
    p.add_argument("--trials", type=_positive_int, required=True)

    dds = group("dds", "discrete decision systems")
    p = leaf(dds, "run", _cmd_dds_run, "run an executor on a built-in problem", stochastic=True)
    p.add_argument("--mode", choices=("greedy", "dp", "mc"), required=True)
    p.add_argument("--problem", choices=("deceptive-chain", "gridworld"), required=True)
    p.add_argument("--temperature", type=_finite_float, default=1.0)
    p.add_argument("--rollouts", type=_positive_int, default=64)

    cofo = group("cofo", "combinatory function optimization")
    p = leaf(cofo, "run", _cmd_cofo_run, "optimize a built-in objective", stochastic=True)
    p.add_argument("--objective", choices=("onemax", "seeded-cosm"), required=True)
    p.add_argument("--budget", type=_positive_int, required=True)
    p.add_argument("--rho", type=_finite_float, default=0.25)
    p.add_argument("--guidance", choices=("bestSoFar", "entropyReduction"), default="bestSoFar")
    p.add_argument("--mode", choices=("greedy", "dp"), default="greedy")
    p.add_argument("--bits", type=_positive_int, default=8, help="onemax length")

    ecan = group("ecan", "attention spreading")
    p = leaf(ecan, "run", _cmd_ecan_run, "spread importance")
    p.add_argument("--graph", required=True)
    p.add_argument("--iters", type=_nonneg_int, default=1)
    p.add_argument("--spread", type=_finite_float, default=0.5)
    p.add_argument("--decay", type=_finite_float, default=0.0)
    p.add_argument("--focus-threshold", type=_finite_float, default=0.0)
    p.add_argument("--output", default=None)

    cluster = group("cluster", "agglomerative clustering")
    p = leaf(cluster, "run", _cmd_cluster_run, "cluster points from a file")
    p.add_argument("--points", required=True)
    p.add_argument("--k", type=_positive_int, default=None)
    p.add_argument("--stop-distance", type=_finite_float, default=None)
    p.add_argument("--output", default=None, help="write Concept/Member atoms as a graph file")

    mine = group("mine", "pattern mining")
    p = leaf(mine, "run", _cmd_mine_run, "mine frequent templates")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-size", type=_positive_int, default=3)
    p.add_argument("--min-support", type=_positive_int, default=2)
    p.add_argument("--min-intensity", type=_finite_float, default=0.0)

    intel = group("intel", "intelligence measures")
    p = leaf(intel, "bench", _cmd_intel_bench, "estimate intelligence measures for an agent", stochastic=True)
    p.add_argument("--class", dest="env_class", choices=("tiny2",), default="tiny2")
    p.add_argument("--agent", choices=("random", "greedy", "brute", "optimal"), required=True)
    p.add_argument("--horizon", type=_positive_int, default=6)
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--metrics", default=",".join(METRICS), help="comma-separated subset of " + ",".join(METRICS))
    p = leaf(intel, "jgc", _cmd_intel_jgc, "joy, growth and choice over graph snapshots")
    p.add_argument("--snapshots", required=True, help="directory of *.graph files")
    p.add_argument("--max-size", type=_positive_int, default=2)
    p.add_argument("--min-support", type=_positive_int, default=2)
    return parser


def _config(args) -> dict:
    config = {"command": f"{args.group} {args.command}"}
    for k, v in sorted(vars(args).items()):
        if k not in ("func", "group", "command"):
            config[k] = v
    return config


def main(argv: Iterable[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        thread_cap()
        em = Emitter(args.format, out)
        em.header(_config(args))
        args.func(args, em)
    except UsageError as exc:
        err.write(f"cogkernel: usage error: {exc}\n")
        return 2
    except (CogKernelError, ValueError, OSError) as exc:
        err.write(f"cogkernel: error: {type(exc).__name__}: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
