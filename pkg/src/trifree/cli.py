"""Command line front end: detect, list, classify, gen, bench, verify.

Every command prints one JSON report.  Exit status is 0 unless the report
is a structured error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import attached, c5, nice, oddcycle, sensitive
from .generators import ATTACH, DISJOINT, GenSpec, gen_bipartite, gen_blowup, gen_oddfree, gen_tripartite, plant_triangle
from .graph import Graph, OpCounter, Triangle
from .io import emit_graph6, read_graph, write_graph
from .oracles import brute_triangles
from .patterns import (
    ATTACHED_TRIANGLE,
    LOWER_BOUND,
    NICE_COLORING,
    TRIVIALLY_SOLVABLE,
    AttachedCertificate,
    NiceCertificate,
    builtin_pattern,
    classify,
    cycle,
    enumerate_patterns,
)

DETECT_ALGOS = ("auto", "nice", "sensitive", "attached", "c5-warmup", "c5-sensitive", "oddfree", "short-oddfree", "brute")
LIST_ALGOS = ("auto", "nice", "sensitive", "attached", "oddfree", "brute")
RANDOMIZED = {"nice", "sensitive", "attached", "c5-warmup", "c5-sensitive"}
CONSTANTS = ("c_s", "c_a", "c_cc", "c_sv", "c_e", "c_r", "c_x")
FAMILIES = ("bipartite", "tripartite", "blowup", "oddfree")


class CliError(Exception):
    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(message)


@dataclass
class RunConfig:
    mode: str
    algorithm: str = "auto"
    graph: str | None = None
    graph_format: str | None = None
    pattern: str | None = None
    pattern_file: str | None = None
    seed: int | None = None
    k: int | None = None
    t: int | None = None
    constants: dict = field(default_factory=dict)
    output: str | None = None
    enumerate: int | None = None
    gen: GenSpec | None = None
    plant_mode: str = DISJOINT
    suite: str = "oddfree"
    sizes: tuple[int, ...] = ()
    jobs: int = 1


def _tri(t: Triangle | None):
    return None if t is None else [int(x) for x in t]


def _load_pattern(cfg: RunConfig) -> Graph:
    if cfg.pattern and cfg.pattern_file:
        raise CliError("usage", "give either --pattern or --pattern-file, not both")
    if cfg.pattern:
        try:
            return builtin_pattern(cfg.pattern)
        except ValueError as e:
            raise CliError("unknown-pattern", str(e)) from None
    if cfg.pattern_file:
        return read_graph(cfg.pattern_file)
    raise CliError("usage", "a pattern is required")


def pick_algorithm(algorithm: str, h: Graph | None) -> str:
    """Resolve "auto" from the pattern's category."""
    if algorithm != "auto":
        return algorithm
    cat = classify(h).name
    if cat == NICE_COLORING:
        return "nice"
    if cat == ATTACHED_TRIANGLE:
        return "attached"
    if cat == TRIVIALLY_SOLVABLE:
        return "brute"
    raise CliError("unsupported-pattern", f"no algorithm for a pattern classified {cat}")


def _needs_pattern(algo: str) -> bool:
    return algo in ("auto", "nice", "sensitive", "attached")


def solve(g: Graph, h: Graph | None, algo: str, listing: bool, seed=None, k: int | None = None,
          t: int | None = None, constants: dict | None = None):
    """Run one detector or lister; returns (answer, ops or None, extra report fields)."""
    const = {c: v for c, v in (constants or {}).items() if v is not None}
    if algo in RANDOMIZED and seed is None:
        raise CliError("missing-seed", f"algorithm {algo} is randomized and needs --seed")
    if algo in ("oddfree", "short-oddfree") and k is None:
        raise CliError("usage", f"algorithm {algo} needs --k")
    if listing and algo not in LIST_ALGOS:
        raise CliError("unknown-algorithm", f"{algo} has no listing mode")
    ops = None
    extra: dict = {}
    c_cc = int(const.get("c_cc", 16))
    try:
        if algo == "brute":
            tris = brute_triangles(g)
            out = tris if listing else (tris[0] if tris else None)
        elif algo == "nice":
            c_s = float(const.get("c_s", 16.0 if listing else 8.0))
            out = (nice.list_nice if listing else nice.detect_hfree)(g, h, seed, c_cc=c_cc, c_s=c_s)
        elif algo == "sensitive":
            fn = sensitive.list_sensitive_graph if listing else sensitive.detect_sensitive_graph
            if t is None and "c_e" in const:
                t = sensitive.estimate_t(g, h, seed, c_e=int(const["c_e"]))
            out = fn(g, h, t, seed, c_cc=c_cc)
        elif algo == "attached":
            c_a = float(const.get("c_a", 8.0))
            out = (attached.list_attached if listing else attached.detect_attached)(g, h, seed, c_cc=c_cc, c_a=c_a)
        elif algo == "c5-warmup":
            out = c5.detect_c5free_warmup(g, seed)
        elif algo == "c5-sensitive":
            st = c5.C5Stats()
            out = c5.detect_c5_sensitive(g, seed, c_r=int(const.get("c_r", 1)), t_hint=t, stats=st)
            ops = st.ops
            extra["copies"] = [{"ops": o, "capped": cap} for o, cap in st.copies]
            extra["cap"] = st.cap
        elif algo in ("oddfree", "short-oddfree"):
            counter = OpCounter()
            if algo == "short-oddfree":
                out = oddcycle.detect_short_oddfree(g, k, counter)
            else:
                out = (oddcycle.list_oddfree if listing else oddcycle.detect_oddfree)(g, k, counter)
            ops = counter.ops
        else:
            raise CliError("unknown-algorithm", algo)
    except ValueError as e:
        raise CliError("contract", str(e)) from None
    return out, ops, extra


def _run_detect(cfg: RunConfig, listing: bool) -> dict:
    if cfg.graph is None:
        raise CliError("usage", "--graph is required")
    g = read_graph(cfg.graph, cfg.graph_format)
    h = _load_pattern(cfg) if _needs_pattern(cfg.algorithm) else None
    algo = pick_algorithm(cfg.algorithm, h)
    t0 = time.perf_counter()
    out, ops, extra = solve(g, h, algo, listing, cfg.seed, cfg.k, cfg.t, cfg.constants)
    wall = time.perf_counter() - t0
    report = {"command": "list" if listing else "detect", "algorithm": algo, "seed": cfg.seed, "n": g.n, "m": g.m}
    if listing:
        report["triangles"] = [_tri(t) for t in out]
        report["count"] = len(out)
    else:
        report["found"] = out is not None
        report["triangle"] = _tri(out)
    report["ops"] = ops
    report["constants"] = dict(cfg.constants)
    report["wall_time"] = wall
    report.update(extra)
    return report


def certificate_dict(cert) -> dict | None:
    if cert is None:
        return None
    if isinstance(cert, NiceCertificate):
        return {
            "type": "nice",
            "coloring": list(cert.coloring.colors),
            "deletion_order": list(cert.deletion_order),
            "leftover": list(cert.leftover),
        }
    if isinstance(cert, AttachedCertificate):
        return {
            "type": "attached",
            "coloring": list(cert.coloring.colors),
            "deletion_order": list(cert.deletion_order),
            "triangle": list(cert.triangle),
            "subpattern": list(cert.subpattern),
            "nested": certificate_dict(cert.nested),
        }
    return None


def _classify_chunk(pats: list[list[tuple[int, int]]], sizes: list[int]) -> list[tuple[str, bool]]:
    out = []
    for n, edges in zip(sizes, pats):
        h = Graph(n, edges)
        cat = classify(h)
        ok = cat.certificate.replay(h) if cat.certificate is not None else True
        out.append((cat.name, ok))
    return out


def _run_classify(cfg: RunConfig) -> dict:
    if cfg.enumerate is not None:
        n = cfg.enumerate
        pats = enumerate_patterns(n)
        results = _parallel(_classify_chunk, [list(p.edges()) for p in pats], [p.n for p in pats], cfg.jobs)
        counts: dict[str, int] = {}
        for name, _ in results:
            counts[name] = counts.get(name, 0) + 1
        first_three = {TRIVIALLY_SOLVABLE, LOWER_BOUND, NICE_COLORING}
        return {
            "command": "classify",
            "n": n,
            "total": len(pats),
            "unclassified_by_first_three": sum(1 for name, _ in results if name not in first_three),
            "counts": counts,
            "certificates_replay": all(ok for _, ok in results),
            "exceptions": [emit_graph6(p).decode() for p, (name, _) in zip(pats, results) if name not in first_three],
        }
    h = _load_pattern(cfg)
    cat = classify(h)
    return {
        "command": "classify",
        "category": cat.name,
        "certificate": certificate_dict(cat.certificate),
        "detail": cat.detail,
    }


def _parallel(fn, items, sizes, jobs: int):
    if jobs <= 1 or len(items) < 2:
        return fn(items, sizes)
    step = -(-len(items) // jobs)
    chunks = [(items[i:i + step], sizes[i:i + step]) for i in range(0, len(items), step)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(fn, *zip(*chunks)))
    return [x for p in parts for x in p]


def generate(spec: GenSpec, plant_mode: str = DISJOINT) -> Graph:
    s = spec.sizes
    if spec.family == "bipartite":
        g = gen_bipartite(s[0], s[1] if len(s) > 1 else s[0], spec.p, spec.seed)
    elif spec.family == "tripartite":
        g, _ = gen_tripartite(s[0], s[1] if len(s) > 1 else s[0], s[2] if len(s) > 2 else s[0], spec.p, spec.seed)
    elif spec.family == "blowup":
        base = cycle(s[1] if len(s) > 1 else 7)
        g = gen_blowup(base, s[0], spec.p, spec.seed)
    elif spec.family == "oddfree":
        return gen_oddfree(s[0], spec.k, spec.seed, triangles=spec.plant, p=spec.p).graph
    else:
        raise CliError("unknown-family", spec.family)
    if spec.plant:
        g = plant_triangle(g, plant_mode, spec.seed)
    return g


def _run_gen(cfg: RunConfig) -> dict:
    if cfg.gen is None or not cfg.gen.sizes:
        raise CliError("usage", "gen needs --family and --sizes")
    if cfg.output is None:
        raise CliError("usage", "gen needs --output for the graph file")
    g = generate(cfg.gen, cfg.plant_mode)
    write_graph(g, cfg.output, cfg.graph_format)
    return {"command": "gen", "spec": cfg.gen.to_dict(), "generated": cfg.output, "n": g.n, "m": g.m}


def _bench_oddfree(n: int, k: int, seed: int) -> dict:
    g = gen_oddfree(n, k, seed, triangles=False).graph
    counter = OpCounter()
    t0 = time.perf_counter()
    oddcycle.detect_oddfree(g, k, counter)
    return {"n": g.n, "m": g.m, "k": k, "ops": counter.ops, "wall_time": time.perf_counter() - t0,
            "target": g.m + g.n ** (1 + 2 / k)}


def _bench_c5(n: int, k: int, seed: int) -> dict:
    part = max(1, n // 7)
    g = gen_blowup(cycle(7), part, 0.5, seed)
    st = c5.C5Stats()
    t0 = time.perf_counter()
    c5.detect_c5_sensitive(g, seed, t_hint=0, stats=st)
    # a C7 blowup has no 5-cycle, so t = 0 and the target is n^2
    return {"n": g.n, "m": g.m, "ops": st.ops, "wall_time": time.perf_counter() - t0, "target": g.n**2, "t": 0}


def _bench_one(args):
    suite, n, k, seed = args
    return _bench_oddfree(n, k, seed) if suite == "oddfree" else _bench_c5(n, k, seed)


def run_bench(suite: str, sizes, k: int = 2, seed: int = 0, jobs: int = 1) -> dict:
    if suite not in ("oddfree", "c5"):
        raise CliError("unknown-suite", suite)
    tasks = [(suite, n, k, seed) for n in sizes]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_bench_one, tasks))
    else:
        rows = [_bench_one(t) for t in tasks]
    return {"command": "bench", "suite": suite, "k": k, "seed": seed, "rows": rows}


def _verify_seed(seed: int) -> dict:
    """Cross-check every detector and lister on a small planted instance against the brute oracle."""
    host = gen_bipartite(12, 12, 0.5, seed)
    g = plant_triangle(host, DISJOINT, seed)
    truth = set(brute_triangles(g))
    odd = gen_oddfree(60, 2 + seed % 3, seed).graph
    odd_truth = set(brute_triangles(odd))
    c5p = builtin_pattern("C5")
    att = builtin_pattern("attached7")
    checks = {
        "nice": nice.detect_hfree(g, c5p, seed, rounds=8),
        "sensitive": sensitive.detect_sensitive_graph(g, c5p, None, seed, rounds=8),
        "attached": attached.detect_attached(g, att, seed, rounds=8),
        "c5-warmup": c5.detect_c5free_warmup(g, seed),
        "c5-sensitive": c5.detect_c5_sensitive(g, seed),
    }
    unsound = [name for name, t in checks.items() if t is not None and t not in truth]
    lists = {
        "nice": nice.list_nice(g, c5p, seed, rounds=8),
        "attached": attached.list_attached(g, att, seed, rounds=8),
    }
    unsound += [f"list-{name}" for name, ts in lists.items() if not set(ts) <= truth]
    k = 2 + seed % 3
    odd_det = oddcycle.detect_oddfree(odd, k)
    odd_list = oddcycle.list_oddfree(odd, k)
    mismatch = []
    if (odd_det is None) != (not odd_truth) or set(odd_list) != odd_truth:
        mismatch.append("oddfree")
    return {"seed": seed, "unsound": unsound, "mismatch": mismatch}


def run_verify(seeds: int, jobs: int = 1) -> dict:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_verify_seed, range(seeds)))
    else:
        rows = [_verify_seed(s) for s in range(seeds)]
    bad = [r for r in rows if r["unsound"] or r["mismatch"]]
    return {"command": "verify", "seeds": seeds, "ok": not bad, "failures": bad}


def run(cfg: RunConfig) -> dict:
    if cfg.mode == "detect":
        return _run_detect(cfg, False)
    if cfg.mode == "list":
        return _run_detect(cfg, True)
    if cfg.mode == "classify":
        return _run_classify(cfg)
    if cfg.mode == "gen":
        return _run_gen(cfg)
    if cfg.mode == "bench":
        return run_bench(cfg.suite, cfg.sizes or (50, 100, 200), cfg.k or 2, cfg.seed or 0, cfg.jobs)
    if cfg.mode == "verify":
        return run_verify(cfg.t or 20, cfg.jobs)
    raise CliError("usage", f"unknown mode {cfg.mode!r}")


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("TRIFREE_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trifree", description="Triangle detection in pattern-free graphs.")
    sub = p.add_subparsers(dest="mode", required=True)

    def common(sp, algos=None):
        sp.add_argument("--output", "-o")
        sp.add_argument("--jobs", type=int, default=_default_jobs())
        sp.add_argument("--seed", type=int)
        if algos:
            sp.add_argument("--graph", "-g")
            sp.add_argument("--format", dest="graph_format", choices=("graph6", "edgelist"))
            sp.add_argument("--pattern", "-p")
            sp.add_argument("--pattern-file")
            sp.add_argument("--algo", dest="algorithm", choices=algos, default="auto")
            sp.add_argument("--k", type=int)
            sp.add_argument("--t", type=int, help="upper bound on pattern copies")
            for c in CONSTANTS:
                sp.add_argument(f"--{c.replace('_', '-')}", dest=c, type=float)

    common(sub.add_parser("detect", help="report one triangle or none"), DETECT_ALGOS)
    common(sub.add_parser("list", help="report every triangle found"), LIST_ALGOS)
    cl = sub.add_parser("classify", help="classify a pattern, or every pattern on N vertices")
    common(cl)
    cl.add_argument("--pattern", "-p")
    cl.add_argument("--pattern-file")
    cl.add_argument("--enumerate", type=int, metavar="N")
    gen = sub.add_parser("gen", help="write a generated instance")
    common(gen)
    gen.add_argument("--family", choices=FAMILIES, required=True)
    gen.add_argument("--sizes", type=int, nargs="+", required=True)
    gen.add_argument("--p", type=float, default=0.5)
    gen.add_argument("--k", type=int, default=2)
    gen.add_argument("--plant", action="store_true")
    gen.add_argument("--plant-mode", choices=(DISJOINT, ATTACH), default=DISJOINT)
    gen.add_argument("--format", dest="graph_format", choices=("graph6", "edgelist"))
    b = sub.add_parser("bench", help="operation-count scaling sweep")
    common(b)
    b.add_argument("--suite", choices=("oddfree", "c5"), default="oddfree")
    b.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    b.add_argument("--k", type=int, default=2)
    v = sub.add_parser("verify", help="oracle cross-checks on small seeded instances")
    common(v)
    v.add_argument("--seeds", type=int, default=20)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(mode=ns.mode, seed=ns.seed, output=ns.output, jobs=ns.jobs)
    for name in ("algorithm", "graph", "graph_format", "pattern", "pattern_file", "k", "t", "enumerate", "suite"):
        if hasattr(ns, name) and getattr(ns, name) is not None:
            setattr(cfg, name, getattr(ns, name))
    cfg.constants = {c: getattr(ns, c) for c in CONSTANTS if getattr(ns, c, None) is not None}
    if ns.mode == "gen":
        cfg.gen = GenSpec(ns.family, tuple(ns.sizes), ns.p, ns.seed or 0, ns.plant, ns.k)
        cfg.plant_mode = ns.plant_mode
    if ns.mode == "bench":
        cfg.sizes = tuple(ns.sizes)
    if ns.mode == "verify":
        cfg.t = ns.seeds
    return cfg


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        report = run(cfg)
        code = 0 if report.get("ok", True) else 1
    except (CliError, OSError, ValueError, RuntimeError) as e:
        kind = e.kind if isinstance(e, CliError) else type(e).__name__
        report = {"error": {"type": kind, "message": str(e)}}
        code = 1
    text = json.dumps(report, indent=2, sort_keys=True)
    if cfg.output and cfg.mode not in ("gen",):
        Path(cfg.output).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
