"""Desk-scale property suites aggregated behind one entry point.

Each suite re-runs the module invariants at sizes controlled by a small
configuration (seed, caps, sample counts, tolerances), reporting one
pass/fail result per named check. The CLI's verify-all subcommand maps
any failure to exit code 2.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, fields, replace
from itertools import combinations
from math import comb

import numpy as np

from . import bounds as bounds_mod
from . import construct, counting, optimize, search, stepfun
from .graphs import Graph, canonical_key, graph_from_canonical_key, random_graph


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 20240810
    n_max: int = 5          # exhaustive edge-subset scans use all graphs up to here
    ak_n: int = 6           # largest n for the exact 2-edge-path verification
    samples: int = 100      # random-graph sample count per check
    t6_samples: int = 1000  # random step functions per density
    restarts: int = 8       # optimizer restarts in the convergence check
    blocks: int = 6         # optimizer block budget
    converge_tol: float = 5e-3  # desk-scale; the acceptance suite runs 32 restarts at 1e-3
    tol: float = 1e-12      # closed-form comparison tolerance


def config_from_mapping(overrides: dict) -> VerifyConfig:
    cfg = VerifyConfig()
    valid = {f.name: f.type for f in fields(VerifyConfig)}
    casts = {"converge_tol": float, "tol": float}
    parsed = {}
    for key, value in overrides.items():
        if key not in valid:
            raise ValueError(f"unknown config key {key!r}")
        parsed[key] = casts.get(key, int)(value)
    return replace(cfg, **parsed)


def load_config_file(path: str) -> dict:
    """Parse a key=value config file; '#' starts a comment."""
    overrides = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line {raw.strip()!r}")
            key, value = line.split("=", 1)
            overrides[key.strip()] = value.strip()
    return overrides


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    results: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)


def _all_graphs(n: int):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for e in range(len(pairs) + 1):
        for subset in combinations(pairs, e):
            yield Graph(n, subset)


def _suite_graph_core(cfg: VerifyConfig) -> list[CheckResult]:
    rng = random.Random(cfg.seed)
    out = []
    ok = True
    bad = ""
    for _ in range(cfg.samples):
        n = rng.randint(2, 12)
        g = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng)
        if sum(g.degrees()) != 2 * g.num_edges:
            ok, bad = False, f"degree sum failed on {g!r}"
            break
        u, v = rng.randrange(n), rng.randrange(n)
        if g.codegree(u, v) > min(g.degree(u), g.degree(v)):
            ok, bad = False, f"codegree bound failed on {g!r}"
            break
        h = g.complement()
        if h.complement() != g or any(
            h.degree(w) != n - 1 - g.degree(w) for w in range(n)
        ):
            ok, bad = False, f"complement identities failed on {g!r}"
            break
    out.append(CheckResult("graph-core", "degree/codegree/complement", ok, bad or f"{cfg.samples} random graphs"))
    ok = True
    bad = ""
    for _ in range(max(cfg.samples // 4, 5)):
        n = rng.randint(2, 7)
        g = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng)
        key = canonical_key(g)
        for _ in range(20):
            perm = list(range(n))
            rng.shuffle(perm)
            if canonical_key(g.relabel(perm)) != key:
                ok, bad = False, f"canonical key varies under relabeling of {g!r}"
                break
        if not ok:
            break
    out.append(CheckResult("graph-core", "canonical key invariance", ok, bad or "20 relabelings per graph"))
    return out


def _suite_construct(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    ok = True
    bad = ""
    for n in range(1, 31):
        for e in range(n * (n - 1) // 2 + 1):
            if construct.quasi_clique(n, e).num_edges != e:
                ok, bad = False, f"quasi-clique edge count at ({n}, {e})"
                break
            if construct.quasi_star(n, e).num_edges != e:
                ok, bad = False, f"quasi-star edge count at ({n}, {e})"
                break
            g = construct.near_regular(n, e)
            ds = g.degrees()
            if g.num_edges != e or max(ds) - min(ds) > 1:
                ok, bad = False, f"near-regular spread at ({n}, {e})"
                break
        if not ok:
            break
    out.append(CheckResult("construct", "edge counts and degree spread, n <= 30", ok, bad or "all cells"))
    rng = random.Random(cfg.seed + 1)
    ok = True
    bad = ""
    for _ in range(20):
        n = rng.randint(2, 8)
        cap = n * (n - 1) // 2
        e = rng.randint(0, cap)
        lhs = canonical_key(construct.quasi_star(n, e))
        rhs = canonical_key(construct.quasi_clique(n, cap - e).complement())
        if lhs != rhs:
            ok, bad = False, f"complement relation failed at ({n}, {e})"
            break
    out.append(CheckResult("construct", "quasi-star is the clique complement", ok, bad or "20 cells, n <= 8"))
    return out


def _suite_count(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    rng = random.Random(cfg.seed + 2)
    ok = True
    bad = ""
    checked = 0
    for g in _all_graphs(min(cfg.n_max, 5)):
        w = counting.count_walks4(g)  # internally cross-checks both methods
        if w != counting.count_walks4_brute(g):
            ok, bad = False, f"walk oracle mismatch on {g!r}"
            break
        p = counting.count_p4(g)
        if p != counting.count_p4_brute(g):
            ok, bad = False, f"path oracle mismatch on {g!r}"
            break
        if 2 * p > w:
            ok, bad = False, f"walk/path sandwich failed on {g!r}"
            break
        if w * g.n**3 < (2 * g.num_edges) ** 4:
            ok, bad = False, f"lower bound failed on {g!r}"
            break
        checked += 1
    out.append(CheckResult("count", "oracle agreement, exhaustive small graphs", ok, bad or f"{checked} graphs"))
    ok = True
    bad = ""
    for _ in range(cfg.samples):
        n = rng.randint(5, 16)
        g = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng)
        if counting.count_walks4(g) != counting.count_walks4_brute(g):
            ok, bad = False, f"walk oracle mismatch on {g!r}"
            break
        perm = list(range(n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        if counting.count_p4(g) != counting.count_p4(h) or counting.count_p2(
            g
        ) != counting.count_p2(h):
            ok, bad = False, f"relabeling changed a count on {g!r}"
            break
    out.append(CheckResult("count", "random-graph oracles and relabeling invariance", ok, bad or f"{cfg.samples} graphs"))
    ok = True
    bad = ""
    for _ in range(20):
        n = rng.randint(4, 30)
        d = rng.randint(1, n - 1)
        if (n * d) % 2:
            d -= 1
        if d < 1:
            continue
        g = construct.near_regular(n, n * d // 2)
        if counting.count_walks4(g) != n * d**4:
            ok, bad = False, f"regular identity failed at n={n}, d={d}"
            break
    out.append(CheckResult("count", "regular graphs have n*d^4 walks", ok, bad or "20 regular graphs"))
    return out


def _suite_bounds(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    grid = np.linspace(0.0, 1.0, 10_001)
    star = np.array([bounds_mod.upper_star_density(c) for c in grid])
    clique = np.array([bounds_mod.upper_clique_density(c) for c in grid])
    lower = grid**4
    ok = bool(np.all(lower <= np.maximum(star, clique) + 1e-15))
    out.append(CheckResult("bounds", "lower <= upper on a 10^4 grid", ok, "density scale"))
    ok = bool(np.all(np.diff(star) >= -1e-15) and np.all(np.diff(clique) >= -1e-15))
    out.append(CheckResult("bounds", "both upper branches monotone", ok, ""))
    sign = np.sign(star - clique)
    interior = sign[1:-1]
    changes = int(np.sum(interior[1:] * interior[:-1] < 0))
    c0 = bounds_mod.crossing_point()
    ok = changes == 1 and 0.0860 <= c0 <= 0.0870
    out.append(CheckResult("bounds", "single crossing near 0.0865", ok, f"c0={c0:.6f}"))
    worst = 0.0
    for c in np.linspace(0.0, 1.0, 101):
        worst = max(
            worst,
            abs(stepfun.s_value(stepfun.a1(c)) - bounds_mod.upper_star_density(c)),
            abs(stepfun.s_value(stepfun.a2(c)) - bounds_mod.upper_clique_density(c)),
        )
    ok = worst <= cfg.tol
    out.append(CheckResult("bounds", "branch formulas equal extremal functionals", ok, f"worst={worst:.2e}"))
    return out


def _suite_stepfun(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    rng = np.random.default_rng(cfg.seed + 3)
    worst = 0.0
    endpoint_ok = True
    for c in np.linspace(0.02, 0.98, 25):
        lo, hi = 1.0 - math.sqrt(1.0 - c), math.sqrt(c)
        xs = np.linspace(lo, hi, 100)
        vals = []
        for x in xs:
            vals.append(stepfun.s_value(stepfun.two_step(c, x)))
            worst = max(worst, abs(vals[-1] - stepfun.s_two_step_closed(c, x)))
        if max(vals) > max(vals[0], vals[-1]) + cfg.tol:
            endpoint_ok = False
    out.append(CheckResult("stepfun", "two-block closed form", worst <= cfg.tol, f"worst={worst:.2e}"))
    out.append(CheckResult("stepfun", "two-block max at an endpoint", endpoint_ok, ""))
    endpoint_ok = True
    worst3 = 0.0
    for s in np.linspace(0.03, 0.97, 25):
        lo, hi = 1.0 - math.sqrt(1.0 - s), math.sqrt(s)
        xs = np.linspace(lo, hi, 100)
        vals = []
        for x in xs:
            vals.append(stepfun.s_value(stepfun.three_step(s, x)))
            worst3 = max(worst3, abs(vals[-1] - stepfun.s_three_step_closed(s, x)))
        if max(vals) > max(vals[0], vals[-1]) + cfg.tol:
            endpoint_ok = False
    out.append(CheckResult("stepfun", "three-block closed form", worst3 <= cfg.tol, f"worst={worst3:.2e}"))
    out.append(CheckResult("stepfun", "three-block max at an endpoint", endpoint_ok, ""))
    ok = True
    bad = ""
    for c in (0.05, 0.0865, 0.3, 0.7, 0.95):
        bound = max(
            bounds_mod.upper_star_density(c), bounds_mod.upper_clique_density(c)
        )
        for _ in range(cfg.t6_samples):
            a = stepfun.random_step_function(c, int(rng.integers(1, 9)), rng)
            if abs(a.mass - c) > 1e-12:
                ok, bad = False, f"mass restoration failed at c={c}"
                break
            if stepfun.s_value(a) > bound + cfg.tol:
                ok, bad = False, f"bound violated at c={c}"
                break
        if not ok:
            break
    out.append(CheckResult("stepfun", "random mass-c functions under the bound", ok, bad or f"{cfg.t6_samples} per density"))
    ok = True
    bad = ""
    pyrng = random.Random(cfg.seed + 4)
    for _ in range(cfg.samples // 4):
        n = pyrng.randint(2, 10)
        g = random_graph(n, pyrng.randint(0, n * (n - 1) // 2), pyrng)
        a = stepfun.from_graph(g)
        degs = g.degrees()
        exact = sum(
            degs[i] * degs[j] * min(degs[i], degs[j])
            for i in range(n)
            for j in range(n)
        )
        if abs(stepfun.s_value(a) - exact / n**5) > cfg.tol:
            ok, bad = False, f"embedding identity failed on {g!r}"
            break
        if stepfun.s_value(a) < counting.count_walks4(g) / n**5 - cfg.tol:
            ok, bad = False, f"walk-density bound failed on {g!r}"
            break
    out.append(CheckResult("stepfun", "graph embedding identities", ok, bad or "random graphs"))
    ok = True
    for c in np.linspace(0.05, 0.95, 19):
        for t in np.linspace(math.sqrt(c), 1.0, 20):
            a = stepfun.StepFunction([0.0, t, 1.0], [[c / t**2, 0.0], [0.0, 0.0]]) if t < 1.0 else stepfun.StepFunction([0.0, 1.0], [[c]])
            s = stepfun.s_value(a)
            if abs(s - c**3 / t) > 1e-9 or s > c**2.5 + 1e-9:
                ok = False
    out.append(CheckResult("stepfun", "single-rectangle value c^3/t below c^(5/2)", ok, ""))
    ok = True
    bad = ""
    trials = 0
    while trials < 30:
        a = stepfun.random_step_function(0.5, int(rng.integers(2, 7)), rng)
        k = a.k
        v = a.values
        quads = [
            (i1, i2, j1, j2)
            for i1 in range(k)
            for i2 in range(k)
            if i1 != i2
            for j1 in range(k)
            for j2 in range(k)
            if j1 != j2
            and v[i2, j1] - v[i1, j1] > 1e-3
            and v[i1, j2] - v[i2, j2] > 1e-3
        ]
        if not quads:
            continue
        trials += 1
        i1, i2, j1, j2 = quads[int(rng.integers(len(quads)))]
        gap = min(v[i2, j1] - v[i1, j1], v[i1, j2] - v[i2, j2])
        t = a.widths
        eps = 0.25 * gap * min(
            t[i1] * t[j1], t[i2] * t[j1], t[i1] * t[j2], t[i2] * t[j2]
        )
        b = optimize.apply_four_swap(a, i1, i2, j1, j2, eps)
        if np.abs(b.row_sums - a.row_sums).max() > 1e-12:
            ok, bad = False, "row sums moved"
            break
        if abs(stepfun.s_value(b) - stepfun.s_value(a)) > 1e-12:
            ok, bad = False, "objective moved"
            break
        if stepfun.t_value(b) >= stepfun.t_value(a):
            ok, bad = False, "variation did not drop"
            break
    out.append(CheckResult("stepfun", "4-swap preserves row sums, drops variation", ok, bad or "30 violating quadruples"))
    return out


def _suite_optimize(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    ok = True
    bad = ""
    for c in (0.05, 0.3, 0.7):
        res = optimize.maximize_s(c, cfg.blocks, seed=cfg.seed)
        svals = [r.s_value for r in res.trace]
        if not all(svals[i] < svals[i + 1] for i in range(len(svals) - 1)):
            ok, bad = False, f"trace not strictly increasing at c={c}"
            break
        if max(abs(r.mass - c) for r in res.trace) > 1e-9:
            ok, bad = False, f"mass drifted at c={c}"
            break
        bound = max(
            bounds_mod.upper_star_density(c), bounds_mod.upper_clique_density(c)
        )
        if res.s_value > bound + 1e-9:
            ok, bad = False, f"bound breached at c={c}"
            break
    out.append(CheckResult("optimize", "trace monotone, mass constant, bound respected", ok, bad or "3 densities"))
    res1 = optimize.maximize_s(0.3, cfg.blocks, seed=cfg.seed)
    res2 = optimize.maximize_s(0.3, cfg.blocks, seed=cfg.seed)
    ok = res1.s_value == res2.s_value and len(res1.trace) == len(res2.trace)
    out.append(CheckResult("optimize", "deterministic per seed", ok, ""))
    gaps = []
    ok = True
    for c in (0.3, 0.7):
        bound = max(
            bounds_mod.upper_star_density(c), bounds_mod.upper_clique_density(c)
        )
        best = optimize.maximize_s_restarts(c, cfg.blocks, cfg.restarts, seed=cfg.seed)
        gaps.append(bound - best.s_value)
        if gaps[-1] > cfg.converge_tol:
            ok = False
    out.append(
        CheckResult(
            "optimize",
            "restarts reach the closed-form bound",
            ok,
            "gaps " + ", ".join(f"{gv:.1e}" for gv in gaps),
        )
    )
    return out


def _suite_search(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    ok = True
    bad = ""
    for n in range(2, cfg.ak_n + 1):
        try:
            search.verify_ahlswede_katona(n)
        except AssertionError as exc:
            ok, bad = False, str(exc)
            break
    out.append(CheckResult("search", f"exact 2-edge-path extremality, n <= {cfg.ak_n}", ok, bad or "all edge counts"))
    ok = True
    bad = ""
    n = min(cfg.n_max, 5)
    for g in _all_graphs(n):
        if counting.count_walks4(g) * g.n**3 < (2 * g.num_edges) ** 4:
            ok, bad = False, f"walk lower bound failed on {g!r}"
            break
    out.append(CheckResult("search", f"every graph meets the walk lower bound, n = {n}", ok, bad or "exhaustive"))
    res = search.extremal_search(5, 4, "p4")
    recount_ok = all(
        counting.count_p4(graph_from_canonical_key(key)) == res.max_value
        for key in res.max_witnesses
    )
    ok = recount_ok and res.max_value == 1 and res.num_graphs == comb(10, 4)
    out.append(CheckResult("search", "enumeration completeness and witness recount", ok, f"(5,4) p4 max={res.max_value}"))
    return out


def verify_all(cfg: VerifyConfig | None = None) -> VerifyReport:
    cfg = cfg or VerifyConfig()
    results: list[CheckResult] = []
    for suite_fn in (
        _suite_graph_core,
        _suite_construct,
        _suite_count,
        _suite_bounds,
        _suite_stepfun,
        _suite_optimize,
        _suite_search,
    ):
        results.extend(suite_fn(cfg))
    return VerifyReport(results=tuple(results))
