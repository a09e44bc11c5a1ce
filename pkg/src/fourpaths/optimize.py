"""Hill-climbing maximizer of the step-function functional at fixed mass.

Moves come in four families, each mass-preserving by construction:

* rectangle 4-swap: transfers value among four cells of a 2x2 block
  pattern; preserves every row sum (hence the objective) and strictly
  lowers the total variation, so it is proposed but never survives the
  strict-increase acceptance rule;
* same-row shift: moves mass between two cells of one column (one of
  which may be the diagonal cell of that column), changing exactly two
  row sums;
* interval split: splits a block at a fractional value, replacing one
  mixed cell by a 1-cell and a 0-cell of matching area;
* boundary move: slides the breakpoint between two adjacent blocks whose
  rows differ in at most one column, re-solving that pivot cell so the
  total mass is unchanged.

A move family is drawn uniformly each iteration and its parameters are
drawn uniformly over the feasible combinations, with extra probability
on the endpoints of each feasible interval (the objective is convex
along every move line, so line maxima sit at endpoints). Acceptance
requires a strict objective increase; the trace is therefore strictly
increasing and the mass stays within 1e-12 of the target throughout.
Runs are deterministic per seed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .stepfun import StepFunction, normalize, random_step_function, s_value, t_value

MOVE_KINDS = ("four_swap", "row_shift", "split", "boundary")

_FRAC_TOL = 1e-9


@dataclass(frozen=True)
class OptimizerConfig:
    max_iters: int = 100_000
    stall_limit: int = 200
    accept_tol: float = 1e-14
    min_width: float = 1e-10
    mass_tol: float = 1e-12
    # probability mass placed on each endpoint of a feasible parameter
    # interval; pure-uniform draws stall short of the line maxima
    endpoint_weight: float = 0.35
    # values this close to 0 or 1 are snapped exactly, letting equal rows
    # merge; the induced mass drift is far below mass_tol
    snap_tol: float = 1e-13
    # initial block count (capped by the budget); starting small leaves
    # splitting room, which is what integerizes fractional values
    start_blocks: int = 2


@dataclass(frozen=True)
class TraceRow:
    iteration: int
    move: str
    s_value: float
    t_value: float
    mass: float


@dataclass(frozen=True)
class OptimizeResult:
    function: StepFunction
    s_value: float
    trace: tuple[TraceRow, ...]
    iterations: int
    seed: object = None


def _s_raw(widths: np.ndarray, values: np.ndarray) -> float:
    rs = values @ widths
    tl = widths * rs
    return float(tl @ np.minimum.outer(rs, rs) @ tl)


def _mass_raw(widths: np.ndarray, values: np.ndarray) -> float:
    return float(widths @ values @ widths)


def _draw(rng, lo: float, hi: float, cfg: OptimizerConfig) -> float:
    u = rng.random()
    if u < cfg.endpoint_weight:
        return lo
    if u < 2.0 * cfg.endpoint_weight:
        return hi
    return rng.uniform(lo, hi)


def _snap01(v: np.ndarray, cfg: OptimizerConfig) -> np.ndarray:
    v[np.abs(v) < cfg.snap_tol] = 0.0
    v[np.abs(v - 1.0) < cfg.snap_tol] = 1.0
    return v


def apply_four_swap(
    a: StepFunction, i1: int, i2: int, j1: int, j2: int, eps: float
) -> StepFunction:
    """Value transfer on the cells (i1,j1), (i2,j1), (i1,j2), (i2,j2).

    Adds eps/(t_i t_j) of value at (i1,j1) and (i2,j2) and removes the
    matching amount at (i2,j1) and (i1,j2); the result is re-symmetrized.
    Every row sum is preserved.
    """
    t = a.widths
    v = np.array(a.values)
    v[i1, j1] += eps / (t[i1] * t[j1])
    v[i2, j1] -= eps / (t[i2] * t[j1])
    v[i1, j2] -= eps / (t[i1] * t[j2])
    v[i2, j2] += eps / (t[i2] * t[j2])
    v = (v + v.T) / 2.0
    return StepFunction(a.breakpoints, np.clip(v, 0.0, 1.0))


def _propose_four_swap(widths, values, rng, cfg):
    k = len(widths)
    if k < 2:
        return None
    quads = [
        (i1, i2, j1, j2)
        for i1 in range(k)
        for i2 in range(k)
        if i1 != i2
        for j1 in range(k)
        for j2 in range(k)
        if j1 != j2
        and values[i2, j1] - values[i1, j1] > _FRAC_TOL
        and values[i1, j2] - values[i2, j2] > _FRAC_TOL
    ]
    if not quads:
        return None
    i1, i2, j1, j2 = quads[int(rng.integers(len(quads)))]
    lo_gap = values[i2, j1] - values[i1, j1]
    hi_gap = values[i1, j2] - values[i2, j2]
    inv1 = 1.0 / (widths[i1] * widths[j1]) + 1.0 / (widths[i2] * widths[j1])
    inv2 = 1.0 / (widths[i1] * widths[j2]) + 1.0 / (widths[i2] * widths[j2])
    # eps may close a gap or saturate a cell exactly, but never invert the order
    cap = min(
        lo_gap / inv1,
        hi_gap / inv2,
        (1.0 - values[i1, j1]) * widths[i1] * widths[j1],
        (1.0 - values[i2, j2]) * widths[i2] * widths[j2],
        values[i2, j1] * widths[i2] * widths[j1],
        values[i1, j2] * widths[i1] * widths[j2],
    )
    if cap <= 0.0:
        return None
    eps = _draw(rng, 0.0, cap, cfg)
    if eps <= 0.0:
        return None
    v = values.copy()
    v[i1, j1] += eps / (widths[i1] * widths[j1])
    v[i2, j1] -= eps / (widths[i2] * widths[j1])
    v[i1, j2] -= eps / (widths[i1] * widths[j2])
    v[i2, j2] += eps / (widths[i2] * widths[j2])
    v = np.clip((v + v.T) / 2.0, 0.0, 1.0)
    return widths.copy(), _snap01(v, cfg)


def _shift_interval(values, a, p, da, b, q, db):
    """Feasible eps interval for v[a,p] += eps*da, v[b,q] -= eps*db."""
    lo = max(-values[a, p] / da, (values[b, q] - 1.0) / db)
    hi = min((1.0 - values[a, p]) / da, values[b, q] / db)
    return lo, hi


def _propose_row_shift(widths, values, rng, cfg):
    k = len(widths)
    if k < 2:
        return None
    combos = []
    for p in range(k):
        for a in range(k):
            if a == p:
                continue
            # off-diagonal cell (a,p) against the diagonal cell (p,p)
            combos.append((a, p, p))
            for b in range(a + 1, k):
                if b != p:
                    combos.append((a, b, p))
    for _ in range(3):
        a, b, p = combos[int(rng.integers(len(combos)))]
        if b == p:
            da = 1.0 / (widths[a] * widths[p])
            dp = 2.0 / (widths[p] * widths[p])
            lo, hi = _shift_interval(values, a, p, da, p, p, dp)
            if hi - lo <= 1e-15:
                continue
            eps = _draw(rng, lo, hi, cfg)
            v = values.copy()
            v[a, p] += eps * da
            v[p, a] = v[a, p]
            v[p, p] -= eps * dp
        else:
            da = 1.0 / (widths[a] * widths[p])
            db = 1.0 / (widths[b] * widths[p])
            lo, hi = _shift_interval(values, a, p, da, b, p, db)
            if hi - lo <= 1e-15:
                continue
            eps = _draw(rng, lo, hi, cfg)
            v = values.copy()
            v[a, p] += eps * da
            v[p, a] = v[a, p]
            v[b, p] -= eps * db
            v[p, b] = v[b, p]
        return widths.copy(), _snap01(np.clip(v, 0.0, 1.0), cfg)
    return None


def _propose_split(widths, values, rng, cfg, k_max):
    k = len(widths)
    if k >= k_max:
        return None
    frac = [
        (i, j)
        for i in range(k)
        for j in range(k)
        if i != j and _FRAC_TOL < values[i, j] < 1.0 - _FRAC_TOL
    ]
    if not frac:
        return None
    i, j = frac[int(rng.integers(len(frac)))]
    lam = float(values[i, j])
    w1, w2 = lam * widths[j], (1.0 - lam) * widths[j]
    if w1 <= cfg.min_width or w2 <= cfg.min_width:
        return None
    new_w = np.concatenate([widths[:j], [w1, w2], widths[j + 1 :]])
    v = np.insert(values, j, values[j, :], axis=0)
    v = np.insert(v, j, v[:, j], axis=1)
    # rows/cols j and j+1 are now copies of the old block j (including the
    # former diagonal value in their 2x2 corner); make the split cell 0/1.
    ii = i if i < j else i + 1
    v[ii, j] = v[j, ii] = 1.0
    v[ii, j + 1] = v[j + 1, ii] = 0.0
    return new_w, v


def _propose_boundary(widths, values, rng, cfg):
    k = len(widths)
    if k < 2:
        return None
    combos = []
    for beta in range(k):
        for alpha in (beta - 1, beta + 1):
            if not 0 <= alpha < k:
                continue
            diff = np.flatnonzero(np.abs(values[alpha] - values[beta]) > 1e-12)
            if diff.size == 1 and diff[0] == beta:
                combos.append((alpha, beta, beta))
            elif diff.size == 1 and diff[0] != alpha:
                combos.append((alpha, beta, int(diff[0])))
    if not combos:
        return None
    alpha, beta, m = combos[int(rng.integers(len(combos)))]
    if m == beta:
        return _boundary_diag_pivot(widths, values, alpha, beta, rng, cfg)
    return _boundary_off_pivot(widths, values, alpha, beta, m, rng, cfg)


def _boundary_off_pivot(widths, values, alpha, beta, m, rng, cfg):
    """Slide the alpha/beta breakpoint, re-solving cell (beta, m)."""
    t_b = widths[beta]
    total = widths[alpha] + t_b
    x_lo, x_hi = cfg.min_width, total - cfg.min_width
    if x_hi <= x_lo:
        return None
    base = values[alpha, m]
    gap = values[beta, m] - base  # pivot value: base + (t_b/x) * gap
    if gap > 0.0:
        if base >= 1.0:
            return None
        x_lo = max(x_lo, t_b * gap / (1.0 - base))
    elif gap < 0.0:
        if base <= 0.0:
            return None
        x_lo = max(x_lo, t_b * (-gap) / base)
    if x_hi <= x_lo:
        return None
    x = _draw(rng, x_lo, x_hi, cfg)
    new_pivot = base + (t_b / x) * gap
    if not -1e-12 <= new_pivot <= 1.0 + 1e-12:
        return None
    w = widths.copy()
    w[alpha] = total - x
    w[beta] = x
    v = values.copy()
    v[beta, m] = v[m, beta] = min(max(new_pivot, 0.0), 1.0)
    return w, _snap01(v, cfg)


def _boundary_diag_pivot(widths, values, alpha, beta, rng, cfg):
    """Slide the alpha/beta breakpoint, re-solving the diagonal cell (beta, beta)."""
    t_b = widths[beta]
    total = widths[alpha] + t_b
    x_lo, x_hi = cfg.min_width, total - cfg.min_width
    if x_hi <= x_lo:
        return None
    target = _mass_raw(widths, values)
    x = _draw(rng, x_lo, x_hi, cfg)
    w = widths.copy()
    w[alpha] = total - x
    w[beta] = x
    v = values.copy()
    v[beta, beta] = 0.0
    rest = _mass_raw(w, v)
    pivot = (target - rest) / (x * x)
    if not -1e-12 <= pivot <= 1.0 + 1e-12:
        return None
    v[beta, beta] = min(max(pivot, 0.0), 1.0)
    return w, _snap01(v, cfg)


def maximize_s(
    c: float,
    blocks: int,
    seed,
    config: OptimizerConfig | None = None,
) -> OptimizeResult:
    """Hill-climb the step functional at fixed mass c within a block budget.

    Starts from a random symmetric mass-c step function with `blocks`
    blocks; a move is accepted only if it increases the objective by more
    than the acceptance tolerance. Stops after the configured number of
    consecutive rejections or total iterations.
    """
    if not 0.0 < c < 1.0:
        raise ValueError(f"mass must be in (0, 1), got {c}")
    if blocks < 2:
        raise ValueError(f"block budget must be >= 2, got {blocks}")
    cfg = config or OptimizerConfig()
    rng = np.random.default_rng(seed)
    current = random_step_function(c, min(blocks, cfg.start_blocks), rng)
    s_cur = s_value(current)
    t_cur = t_value(current)
    trace = [TraceRow(0, "init", s_cur, t_cur, current.mass)]
    rejections = 0
    iteration = 0
    while iteration < cfg.max_iters and rejections < cfg.stall_limit:
        iteration += 1
        kind = MOVE_KINDS[int(rng.integers(len(MOVE_KINDS)))]
        widths, values = current.widths, current.values
        if kind == "four_swap":
            cand = _propose_four_swap(widths, values, rng, cfg)
        elif kind == "row_shift":
            cand = _propose_row_shift(widths, values, rng, cfg)
        elif kind == "split":
            cand = _propose_split(widths, values, rng, cfg, blocks)
        else:
            cand = _propose_boundary(widths, values, rng, cfg)
        if cand is None:
            rejections += 1
            continue
        w, v = cand
        if abs(_mass_raw(w, v) - c) > cfg.mass_tol:
            rejections += 1
            continue
        s_new = _s_raw(w, v)
        improved = s_new > s_cur + cfg.accept_tol
        # A 4-swap preserves every row sum, so it can never raise the
        # objective; it is accepted as a restructuring step when it
        # strictly lowers the total variation, which is what eventually
        # re-enables the value-moving families at tied row sums.
        restructured = False
        if not improved and kind == "four_swap" and abs(s_new - s_cur) <= cfg.accept_tol:
            bp = np.concatenate([[0.0], np.cumsum(w)])
            bp[-1] = 1.0
            cand_fn = normalize(StepFunction(bp, v))
            if t_value(cand_fn) < t_cur - 1e-15:
                current = cand_fn
                s_cur = s_value(current)
                t_cur = t_value(current)
                restructured = True
        if restructured:
            continue
        if not improved:
            rejections += 1
            continue
        bp = np.concatenate([[0.0], np.cumsum(w)])
        bp[-1] = 1.0
        current = normalize(StepFunction(bp, v))
        s_cur = s_value(current)
        t_cur = t_value(current)
        trace.append(TraceRow(iteration, kind, s_cur, t_cur, current.mass))
        rejections = 0
    return OptimizeResult(
        function=current,
        s_value=s_cur,
        trace=tuple(trace),
        iterations=iteration,
        seed=seed,
    )


def maximize_s_restarts(
    c: float,
    blocks: int,
    restarts: int,
    seed: int,
    config: OptimizerConfig | None = None,
    threads: int = 1,
) -> OptimizeResult:
    """Best of `restarts` independent runs; run i uses seed sequence (seed, i).

    The merge picks the highest objective (ties broken by restart index),
    so the result does not depend on scheduling.
    """
    if restarts < 1:
        raise ValueError(f"need at least one restart, got {restarts}")
    args = [(c, blocks, (seed, i), config) for i in range(restarts)]
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_one, args))
    else:
        results = [_run_one(a) for a in args]
    best = max(enumerate(results), key=lambda ir: (ir[1].s_value, -ir[0]))
    return best[1]


def _run_one(args) -> OptimizeResult:
    c, blocks, seed, config = args
    return maximize_s(c, blocks, seed, config)
