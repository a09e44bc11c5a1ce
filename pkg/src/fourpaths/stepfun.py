"""Symmetric step functions on the unit square and their functionals.

A step function is a symmetric, [0,1]-valued function that is constant on
the cells of a grid 0 = q_0 < q_1 < ... < q_K = 1. It carries block
widths t_i, row sums l_i = sum_j t_j A_ij, and mass sum_ij t_i t_j A_ij.
The functional s_value upper-bounds the normalized 4-walk count of any
graph whose pixel picture has the same row sums; t_value is the total
pairwise value variation used as a tie-breaker among maximizers.
"""
from __future__ import annotations

import math

import numpy as np

from .graphs import Graph

_SYMMETRY_TOL = 1e-9
_VALUE_TOL = 1e-12
_WIDTH_TOL = 1e-14


class StepFunction:
    """Immutable symmetric piecewise-constant function on [0,1)^2."""

    def __init__(self, breakpoints, values):
        bp = np.array(breakpoints, dtype=float)
        vals = np.array(values, dtype=float)
        if bp.ndim != 1 or bp.size < 2:
            raise ValueError("need at least two breakpoints")
        if abs(bp[0]) > _VALUE_TOL or abs(bp[-1] - 1.0) > _VALUE_TOL:
            raise ValueError("breakpoints must start at 0 and end at 1")
        bp[0], bp[-1] = 0.0, 1.0
        if np.any(np.diff(bp) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        k = bp.size - 1
        if vals.shape != (k, k):
            raise ValueError(f"values must be {k}x{k}, got {vals.shape}")
        if vals.min() < -_VALUE_TOL or vals.max() > 1.0 + _VALUE_TOL:
            raise ValueError("values must lie in [0, 1]")
        if np.abs(vals - vals.T).max() > _SYMMETRY_TOL:
            raise ValueError("values must be symmetric")
        vals = np.clip((vals + vals.T) / 2.0, 0.0, 1.0)
        bp.flags.writeable = False
        vals.flags.writeable = False
        self.breakpoints = bp
        self.values = vals
        self.k = k
        self.widths = np.diff(bp)
        self.widths.flags.writeable = False
        self.row_sums = self.values @ self.widths
        self.row_sums.flags.writeable = False
        self.mass = float(self.widths @ self.values @ self.widths)

    def __repr__(self) -> str:
        return f"StepFunction(k={self.k}, mass={self.mass:.6g})"


def from_graph(g: Graph) -> StepFunction:
    """Pixel picture of a graph: K = n uniform blocks, 1 on edges."""
    n = g.n
    bp = np.arange(n + 1, dtype=float) / n
    return StepFunction(bp, g.adjacency_matrix().astype(float))


def s_value(a: StepFunction) -> float:
    """Sum over block pairs of t_i t_j l_i l_j min(l_i, l_j)."""
    tl = a.widths * a.row_sums
    return float(tl @ np.minimum.outer(a.row_sums, a.row_sums) @ tl)


def t_value(a: StepFunction) -> float:
    """Total pairwise value variation, weighted by cell areas.

    Equal to the quadruple sum of t_a t_b t_c t_d |A_ab - A_cd|; computed
    by sorting the flattened cells and prefix-summing, which is O(K^2 log K)
    instead of O(K^4).
    """
    w = np.outer(a.widths, a.widths).ravel()
    v = a.values.ravel()
    order = np.argsort(v, kind="stable")
    v = v[order]
    w = w[order]
    wcum = np.cumsum(w)
    wvcum = np.cumsum(w * v)
    total = 0.0
    for j in range(1, v.size):
        total += w[j] * (v[j] * wcum[j - 1] - wvcum[j - 1])
    return 2.0 * total


def a1(c: float) -> StepFunction:
    """Corner-complement extremal function: 1 unless both coords exceed
    1 - sqrt(1-c); mass exactly c."""
    _check_density(c)
    b = 1.0 - math.sqrt(1.0 - c)
    if b <= _WIDTH_TOL:
        return StepFunction([0.0, 1.0], [[0.0]])
    if b >= 1.0 - _WIDTH_TOL:
        return StepFunction([0.0, 1.0], [[1.0]])
    return StepFunction([0.0, b, 1.0], [[1.0, 1.0], [1.0, 0.0]])


def a2(c: float) -> StepFunction:
    """Corner-square extremal function: 1 on [0, sqrt(c))^2; mass exactly c."""
    _check_density(c)
    r = math.sqrt(c)
    if r <= _WIDTH_TOL:
        return StepFunction([0.0, 1.0], [[0.0]])
    if r >= 1.0 - _WIDTH_TOL:
        return StepFunction([0.0, 1.0], [[1.0]])
    return StepFunction([0.0, r, 1.0], [[1.0, 0.0], [0.0, 0.0]])


def two_step(c: float, x: float) -> StepFunction:
    """The 0-1 family with two positive row sums: first block width x,
    second width (c - x^2)/(2x), staircase values; mass c.

    Admissible x runs from 1 - sqrt(1-c) (the corner-complement shape) to
    sqrt(c) (the corner square).
    """
    _check_density(c)
    if c <= 0.0:
        return StepFunction([0.0, 1.0], [[0.0]])
    if c >= 1.0:
        return StepFunction([0.0, 1.0], [[1.0]])
    lo = 1.0 - math.sqrt(1.0 - c)
    hi = math.sqrt(c)
    if x < lo - _VALUE_TOL or x > hi + _VALUE_TOL:
        raise ValueError(f"x={x} outside admissible [{lo}, {hi}] for c={c}")
    x = min(max(x, lo), hi)
    t2 = max((c - x * x) / (2.0 * x), 0.0)
    t3 = max(1.0 - x - t2, 0.0)
    widths = [x, t2, t3]
    vals = [[1.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
    keep = [i for i, w in enumerate(widths) if w > _WIDTH_TOL]
    bp = np.concatenate([[0.0], np.cumsum([widths[i] for i in keep])])
    bp[-1] = 1.0
    sub = np.array(vals)[np.ix_(keep, keep)]
    return StepFunction(bp, sub)


def s_two_step_closed(c: float, x: float) -> float:
    """Closed form for s_value(two_step(c, x)): (c^3/x + 9c^2 x - c x^3 - x^5)/8."""
    if x <= 0.0:
        raise ValueError(f"width must be positive, got {x}")
    _check_density(c)
    return (c**3 / x + 9.0 * c * c * x - c * x**3 - x**5) / 8.0


def s_two_step_scaled(y: float) -> float:
    """Unit-mass form of the two-block closed form: (1/y + 9y - y^3 - y^5)/8.

    s_two_step_closed(c, x) = c^(5/2) * s_two_step_scaled(x / sqrt(c)).
    """
    if y <= 0.0:
        raise ValueError(f"scaled width must be positive, got {y}")
    return (1.0 / y + 9.0 * y - y**3 - y**5) / 8.0


def three_step(s: float, x: float) -> StepFunction:
    """The 0-1 staircase with three positive row sums, normalized so the
    first row sum is 1; s is the complement mass (the function has mass
    1 - s) and x is the width of the last block.

    Block widths are t1 = 1 - (s + x^2)/(2x), t2 = (s - x^2)/(2x),
    t3 = x; admissible x runs from 1 - sqrt(1-s) (t1 degenerates) to
    sqrt(s) (t2 degenerates), and each endpoint leaves at most two blocks.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"complement mass must be in [0, 1], got {s}")
    if s <= 0.0:
        return StepFunction([0.0, 1.0], [[1.0]])
    if s >= 1.0:
        return StepFunction([0.0, 1.0], [[0.0]])
    lo = 1.0 - math.sqrt(1.0 - s)
    hi = math.sqrt(s)
    if x < lo - _VALUE_TOL or x > hi + _VALUE_TOL:
        raise ValueError(f"x={x} outside admissible [{lo}, {hi}] for s={s}")
    x = min(max(x, lo), hi)
    t2 = max((s - x * x) / (2.0 * x), 0.0)
    t1 = max(1.0 - (s + x * x) / (2.0 * x), 0.0)
    widths = [t1, t2, x]
    vals = [[1.0, 1.0, 1.0], [1.0, 1.0, 0.0], [1.0, 0.0, 0.0]]
    keep = [i for i, w in enumerate(widths) if w > _WIDTH_TOL]
    bp = np.concatenate([[0.0], np.cumsum([widths[i] for i in keep])])
    bp[-1] = 1.0
    sub = np.array(vals)[np.ix_(keep, keep)]
    return StepFunction(bp, sub)


def s_three_step_closed(s: float, x: float) -> float:
    """Expanded six-term value of the three-block staircase family."""
    t1 = 1.0 - (s + x * x) / (2.0 * x)
    t2 = (s - x * x) / (2.0 * x)
    return (
        t1 * t1
        + t2 * t2 * (1.0 - x) ** 3
        + x * x * t1**3
        + 2.0 * t1 * t2 * (1.0 - x) ** 2
        + 2.0 * t1 * x * t1 * t1
        + 2.0 * t2 * x * (1.0 - x) * t1 * t1
    )


def normalize(a: StepFunction) -> StepFunction:
    """Sort blocks by row sum descending and merge identical adjacent rows.

    Leaves s_value and mass unchanged (the functionals are symmetric in
    the block order).
    """
    order = np.argsort(-a.row_sums, kind="stable")
    vals = a.values[np.ix_(order, order)]
    widths = a.widths[order]
    merged_w: list[float] = []
    merged_rows: list[np.ndarray] = []
    groups: list[int] = []
    for i in range(len(widths)):
        if merged_rows and np.array_equal(vals[i], merged_rows[-1]):
            merged_w[-1] += widths[i]
        else:
            merged_rows.append(vals[i])
            merged_w.append(float(widths[i]))
            groups.append(i)
    idx = np.array(groups)
    out_vals = vals[np.ix_(idx, idx)]
    bp = np.concatenate([[0.0], np.cumsum(merged_w)])
    bp[-1] = 1.0
    return StepFunction(bp, out_vals)


def random_step_function(c: float, k: int, rng: np.random.Generator) -> StepFunction:
    """Random symmetric step function with K = k blocks and mass exactly c.

    Values are drawn uniformly, then rescaled multiplicatively with
    clamping at 1 until the mass matches c to within float-sum accuracy;
    a final single-cell nudge removes the residual.
    """
    _check_density(c)
    if k < 1:
        raise ValueError(f"block count must be positive, got {k}")
    widths = rng.random(k) + 0.1
    widths /= widths.sum()
    bp = np.concatenate([[0.0], np.cumsum(widths)])
    bp[-1] = 1.0
    raw = rng.random((k, k))
    vals = (raw + raw.T) / 2.0
    vals = np.minimum(vals + 1e-3, 1.0)  # keep the support full so mass c is reachable
    return StepFunction(bp, _rescale_to_mass(vals, np.diff(bp), c))


def _rescale_to_mass(vals: np.ndarray, widths: np.ndarray, c: float) -> np.ndarray:
    w2 = np.outer(widths, widths)
    vals = vals.copy()
    for _ in range(vals.size + 1):
        mass = float((w2 * vals).sum())
        if abs(mass - c) <= 1e-13:
            break
        free = vals < 1.0
        free_mass = float((w2 * vals)[free].sum())
        locked_mass = mass - free_mass
        if free_mass <= 0.0:
            break
        f = (c - locked_mass) / free_mass
        if f < 0.0:
            f = 0.0
        vals[free] = np.minimum(vals[free] * f, 1.0)
    # exact residual nudge through the largest adjustable diagonal-symmetric pair
    mass = float((w2 * vals).sum())
    resid = c - mass
    if resid != 0.0:
        flat = np.argsort(-w2, axis=None)
        for pos in flat:
            i, j = divmod(int(pos), vals.shape[0])
            weight = w2[i, j] if i == j else 2.0 * w2[i, j]
            delta = resid / weight
            nv = vals[i, j] + delta
            if 0.0 <= nv <= 1.0:
                vals[i, j] = nv
                if i != j:
                    vals[j, i] = nv
                break
    return vals


def format_step_function(a: StepFunction) -> str:
    """Serialize: line 1 K, line 2 the K+1 breakpoints, then K value rows."""
    lines = [str(a.k), " ".join(repr(float(q)) for q in a.breakpoints)]
    for row in a.values:
        lines.append(" ".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_step_function(text: str) -> StepFunction:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty step-function input")
    k = int(lines[0])
    if len(lines) != k + 2:
        raise ValueError(f"expected {k + 2} lines, got {len(lines)}")
    bp = [float(tok) for tok in lines[1].split()]
    if len(bp) != k + 1:
        raise ValueError(f"expected {k + 1} breakpoints, got {len(bp)}")
    vals = [[float(tok) for tok in ln.split()] for ln in lines[2:]]
    if any(len(row) != k for row in vals):
        raise ValueError("value rows must each have K entries")
    return StepFunction(bp, vals)


def _check_density(c: float) -> None:
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"mass must be in [0, 1], got {c}")
