"""Closed-form density bounds for the 4-edge-path count and their crossing.

All densities live on [0, 1]. The lower bound is c^4 in walk
normalization; the upper bound is the larger of two branches, a
star-shaped one and a clique-shaped one, which cross exactly once at
c0 ~ 0.0865. Counting-scale reports multiply by n^5 / 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

TIE_TOL = 1e-12

_BRACKET = (0.01, 0.5)
_BISECT_TOL = 1e-12


def _check_density(c: float) -> None:
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {c}")


def lower_bound_density(c: float) -> float:
    """Walk-density lower bound c^4."""
    _check_density(c)
    return c**4


def upper_star_density(c: float) -> float:
    """Star-branch upper bound (1-sqrt(1-c))^2 ((c+1) sqrt(1-c) + c)."""
    _check_density(c)
    u = math.sqrt(1.0 - c)
    return (1.0 - u) ** 2 * ((c + 1.0) * u + c)


def upper_clique_density(c: float) -> float:
    """Clique-branch upper bound c^(5/2)."""
    _check_density(c)
    return c * c * math.sqrt(c)


def _dominant(star: float, clique: float) -> str:
    if abs(star - clique) <= TIE_TOL:
        return "tie"
    return "star" if star > clique else "clique"


@dataclass(frozen=True)
class BoundReport:
    """Counting-scale bounds for one (n, e) cell."""

    n: int
    e: int
    c: float
    lower: float
    upper_star: float
    upper_clique: float
    upper: float
    dominant: str


def bound_report(n: int, e: int) -> BoundReport:
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    cap = n * (n - 1) // 2
    if not 0 <= e <= cap:
        raise ValueError(f"edge count {e} outside [0, {cap}] for n={n}")
    c = min(1.0, max(0.0, 2 * e / n**2))
    star = upper_star_density(c)
    clique = upper_clique_density(c)
    half_n5 = 0.5 * n**5
    return BoundReport(
        n=n,
        e=e,
        c=c,
        lower=lower_bound_density(c) * half_n5,
        upper_star=star * half_n5,
        upper_clique=clique * half_n5,
        upper=max(star, clique) * half_n5,
        dominant=_dominant(star, clique),
    )


def crossing_point() -> float:
    """The unique root of upper_star_density - upper_clique_density in (0, 1).

    Bisection on [0.01, 0.5] to absolute tolerance 1e-12; the bracket signs
    are checked on every call, so a formula regression fails loudly.
    """
    lo, hi = _BRACKET

    def diff(c: float) -> float:
        return upper_star_density(c) - upper_clique_density(c)

    flo, fhi = diff(lo), diff(hi)
    if not (flo > 0.0 > fhi):
        raise RuntimeError(
            f"bracket failure: diff({lo})={flo}, diff({hi})={fhi}; "
            "bound formulas are inconsistent"
        )
    while hi - lo > _BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if diff(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def ak_regime(n: int, e: int) -> str:
    """Which side of the exact 2-edge-path thresholds (n, e) falls on.

    Returns 'star' for e <= C(n,2)/2 - n/2, 'clique' for
    e >= C(n,2)/2 + n/2, 'transition' in between. Integer arithmetic.
    """
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    cap = n * (n - 1) // 2
    if not 0 <= e <= cap:
        raise ValueError(f"edge count {e} outside [0, {cap}] for n={n}")
    if 2 * e <= cap - n:
        return "star"
    if 2 * e >= cap + n:
        return "clique"
    return "transition"


@dataclass(frozen=True)
class SweepRow:
    c: float
    lower: float
    upper_star: float
    upper_clique: float
    dominant: str


def sweep(c_grid: list[float]) -> list[SweepRow]:
    """Evaluate all density-scale curves on a grid of densities."""
    rows = []
    for c in c_grid:
        _check_density(c)
        star = upper_star_density(c)
        clique = upper_clique_density(c)
        rows.append(
            SweepRow(
                c=c,
                lower=lower_bound_density(c),
                upper_star=star,
                upper_clique=clique,
                dominant=_dominant(star, clique),
            )
        )
    return rows
