"""Exact counters for 2-edge paths, k-edge stars, 4-edge walks and paths.

All results are exact integers. The 4-walk counter evaluates two
independent formulas on every call and refuses to return if they
disagree; the 4-path counter aggregates over the middle vertex and is
anchored to a brute-force oracle in the test suite rather than to any
closed algebraic formula.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .graphs import Graph

# Largest n for which every intermediate of a float64 matrix power of a 0/1
# adjacency matrix stays below 2^53 (n^5 < 2^53), keeping BLAS exact.
_FLOAT_MATMUL_MAX_N = 1400

BRUTE_WALKS_MAX_N = 25
BRUTE_P4_MAX_N = 12


def count_p2(g: Graph) -> int:
    """Number of unordered 2-edge paths: sum of C(deg, 2) over centers."""
    return sum(comb(d, 2) for d in g.degrees())


def count_kstars(g: Graph, k: int) -> int:
    """Number of k-edge stars: sum of C(deg, k) over centers."""
    if k < 1:
        raise ValueError(f"star size must be >= 1, got {k}")
    return sum(comb(d, k) for d in g.degrees())


def _walks4_matrix(g: Graph) -> int:
    """Grand sum of the 4th power of the adjacency matrix."""
    n = g.n
    a = g.adjacency_matrix().astype(np.float64)
    if n <= _FLOAT_MATMUL_MAX_N:
        a2 = a @ a
        a4 = a2 @ a2
        return int(round(float(a4.sum())))
    # Beyond the exact-float range, fall back to big integers via the
    # identity grand_sum(A^4) = ||A^2 1||^2 for symmetric A.
    a2 = np.rint(a @ a).astype(np.int64)
    row = a2.sum(axis=1)
    return sum(int(x) * int(x) for x in row)


def _walks4_codegree(g: Graph) -> int:
    """Sum over ordered vertex pairs of deg(u) deg(v) codeg(u, v).

    The diagonal is included with codeg(v, v) = deg(v); this matches the
    walk count exactly.
    """
    bits = g._bits
    degs = [b.bit_count() for b in bits]
    active = [v for v in range(g.n) if degs[v]]
    total = 0
    for u in active:
        bu = bits[u]
        du = degs[u]
        total += du * sum(degs[v] * (bu & bits[v]).bit_count() for v in active)
    return total


def count_walks4(g: Graph) -> int:
    """Number of vertex sequences (v0..v4) with consecutive pairs adjacent.

    Computed two independent ways that must agree: the grand sum of the
    4th adjacency-matrix power, and the degree/codegree double sum.
    """
    via_matrix = _walks4_matrix(g)
    via_codegree = _walks4_codegree(g)
    if via_matrix != via_codegree:
        raise AssertionError(
            f"walk-count methods disagree: matrix={via_matrix} "
            f"codegree={via_codegree} on {g!r}"
        )
    return via_matrix


def count_walks4_brute(g: Graph) -> int:
    """Direct enumeration of all 4-edge walks; capped at n <= 25."""
    if g.n > BRUTE_WALKS_MAX_N:
        raise ValueError(f"brute walk count capped at n <= {BRUTE_WALKS_MAX_N}")
    adj = [g.neighbors(v) for v in range(g.n)]
    degs = g.degrees()
    total = 0
    for v1 in range(g.n):
        for v2 in adj[v1]:
            for v3 in adj[v2]:
                # v0 free over N(v1), v4 free over N(v3)
                total += degs[v1] * degs[v3]
    return total


def count_p4(g: Graph) -> int:
    """Number of 4-edge path subgraphs (5 distinct vertices), each once.

    Aggregates over the middle vertex: for center c and an ordered
    neighbor pair (b, d), the endpoint extensions are counted with the
    adjacency and shared-neighbor collisions subtracted. Each path is
    seen twice (once per orientation of the pair).
    """
    n = g.n
    a = g.adjacency_matrix()
    deg = a.sum(axis=1)
    codeg = a @ a
    total = 0
    for c in range(n):
        nb = np.flatnonzero(a[c])
        if nb.size < 2:
            continue
        dsub = deg[nb]
        asub = a[np.ix_(nb, nb)]
        csub = codeg[np.ix_(nb, nb)]
        terms = (dsub[:, None] - 1 - asub) * (dsub[None, :] - 1 - asub) - (csub - 1)
        np.fill_diagonal(terms, 0)
        total += int(terms.sum())
    return total // 2


def count_p4_brute(g: Graph) -> int:
    """Enumerate injective 5-vertex sequences along edges, up to reversal."""
    if g.n > BRUTE_P4_MAX_N:
        raise ValueError(f"brute path count capped at n <= {BRUTE_P4_MAX_N}")
    adj = [g.neighbors(v) for v in range(g.n)]
    total = 0
    for a in range(g.n):
        for b in adj[a]:
            for c in adj[b]:
                if c == a:
                    continue
                for d in adj[c]:
                    if d == a or d == b:
                        continue
                    for e in adj[d]:
                        # count each path once via a < e
                        if e > a and e != b and e != c:
                            total += 1
    return total


def degenerate_walks4(g: Graph) -> int:
    """4-edge walks that repeat at least one vertex."""
    return count_walks4(g) - 2 * count_p4(g)


def hom_density_p4(g: Graph) -> float:
    """Normalized 4-walk count: count_walks4 / n^5."""
    return count_walks4(g) / g.n**5


@dataclass(frozen=True)
class CountReport:
    """Exact counts for one graph, plus the normalized walk density."""

    n: int
    e: int
    density: float
    p2: int
    p4: int
    walks4: int
    hom_density_p4: float
    kstars: dict[int, int] = field(default_factory=dict)


def count_report(g: Graph, ks: tuple[int, ...] = ()) -> CountReport:
    walks = count_walks4(g)
    return CountReport(
        n=g.n,
        e=g.num_edges,
        density=g.density,
        p2=count_p2(g),
        p4=count_p4(g),
        walks4=walks,
        hom_density_p4=walks / g.n**5,
        kstars={k: count_kstars(g, k) for k in ks},
    )
