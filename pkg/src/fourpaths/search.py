"""Exhaustive extremal search over all labeled graphs with fixed (n, e).

Enumeration is over edge subsets (labeled graphs), which cannot miss an
isomorphism class; only witnesses are deduplicated, by canonical key.
The 2-edge-path verifier scans all 2^C(n,2) graphs in one pass using a
Gray-code walk with O(1) incremental updates, bucketing maxima by edge
count.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .construct import near_regular, quasi_clique, quasi_star
from .counting import count_kstars, count_p2, count_p4, count_walks4
from .graphs import Graph, canonical_key

SEARCH_MAX_N = 8
VERIFY_AK_MAX_N = 7
WITNESS_CAP = 16

STATISTICS = ("p2", "p4", "walks4")  # plus "kstar:K"


def _parse_statistic(statistic: str):
    if statistic in ("p2", "p4", "walks4"):
        return statistic, None
    if statistic.startswith("kstar:"):
        k = int(statistic.split(":", 1)[1])
        if k < 1:
            raise ValueError(f"star size must be >= 1, got {k}")
        return "kstar", k
    raise ValueError(f"unknown statistic {statistic!r}")


def _stat_evaluator(statistic: str, n: int):
    """Returns f(degs, adj_masks) computing the statistic on a small graph."""
    kind, k = _parse_statistic(statistic)
    comb2 = [comb(d, 2) for d in range(n)]
    if kind == "p2":
        return lambda degs, masks: sum(comb2[d] for d in degs)
    if kind == "kstar":
        combk = [comb(d, k) for d in range(n)]
        return lambda degs, masks: sum(combk[d] for d in degs)
    if kind == "walks4":

        def walks4(degs, masks):
            total = 0
            for u in range(n):
                du = degs[u]
                if not du:
                    continue
                mu = masks[u]
                total += du * sum(
                    degs[v] * (mu & masks[v]).bit_count() for v in range(n) if degs[v]
                )
            return total

        return walks4

    def p4(degs, masks):
        total = 0
        for c in range(n):
            mc = masks[c]
            if mc.bit_count() < 2:
                continue
            nbrs = [v for v in range(n) if (mc >> v) & 1]
            for i, b in enumerate(nbrs):
                mb = masks[b]
                db = degs[b]
                for d in nbrs[i + 1 :]:
                    abd = (mb >> d) & 1
                    total += (db - 1 - abd) * (degs[d] - 1 - abd) - (
                        (mb & masks[d]).bit_count() - 1
                    )
        return total

    return p4


def _stat_on_graph(statistic: str, g: Graph) -> int:
    kind, k = _parse_statistic(statistic)
    if kind == "p2":
        return count_p2(g)
    if kind == "kstar":
        return count_kstars(g, k)
    if kind == "walks4":
        return count_walks4(g)
    return count_p4(g)


@dataclass(frozen=True)
class SearchResult:
    n: int
    e: int
    statistic: str
    max_value: int
    min_value: int
    max_witnesses: tuple[bytes, ...]
    num_max_classes: int
    quasi_star_value: int
    quasi_clique_value: int
    verdict: str
    num_graphs: int


def _verdict(max_value: int, qs: int, qc: int) -> str:
    star = qs == max_value
    clique = qc == max_value
    if star and clique:
        return "both_attain"
    if star:
        return "star_attains"
    if clique:
        return "clique_attains"
    return "other_attains"


def extremal_search(n: int, e: int, statistic: str) -> SearchResult:
    """Exact max/min of a statistic over all labeled graphs with (n, e).

    Witnesses attaining the maximum are deduplicated by canonical key;
    at most WITNESS_CAP keys are stored but all classes are counted.
    """
    if n > SEARCH_MAX_N:
        raise ValueError(f"exhaustive search capped at n <= {SEARCH_MAX_N}")
    cap = n * (n - 1) // 2
    if not 0 <= e <= cap:
        raise ValueError(f"edge count {e} outside [0, {cap}] for n={n}")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    evaluate = _stat_evaluator(statistic, n)
    degs = [0] * n
    masks = [0] * n
    best = worst = None
    best_edge_sets: list[tuple[tuple[int, int], ...]] = []
    num_graphs = 0
    for subset in combinations(pairs, e):
        for u, v in subset:
            degs[u] += 1
            degs[v] += 1
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        value = evaluate(degs, masks)
        num_graphs += 1
        if best is None or value > best:
            best = value
            best_edge_sets = [subset]
        elif value == best:
            best_edge_sets.append(subset)
        if worst is None or value < worst:
            worst = value
        for u, v in subset:
            degs[u] -= 1
            degs[v] -= 1
            masks[u] = 0
            masks[v] = 0
    keys: set[bytes] = set()
    for subset in best_edge_sets:
        keys.add(canonical_key(Graph(n, subset)))
    qs = _stat_on_graph(statistic, quasi_star(n, e))
    qc = _stat_on_graph(statistic, quasi_clique(n, e))
    assert best is not None and worst is not None
    if not (best >= qs and best >= qc):
        raise AssertionError(
            f"construction beats exhaustive max for {statistic} at ({n}, {e}); "
            "counting bug"
        )
    return SearchResult(
        n=n,
        e=e,
        statistic=statistic,
        max_value=best,
        min_value=worst,
        max_witnesses=tuple(sorted(keys)[:WITNESS_CAP]),
        num_max_classes=len(keys),
        quasi_star_value=qs,
        quasi_clique_value=qc,
        verdict=_verdict(best, qs, qc),
        num_graphs=num_graphs,
    )


def _gray_scan_p2_maxima(n: int) -> list[int]:
    """Max 2-edge-path count per edge count, over all 2^C(n,2) graphs.

    Walks the binary-reflected Gray code over edge subsets; each step
    flips one edge and updates degrees, the path count, and the edge
    count in O(1).
    """
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    m = len(pairs)
    best = [-1] * (m + 1)
    deg = [0] * n
    present = [False] * m
    p2 = 0
    e = 0
    best[0] = 0
    for i in range(1, 1 << m):
        bit = (i & -i).bit_length() - 1
        u, v = pairs[bit]
        if present[bit]:
            present[bit] = False
            deg[u] -= 1
            deg[v] -= 1
            p2 -= deg[u] + deg[v]
            e -= 1
        else:
            present[bit] = True
            p2 += deg[u] + deg[v]
            deg[u] += 1
            deg[v] += 1
            e += 1
        if p2 > best[e]:
            best[e] = p2
    return best


@dataclass(frozen=True)
class AkRow:
    e: int
    brute_max: int
    quasi_star: int
    quasi_clique: int
    regime: str


@dataclass(frozen=True)
class AkReport:
    n: int
    rows: tuple[AkRow, ...]

    @property
    def num_cells(self) -> int:
        return len(self.rows)


def verify_ahlswede_katona(n: int) -> AkReport:
    """Check that the exhaustive 2-edge-path maximum equals the better of
    the quasi-star and quasi-clique at every edge count, and that the
    regime claims hold on the outer ranges. Raises on any mismatch: the
    underlying statement is exact, so a failure means a counting or
    construction bug.
    """
    if n > VERIFY_AK_MAX_N:
        raise ValueError(f"exhaustive verification capped at n <= {VERIFY_AK_MAX_N}")
    if n < 2:
        raise ValueError(f"need at least 2 vertices, got {n}")
    maxima = _gray_scan_p2_maxima(n)
    cap = n * (n - 1) // 2
    rows = []
    for e in range(cap + 1):
        qs = count_p2(quasi_star(n, e))
        qc = count_p2(quasi_clique(n, e))
        brute = maxima[e]
        if brute != max(qs, qc):
            raise AssertionError(
                f"2-edge-path maximum mismatch at (n={n}, e={e}): "
                f"brute={brute}, quasi-star={qs}, quasi-clique={qc}"
            )
        if 2 * e <= cap - n:
            regime = "star"
            if qs < qc:
                raise AssertionError(
                    f"star regime violated at (n={n}, e={e}): {qs} < {qc}"
                )
        elif 2 * e >= cap + n:
            regime = "clique"
            if qc < qs:
                raise AssertionError(
                    f"clique regime violated at (n={n}, e={e}): {qc} < {qs}"
                )
        else:
            regime = "transition"
        rows.append(AkRow(e, brute, qs, qc, regime))
    return AkReport(n=n, rows=tuple(rows))


@dataclass(frozen=True)
class P4TableRow:
    n: int
    e: int
    max_value: int
    min_value: int
    quasi_star: int
    quasi_clique: int
    near_regular: int
    verdict: str
    num_max_classes: int


def p4_extremal_table(n_max: int) -> list[P4TableRow]:
    """Exhaustive 4-edge-path extrema for every (n <= n_max, e) cell.

    Purely exploratory: the verdict column reports whether the quasi-star
    or quasi-clique attains the exact maximum, without asserting either.
    """
    if n_max > SEARCH_MAX_N:
        raise ValueError(f"table capped at n_max <= {SEARCH_MAX_N}")
    rows = []
    for n in range(2, n_max + 1):
        for e in range(n * (n - 1) // 2 + 1):
            res = extremal_search(n, e, "p4")
            rows.append(
                P4TableRow(
                    n=n,
                    e=e,
                    max_value=res.max_value,
                    min_value=res.min_value,
                    quasi_star=res.quasi_star_value,
                    quasi_clique=res.quasi_clique_value,
                    near_regular=count_p4(near_regular(n, e)),
                    verdict=res.verdict,
                    num_max_classes=res.num_max_classes,
                )
            )
    return rows
