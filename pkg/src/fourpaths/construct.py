"""Reference graph constructions: quasi-clique, quasi-star, near-regular.

The quasi-clique on (n, e) packs the edges as tightly as possible: a full
clique on the first a vertices plus one partially attached vertex, where
e = a(a-1)/2 + b with 0 <= b < a. The quasi-star is defined as the
complement of the quasi-clique on the complementary edge count, which
makes it a set of dominating vertices plus one partial dominator.
"""
from __future__ import annotations

from math import isqrt

from .graphs import Graph, build_graph


def _capacity(n: int) -> int:
    return n * (n - 1) // 2


def _check_n_e(n: int, e: int) -> None:
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    if e < 0:
        raise ValueError(f"edge count must be nonnegative, got {e}")
    if e > _capacity(n):
        raise ValueError(f"e={e} exceeds capacity {_capacity(n)} of n={n} vertices")


def clique_decomposition(e: int) -> tuple[int, int]:
    """Unique (a, b) with e = a(a-1)/2 + b and 0 <= b < a; (1, 0) for e = 0."""
    if e < 0:
        raise ValueError(f"edge count must be nonnegative, got {e}")
    if e == 0:
        return (1, 0)
    a = (1 + isqrt(1 + 8 * e)) // 2
    while a * (a - 1) // 2 > e:
        a -= 1
    while (a + 1) * a // 2 <= e:
        a += 1
    return a, e - a * (a - 1) // 2


def quasi_clique(n: int, e: int) -> Graph:
    """Clique on vertices 0..a-1 plus vertex a adjacent to 0..b-1."""
    _check_n_e(n, e)
    a, b = clique_decomposition(e)
    edges = [(u, v) for u in range(a) for v in range(u + 1, a)]
    edges.extend((i, a) for i in range(b))
    return build_graph(n, edges)


def quasi_star(n: int, e: int) -> Graph:
    """Complement of the quasi-clique with the complementary edge count."""
    _check_n_e(n, e)
    return quasi_clique(n, _capacity(n) - e).complement()


def near_regular(n: int, e: int) -> Graph:
    """Graph with e edges whose degrees differ by at most 1.

    Realizes the target degree sequence (2e mod n vertices of degree
    floor(2e/n)+1, the rest one lower) greedily: repeatedly satisfy the
    vertex with the largest residual demand by connecting it to the next
    largest ones. Each vertex is finished in one round, so no duplicate
    edges arise, and the sequence is always graphical by construction.
    """
    _check_n_e(n, e)
    d, r = divmod(2 * e, n)
    residual = [(d + 1 if v < r else d, v) for v in range(n)]
    edges: list[tuple[int, int]] = []
    while True:
        residual.sort(key=lambda tv: (-tv[0], tv[1]))
        need, v = residual[0]
        if need == 0:
            break
        if need > len(residual) - 1:
            raise AssertionError("degree sequence not graphical; construction bug")
        residual[0] = (0, v)
        for i in range(1, need + 1):
            t, u = residual[i]
            if t == 0:
                raise AssertionError("ran out of demand; construction bug")
            residual[i] = (t - 1, u)
            edges.append((min(u, v), max(u, v)))
    return build_graph(n, edges)
