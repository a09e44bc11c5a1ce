"""Simple undirected graphs with fast degree and codegree queries.

Vertices are the integers 0..n-1. Edges are unordered pairs with no loops
and no multiplicity. Adjacency is stored both as neighbor sets and as
per-vertex bitmasks, so a codegree query is one AND plus a popcount.
Graphs are immutable after construction; every query is pure.
"""
from __future__ import annotations

import random
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

# Exhaustive canonicalization is capped here; the search module never needs
# more than n = 8.
CANONICAL_MAX_VERTICES = 10


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        bits = [0] * n
        edge_set: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"endpoint out of range for n={n}: ({u}, {v})")
            if u > v:
                u, v = v, u
            if (u, v) in edge_set:
                raise ValueError(f"duplicate edge ({u}, {v})")
            edge_set.add((u, v))
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(edge_set))
        self.edge_set = frozenset(edge_set)
        self._bits = bits

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def density(self) -> float:
        """Edge density 2e/n^2, always in [0, 1)."""
        return 2 * self.num_edges / self.n**2

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self._bits[v].bit_count()

    def degrees(self) -> list[int]:
        return [b.bit_count() for b in self._bits]

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        b = self._bits[v]
        return [u for u in range(self.n) if (b >> u) & 1]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((self._bits[u] >> v) & 1)

    def codegree(self, u: int, v: int) -> int:
        """Number of common neighbors of u and v; codegree(v, v) = degree(v)."""
        self._check_vertex(u)
        self._check_vertex(v)
        return (self._bits[u] & self._bits[v]).bit_count()

    def complement(self) -> "Graph":
        n = self.n
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if (u, v) not in self.edge_set
        ]
        return Graph(n, edges)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed perm[v]; perm must be a permutation."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the vertex set")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    @cached_property
    def _adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        a.flags.writeable = False
        return a

    def adjacency_matrix(self) -> np.ndarray:
        """0/1 adjacency matrix (read-only int64 array)."""
        return self._adjacency_matrix

    def canonical_key(self) -> bytes:
        return canonical_key(self)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edge_set == other.edge_set
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edge_set))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.num_edges})"


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Validating constructor; rejects loops, duplicates, bad endpoints."""
    return Graph(n, edge_list)


def codegree(g: Graph, u: int, v: int) -> int:
    return g.codegree(u, v)


def complement(g: Graph) -> Graph:
    return g.complement()


def canonical_key(g: Graph) -> bytes:
    """Isomorphism-invariant key: the minimum, over all vertex relabelings,
    of the upper-triangular adjacency bit string.

    The minimization places vertices one position at a time and prunes any
    branch whose partial bit string already exceeds the best known key, so
    exact equality holds: two graphs get the same key iff they are
    isomorphic. Capped at n <= 10 vertices.
    """
    n = g.n
    if n > CANONICAL_MAX_VERTICES:
        raise ValueError(
            f"canonical_key supports n <= {CANONICAL_MAX_VERTICES}, got {n}"
        )
    if n == 1:
        return bytes([1])
    bits = g._bits
    # best[d-1] is the d-bit row code for position d: bits (0,d), (1,d), ...
    # Sentinel 2^d exceeds every real code, so the first full descent always
    # writes through.
    best = [1 << d for d in range(1, n)]
    placed = [0] * n
    used = [False] * n

    def descend(depth: int) -> None:
        if depth == n:
            return
        for v in range(n):
            if used[v]:
                continue
            av = bits[v]
            code = 0
            for j in range(depth):
                code = (code << 1) | ((av >> placed[j]) & 1)
            if depth >= 1:
                b = best[depth - 1]
                if code > b:
                    continue
                if code < b:
                    # This branch is strictly better than everything seen;
                    # invalidate the stale tail of the incumbent.
                    best[depth - 1] = code
                    for i in range(depth, n - 1):
                        best[i] = 1 << (i + 1)
            used[v] = True
            placed[depth] = v
            descend(depth + 1)
            used[v] = False
        return

    descend(0)
    acc = 0
    total_bits = 0
    for d in range(1, n):
        acc = (acc << d) | best[d - 1]
        total_bits += d
    return bytes([n]) + acc.to_bytes((total_bits + 7) // 8, "big")


def graph_from_canonical_key(key: bytes) -> Graph:
    """Reconstruct the canonical representative encoded by a key."""
    if not key:
        raise ValueError("empty canonical key")
    n = key[0]
    if n < 1 or n > CANONICAL_MAX_VERTICES:
        raise ValueError(f"bad vertex count {n} in canonical key")
    total_bits = n * (n - 1) // 2
    if len(key) != 1 + (total_bits + 7) // 8:
        raise ValueError("canonical key has the wrong length")
    acc = int.from_bytes(key[1:], "big")
    edges = []
    pos = total_bits
    for m in range(1, n):
        for j in range(m):
            pos -= 1
            if (acc >> pos) & 1:
                edges.append((j, m))
    return Graph(n, edges)


def random_graph(n: int, e: int, rng: random.Random) -> Graph:
    """Uniformly random labeled graph with exactly e edges."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if e > len(pairs):
        raise ValueError(f"e={e} exceeds capacity of n={n} vertices")
    return Graph(n, rng.sample(pairs, e))


# ---------------------------------------------------------------------------
# Edge-list text format: first line "n e", then e lines "u v" with u < v.
# ---------------------------------------------------------------------------

def to_edge_list_text(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list_text(text: str) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty edge-list input")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"expected header 'n e', got {lines[0]!r}")
    n, e = int(header[0]), int(header[1])
    if len(lines) - 1 != e:
        raise ValueError(f"header promises {e} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if u >= v:
            raise ValueError(f"edge line must satisfy u < v, got {ln!r}")
        edges.append((u, v))
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# graph6 read support (read-only; the compact format used by nauty/geng).
# ---------------------------------------------------------------------------

def parse_graph6(line: str) -> Graph:
    """Decode one graph from graph6 text (optionally '>>graph6<<'-prefixed)."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ValueError("empty graph6 input")
    if s[0] in ":;&":
        raise ValueError("sparse6/digraph6 input is not supported")
    data = [ord(ch) - 63 for ch in s]
    if any(b < 0 or b > 63 for b in data):
        raise ValueError("invalid graph6 character")
    if data[0] < 63:
        n, body = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        raise ValueError("graph6 sizes beyond 2^18 vertices are not supported")
    if n < 1:
        raise ValueError("graph6 with no vertices")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body length {len(body)}, expected {need}")
    bitstream = 0
    for b in body:
        bitstream = (bitstream << 6) | b
    total = 6 * len(body)
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if (bitstream >> (total - 1 - idx)) & 1:
                edges.append((u, v))
            idx += 1
    return Graph(n, edges)


def load_graph_text(text: str) -> Graph:
    """Parse either edge-list text or graph6, sniffing by the first line."""
    first = text.strip().splitlines()[0].strip() if text.strip() else ""
    parts = first.split()
    if len(parts) == 2 and all(p.lstrip("-").isdigit() for p in parts):
        return parse_edge_list_text(text)
    return parse_graph6(first)
