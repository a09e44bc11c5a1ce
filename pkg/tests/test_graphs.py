import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fourpaths.graphs import (
    Graph,
    build_graph,
    canonical_key,
    complement,
    codegree,
    graph_from_canonical_key,
    load_graph_text,
    parse_edge_list_text,
    parse_graph6,
    random_graph,
    to_edge_list_text,
)

K3 = build_graph(3, [(0, 1), (1, 2), (0, 2)])
P3 = build_graph(3, [(0, 1), (1, 2)])
C4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


class TestBuildGraph:
    def test_triangle(self):
        assert K3.degrees() == [2, 2, 2]
        assert K3.num_edges == 3

    def test_empty(self):
        g = build_graph(5, [])
        assert g.degrees() == [0] * 5

    def test_duplicate_edge_rejected(self):
        with pytest.raises(ValueError, match="duplicate edge"):
            build_graph(2, [(0, 1), (0, 1)])
        with pytest.raises(ValueError, match="duplicate edge"):
            build_graph(3, [(0, 1), (1, 0)])

    def test_loop_rejected(self):
        with pytest.raises(ValueError, match="self-loop"):
            build_graph(3, [(1, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="out of range"):
            build_graph(3, [(0, 3)])

    def test_degree_sum(self):
        rng = random.Random(1)
        for _ in range(50):
            n = rng.randint(1, 12)
            g = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng)
            assert sum(g.degrees()) == 2 * g.num_edges


class TestCodegree:
    def test_examples(self):
        assert codegree(K3, 0, 1) == 1
        assert codegree(C4, 0, 2) == 2
        assert codegree(P3, 0, 2) == 1

    def test_diagonal_is_degree(self):
        assert codegree(K3, 1, 1) == K3.degree(1)

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            codegree(K3, 0, 5)

    @given(graphs())
    @settings(max_examples=60, deadline=None)
    def test_bounded_by_min_degree(self, g):
        for u in range(g.n):
            for v in range(g.n):
                assert g.codegree(u, v) <= min(g.degree(u), g.degree(v))


class TestComplement:
    def test_k3(self):
        assert complement(K3).num_edges == 0

    def test_empty_to_complete(self):
        assert complement(build_graph(4, [])).num_edges == 6

    @given(graphs())
    @settings(max_examples=60, deadline=None)
    def test_involution_and_degrees(self, g):
        h = complement(g)
        assert complement(h) == g
        for v in range(g.n):
            assert h.degree(v) == g.n - 1 - g.degree(v)


class TestCanonicalKey:
    def test_relabeled_paths_equal(self):
        other = build_graph(3, [(2, 0), (0, 1)])  # path 2-0-1
        assert canonical_key(P3) == canonical_key(other)

    def test_triangle_vs_path(self):
        assert canonical_key(K3) != canonical_key(P3)

    def test_star_vs_path(self):
        star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
        path = build_graph(4, [(0, 1), (1, 2), (2, 3)])
        assert canonical_key(star) != canonical_key(path)

    def test_too_large(self):
        with pytest.raises(ValueError, match="n <= 10"):
            canonical_key(build_graph(11, []))

    def test_invariant_under_random_permutations(self, rng):
        for _ in range(10):
            n = rng.randint(2, 7)
            g = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng)
            key = canonical_key(g)
            for _ in range(20):
                perm = list(range(n))
                rng.shuffle(perm)
                assert canonical_key(g.relabel(perm)) == key

    def test_matches_naive_minimum(self, rng):
        def naive(g):
            best = None
            n = g.n
            for perm in itertools.permutations(range(n)):
                acc = 0
                for d in range(1, n):
                    for j in range(d):
                        acc = (acc << 1) | (1 if g.has_edge(perm[j], perm[d]) else 0)
                best = acc if best is None else min(best, acc)
            tb = n * (n - 1) // 2
            return bytes([n]) + best.to_bytes((tb + 7) // 8, "big")

        for _ in range(60):
            n = rng.randint(2, 5)
            g = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng)
            assert canonical_key(g) == naive(g)

    def test_distinguishes_isomorphism_classes(self, rng):
        networkx = pytest.importorskip("networkx")

        def to_nx(g):
            gn = networkx.Graph()
            gn.add_nodes_from(range(g.n))
            gn.add_edges_from(g.edges)
            return gn

        for _ in range(40):
            n = rng.randint(2, 6)
            g = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng)
            h = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng)
            same_key = canonical_key(g) == canonical_key(h)
            assert same_key == networkx.is_isomorphic(to_nx(g), to_nx(h))

    def test_decode_round_trip(self, rng):
        for _ in range(30):
            n = rng.randint(1, 7)
            g = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng)
            key = canonical_key(g)
            assert canonical_key(graph_from_canonical_key(key)) == key


class TestEdgeListFormat:
    def test_round_trip(self, rng):
        for _ in range(20):
            n = rng.randint(1, 10)
            g = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng)
            text = to_edge_list_text(g)
            assert parse_edge_list_text(text) == g
            assert to_edge_list_text(parse_edge_list_text(text)) == text

    def test_rejects_wrong_count(self):
        with pytest.raises(ValueError, match="promises"):
            parse_edge_list_text("3 2\n0 1\n")

    def test_rejects_reversed_pair(self):
        with pytest.raises(ValueError, match="u < v"):
            parse_edge_list_text("3 1\n1 0\n")


class TestGraph6:
    def test_single_edge(self):
        g = parse_graph6("A_")
        assert g.n == 2 and g.edges == ((0, 1),)

    def test_header_tolerated(self):
        assert parse_graph6(">>graph6<<A_").num_edges == 1

    def test_against_networkx(self, rng):
        networkx = pytest.importorskip("networkx")
        for _ in range(40):
            n = rng.randint(1, 15)
            gnx = networkx.gnp_random_graph(n, rng.random(), seed=rng.randint(0, 10**6))
            text = networkx.to_graph6_bytes(gnx, header=False).decode().strip()
            mine = parse_graph6(text)
            assert mine.n == n
            assert mine.edge_set == frozenset(tuple(sorted(e)) for e in gnx.edges())

    def test_sniffing(self):
        assert load_graph_text("2 1\n0 1\n") == build_graph(2, [(0, 1)])
        assert load_graph_text("A_\n") == build_graph(2, [(0, 1)])
