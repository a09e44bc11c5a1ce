import pytest

from fourpaths.construct import (
    clique_decomposition,
    near_regular,
    quasi_clique,
    quasi_star,
)
from fourpaths.graphs import canonical_key


class TestCliqueDecomposition:
    @pytest.mark.parametrize(
        "e,expected", [(7, (4, 1)), (6, (4, 0)), (0, (1, 0)), (1, (2, 0)), (10, (5, 0)), (11, (5, 1))]
    )
    def test_examples(self, e, expected):
        assert clique_decomposition(e) == expected

    def test_defining_inequality(self):
        for e in range(2000):
            a, b = clique_decomposition(e)
            assert e == a * (a - 1) // 2 + b
            assert 0 <= b < a

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            clique_decomposition(-1)


class TestQuasiClique:
    def test_5_7(self):
        g = quasi_clique(5, 7)
        clique = {(u, v) for u in range(4) for v in range(u + 1, 4)}
        assert g.edge_set == frozenset(clique | {(0, 4)})

    def test_full(self):
        assert quasi_clique(5, 10).num_edges == 10

    def test_empty(self):
        assert quasi_clique(6, 0).num_edges == 0

    def test_capacity_error(self):
        with pytest.raises(ValueError, match="capacity"):
            quasi_clique(4, 7)

    def test_clique_prefix_complete(self):
        # restricted to its non-isolated vertices, an exact-clique count is complete
        for a in range(2, 9):
            e = a * (a - 1) // 2
            g = quasi_clique(a + 3, e)
            live = [v for v in range(g.n) if g.degree(v) > 0]
            assert live == list(range(a))
            assert all(g.has_edge(u, v) for u in live for v in live if u < v)


class TestQuasiStar:
    def test_5_3_is_star(self):
        g = quasi_star(5, 3)
        star = canonical_key(quasi_clique(4, 3).complement())  # K1,3 plus isolate
        assert sorted(g.degrees()) == [0, 1, 1, 1, 3]

    def test_full(self):
        assert quasi_star(5, 10).num_edges == 10

    def test_complement_relation(self, rng):
        for _ in range(25):
            n = rng.randint(1, 8)
            cap = n * (n - 1) // 2
            e = rng.randint(0, cap)
            assert canonical_key(quasi_star(n, e)) == canonical_key(
                quasi_clique(n, cap - e).complement()
            )


class TestNearRegular:
    def test_examples(self):
        assert sorted(near_regular(5, 5).degrees()) == [2] * 5
        assert sorted(near_regular(4, 3).degrees()) == [1, 1, 2, 2]
        assert near_regular(6, 15).num_edges == 15

    def test_capacity_error(self):
        with pytest.raises(ValueError, match="capacity"):
            near_regular(3, 4)


def test_exhaustive_scan_to_30():
    for n in range(1, 31):
        for e in range(n * (n - 1) // 2 + 1):
            assert quasi_clique(n, e).num_edges == e
            assert quasi_star(n, e).num_edges == e
            g = near_regular(n, e)
            degs = g.degrees()
            assert g.num_edges == e
            assert max(degs) - min(degs) <= 1
