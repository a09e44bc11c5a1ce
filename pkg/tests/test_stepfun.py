import math
import random

import numpy as np
import pytest

from fourpaths.bounds import upper_clique_density, upper_star_density
from fourpaths.counting import count_walks4
from fourpaths.graphs import build_graph, random_graph
from fourpaths.stepfun import (
    StepFunction,
    a1,
    a2,
    format_step_function,
    from_graph,
    normalize,
    parse_step_function,
    random_step_function,
    s_three_step_closed,
    s_two_step_closed,
    s_two_step_scaled,
    s_value,
    t_value,
    three_step,
    two_step,
)

K2 = build_graph(2, [(0, 1)])
K3 = build_graph(3, [(0, 1), (1, 2), (0, 2)])


class TestStepFunction:
    def test_validation(self):
        with pytest.raises(ValueError, match="symmetric"):
            StepFunction([0.0, 0.5, 1.0], [[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(ValueError, match="increasing"):
            StepFunction([0.0, 0.6, 0.4, 1.0], np.zeros((3, 3)))
        with pytest.raises(ValueError, match="lie in"):
            StepFunction([0.0, 1.0], [[1.5]])

    def test_mass_and_row_sums(self):
        a = StepFunction([0.0, 0.25, 1.0], [[1.0, 0.5], [0.5, 0.0]])
        assert a.mass == pytest.approx(0.25**2 + 2 * 0.25 * 0.75 * 0.5)
        assert a.row_sums == pytest.approx([0.25 + 0.375, 0.125])


class TestFromGraph:
    def test_k2(self):
        a = from_graph(K2)
        assert a.k == 2
        assert a.values.tolist() == [[0.0, 1.0], [1.0, 0.0]]
        assert a.mass == pytest.approx(0.5)

    def test_empty(self):
        a = from_graph(build_graph(3, []))
        assert a.mass == 0.0

    def test_k3_mass(self):
        assert from_graph(K3).mass == pytest.approx(2 / 3)

    def test_embedding_identities(self, rng):
        for _ in range(25):
            n = rng.randint(2, 12)
            g = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng)
            a = from_graph(g)
            degs = g.degrees()
            exact = sum(
                degs[i] * degs[j] * min(degs[i], degs[j])
                for i in range(n)
                for j in range(n)
            )
            assert s_value(a) == pytest.approx(exact / n**5, abs=1e-12)
            assert s_value(a) >= count_walks4(g) / n**5 - 1e-12
            assert a.mass == pytest.approx(g.density, abs=1e-12)


class TestSValue:
    def test_all_ones(self):
        assert s_value(StepFunction([0.0, 1.0], [[1.0]])) == pytest.approx(1.0)

    def test_a2_closed_form(self):
        for c in np.linspace(0.0, 1.0, 50):
            assert s_value(a2(c)) == pytest.approx(c**2.5, abs=1e-12)


class TestTValue:
    def test_constant_zero(self):
        assert t_value(StepFunction([0.0, 1.0], [[0.4]])) == 0.0

    def test_zero_one_identity(self):
        for c in (0.1, 0.3, 0.64):
            assert t_value(a2(c)) == pytest.approx(2 * c * (1 - c), abs=1e-12)

    def test_quadruple_loop_oracle(self):
        gen = np.random.default_rng(3)
        for _ in range(10):
            a = random_step_function(0.5, int(gen.integers(1, 7)), gen)
            t = a.widths
            v = a.values
            naive = sum(
                t[i] * t[j] * t[p] * t[q] * abs(v[i, j] - v[p, q])
                for i in range(a.k)
                for j in range(a.k)
                for p in range(a.k)
                for q in range(a.k)
            )
            assert t_value(a) == pytest.approx(naive, abs=1e-12)


class TestExtremalFunctions:
    def test_a1_degenerate(self):
        assert a1(1.0).values.tolist() == [[1.0]]
        assert a1(0.0).values.tolist() == [[0.0]]

    def test_a1_mass(self):
        a = a1(0.75)
        assert a.breakpoints[1] == pytest.approx(0.5)
        assert a.mass == pytest.approx(0.75, abs=1e-12)

    def test_a2_block(self):
        a = a2(0.25)
        assert a.breakpoints[1] == pytest.approx(0.5)
        assert a.mass == pytest.approx(0.25, abs=1e-12)

    def test_mass_exact_across_grid(self):
        for c in np.linspace(0.0, 1.0, 101):
            assert a1(c).mass == pytest.approx(c, abs=1e-12)
            assert a2(c).mass == pytest.approx(c, abs=1e-12)


class TestTwoStep:
    def test_endpoints_reduce_to_extremals(self):
        c = 0.37
        lo = two_step(c, 1 - math.sqrt(1 - c))
        expect = a1(c)
        assert lo.k == expect.k
        assert np.allclose(lo.breakpoints, expect.breakpoints, atol=1e-12)
        assert np.array_equal(lo.values, expect.values)
        hi = two_step(c, math.sqrt(c))
        expect = a2(c)
        assert hi.k == expect.k
        assert np.allclose(hi.breakpoints, expect.breakpoints, atol=1e-12)
        assert np.array_equal(hi.values, expect.values)

    def test_closed_form_grid(self):
        for c in np.linspace(0.02, 0.98, 30):
            lo, hi = 1 - math.sqrt(1 - c), math.sqrt(c)
            for x in np.linspace(lo, hi, 60):
                assert s_value(two_step(c, x)) == pytest.approx(
                    s_two_step_closed(c, x), abs=1e-12
                )

    def test_mass(self):
        for c in (0.1, 0.5, 0.9):
            for x in np.linspace(1 - math.sqrt(1 - c), math.sqrt(c), 20):
                assert two_step(c, x).mass == pytest.approx(c, abs=1e-12)

    def test_inadmissible(self):
        with pytest.raises(ValueError, match="admissible"):
            two_step(0.3, 0.9)

    def test_scaled_form(self):
        c = 0.41
        assert s_two_step_scaled(1.0) == pytest.approx(1.0)
        for x in np.linspace(1 - math.sqrt(1 - c), math.sqrt(c), 25):
            assert c**2.5 * s_two_step_scaled(x / math.sqrt(c)) == pytest.approx(
                s_two_step_closed(c, x), abs=1e-12
            )


class TestThreeStep:
    def test_endpoints_have_two_blocks(self):
        for s in (0.2, 0.5, 0.8):
            assert three_step(s, math.sqrt(s)).k == 2
            assert three_step(s, 1 - math.sqrt(1 - s)).k == 2

    def test_closed_form_grid(self):
        for s in np.linspace(0.03, 0.97, 30):
            lo, hi = 1 - math.sqrt(1 - s), math.sqrt(s)
            for x in np.linspace(lo, hi, 60):
                assert s_value(three_step(s, x)) == pytest.approx(
                    s_three_step_closed(s, x), abs=1e-12
                )

    def test_row_sums_structure(self):
        a = three_step(0.4, 0.45)
        assert a.row_sums[0] == pytest.approx(1.0)
        assert a.row_sums[1] == pytest.approx(1.0 - 0.45)
        assert a.mass == pytest.approx(1.0 - 0.4, abs=1e-12)

    def test_inadmissible(self):
        with pytest.raises(ValueError, match="admissible"):
            three_step(0.25, 0.9)


class TestNormalize:
    def test_sorts_swapped_blocks(self):
        a = a1(0.6)
        w = a.widths
        swapped = StepFunction([0.0, float(w[1]), 1.0], a.values[::-1, ::-1])
        back = normalize(swapped)
        assert np.allclose(back.breakpoints, a.breakpoints)
        assert np.array_equal(back.values, a.values)

    def test_idempotent(self):
        gen = np.random.default_rng(11)
        a = normalize(random_step_function(0.4, 5, gen))
        again = normalize(a)
        assert np.array_equal(again.values, a.values)
        assert np.allclose(again.breakpoints, a.breakpoints)

    def test_preserves_functionals(self):
        gen = np.random.default_rng(12)
        for _ in range(20):
            a = random_step_function(0.6, int(gen.integers(1, 9)), gen)
            b = normalize(a)
            assert s_value(b) == pytest.approx(s_value(a), abs=1e-14)
            assert b.mass == pytest.approx(a.mass, abs=1e-13)

    def test_merges_identical_rows(self):
        a = StepFunction(
            [0.0, 0.3, 0.6, 1.0],
            [[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 0.0]],
        )
        assert normalize(a).k == 2


class TestRandomMassC:
    def test_exact_mass(self):
        gen = np.random.default_rng(4)
        for c in (0.05, 0.0865, 0.3, 0.7, 0.95):
            for _ in range(60):
                a = random_step_function(c, int(gen.integers(1, 9)), gen)
                assert abs(a.mass - c) <= 1e-12

    def test_bound_property_sample(self):
        gen = np.random.default_rng(5)
        for c in (0.05, 0.3, 0.95):
            bound = max(upper_star_density(c), upper_clique_density(c))
            for _ in range(300):
                a = random_step_function(c, int(gen.integers(1, 9)), gen)
                assert s_value(a) <= bound + 1e-12


class TestSingleRectangle:
    def test_value_and_cap(self):
        for c in np.linspace(0.05, 0.95, 19):
            for t in np.linspace(math.sqrt(c), 0.999, 25):
                a = StepFunction([0.0, t, 1.0], [[c / t**2, 0.0], [0.0, 0.0]])
                assert s_value(a) == pytest.approx(c**3 / t, abs=1e-12)
                assert s_value(a) <= c**2.5 + 1e-12


class TestSerialization:
    def test_round_trip(self):
        gen = np.random.default_rng(6)
        a = random_step_function(0.4, 5, gen)
        b = parse_step_function(format_step_function(a))
        assert np.array_equal(a.values, b.values)
        assert np.array_equal(a.breakpoints, b.breakpoints)

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            parse_step_function("2\n0.0 1.0\n1.0 0.0\n")
