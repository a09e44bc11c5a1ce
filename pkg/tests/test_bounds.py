import math

import numpy as np
import pytest

from fourpaths.bounds import (
    ak_regime,
    bound_report,
    crossing_point,
    lower_bound_density,
    sweep,
    upper_clique_density,
    upper_star_density,
)
from fourpaths.stepfun import a1, a2, s_value


class TestDensityFormulas:
    def test_lower(self):
        assert lower_bound_density(0.0) == 0.0
        assert lower_bound_density(1.0) == 1.0
        assert lower_bound_density(0.5) == 0.0625

    def test_star(self):
        assert upper_star_density(1.0) == pytest.approx(1.0, abs=1e-15)
        assert upper_star_density(0.0) == 0.0

    def test_clique(self):
        assert upper_clique_density(1.0) == 1.0
        assert upper_clique_density(0.25) == pytest.approx(0.03125, abs=1e-15)
        assert upper_clique_density(0.0) == 0.0

    def test_out_of_range(self):
        for f in (lower_bound_density, upper_star_density, upper_clique_density):
            with pytest.raises(ValueError):
                f(-0.1)
            with pytest.raises(ValueError):
                f(1.1)

    def test_sandwich_on_grid(self):
        for c in np.linspace(0.0, 1.0, 10_001):
            assert lower_bound_density(c) <= max(
                upper_star_density(c), upper_clique_density(c)
            ) + 1e-15

    def test_monotone_on_grid(self):
        grid = np.linspace(0.0, 1.0, 10_001)
        star = [upper_star_density(c) for c in grid]
        clique = [upper_clique_density(c) for c in grid]
        assert all(a <= b + 1e-15 for a, b in zip(star[:-1], star[1:]))
        assert all(a <= b + 1e-15 for a, b in zip(clique[:-1], clique[1:]))


class TestCrossing:
    def test_in_reported_window(self):
        c0 = crossing_point()
        assert 0.0860 <= c0 <= 0.0870

    def test_residual(self):
        c0 = crossing_point()
        # both branches agree to the bisection resolution at the root
        slope = 0.2  # |d(star - clique)/dc| is below this near c0
        assert abs(upper_star_density(c0) - upper_clique_density(c0)) < slope * 1e-12

    def test_sign_pattern(self):
        assert upper_star_density(0.05) > upper_clique_density(0.05)
        assert upper_star_density(0.3) < upper_clique_density(0.3)

    def test_unique_sign_change(self):
        grid = np.linspace(0.0, 1.0, 10_001)[1:-1]
        diff = np.array([upper_star_density(c) - upper_clique_density(c) for c in grid])
        sign = np.sign(diff)
        assert int(np.sum(sign[1:] * sign[:-1] < 0)) == 1


class TestBoundReport:
    def test_star_side(self):
        rep = bound_report(100, 100)
        assert rep.c == pytest.approx(0.02)
        assert rep.dominant == "star"

    def test_clique_side(self):
        rep = bound_report(100, 2475)
        assert rep.c == pytest.approx(0.495)
        assert rep.dominant == "clique"

    def test_full_capacity_density(self):
        # at e = C(n,2) the density is (n-1)/n, not 1, so the clique branch wins
        rep = bound_report(10, 45)
        assert rep.c == pytest.approx(0.9)
        assert rep.dominant == "clique"
        assert rep.upper == pytest.approx(
            upper_clique_density(0.9) * 0.5 * 10**5, rel=1e-12
        )

    def test_scaling(self):
        rep = bound_report(20, 60)
        half_n5 = 0.5 * 20**5
        assert rep.lower == pytest.approx(lower_bound_density(rep.c) * half_n5)
        assert rep.upper >= rep.lower

    def test_invalid(self):
        with pytest.raises(ValueError):
            bound_report(5, 11)


class TestAkRegime:
    def test_examples(self):
        assert ak_regime(10, 10) == "star"
        assert ak_regime(10, 40) == "clique"
        assert ak_regime(10, 22) == "transition"

    def test_thresholds_exact(self):
        n = 12
        cap = n * (n - 1) // 2
        for e in range(cap + 1):
            reg = ak_regime(n, e)
            if 2 * e <= cap - n:
                assert reg == "star"
            elif 2 * e >= cap + n:
                assert reg == "clique"
            else:
                assert reg == "transition"


class TestSweep:
    def test_three_point(self):
        rows = sweep([0.0, 0.0865, 1.0])
        assert len(rows) == 3
        assert rows[0].dominant in ("star", "tie")
        assert rows[2].dominant == "tie"

    def test_single_crossing_on_grid(self):
        rows = sweep(list(np.linspace(0.0, 1.0, 1001)))
        signs = [
            0 if r.dominant == "tie" else (1 if r.dominant == "star" else -1)
            for r in rows[1:-1]
        ]
        changes = sum(
            1 for a, b in zip(signs[:-1], signs[1:]) if a != 0 and b != 0 and a != b
        )
        assert changes == 1

    def test_empty(self):
        assert sweep([]) == []


class TestCrossModule:
    def test_branch_formulas_equal_step_functionals(self):
        for c in np.linspace(0.0, 1.0, 101):
            assert s_value(a1(c)) == pytest.approx(upper_star_density(c), abs=1e-12)
            assert s_value(a2(c)) == pytest.approx(upper_clique_density(c), abs=1e-12)
