from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primsft.cyclotomic import Cyclotomic
from primsft.prim_space import Angle, NonUnitalError, roots_of_unity
from primsft.rep_oracle import (
    GraphGenerators,
    RepModel,
    build_cycle_rep,
    default_test_functions,
    kernels_equal,
    verification_summary,
    verify_crossed_relations,
    verify_graph_relations,
    williams_check,
)
from primsft.sft import full_shift, permutation_system

rational_angles = st.fractions(min_value=0, max_value=1, max_denominator=12).map(Angle)


def cycle_word(n: int) -> str:
    return "0" * (n - 1) + "1" if n > 1 else "0"


def mat_pow(a: np.ndarray, k: int) -> np.ndarray:
    out = a
    for _ in range(k - 1):
        out = out @ a
    return out


def exact_matrix(rows, order: int = 1) -> np.ndarray:
    out = np.empty((len(rows), len(rows)), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = Cyclotomic.rational(Fraction(v), order)
    return out


class TestModels:
    def test_one_point(self):
        m = build_cycle_rep("0", Angle(0))
        assert m.dim == 1 and m.shift[0, 0] == 1
        assert verify_crossed_relations(m, [[1], [5]]).passed

    def test_cube_of_third_turn(self):
        m = build_cycle_rep("001", Angle.root(1, 3))
        diff = mat_pow(m.shift, 3) - m.eye()
        assert all(x == 0 for x in diff.flat)

    def test_square_of_quarter_turns(self):
        for k in (1, 3):
            m = build_cycle_rep("01", Angle.root(k, 4))
            diff = mat_pow(m.shift, 2) + m.eye()
            assert all(x == 0 for x in diff.flat)

    @settings(max_examples=40)
    @given(st.integers(1, 5), rational_angles)
    def test_power_is_scalar(self, n, lam):
        m = build_cycle_rep(cycle_word(n), lam)
        diff = mat_pow(m.shift, n) - m.eye() * _root(lam.pow(n))
        assert all(x == 0 for x in diff.flat)

    def test_rejects(self):
        with pytest.raises(ValueError):
            build_cycle_rep("01", Angle(0), mode="fuzzy")
        with pytest.raises(ValueError):
            build_cycle_rep("01", Angle(0, (("a", Fraction(1)),)))
        with pytest.raises(ValueError):
            build_cycle_rep("01", Angle(0)).pi([1])
        with pytest.raises(TypeError):
            build_cycle_rep("01", Angle(0)).pi([1j, 1])

    def test_float_mode(self):
        m = build_cycle_rep("011", Angle.root(1, 7), mode="float")
        assert m.shift.dtype == complex
        np.testing.assert_allclose(mat_pow(m.shift, 3), np.exp(2j * np.pi * 3 / 7) * np.eye(3), atol=1e-12)


def _root(a: Angle) -> Cyclotomic:
    t = a.turns
    return Cyclotomic.root(t.numerator, t.denominator)


class TestCrossedRelations:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_standard_functions(self, n):
        for lam in roots_of_unity(4):
            v = verify_crossed_relations(build_cycle_rep(cycle_word(n), lam), default_test_functions(n))
            assert v.passed and v.max_residual == 0.0

    @settings(max_examples=15, deadline=None)
    @given(rational_angles, st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=20, max_size=20))
    def test_random_functions(self, lam, fns):
        assert verify_crossed_relations(build_cycle_rep("0001", lam), fns).passed

    def test_rotation_is_a_negative_control(self):
        good = build_cycle_rep("01", Angle(0))
        rot = RepModel(good.cycle, good.angle, exact_matrix([[Fraction(3, 5), Fraction(4, 5)], [Fraction(-4, 5), Fraction(3, 5)]]))
        v = verify_crossed_relations(rot, default_test_functions(2))
        assert not v.passed
        assert v.failures == ["covariance"]
        assert v.residuals["isometry"] == 0.0 and v.residuals["unitary"] == 0.0
        assert not verify_graph_relations(GraphGenerators(rot), default_test_functions(2)).passed

    def test_float_tolerance(self):
        m = build_cycle_rep("0011", Angle.root(1, 5), mode="float")
        v = verify_crossed_relations(m, default_test_functions(4))
        assert v.passed and v.max_residual <= 1e-12
        assert set(v.to_dict()) == {"passed", "max_residual", "residuals", "failures"}


class TestGraphRelations:
    def test_dictionary_identities(self):
        m = build_cycle_rep("001", Angle.root(1, 6))
        g = GraphGenerators(m)
        one = [1, 1, 1]
        prod = g.jX(one).conj().T @ g.jX(one)
        assert all(x == 0 for x in (prod - g.jA(one)).flat)
        ss = m.shift.conj().T @ m.shift
        assert all(x == 0 for x in (ss - m.eye()).flat)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2), st.lists(st.integers(-5, 5), min_size=3, max_size=3), rational_angles)
    def test_left_module_with_indicator(self, k, x, lam):
        g = GraphGenerators(build_cycle_rep("011", lam))
        f = [int(i == k) for i in range(3)]
        assert verify_graph_relations(g, [f, x]).passed

    @pytest.mark.parametrize("n", range(1, 7))
    def test_all_relations(self, n):
        for lam in roots_of_unity(6):
            v = verify_graph_relations(GraphGenerators(build_cycle_rep(cycle_word(n), lam)), default_test_functions(n))
            assert v.passed and v.max_residual == 0.0
            assert {"left_module", "inner_product", "range_projection", "dictionary"} <= set(v.residuals)


class TestKernels:
    def test_examples(self):
        i, minus_i, one = Angle.root(1, 4), Angle.root(3, 4), Angle(0)
        m = lambda a: build_cycle_rep("01", a)
        assert kernels_equal(m(i), m(minus_i), method="scan")
        assert not kernels_equal(m(one), m(i), method="scan")
        assert kernels_equal(m(i), m(i), method="scan")

    def test_errors(self):
        with pytest.raises(ValueError, match="mismatched cycles"):
            kernels_equal(build_cycle_rep("01", Angle(0)), build_cycle_rep("001", Angle(0)))
        with pytest.raises(ValueError, match="modes"):
            kernels_equal(build_cycle_rep("01", Angle(0)), build_cycle_rep("01", Angle(0), mode="float"))
        with pytest.raises(ValueError, match="method"):
            kernels_equal(build_cycle_rep("01", Angle(0)), build_cycle_rep("01", Angle(0)), method="guess")

    @pytest.mark.parametrize("n", range(1, 7))
    def test_scan_matches_closed_form_exact(self, n):
        # validates the closed-form shortcut used above dimension 4
        models = [build_cycle_rep(cycle_word(n), a) for a in roots_of_unity(12)]
        for a, b in combinations(models, 2):
            assert kernels_equal(a, b, method="scan") == kernels_equal(a, b, method="closed")

    @pytest.mark.parametrize("n", range(1, 7))
    def test_scan_matches_closed_form_float(self, n):
        models = [build_cycle_rep(cycle_word(n), a, mode="float") for a in roots_of_unity(6)]
        for a, b in combinations(models, 2):
            assert kernels_equal(a, b, method="scan") == kernels_equal(a, b, method="closed")


class TestWilliams:
    def test_identity_on_two_points(self):
        w = williams_check(permutation_system([0, 1]), roots_of_unity(4))
        assert w.match and w.kernel_classes == w.orbit_classes == 8

    def test_three_cycle(self):
        w = williams_check(permutation_system([1, 2, 0]), roots_of_unity(6))
        assert w.match and w.kernel_classes == 2 and w.verdict == "match"

    def test_empty_samples(self):
        w = williams_check(permutation_system([1, 0, 2]), [])
        assert w.match and w.items == 0

    def test_shift_cycles(self):
        w = williams_check(full_shift(2), roots_of_unity(4), max_cycle_len=3)
        assert w.match

    def test_non_unital(self):
        with pytest.raises(NonUnitalError):
            williams_check(full_shift(2, domain="0"), roots_of_unity(2), max_cycle_len=2)

    def test_summary(self):
        s = verification_summary(permutation_system([1, 2, 0, 4, 3]), roots_of_unity(4))
        assert s["passed"] and s["relations"]["models"] == 8
        assert s["williams"]["verdict"] == "match"
