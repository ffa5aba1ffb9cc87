"""Gallery constructions: closed forms against the exact engine, and the
deterministic random generators."""

from fractions import Fraction

import pytest

from dominion import (
    DominatedPair,
    MatrixOperator,
    MeasureSpace,
    denominator_cap,
    lp_operator_norm,
    p_norm_gap_pair,
    random_commuting_family,
    random_dominated_pair,
    random_positive_contraction,
    random_signed_operator,
    shear_trio,
    sigma_max_uniform_2x2,
    unit_gap_pair,
)


class TestShearTrio:
    def test_closed_forms_match_engine(self):
        grid = [
            ("0", "1", "0"),
            ("1/3", "2/3", "1/8"),
            ("1/2", "1/2", "1/4"),
            ("1/4", "1/4", "3/8"),  # strictly sub-unit damping norm
            ("2/3", "1/4", "1/2"),
            ("1/2", "0", "3/4"),  # no domination, closed form still exact
            ("1", "0", "1/2"),
        ]
        for u, v, lam in grid:
            trio = shear_trio(u, v, lam)
            assert trio.z.norm() == trio.z_norm
            assert trio.s.norm() == trio.s_norm == 1
            assert trio.t.norm() == trio.t_norm
            assert (trio.z @ (trio.s - trio.t)).norm() == trio.damped_gap_norm

    def test_unit_slice_reduction(self):
        # on the u + v = 1 slice the damped gap norm is (1 + u(1 - 2 lam)) / 2
        for u in (Fraction(0), Fraction(1, 3), Fraction(2, 3), Fraction(1)):
            for lam in (Fraction(0), Fraction(1, 8), Fraction(1, 4), Fraction(1, 2)):
                trio = shear_trio(u, 1 - u, lam)
                assert trio.damped_gap_norm == (1 + u * (1 - 2 * lam)) / 2
                assert trio.z_boundary

    def test_boundary_lambda_keeps_domination(self):
        trio = shear_trio("1/2", "1/2", "1/2")
        assert trio.dominance
        assert trio.s.dominates(trio.t)
        assert trio.damped_gap_norm == Fraction(1, 2)

    def test_degenerate_damping(self):
        trio = shear_trio(0, 1, 0)
        assert trio.t_norm == 0
        assert trio.damped_gap_norm == Fraction(1, 2)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            shear_trio("-1/2", "1/2", 0)
        with pytest.raises(ValueError):
            shear_trio("2/3", "2/3", 0)
        with pytest.raises(ValueError):
            shear_trio("1/2", "1/2", "3/4", require_dominance=True)
        assert shear_trio("1/2", "1/2", "1/2", require_dominance=True).dominance

    def test_shear_commutes_with_averaging(self):
        trio = shear_trio("1/5", "2/5", "1/8")
        assert trio.z.commutes_with(trio.s)


class TestUnitGapPair:
    def test_regression_values(self):
        pair = unit_gap_pair()
        assert pair.s.norm() == 1
        assert pair.t.norm() == Fraction(1, 4)
        assert (pair.s - pair.t).norm() == 1
        assert (pair.s @ pair.s - pair.t @ pair.t).norm() == Fraction(15, 18)

    def test_domination(self):
        pair = unit_gap_pair()
        assert pair.s.dominates(pair.t)
        DominatedPair(s=pair.s, t=pair.t)

    def test_averaging_square_identity(self):
        pair = unit_gap_pair()
        assert pair.s @ pair.s == pair.s * Fraction(5, 6)


class TestPNormGapPair:
    def test_expected_l2_values(self):
        pair = p_norm_gap_pair()
        golden = ((3 + 5 ** 0.5) / 8) ** 0.5
        assert abs(pair.gap_l2 - golden) <= 1e-12
        assert pair.squared_gap_l2 == 1.0

    def test_l2_straddles_threshold_while_l1_does_not(self):
        pair = p_norm_gap_pair()
        assert pair.gap_l2 < 1.0
        gap2 = lp_operator_norm(pair.s @ pair.s - pair.t @ pair.t, 2.0)
        assert abs(gap2 - 1.0) <= 1e-9
        # in the weighted L1 norm the gap already sits at one
        assert pair.gap_l1 == 1
        assert pair.squared_gap_l1 == 1

    def test_oracle_guards(self):
        pair = p_norm_gap_pair()
        skew = MeasureSpace((1, 2))
        with pytest.raises(ValueError):
            sigma_max_uniform_2x2(MatrixOperator.identity(skew))
        three = MeasureSpace((1, 1, 1))
        with pytest.raises(ValueError):
            sigma_max_uniform_2x2(MatrixOperator.identity(three))
        assert sigma_max_uniform_2x2(MatrixOperator.identity(pair.space)) == 1.0


class TestRandomDominatedPair:
    def test_deterministic(self):
        assert random_dominated_pair(7, 4) == random_dominated_pair(7, 4)
        assert random_dominated_pair(7, 4) != random_dominated_pair(8, 4)

    def test_invariants_over_seed_sweep(self):
        for seed in range(100):
            pair = random_dominated_pair(seed, 4)
            # DominatedPair re-validates everything at construction; re-check
            # the two facts the generator is supposed to arrange by design.
            assert pair.s.dominates(pair.t)
            assert pair.t.norm() <= pair.s.norm() <= 1

    def test_density_zero_gives_zero_operators(self):
        pair = random_dominated_pair(3, 3, density=0.0)
        assert pair.s == MatrixOperator.zero(pair.s.space)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            random_dominated_pair(0, 0)
        with pytest.raises(ValueError):
            random_dominated_pair(0, 2, density=1.5)


class TestRandomCommutingFamily:
    def test_single_pair_family(self):
        family = random_commuting_family(11, 1, 3)
        assert family.size == 1
        assert family.base_exponents == (1,)

    def test_members_commute_exactly(self):
        for seed in range(25):
            family = random_commuting_family(seed, 3, 3)
            for i in range(3):
                for j in range(i + 1, 3):
                    assert family.pairs[i].s.commutes_with(family.pairs[j].s)
                    assert family.pairs[i].t.commutes_with(family.pairs[j].t)

    def test_deterministic(self):
        assert random_commuting_family(5, 2, 3) == random_commuting_family(5, 2, 3)

    def test_invariant_sweep(self):
        for seed in range(50):
            family = random_commuting_family(seed, 3, 3)
            for pair in family.pairs:
                assert pair.s.is_contraction()
                assert pair.s.dominates(pair.t)

    def test_degree_zero_family(self):
        family = random_commuting_family(2, 2, 3, degree=0)
        assert family.size == 2

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            random_commuting_family(0, 0, 3)
        with pytest.raises(ValueError):
            random_commuting_family(0, 1, 3, degree=-1)


class TestGeneratorKnobs:
    def test_denominator_cap_default(self, monkeypatch):
        monkeypatch.delenv("DOMINION_DENOM_CAP", raising=False)
        assert denominator_cap() == 64

    def test_denominator_cap_override(self, monkeypatch):
        monkeypatch.setenv("DOMINION_DENOM_CAP", "16")
        assert denominator_cap() == 16
        pair = random_dominated_pair(4, 3)
        assert pair.s.is_contraction()

    def test_denominator_cap_rejects_bad_values(self, monkeypatch):
        monkeypatch.setenv("DOMINION_DENOM_CAP", "0")
        with pytest.raises(ValueError):
            denominator_cap()

    def test_signed_operator_spans_both_signs(self):
        op = random_signed_operator(12, 5)
        entries = [q for row in op.entries for q in row]
        assert any(q > 0 for q in entries) and any(q < 0 for q in entries)

    def test_positive_contraction_on_given_space(self):
        space = MeasureSpace((1, 1, 1))
        op = random_positive_contraction(9, 3, space=space)
        assert op.space == space
        assert op.is_positive() and op.is_contraction()
