"""Summation-identity suite: anomalies, identity residuals, degeneracies,
telescoping fixtures.  Everything here is exact; a residual passes only if it
is the zero polynomial."""

from fractions import Fraction

import pytest

from bureshall.identities import (
    AnomalyDomainError,
    AnomalySpec,
    IdentityDomainError,
    anomaly,
    case,
    default_grid,
    degenerate_anomaly_check,
    identity_catalog,
    identity_residual,
    omega,
    resummation_telescope_check,
    telescope_fixture_ids,
)
from bureshall.ring import GAMMA, ZETA2, ConstPoly


class TestOmega:
    def test_single_term_examples(self):
        assert omega(anomaly(1, 1, a=1)) == -GAMMA
        assert omega(anomaly(5, 1, b=0, c=0)) == ZETA2

    def test_omega6_m2(self):
        expected = ConstPoly.const(Fraction(1, 2)) - Fraction(3, 2) * GAMMA
        assert omega(anomaly(6, 2, b=0, c=0)) == expected

    def test_zero_denominator_names_offender(self):
        with pytest.raises(AnomalyDomainError, match="k=3"):
            omega(anomaly(1, 3, a=2))

    def test_nonpositive_argument_names_offender(self):
        with pytest.raises(AnomalyDomainError, match="k=2"):
            omega(anomaly(2, 2, a=1))  # psi0(a+1-k) hits 0 at k = 2

    def test_param_validation(self):
        with pytest.raises(ValueError):
            AnomalySpec(6, 2, a=Fraction(1))  # omega6 takes (b, c), not a
        with pytest.raises(ValueError):
            AnomalySpec(1, 2)  # missing a
        with pytest.raises(ValueError):
            AnomalySpec(99, 2)

    def test_half_integer_parameter_hits_ln2_sector(self):
        value = omega(anomaly(2, 3, a=Fraction(7, 2)))
        assert any(mono[1] > 0 for mono in value.terms)  # an l2 term appears

    def test_degree_at_most_two(self):
        specs = [
            anomaly(4, 4, b=1, c=2),
            anomaly(10, 3, a=5),
            anomaly(14, 4, a=6),
            anomaly(16, 5, b=2),
        ]
        for spec in specs:
            assert omega(spec).total_degree() <= 2


class TestDegeneracies:
    @pytest.mark.parametrize("m", [1, 5, 20])
    def test_all_relations_pass(self, m):
        report = degenerate_anomaly_check(m)
        assert len(report) == 3
        assert all(r.passed for r in report)

    def test_relation_names(self):
        names = [r.name for r in degenerate_anomaly_check(2)]
        assert names == [
            "omega7_equals_omega9",
            "omega8_equals_omega10",
            "omega11_equals_omega10",
        ]


class TestIdentityExamples:
    def test_simplest_closed_form_m1_m2(self):
        assert identity_residual(case("psi0_over_mk", 1)).is_zero()
        assert identity_residual(case("psi0_over_mk", 2)).is_zero()

    def test_three_term_basic(self):
        assert identity_residual(case("three_term_cycle", 2, a=1, b=2, c=3)).is_zero()

    def test_lhs_value_m1(self):
        # at m = 1 the simplest identity's left side is psi0(1) = -gamma,
        # so the right side must equal it too
        cat = identity_catalog()["psi0_over_mk"]
        assert cat.lhs(case("psi0_over_mk", 1)) == -GAMMA
        assert cat.rhs(case("psi0_over_mk", 1)) == -GAMMA


class TestIdentityGrid:
    def test_medium_grid_all_zero(self):
        cases = default_grid(max_m=3)
        assert len(cases) > 500
        for cs in cases:
            res = identity_residual(cs)
            assert res.is_zero(), (cs, res.to_text())

    def test_half_integer_a_cases_zero(self):
        for ident in ("psi0_ak_over_k", "psi0_over_ak2", "psi0_psi0ak_over_k",
                      "psi1_over_ak", "psi0_psi0shift_over_mk"):
            for m in (1, 2, 4):
                res = identity_residual(case(ident, m, a=m + Fraction(1, 2)))
                assert res.is_zero(), ident

    def test_residual_degree_bounded(self):
        cat = identity_catalog()
        cs = case("psi0_psi0ak_over_k", 3, a=5)
        assert cat["psi0_psi0ak_over_k"].lhs(cs).total_degree() <= 2
        assert cat["psi0_psi0ak_over_k"].rhs(cs).total_degree() <= 3


class TestAdmissibility:
    def test_boundary_a_equals_m_rejected(self):
        with pytest.raises(IdentityDomainError):
            identity_residual(case("psi0_ak_over_k", 3, a=3))

    def test_three_term_distinctness(self):
        with pytest.raises(IdentityDomainError):
            identity_residual(case("three_term_cycle", 2, a=1, b=1, c=3))
        with pytest.raises(IdentityDomainError):
            identity_residual(case("three_term_cycle", 2, a=1, b=2, c=Fraction(5, 2)))

    def test_swap_needs_distinct_bc(self):
        with pytest.raises(IdentityDomainError):
            identity_residual(case("psi0_kb_over_kc_swap", 2, b=1, c=1))

    def test_trigamma_needs_positive_alpha(self):
        with pytest.raises(IdentityDomainError):
            identity_residual(case("trigamma_alpha_closed_1", 2, alpha=Fraction(-1, 2)))

    def test_unknown_identity(self):
        with pytest.raises(KeyError):
            identity_residual(case("no_such_identity", 1))


class TestTelescopes:
    def test_one_term_telescope(self):
        assert resummation_telescope_check("tele_psi0_ak_over_k", 1, 1).is_zero()

    def test_worked_examples(self):
        assert resummation_telescope_check("tele_psi0_psi0ak_over_k", 3, 2).is_zero()
        assert resummation_telescope_check("tele_psi0_psi0shift_over_mk", 4, 1).is_zero()

    def test_full_fixture_grid(self):
        for fid in telescope_fixture_ids():
            for m in (1, 2, 3, 5):
                for b in (1, 3, Fraction(1, 2)):
                    assert resummation_telescope_check(fid, m, b).is_zero(), (fid, m, b)

    def test_fixture_count_and_validation(self):
        assert len(telescope_fixture_ids()) == 11
        with pytest.raises(IdentityDomainError):
            resummation_telescope_check("tele_psi0_ak_over_k", 2, 0)
        with pytest.raises(KeyError):
            resummation_telescope_check("tele_nonexistent", 2, 1)
