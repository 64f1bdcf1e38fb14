import json
import math

import numpy as np
import pytest

from bcml import (
    Bicomplex,
    J,
    MLParameter,
    NullConeRoot,
    ONE,
    OutsideDisk,
    contour_residual,
    cr_residual,
    decomposition_residual,
    duplication_residual,
    laplace_residual,
    multiplication_residual,
    ode_residual,
    order_type_residual,
    paper_recurrence_residual,
    special_case_residual,
)
from bcml.bicomplex import E1, parse_bicomplex
from bcml.identities import (
    ResidualReport,
    gamma_integral_residual,
    gamma_weierstrass_residual,
    growth_report,
    make_report,
    sample_evaluable_pair,
    sample_ml_parameter,
)

COSH_1 = 1.5430806348152438
E_HALF_AT_1 = 5.0089800807622835  # E_{1/2}(1) = e * erfc(-1)


class TestResidualReport:
    def test_pass_rule_relative(self):
        rep = make_report("t", {}, 2.0 * ONE, 2.0 * ONE + Bicomplex(1e-12, 0, 0, 0), 1e-10)
        assert rep.passed and rep.rel_residual < 1e-11

    def test_pass_rule_absolute_near_zero(self):
        tiny = Bicomplex(1e-12, 0.0, 0.0, 0.0)
        rep = make_report("t", {}, tiny, Bicomplex(0.0, 0.0, 0.0, 0.0), 1e-10)
        assert rep.passed  # relative residual is 1, absolute decides

    def test_unasserted_has_no_verdict(self):
        rep = make_report("t", {}, ONE, 2.0 * ONE, None)
        assert rep.passed is None and rep.tolerance is None

    def test_json_schema(self):
        rep = make_report("t", {"xi": "0"}, ONE, ONE, 1e-10)
        d = rep.to_json_dict()
        assert set(d) == {"identity", "point", "lhs", "rhs", "abs_residual",
                          "rel_residual", "tolerance", "pass"}
        json.dumps(d)
        assert parse_bicomplex(d["lhs"]) == ONE


class TestDuplication:
    def test_cosh_anchor(self):
        rep = duplication_residual(1.0, ONE)
        assert rep.lhs.x0 == pytest.approx(COSH_1, rel=1e-13)
        assert rep.rel_residual <= 1e-12
        assert rep.passed

    def test_at_zero(self):
        rep = duplication_residual(1.0, Bicomplex(0.0, 0.0, 0.0, 0.0))
        assert rep.lhs == rep.rhs == ONE

    def test_bicomplex_alpha_point(self):
        alpha = Bicomplex(1.0, 0.0, 0.0, 0.3)
        xi = Bicomplex.from_idempotent(0.7, 0.4)
        rep = duplication_residual(alpha, xi)
        assert rep.rel_residual <= 1e-11
        assert rep.passed

    def test_random_grid(self):
        rng = np.random.default_rng(21)
        for _ in range(40):
            alpha, xi = sample_evaluable_pair(rng, n_max=3.0)
            rep = duplication_residual(alpha, xi)
            assert rep.passed, (alpha.alpha, xi, rep.rel_residual)


class TestMultiplication:
    def test_identity_at_m1(self):
        xi = Bicomplex(0.3, 0.1, -0.2, 0.5)
        rep = multiplication_residual(1.3, 1, xi)
        assert rep.abs_residual == 0.0

    def test_m2_reproduces_duplication_exactly(self):
        alpha = MLParameter(0.7)
        xi = Bicomplex(0.4, -0.2, 0.8, 0.1)
        dup = duplication_residual(alpha, xi)
        mul = multiplication_residual(alpha, 2, xi)
        assert mul.lhs == dup.lhs and mul.rhs == dup.rhs

    def test_m3_matches_closed_form(self):
        from bcml import special_case

        rep = multiplication_residual(1.0, 3, ONE)
        assert rep.rel_residual <= 1e-11
        closed = special_case(3, ONE)
        assert (rep.lhs - closed).norm() <= 1e-9 * closed.norm()

    def test_half_alpha(self):
        rep = multiplication_residual(0.5, 2, 0.5 * ONE)
        assert rep.rel_residual <= 1e-11

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_grid(self, m):
        rng = np.random.default_rng(22 + m)
        for _ in range(15):
            alpha, xi = sample_evaluable_pair(rng, n_max=2.0)
            rep = multiplication_residual(alpha, m, xi)
            assert rep.passed, (alpha.alpha, xi, rep.rel_residual)


class TestPaperRecurrence:
    def test_degenerate_case_closes(self):
        rep = paper_recurrence_residual(1, 1, ONE)
        assert rep.abs_residual <= 1e-13
        assert rep.passed is None

    def test_p2_q1_documents_mismatch(self):
        # as stated the two sides differ: E_2(1) = cosh 1 vs E_{1/2}(1)
        rep = paper_recurrence_residual(2, 1, ONE)
        assert rep.lhs.x0 == pytest.approx(COSH_1, rel=1e-12)
        assert rep.rhs.x0 == pytest.approx(E_HALF_AT_1, rel=1e-12)
        assert rep.rel_residual > 0.5
        assert rep.passed is None

    def test_q2_residual_reported(self):
        rep = paper_recurrence_residual(1, 2, 0.25 * ONE)
        assert rep.passed is None
        assert math.isfinite(rep.rel_residual)

    def test_coprimality_enforced(self):
        with pytest.raises(ValueError):
            paper_recurrence_residual(2, 4, ONE)

    def test_null_cone_rejected(self):
        with pytest.raises(NullConeRoot):
            paper_recurrence_residual(1, 2, E1)


class TestLaplace:
    def test_zero_point(self):
        rep = laplace_residual(1.0, Bicomplex(0.0, 0.0, 0.0, 0.0), 128)
        assert rep.abs_residual <= 1e-12

    def test_closed_form_half(self):
        rep = laplace_residual(1.0, 0.5 * ONE, 128)
        assert rep.rhs.x0 == pytest.approx(2.0, rel=1e-15)
        assert rep.rel_residual <= 1e-10

    def test_half_alpha_bicomplex_point(self):
        xi = Bicomplex.from_idempotent(0.3, 0.5)
        rep = laplace_residual(0.5, xi, 200)
        assert rep.rel_residual <= 1e-6
        assert rep.passed

    def test_outside_disk_rejected(self):
        with pytest.raises(OutsideDisk):
            laplace_residual(1.0, 0.9 * ONE)

    def test_minimum_nodes(self):
        with pytest.raises(ValueError):
            laplace_residual(1.0, 0.5 * ONE, nodes=32)


class TestContour:
    def test_exponential(self):
        rep = contour_residual(1.0, ONE)
        assert rep.lhs.x0 == pytest.approx(math.e, rel=1e-8)
        assert rep.rel_residual <= 1e-8

    def test_componentwise_cosh(self):
        xi = Bicomplex.from_idempotent(4.0, 1.0)
        rep = contour_residual(2.0, xi)
        want = Bicomplex.from_idempotent(math.cosh(2.0), math.cosh(1.0))
        assert (rep.lhs - want).norm() <= 1e-7 * want.norm()
        assert rep.rel_residual <= 1e-7

    def test_at_j(self):
        rep = contour_residual(1.0, J)  # components exp(+-1)
        assert rep.rel_residual <= 1e-7

    def test_null_cone_rejected(self):
        with pytest.raises(NullConeRoot):
            contour_residual(1.0, E1)


class TestCauchyRiemann:
    def test_exponential_case(self):
        assert cr_residual(1.0, 0.3 + 0.0j, 0.1 + 0.0j, 1e-5) <= 1e-8

    def test_alpha_two_at_origin(self):
        assert cr_residual(2.0, 0.0j, 0.0j, 1e-5) <= 1e-9

    def test_bicomplex_alpha(self):
        alpha = Bicomplex(1.5, 0.0, 0.0, 0.2)
        assert cr_residual(alpha, 1.0 + 0.0j, 0.5 + 0.0j, 1e-5) <= 1e-7

    def test_step_bounds(self):
        with pytest.raises(ValueError):
            cr_residual(1.0, 0.0j, 0.0j, 1e-2)

    def test_random_points(self):
        rng = np.random.default_rng(30)
        for _ in range(20):
            alpha = sample_ml_parameter(rng)
            z1 = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
            z2 = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
            assert cr_residual(alpha, z1, z2, 1e-5) <= 1e-7


class TestODE:
    def test_n1_exponential(self):
        coeff, fd = ode_residual(1, ONE, 1e-5)
        assert coeff.passed and coeff.abs_residual <= 1e-13
        assert fd.passed and fd.rel_residual <= 1e-5

    def test_n2_stated_tolerances(self):
        coeff, fd = ode_residual(2, 1.5 * ONE, 1e-3)
        assert coeff.abs_residual <= 1e-13
        assert fd.rel_residual <= 1e-5

    def test_n4_coefficient_route(self):
        coeff, _fd = ode_residual(4, 0.5 * ONE, 1e-2)
        assert coeff.abs_residual <= 1e-13

    def test_bad_order(self):
        with pytest.raises(ValueError):
            ode_residual(5, ONE)


class TestDecompositionAndOrder:
    def test_decomposition_grid(self):
        rng = np.random.default_rng(31)
        for _ in range(60):
            alpha, xi = sample_evaluable_pair(rng, n_max=10.0)
            assert decomposition_residual(alpha, xi) <= 1e-12

    def test_order_formula_grid(self):
        rng = np.random.default_rng(32)
        for _ in range(200):
            alpha = sample_ml_parameter(rng)
            assert order_type_residual(alpha) <= 1e-13

    def test_null_cone_evaluation_rule(self):
        from bcml import bc_ml, ml_series

        xi = Bicomplex.from_idempotent(0.9, 0.0)
        got = bc_ml(1.3, xi)
        want = Bicomplex.from_idempotent(ml_series(1.3, 0.9), 1.0)
        assert (got - want).norm() <= 1e-13


class TestGammaReports:
    def test_integral_agreement(self):
        rep = gamma_integral_residual(Bicomplex.from_idempotent(0.7 + 1j, 5.5 - 2j), 64)
        assert rep.passed and rep.rel_residual <= 1e-9

    def test_weierstrass_agreement(self):
        rep = gamma_weierstrass_residual(1.5 * ONE, 100_000)
        assert rep.passed and rep.rel_residual <= 1e-3


class TestGrowthReport:
    def test_alpha_one(self):
        rep = growth_report(1.0)
        assert rep.passed
        assert rep.lhs.x0 == pytest.approx(1.0, rel=0.05)


class TestSamplers:
    def test_sampler_determinism(self):
        a = sample_evaluable_pair(np.random.default_rng(5))
        b = sample_evaluable_pair(np.random.default_rng(5))
        assert a[0].alpha == b[0].alpha and a[1] == b[1]

    def test_sampled_alpha_admissible(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            p = sample_ml_parameter(rng)
            assert p.alpha1.real > 0 and p.alpha2.real > 0
            assert isinstance(p, MLParameter)
