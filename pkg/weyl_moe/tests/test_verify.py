from unittest import TestCase

import numpy as np

from weyl_moe.bases import computational_basis, fourier_basis, mub_family
from weyl_moe.channels import (
    ChannelParams,
    depolarizing,
    identity_channel,
    random_channel,
    weyl_channel,
)
from weyl_moe.entropy import chi_dep_closed, von_neumann_entropy
from weyl_moe.errors import DimensionMismatch, HypothesisViolated, InvalidParameter
from weyl_moe.linalg import (
    kron,
    partial_trace_left,
    projector,
    random_density,
)
from weyl_moe.verify import (
    additivity_gap,
    check_hypothesis,
    chi_weyl_check,
    conditional_operators,
    decompose_lambda,
    decomposition_report,
    in_region,
    monotonicity_margin,
    random_composite_state,
    random_theorem2_batch,
    random_theorem_batch,
    region_upper,
    theorem2_margin,
    theorem_evaluator,
    theorem_margin,
    theorem_rhs,
)


class TestHypothesis(TestCase):
    def test_composite_dimension(self):
        with self.assertRaises(HypothesisViolated) as cm:
            check_hypothesis(4, 0.05, 0.02)
        self.assertEqual("d", cm.exception.parameter)

    def test_r_below_p(self):
        with self.assertRaises(HypothesisViolated) as cm:
            check_hypothesis(3, 0.01, 0.02)
        self.assertEqual("r", cm.exception.parameter)

    def test_r_above_upper(self):
        self.assertRaises(HypothesisViolated, check_hypothesis, 3, 0.3, 0.02)

    def test_in_region(self):
        self.assertTrue(in_region(3, 0.05, 0.02))
        self.assertFalse(in_region(3, 0.3, 0.02))

    def test_is_invalid_parameter(self):
        self.assertRaises(InvalidParameter, decompose_lambda, 6, 0.05, 0.02)


class TestDecomposeLambda(TestCase):
    def test_example(self):
        self.assertAlmostEqual(0.890244, decompose_lambda(3, 0.05, 0.02), places=6)

    def test_depolarizing_end(self):
        self.assertEqual(1.0, decompose_lambda(3, 0.02, 0.02))

    def test_qc_end(self):
        self.assertEqual(0.0, decompose_lambda(3, region_upper(3, 0.02), 0.02))

    def test_collapsed_region(self):
        self.assertEqual(1.0, decompose_lambda(2, 0.25, 0.25))

    def test_reconstructs_r(self):
        for d in (2, 3, 5):
            p = 0.3 / d ** 2
            upper = region_upper(d, p)
            r = p + 0.4 * (upper - p)
            lam = decompose_lambda(d, r, p)
            self.assertAlmostEqual(r, lam * p + (1 - lam) * upper, places=14)


class TestDecompositionReport(TestCase):
    def test_residuals(self):
        for d in (2, 3, 5):
            p = 0.3 / d ** 2
            upper = region_upper(d, p)
            for t in (0.0, 0.4, 1.0):
                report = decomposition_report(d, p + t * (upper - p), p)
                msg = f"d={d}, t={t}"
                self.assertLessEqual(report.mix_residual, 1e-10, msg=msg)
                self.assertLessEqual(report.compose_residual, 1e-10, msg=msg)
                self.assertTrue(report.passed)

    def test_outside_region(self):
        self.assertRaises(HypothesisViolated, decomposition_report, 3, 0.01, 0.02)


class TestConditionalOperators(TestCase):
    def test_sum_is_partial_trace(self):
        d, k = 3, 2
        x = random_density(d * k, 0).matrix
        expected = d * partial_trace_left(x, d, k)
        for row in conditional_operators(x, d, k, mub_family(d)):
            self.assertTrue(np.allclose(expected, sum(row), atol=1e-12))

    def test_wrong_shape(self):
        self.assertRaises(
            DimensionMismatch, conditional_operators, np.eye(5), 2, 2, mub_family(2)
        )


class TestBoundExamples(TestCase):
    def setUp(self):
        self.sigma = random_density(2, 3).matrix
        self.s_sigma = von_neumann_entropy(self.sigma)

    def test_fourier_input(self):
        x = kron(projector(fourier_basis(2)[0]), self.sigma)
        report = theorem_margin(2, 0.2, 0.1, identity_channel(2), x)
        chi = chi_dep_closed(2, 0.4)
        self.assertAlmostEqual(chi + self.s_sigma - 0.5, report.rhs, places=10)
        self.assertAlmostEqual(0.5, report.margin, places=10)
        self.assertAlmostEqual(0.0, report.normalized_margin, places=10)

    def test_computational_input_tight_for_depolarizing(self):
        x = kron(projector(computational_basis(2)[0]), self.sigma)
        report = theorem_margin(2, 0.1, 0.1, identity_channel(2), x)
        self.assertAlmostEqual(0.0, report.margin, places=10)

    def test_computational_input_inside_region(self):
        x = kron(projector(computational_basis(2)[0]), self.sigma)
        report = theorem_margin(2, 0.2, 0.1, identity_channel(2), x)
        self.assertGreaterEqual(report.margin, -1e-10)

    def test_maximally_mixed_first_factor(self):
        x = kron(np.eye(3) / 3, self.sigma)
        rhs = theorem_rhs(3, 0.05, 0.02, identity_channel(2), x)
        self.assertAlmostEqual(chi_dep_closed(3, 0.18) + self.s_sigma, rhs, places=10)

    def test_literal_and_normalized(self):
        d, k = 3, 2
        x = random_density(d * k, 1).matrix
        evaluator = theorem_evaluator(d, 0.05, 0.02, random_channel(k, 2, 2))
        terms, normalized = evaluator.basis_terms(x)
        traces = [
            np.trace(xjs).real
            for row in conditional_operators(x, d, k, mub_family(d))
            for xjs in row
        ]
        correction = sum(c * np.log2(c) for c in traces) / d ** 2
        self.assertAlmostEqual(
            np.sum(terms) / d ** 2, normalized - correction, places=10
        )

    def test_psi_dimension(self):
        x = random_density(9, 0).matrix
        self.assertRaises(
            DimensionMismatch, theorem_margin, 3, 0.05, 0.02, identity_channel(2), x
        )

    def test_exploratory_outside_region(self):
        x = random_density(6, 2).matrix
        report = theorem_margin(
            3, 0.01, 0.02, identity_channel(2), x, exploratory=True
        )
        self.assertTrue(report.exploratory)
        self.assertIsNone(report.lam)


class TestRandomBatches(TestCase):
    def test_random_psi(self):
        psi = random_channel(2, 2, 5)
        reports = random_theorem_batch(2, 0.2, 0.1, psi, 2, 12, 3)
        self.assertEqual(12, len(reports))
        for report in reports:
            self.assertGreaterEqual(report.margin, -1e-8)

    def test_depolarizing_psi(self):
        reports = random_theorem_batch(3, 0.05, 0.02, depolarizing(2, 0.5), 2, 8, 4)
        self.assertTrue(all(r.passed for r in reports))

    def test_reproducible(self):
        psi = identity_channel(2)
        a = [r.margin for r in random_theorem_batch(2, 0.2, 0.1, psi, 2, 4, 8)]
        b = [r.margin for r in random_theorem_batch(2, 0.2, 0.1, psi, 2, 4, 8)]
        self.assertListEqual(a, b)

    def test_alternates_pure_and_mixed(self):
        pure = random_composite_state(4, 0, 1).matrix
        mixed = random_composite_state(4, 1, 1).matrix
        self.assertAlmostEqual(1.0, np.trace(pure @ pure).real)
        self.assertLess(np.trace(mixed @ mixed).real, 1.0 - 1e-6)

    def test_rank_four_psi(self):
        for k in (2, 3):
            psi = random_channel(k, 4, 7)
            for report in random_theorem_batch(3, 0.05, 0.02, psi, k, 6, 2):
                self.assertGreaterEqual(report.margin, -1e-8, msg=f"k={k}")

    def test_empty_batch(self):
        with self.assertRaises(InvalidParameter) as cm:
            random_theorem_batch(2, 0.2, 0.1, identity_channel(2), 2, 0, 0)
        self.assertEqual("n", cm.exception.parameter)

    def test_theorem2_zero_k(self):
        with self.assertRaises(InvalidParameter) as cm:
            random_theorem2_batch(2, 0.5, 0, 4, 0)
        self.assertEqual("k", cm.exception.parameter)

    def test_theorem2(self):
        for q in (0.0, 0.5, 1.0, 4 / 3):
            for report in random_theorem2_batch(2, q, 2, 8, 5):
                self.assertGreaterEqual(report.margin, -1e-8, msg=f"q={q}")

    def test_theorem2_qutrit(self):
        reports = random_theorem2_batch(3, 1.0, 3, 4, 6)
        self.assertTrue(all(r.passed for r in reports))


class TestTheorem2(TestCase):
    def test_maximally_entangled(self):
        x = projector(np.array([1, 0, 0, 1]) / np.sqrt(2))
        report = theorem2_margin(2, 1.0, x)
        self.assertAlmostEqual(2.0, report.lhs, places=10)
        self.assertAlmostEqual(1.0, report.margin, places=10)

    def test_q_range(self):
        x = random_density(4, 0).matrix
        self.assertRaises(InvalidParameter, theorem2_margin, 2, 1.5, x)


class TestMonotonicity(TestCase):
    def test_non_negative(self):
        psi = random_channel(2, 2, 1)
        for seed in range(4):
            x = random_density(6, seed).matrix
            margin = monotonicity_margin(3, 0.1, 0.02, psi, x)
            self.assertGreaterEqual(margin, -1e-10, msg=f"seed={seed}")


class TestAdditivity(TestCase):
    def test_identity_psi(self):
        report = additivity_gap(
            ChannelParams(2, 0.2, 0.1), identity_channel(2), starts=8, rng=0
        )
        self.assertAlmostEqual(chi_dep_closed(2, 0.4), report.chi_phi, delta=1e-6)
        self.assertLessEqual(abs(report.gap), 1e-5)
        self.assertTrue(report.passed)

    def test_depolarizing_pair(self):
        report = additivity_gap(
            ChannelParams(2, 0.125, 0.125), depolarizing(2, 0.5), starts=16, rng=1
        )
        self.assertAlmostEqual(chi_dep_closed(2, 0.5), report.chi_phi, delta=1e-6)
        self.assertLessEqual(abs(report.gap), 1e-5)

    def test_psi_is_phi(self):
        for d, r, p in ((2, 0.2, 0.1), (3, 0.05, 0.02)):
            params = ChannelParams(d, r, p)
            report = additivity_gap(params, weyl_channel(params), starts=16, rng=2)
            self.assertLessEqual(abs(report.gap), 1e-5, msg=f"d={d}")

    def test_random_psi(self):
        psi = random_channel(2, 2, 4)
        report = additivity_gap(ChannelParams(3, 0.05, 0.02), psi, starts=16, rng=3)
        self.assertLessEqual(abs(report.gap), 1e-5)
        self.assertTrue(report.passed)

    def test_outside_region(self):
        self.assertRaises(
            HypothesisViolated,
            additivity_gap,
            ChannelParams(3, 0.01, 0.02),
            identity_channel(2),
        )

    def test_chi_weyl(self):
        report = chi_weyl_check(3, 0.05, 0.02, starts=8, samples=500, rng=2)
        self.assertEqual(chi_dep_closed(3, 0.18), report.closed_form)
        self.assertAlmostEqual(report.closed_form, report.chi, delta=1e-6)
        self.assertGreaterEqual(report.oracle, report.chi - 1e-6)
        self.assertTrue(report.passed)
