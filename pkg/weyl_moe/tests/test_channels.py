from unittest import TestCase

import numpy as np

from weyl_moe.channels import (
    ChannelParams,
    KrausChannel,
    WeylMixSpec,
    bistochastic_defect,
    compose,
    conditional_expectation,
    covariance_defect,
    cptp_defect,
    depolarizing,
    from_json,
    identity_channel,
    mix,
    phase_damping,
    qc_channel,
    qc_via_expectation,
    random_channel,
    superop_distance,
    tensor,
    to_json,
    weyl_channel,
    weyl_operator,
)
from weyl_moe.bases import fourier_basis
from weyl_moe.errors import DimensionMismatch, InvalidParameter
from weyl_moe.linalg import kron, projector, random_density


class TestWeylOperators(TestCase):
    def test_unitary(self):
        w = weyl_operator(3, 1, 2)
        self.assertTrue(np.allclose(np.eye(3), w @ w.conj().T))

    def test_shift_then_phase(self):
        x = weyl_operator(5, 1, 0)
        z = weyl_operator(5, 0, 1)
        self.assertTrue(np.allclose(x @ z, weyl_operator(5, 1, 1)))

    def test_out_of_range(self):
        self.assertRaises(InvalidParameter, weyl_operator, 3, 3, 0)


class TestChannelParams(TestCase):
    def test_coefficient_table(self):
        c = ChannelParams(3, 0.05, 0.02).coefficient_table()
        self.assertAlmostEqual(0.78, c[0, 0])
        self.assertListEqual([0.05, 0.05], list(c[1:, 0]))
        self.assertTrue(np.allclose(0.02, c[:, 1:]))
        self.assertAlmostEqual(1.0, c.sum())

    def test_negative_identity_weight(self):
        self.assertRaises(InvalidParameter, weyl_channel, ChannelParams(2, 0.5, 0.3))

    def test_negative_p(self):
        with self.assertRaises(InvalidParameter) as cm:
            ChannelParams(2, 0.1, -0.1).validate()
        self.assertEqual("p", cm.exception.parameter)


class TestBuilders(TestCase):
    def test_all_cptp(self):
        channels = [
            weyl_channel(ChannelParams(3, 0.05, 0.02)),
            depolarizing(5, 0.3),
            qc_channel(3, 0.6),
            phase_damping(3, 0.4),
            identity_channel(2),
            random_channel(3, 2, 0),
        ]
        for ch in channels:
            cp, tp = cptp_defect(ch)
            self.assertLessEqual(cp, 1e-10, msg=repr(ch))
            self.assertLessEqual(tp, 1e-10, msg=repr(ch))

    def test_depolarizing_action(self):
        x = random_density(3, 4).matrix
        out = depolarizing(3, 0.4).apply_matrix(x)
        self.assertTrue(np.allclose(0.6 * x + 0.4 * np.eye(3) / 3, out, atol=1e-12))

    def test_fully_depolarizing(self):
        out = depolarizing(2, 1.0).apply_matrix(projector([0.6, 0.8j]))
        self.assertTrue(np.allclose(np.eye(2) / 2, out, atol=1e-12))

    def test_depolarizing_extended(self):
        self.assertRaises(InvalidParameter, depolarizing, 2, 1.2)
        cp, _ = cptp_defect(depolarizing(2, 4 / 3, extended=True))
        self.assertLessEqual(cp, 1e-10)

    def test_qc_forms_agree(self):
        for d, q in ((2, 0.5), (3, 0.6), (3, 1.5)):
            x = random_density(d, 7).matrix
            a = qc_channel(d, q).apply_matrix(x)
            b = qc_via_expectation(d, q, x).matrix
            self.assertTrue(np.allclose(a, b, atol=1e-12), msg=f"d={d}, q={q}")

    def test_conditional_expectation_idempotent(self):
        x = random_density(3, 1)
        once = conditional_expectation(x).matrix
        twice = conditional_expectation(once).matrix
        self.assertTrue(np.allclose(once, twice, atol=1e-12))

    def test_qc_matches_fourier_sum(self):
        for d, q in ((2, 0.5), (3, 0.6), (3, 1.5)):
            e = fourier_basis(d)
            x = random_density(d, 12).matrix
            expected = np.zeros((d, d), dtype=complex)
            for j in range(d):
                weight = (e[j].conj() @ x @ e[j]).real
                xj = (1 - (d - 1) / d * q) * e.projector(j)
                for n in range(1, d):
                    xj = xj + q / d * e.projector((j + n) % d)
                expected += weight * xj
            out = qc_channel(d, q).apply_matrix(x)
            self.assertTrue(np.allclose(expected, out, atol=1e-12), msg=f"d={d}, q={q}")

    def test_phase_damping_fixes_fourier_projectors(self):
        e = fourier_basis(3)
        ch = phase_damping(3, 0.4)
        for j in range(3):
            out = ch.apply_matrix(e.projector(j))
            self.assertTrue(np.allclose(e.projector(j), out, atol=1e-12))

    def test_conditional_expectation_computational(self):
        out = conditional_expectation(projector([1, 0, 0])).matrix
        self.assertTrue(np.allclose(np.eye(3) / 3, out, atol=1e-12))

    def test_rank_one_random_channel_is_unitary(self):
        (u,) = random_channel(3, 1, 5).kraus_operators()
        self.assertTrue(np.allclose(np.eye(3), u @ u.conj().T, atol=1e-12))

    def test_phase_damping_endpoints(self):
        distance = superop_distance(phase_damping(3, 1.0), identity_channel(3))
        self.assertLess(distance, 1e-12)

    def test_random_channel_rank(self):
        self.assertEqual(3, random_channel(2, 3, 5).rank)


class TestKraus(TestCase):
    def test_not_trace_preserving(self):
        self.assertRaises(InvalidParameter, KrausChannel, [0.5 * np.eye(2)])

    def test_mixed_shapes(self):
        self.assertRaises(DimensionMismatch, KrausChannel, [np.eye(2), np.eye(3)])

    def test_adjoint_duality(self):
        for ch in (random_channel(3, 2, 2), weyl_channel(ChannelParams(3, 0.05, 0.02))):
            x = random_density(3, 8).matrix
            y = random_density(3, 9).matrix
            lhs = np.trace(ch.apply_matrix(x) @ y)
            rhs = np.trace(x @ ch.apply_adjoint(y))
            self.assertAlmostEqual(lhs, rhs, places=12)


class TestOperations(TestCase):
    def setUp(self):
        self.weyl = weyl_channel(ChannelParams(3, 0.05, 0.02))
        self.other = random_channel(3, 2, 11)

    def test_weyl_compose_closed(self):
        inner = depolarizing(3, 0.18)
        out = compose(phase_damping(3, 0.3), inner)
        self.assertIsInstance(out, WeylMixSpec)
        expected = phase_damping(3, 0.3).superop_matrix() @ inner.superop_matrix()
        self.assertTrue(np.allclose(expected, out.superop_matrix(), atol=1e-12))

    def test_kraus_compose(self):
        out = compose(self.other, self.weyl)
        expected = self.other.superop_matrix() @ self.weyl.superop_matrix()
        self.assertTrue(np.allclose(expected, out.superop_matrix(), atol=1e-12))

    def test_compose_dimensions(self):
        self.assertRaises(DimensionMismatch, compose, identity_channel(2), self.weyl)

    def test_compose_identity(self):
        out = compose(identity_channel(3), self.other)
        self.assertLess(superop_distance(out, self.other), 1e-12)

    def test_mix_endpoint(self):
        out = mix(1.0, self.weyl, self.other)
        self.assertLess(superop_distance(out, self.weyl), 1e-12)

    def test_mix_closed(self):
        out = mix(0.3, self.weyl, depolarizing(3, 0.5))
        self.assertIsInstance(out, WeylMixSpec)

    def test_mix_linear(self):
        out = mix(0.3, self.weyl, self.other)
        expected = 0.3 * self.weyl.superop_matrix() + 0.7 * self.other.superop_matrix()
        self.assertTrue(np.allclose(expected, out.superop_matrix(), atol=1e-12))

    def test_mix_weight(self):
        self.assertRaises(InvalidParameter, mix, 1.5, self.weyl, self.other)

    def test_tensor_product_inputs(self):
        a = random_density(3, 1).matrix
        b = random_density(2, 2).matrix
        psi = random_channel(2, 2, 3)
        out = tensor(self.weyl, psi).apply_matrix(kron(a, b))
        expected = kron(self.weyl.apply_matrix(a), psi.apply_matrix(b))
        self.assertTrue(np.allclose(expected, out, atol=1e-12))


class TestDefects(TestCase):
    def test_unchecked_negative_weight(self):
        ch = weyl_channel(ChannelParams(2, 0.5, 0.3), unchecked=True)
        cp, tp = cptp_defect(ch)
        self.assertAlmostEqual(0.1, cp, places=10)
        self.assertLess(tp, 1e-10)

    def test_weyl_bistochastic(self):
        self.assertLess(bistochastic_defect(self.channel()), 1e-12)

    def test_random_region_points(self):
        gen = np.random.default_rng(0)
        for d in (2, 3, 5):
            for _ in range(10):
                p = gen.uniform(0, 1 / d ** 2)
                r = gen.uniform(p, (1 - d * (d - 1) * p) / d)
                ch = weyl_channel(ChannelParams(d, r, p))
                msg = f"d={d}, r={r}, p={p}"
                self.assertLess(bistochastic_defect(ch), 1e-12, msg=msg)
                self.assertLessEqual(covariance_defect(ch, 10, gen), 1e-10, msg=msg)

    def test_random_not_unital(self):
        self.assertGreater(bistochastic_defect(random_channel(3, 2, 0)), 1e-6)

    def test_weyl_covariant(self):
        self.assertLessEqual(covariance_defect(self.channel(), 20, 0), 1e-10)

    def test_random_not_covariant(self):
        self.assertGreater(covariance_defect(random_channel(3, 2, 0), 5, 0), 1e-6)

    @staticmethod
    def channel():
        return weyl_channel(ChannelParams(3, 0.05, 0.02))


class TestSerialization(TestCase):
    def test_weyl(self):
        ch = weyl_channel(ChannelParams(3, 0.05, 0.02))
        self.assertLess(superop_distance(ch, from_json(to_json(ch))), 1e-15)

    def test_kraus(self):
        ch = random_channel(2, 3, 4)
        self.assertLess(superop_distance(ch, from_json(to_json(ch))), 1e-12)

    def test_bare_kraus(self):
        ch = from_json('{"kraus": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]}')
        self.assertIsInstance(ch, KrausChannel)
        self.assertEqual(2, ch.dim_in)

    def test_negative_table(self):
        s = '{"kind": "weyl", "d": 2, "coeffs": [[-0.1, 0.5], [0.3, 0.3]]}'
        self.assertRaises(InvalidParameter, from_json, s)
        self.assertIsInstance(from_json(s, unchecked=True), WeylMixSpec)

    def test_unknown_kind(self):
        self.assertRaises(InvalidParameter, from_json, '{"kind": "stinespring"}')

    def test_not_json(self):
        with self.assertRaises(InvalidParameter) as cm:
            from_json("{not json")
        self.assertEqual("channel-json", cm.exception.parameter)
