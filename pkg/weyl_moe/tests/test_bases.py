from unittest import TestCase

import numpy as np

from weyl_moe.bases import (
    computational_basis,
    family_defect,
    fourier_basis,
    is_prime,
    mub_family,
    unbiasedness_defect,
)
from weyl_moe.channels import shift_defect
from weyl_moe.errors import InvalidParameter


class TestIsPrime(TestCase):
    def test_primes(self):
        self.assertListEqual([2, 3, 5, 7, 11], [n for n in range(12) if is_prime(n)])


class TestFourierBasis(TestCase):
    def test_orthonormal(self):
        self.assertLess(fourier_basis(6).orthonormality_defect(), 1e-12)

    def test_unbiased_with_computational(self):
        defect = unbiasedness_defect(fourier_basis(4), computational_basis(4))
        self.assertLess(defect, 1e-12)

    def test_self_defect(self):
        b = fourier_basis(3)
        self.assertAlmostEqual(1 - 1 / np.sqrt(3), unbiasedness_defect(b, b))

    def test_first_vector_uniform(self):
        e0 = fourier_basis(3)[0]
        self.assertTrue(np.allclose(np.ones(3) / np.sqrt(3), e0))


class TestMubFamily(TestCase):
    def test_unbiased(self):
        for d in (2, 3, 5, 7):
            self.assertLess(family_defect(mub_family(d)), 1e-10, msg=f"d={d}")

    def test_orthonormal(self):
        for d in (2, 3, 5):
            for b in mub_family(d):
                self.assertLess(b.orthonormality_defect(), 1e-12)

    def test_size(self):
        family = mub_family(5)
        self.assertEqual(5, len(family))
        self.assertEqual(5, family.dim)

    def test_qubit_vectors(self):
        family = mub_family(2)
        fourier = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        chirped = np.array([[1, 1j], [1, -1j]]) / np.sqrt(2)
        self.assertTrue(np.allclose(fourier, family[0].vectors))
        self.assertTrue(np.allclose(chirped, family[1].vectors))

    def test_first_is_fourier(self):
        self.assertTrue(np.allclose(fourier_basis(3).vectors, mub_family(3)[0].vectors))

    def test_composite_rejected(self):
        with self.assertRaises(InvalidParameter) as cm:
            mub_family(4)
        self.assertEqual("d", cm.exception.parameter)


class TestShift(TestCase):
    def test_weyl_shifts_fourier(self):
        for d in (2, 3, 5):
            self.assertLess(shift_defect(d), 1e-12, msg=f"d={d}")
