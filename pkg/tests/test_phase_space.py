# -*- coding: utf8 -*-

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import math
import unittest

import numpy as np

from scipy.integrate import trapezoid
from scipy.stats import kstest, norm
from kerrlab.errors import CutoffTooSmall, DimensionMismatch, GridTooCoarse, InvalidParameter
from kerrlab.fock import coherent_state, coherent_superposition, fock_state, polarization_state
from kerrlab.phase_space import (
    GridSpec,
    NOISE_TAIL,
    SAMPLER_PADDING,
    NoiseModel,
    QuadratureDataset,
    default_phases,
    hermite_functions,
    homodyne_sample,
    parity,
    quadrature_pdf,
    wigner,
)


class TestWigner(unittest.TestCase):
    def test_vacuum_at_origin(self):
        """Vacuum peaks at 1/pi and integrates to one."""
        grid = wigner(coherent_state(0, 4), GridSpec(5.0, 5.0, 101))
        self.assertAlmostEqual(grid.value_at(0.0, 0.0), 1.0 / math.pi, places=12)
        self.assertAlmostEqual(grid.integral(), 1.0, places=6)

    def test_coherent_state_is_displaced_gaussian(self):
        nu = 0.5 + 0.5j
        grid = wigner(coherent_state(nu), GridSpec(4.0, 4.0, 41))
        x, p = np.meshgrid(grid.x_values, grid.p_values)
        x0, p0 = math.sqrt(2.0) * nu.real, math.sqrt(2.0) * nu.imag
        expected = np.exp(-(x - x0) ** 2 - (p - p0) ** 2) / math.pi

        self.assertTrue(np.allclose(grid.values, expected, rtol=0, atol=1e-9))

    def test_odd_cat_is_negative_at_origin(self):
        """An odd cat reaches -1/pi at the origin."""
        cat = coherent_superposition([1.5, -1.5], [1.0, -1.0])
        grid = wigner(cat, GridSpec.for_amplitude(1.5, 81))
        minimum, _ = grid.minimum()

        self.assertAlmostEqual(minimum, -1.0 / math.pi, places=9)
        self.assertAlmostEqual(grid.integral(), 1.0, places=4)

    def test_fock_state_marginal(self):
        """Integrating over p gives |psi_1(x)|^2."""
        grid = wigner(fock_state(1, 3), GridSpec(6.0, 6.0, 121))
        expected = hermite_functions(3, grid.x_values)[1] ** 2
        self.assertTrue(np.allclose(grid.marginal_x(), expected, rtol=0, atol=1e-6))

    def test_grid_too_coarse(self):
        with self.assertRaises(GridTooCoarse):
            wigner(coherent_state(2.0), GridSpec(1.0, 1.0, 11))

    def test_rejects_qubit(self):
        with self.assertRaises(DimensionMismatch):
            wigner(polarization_state("H"))

    def test_parity(self):
        self.assertAlmostEqual(parity(fock_state(3, 5)), -1.0, places=15)
        self.assertAlmostEqual(parity(coherent_state(0, 2)), 1.0, places=15)


class TestQuadratures(unittest.TestCase):
    def test_hermite_functions_are_orthonormal(self):
        x = np.linspace(-12.0, 12.0, 4001)
        psi = hermite_functions(10, x)
        gram = trapezoid(psi[:, None, :] * psi[None, :, :], x, axis=2)
        self.assertTrue(np.allclose(gram, np.eye(11), rtol=0, atol=1e-8))

    def test_vacuum_distribution(self):
        x = np.linspace(-3.0, 3.0, 13)
        pdf = quadrature_pdf(coherent_state(0, 4), 0.7, x)
        self.assertTrue(np.allclose(pdf, np.exp(-x ** 2) / math.sqrt(math.pi), rtol=0, atol=1e-12))

    def test_coherent_distribution(self):
        """Gaussian centred at √2 Re(ν e^{−iθ}) with variance ½."""
        nu, theta = 1.0 + 0.5j, math.pi / 3
        x = np.linspace(-4.0, 5.0, 37)
        mean = math.sqrt(2.0) * (nu * complex(math.cos(theta), -math.sin(theta))).real

        pdf = quadrature_pdf(coherent_state(nu), theta, x)
        expected = np.exp(-(x - mean) ** 2) / math.sqrt(math.pi)
        self.assertTrue(np.allclose(pdf, expected, rtol=0, atol=1e-10))

    def test_bare_amplitude_with_small_cutoff(self):
        with self.assertRaises(CutoffTooSmall):
            quadrature_pdf(2.0, 0.0, [0.0], cutoff=5)


class TestNoiseModel(unittest.TestCase):
    def test_additive(self):
        noise = NoiseModel("additive_gaussian", 0.5)
        self.assertEqual(noise.gain, 1.0)
        self.assertAlmostEqual(noise.std, 0.5 * math.sqrt(0.5), places=15)

    def test_efficiency(self):
        noise = NoiseModel("efficiency", eta=0.64)
        self.assertAlmostEqual(noise.gain, 0.8, places=15)
        self.assertAlmostEqual(noise.std, math.sqrt(0.18), places=15)

    def test_trivial(self):
        self.assertTrue(NoiseModel().is_trivial)
        self.assertTrue(NoiseModel("additive_gaussian", 0.0).is_trivial)

    def test_invalid(self):
        with self.assertRaises(InvalidParameter):
            NoiseModel("shot")
        with self.assertRaises(InvalidParameter):
            NoiseModel("efficiency", eta=0.0)
        with self.assertRaises(InvalidParameter):
            NoiseModel("additive_gaussian", -0.1)

    def test_round_trip(self):
        noise = NoiseModel("efficiency", 0.0, 0.9)
        self.assertEqual(NoiseModel.from_dict(noise.to_dict()), noise)


class TestHomodyneSampling(unittest.TestCase):
    def test_deterministic(self):
        state = coherent_state(1.0)
        first = homodyne_sample(state, default_phases(4), 500, seed=9)
        second = homodyne_sample(state, default_phases(4), 500, seed=9)
        other = homodyne_sample(state, default_phases(4), 500, seed=10)

        self.assertTrue(np.array_equal(first.values, second.values))
        self.assertFalse(np.array_equal(first.values, other.values))

    def test_independent_of_workers(self):
        """Splitting the draws over threads does not change them."""
        state = coherent_superposition([1.0, -1.0], [1.0, -1.0])
        noise = NoiseModel("additive_gaussian", 0.3)
        single = homodyne_sample(state, default_phases(8), 300, noise, seed=4, workers=1)
        threaded = homodyne_sample(state, default_phases(8), 300, noise, seed=4, workers=4)

        self.assertTrue(np.array_equal(single.values, threaded.values))
        self.assertTrue(np.array_equal(single.lo_phases, threaded.lo_phases))

    def test_vacuum_moments(self):
        data = homodyne_sample(coherent_state(0, 4), [0.0], 20000, seed=1)
        self.assertAlmostEqual(float(np.mean(data.values)), 0.0, delta=0.02)
        self.assertAlmostEqual(float(np.var(data.values)), 0.5, delta=0.03)

    def test_additive_noise_widens(self):
        noise = NoiseModel("additive_gaussian", 0.5)
        data = homodyne_sample(coherent_state(0, 4), [0.0], 20000, noise, seed=2)
        self.assertAlmostEqual(float(np.var(data.values)), 0.625, delta=0.035)

    def test_efficiency_shrinks_mean(self):
        """Rescaled efficiency data keep the mean and vacuum variance."""
        noise = NoiseModel("efficiency", eta=0.5)
        data = homodyne_sample(coherent_state(1.0), [0.0], 20000, noise, seed=3)
        self.assertAlmostEqual(float(np.mean(data.values)), 1.0, delta=0.02)
        self.assertAlmostEqual(float(np.var(data.values)), 0.5, delta=0.03)

    def test_matches_distribution(self):
        """Samples pass a KS test against the analytic Gaussian."""
        theta = math.pi / 3
        data = homodyne_sample(coherent_state(1.0), [theta], 5000, seed=5)
        reference = norm(loc=math.sqrt(2.0) * math.cos(theta), scale=math.sqrt(0.5))

        self.assertGreater(kstest(data.values, reference.cdf).pvalue, 1e-3)

    def test_records_sampler_support(self):
        """The dataset keeps the sampler interval widened by the noise."""
        noise = NoiseModel("additive_gaussian", 0.5)
        data = homodyne_sample(coherent_state(0, 4), [0.0, 1.0], 2000, noise, seed=6)

        self.assertAlmostEqual(data.support, SAMPLER_PADDING + NOISE_TAIL * noise.std, places=12)
        self.assertLess(float(np.max(np.abs(data.values))), data.support)
        self.assertEqual(data.resample(np.random.default_rng(1)).support, data.support)

        efficiency = NoiseModel("efficiency", eta=0.64)
        data = homodyne_sample(coherent_state(0, 4), [0.0], 10, efficiency, seed=6)
        self.assertAlmostEqual(
            data.support, 0.8 * SAMPLER_PADDING + NOISE_TAIL * efficiency.std, places=12)

    def test_rejects_phase_outside_range(self):
        with self.assertRaises(InvalidParameter):
            homodyne_sample(coherent_state(0, 4), [math.pi], 10)


class TestQuadratureDataset(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(InvalidParameter):
            QuadratureDataset([0.0, 1.0], [0.1])
        with self.assertRaises(InvalidParameter):
            QuadratureDataset([math.pi], [0.1])
        with self.assertRaises(InvalidParameter):
            QuadratureDataset([], [])
        with self.assertRaises(InvalidParameter):
            QuadratureDataset([0.0], [0.1], support=0.0)

    def test_by_phase(self):
        data = QuadratureDataset([0.5, 0.0, 0.5], [1.0, 2.0, 3.0])
        groups = data.by_phase()
        self.assertEqual([phase for phase, _ in groups], [0.0, 0.5])
        self.assertEqual(groups[1][1].tolist(), [1.0, 3.0])

    def test_resample(self):
        data = QuadratureDataset(default_phases(4), [1.0, 2.0, 3.0, 4.0], seed=3)
        copy = data.resample(np.random.default_rng(0))

        self.assertEqual(len(copy), 4)
        self.assertTrue(set(copy.values.tolist()) <= {1.0, 2.0, 3.0, 4.0})
        self.assertEqual(copy.seed, 3)

    def test_default_phases(self):
        self.assertTrue(np.allclose(
            default_phases(4), [0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4], rtol=0, atol=0))
        with self.assertRaises(InvalidParameter):
            default_phases(0)
