# -*- coding: utf8 -*-

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import os
import math
import unittest

import numpy as np

from kerrlab.errors import InsufficientPhases, InvalidParameter, NonConvergence
from kerrlab.fock import DensityMatrix, coherent_state, coherent_superposition
from kerrlab.phase_space import GridSpec, NoiseModel, default_phases, homodyne_sample, wigner
from kerrlab.tomography import (
    IdentificationSweep,
    MaxLikelihood,
    NegativityReport,
    ReconstructionConfig,
    SweepPoint,
    fidelity_to,
    identification_sweep,
    negativity_report,
    reconstruct_maxlik,
    reconstruct_or_last,
)


def sample(state, phases=8, samples=5000, noise=None, seed=0):
    return homodyne_sample(state, default_phases(phases), samples, noise, seed=seed)


class TestReconstructionConfig(unittest.TestCase):
    def test_defaults(self):
        config = ReconstructionConfig()
        self.assertEqual(config.cutoff, 14)
        self.assertEqual(config.max_iterations, 2000)
        self.assertEqual(config.convergence_tol, 1e-6)
        self.assertEqual(config.bin_count, 128)
        self.assertFalse(config.noise_aware)

    def test_invalid(self):
        with self.assertRaises(InvalidParameter):
            ReconstructionConfig(cutoff=0)
        with self.assertRaises(InvalidParameter):
            ReconstructionConfig(convergence_tol=0.0)


class TestMaxLikelihood(unittest.TestCase):
    def test_insufficient_phases(self):
        """Fewer than eight distinct phases cannot pin down the state."""
        data = sample(coherent_state(0, 4), phases=4, samples=100)
        with self.assertRaises(InsufficientPhases):
            reconstruct_maxlik(data)

    def test_vacuum(self):
        """Reconstruct the vacuum from clean data."""
        data = sample(coherent_state(0, 6))
        config = ReconstructionConfig(cutoff=6, max_iterations=500, bin_count=64)
        rho, _ = reconstruct_or_last(data, config)

        self.assertIsInstance(rho, DensityMatrix)
        self.assertAlmostEqual(rho.trace, 1.0, places=10)
        self.assertGreater(fidelity_to(coherent_state(0, 6), rho), 0.99)

    def test_coherent_state(self):
        data = sample(coherent_state(1.0), seed=1)
        config = ReconstructionConfig(cutoff=8, max_iterations=500, bin_count=64)
        rho, _ = reconstruct_or_last(data, config)

        self.assertGreater(fidelity_to(coherent_state(1.0), rho), 0.98)

    def test_likelihood_never_decreases(self):
        """Every accepted step keeps or raises the log-likelihood."""
        data = sample(coherent_superposition([1.0, -1.0], [1.0, -1.0]), seed=2)
        estimator = MaxLikelihood(data, ReconstructionConfig(cutoff=8, max_iterations=40))
        try:
            estimator.run()
        except NonConvergence:
            pass

        history = np.array(estimator.log_likelihood_history)
        self.assertGreater(history.size, 1)
        self.assertGreaterEqual(float(np.min(np.diff(history))), -2e-12)

    def test_iteration_cap(self):
        """Hitting the iteration cap raises with the last iterate attached."""
        data = sample(coherent_state(1.0), seed=3)
        config = ReconstructionConfig(cutoff=8, max_iterations=2, convergence_tol=1e-12)

        with self.assertRaises(NonConvergence) as context:
            reconstruct_maxlik(data, config)

        self.assertEqual(context.exception.iterations, 2)
        self.assertIsInstance(context.exception.rho, DensityMatrix)
        self.assertGreater(context.exception.residual, 1e-12)

    def test_last_iterate_stands_in(self):
        data = sample(coherent_state(1.0), seed=3)
        config = ReconstructionConfig(cutoff=8, max_iterations=2, convergence_tol=1e-12)
        rho, estimator = reconstruct_or_last(data, config)

        self.assertEqual(estimator.iterations, 2)
        self.assertEqual(rho.layout.dims, (9,))

    def test_noise_aware_projectors(self):
        """Smeared projectors undo additive noise well enough for a coherent state."""
        noise = NoiseModel("additive_gaussian", 0.25)
        data = sample(coherent_state(1.0), noise=noise, seed=4)
        config = ReconstructionConfig(cutoff=8, max_iterations=300, bin_count=128,
                                      noise_aware=True)
        rho, _ = reconstruct_or_last(data, config)

        self.assertGreater(fidelity_to(coherent_state(1.0), rho), 0.95)

    def test_resamples_share_bins(self):
        """Bins follow the sampler support, not the extreme records of a draw."""
        data = sample(coherent_superposition([1.0, -1.0], [1.0, -1.0]), samples=300, seed=8)
        config = ReconstructionConfig(cutoff=8, bin_count=64)
        edges = MaxLikelihood(data, config).bin_edges

        self.assertAlmostEqual(edges[-1], data.support, places=6)
        for index in range(3):
            resample = data.resample(np.random.default_rng(index))
            self.assertTrue(np.array_equal(MaxLikelihood(resample, config).bin_edges, edges))

    def test_more_samples_raise_fidelity(self):
        """Fidelity with the source does not drop as samples per phase grow."""
        state = coherent_state(1.0)
        config = ReconstructionConfig(cutoff=8, max_iterations=500, convergence_tol=1e-7,
                                      bin_count=192)
        fidelities = []
        for samples in (400, 4000, 40000):
            rho, _ = reconstruct_or_last(sample(state, samples=samples, seed=9), config)
            fidelities.append(fidelity_to(state, rho))

        for smaller, larger in zip(fidelities, fidelities[1:]):
            self.assertGreaterEqual(larger, smaller - 1e-3)
        self.assertGreater(fidelities[-1], 0.99)


class TestNegativity(unittest.TestCase):
    def test_clean_odd_cat(self):
        """The reconstructed odd cat keeps its negative Wigner dip."""
        cat = coherent_superposition([1.0, -1.0], [1.0, -1.0])
        data = sample(cat, phases=12, seed=5)
        config = ReconstructionConfig(cutoff=10, max_iterations=1000, convergence_tol=1e-7,
                                      bin_count=160)
        rho, _ = reconstruct_or_last(data, config)
        minimum, _ = rho_minimum(rho)

        self.assertAlmostEqual(minimum, -1.0 / math.pi, delta=0.06)

    def test_clean_wide_cat(self):
        """Clean data of the nu = 1.5 odd cat recover the -1/pi dip."""
        cat = coherent_superposition([1.5, -1.5], [1.0, -1.0])
        data = sample(cat, phases=12, samples=10000, seed=10)
        rho, _ = reconstruct_or_last(data, ReconstructionConfig(bin_count=192))
        grid = wigner(rho, GridSpec.for_amplitude(1.5, 81), check_normalization=False)

        self.assertAlmostEqual(grid.minimum()[0], -1.0 / math.pi, delta=0.05)

    def test_noisy_odd_cat_identified(self):
        """Negativity survives 25% additive noise at three sigma."""
        cat = coherent_superposition([1.0, -1.0], [1.0, -1.0])
        noise = NoiseModel("additive_gaussian", 0.25)
        data = sample(cat, phases=12, noise=noise, seed=6)
        config = ReconstructionConfig(cutoff=10, max_iterations=400, convergence_tol=1e-5,
                                      bin_count=128)
        rho, _ = reconstruct_or_last(data, config)
        report = negativity_report(rho, GridSpec.for_amplitude(1.0, 41), 50, data, config, seed=6)

        self.assertTrue(report.identified)
        self.assertLess(report.min_wigner, 0.0)
        self.assertGreaterEqual(report.significance_sigmas, 3.0)
        self.assertEqual(report.bootstrap_resamples, 50)

    def test_vacuum_not_identified(self):
        """A Gaussian state never counts as identified."""
        vacuum = coherent_state(0, 6)
        data = sample(vacuum, samples=2000, seed=7)
        config = ReconstructionConfig(cutoff=6, max_iterations=200, convergence_tol=1e-5,
                                      bin_count=48)
        report = negativity_report(
            vacuum.density_matrix(), GridSpec(5.0, 5.0, 41), 50, data, config, seed=7)

        self.assertFalse(report.identified)
        self.assertGreaterEqual(report.min_wigner, 0.0)
        self.assertLessEqual(report.significance_sigmas, 0.0)

    def test_too_few_resamples(self):
        vacuum = coherent_state(0, 6)
        data = sample(vacuum, samples=100)
        with self.assertRaises(InvalidParameter):
            negativity_report(vacuum.density_matrix(), None, 49, data)

    def test_report_serialization(self):
        report = NegativityReport(-0.1, (0.0, 0.0), 0.0, float("inf"), True, 50)
        self.assertIsNone(report.to_dict()["significance_sigmas"])
        self.assertEqual(report.to_dict()["location"], [0.0, 0.0])


def rho_minimum(rho):
    return wigner(rho, GridSpec.for_amplitude(1.0, 61), check_normalization=False).minimum()


def sweep_point(sigma_fraction, identified):
    report = NegativityReport(-0.2 if identified else 0.0, (0.0, 0.0), 0.01,
                              20.0 if identified else 0.0, identified, 50)
    return SweepPoint(sigma_fraction, 0.9, True, report)


class TestIdentificationSweep(unittest.TestCase):
    def test_first_failure(self):
        sweep = IdentificationSweep((
            sweep_point(0.0, True), sweep_point(0.25, True), sweep_point(0.5, False)))
        self.assertEqual(sweep.first_failure, 0.5)
        self.assertEqual(len(sweep.to_dict()["points"]), 3)

    def test_no_failure(self):
        sweep = IdentificationSweep((sweep_point(0.1, True),))
        self.assertIsNone(sweep.first_failure)
        self.assertIsNone(sweep.to_dict()["first_failure"])

    def test_sweep_runs_in_noise_order(self):
        """Noise levels are processed from the cleanest up."""
        config = ReconstructionConfig(cutoff=6, max_iterations=50, convergence_tol=1e-5,
                                      bin_count=32)
        sweep = identification_sweep(
            coherent_state(0, 6), [0.5, 0.0], phases=8, samples_per_phase=500, config=config,
            bootstrap_resamples=50, grid=GridSpec(4.0, 4.0, 21), seed=1)

        self.assertEqual([point.sigma_fraction for point in sweep.points], [0.0, 0.5])
        self.assertGreater(sweep.points[0].fidelity, 0.95)
        for point in sweep.points:
            self.assertEqual(point.report.bootstrap_resamples, 50)

    def test_efficiency_noise_rejected(self):
        with self.assertRaises(InvalidParameter):
            identification_sweep(coherent_state(0, 6), [0.0, 0.25], noise_kind="efficiency")


@unittest.skipUnless(os.environ.get("KERRLAB_SLOW_TESTS"), "set KERRLAB_SLOW_TESTS to run")
class TestDefaultIdentification(unittest.TestCase):
    def test_noisy_wide_cat_over_seeds(self):
        """
        Default settings identify the nu = 1.5 odd cat under 25% additive
        noise for at least nine seeds out of ten.
        """
        cat = coherent_superposition([1.5, -1.5], [1.0, -1.0])
        noise = NoiseModel("additive_gaussian", 0.25)
        config = ReconstructionConfig()
        grid = GridSpec.for_amplitude(1.5, 81)

        identified = 0
        for seed in range(10):
            data = homodyne_sample(cat, default_phases(12), 10000, noise, seed=seed, workers=4)
            rho, _ = reconstruct_or_last(data, config)
            report = negativity_report(rho, grid, 100, data, config, seed=seed, workers=4)
            identified += report.identified

        self.assertGreaterEqual(identified, 9)
