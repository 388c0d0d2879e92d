# -*- coding: utf8 -*-

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import math
import unittest

import numpy as np

from kerrlab.errors import DimensionMismatch, InvalidParameter
from kerrlab.fock import (
    apply_unitary,
    coherent_state,
    fidelity,
    fock_state,
    polarization_state,
    project_out,
    tensor,
)
from kerrlab.optics import (
    ConditionalKerrPhase,
    KerrParams,
    beam_splitter,
    conditional_kerr,
    kerr_evolution,
    kerr_phase_rate,
    phase_shift,
    polarizing_bs,
)
from kerrlab.utils import is_unitary


class TestBeamSplitter(unittest.TestCase):
    def test_single_photon(self):
        """|1,0⟩ → √t|1,0⟩ + i√(1−t)|0,1⟩"""
        state = tensor([fock_state(1, 1, "a"), fock_state(0, 1, "b")])
        state = apply_unitary(beam_splitter(0.3), state, ["a", "b"])

        self.assertAlmostEqual(state.amplitudes[2], math.sqrt(0.3), places=12)
        self.assertAlmostEqual(state.amplitudes[1], 1j * math.sqrt(0.7), places=12)

    def test_hong_ou_mandel(self):
        """Two photons on a balanced splitter never leave on separate ports."""
        state = tensor([fock_state(1, 2, "a"), fock_state(1, 2, "b")])
        state = apply_unitary(beam_splitter(0.5, 2), state, ["a", "b"])
        probabilities = state.probabilities()

        self.assertLess(probabilities[1 * 3 + 1], 1e-24)
        self.assertAlmostEqual(probabilities[2 * 3 + 0], 0.5, places=12)
        self.assertAlmostEqual(probabilities[0 * 3 + 2], 0.5, places=12)

    def test_unitary_at_larger_cutoff(self):
        self.assertTrue(is_unitary(beam_splitter(0.2, 5)))

    def test_full_transmission(self):
        self.assertTrue(np.allclose(beam_splitter(1.0, 2), np.eye(9), rtol=0, atol=1e-15))

    def test_zero_transmittance_swaps_modes(self):
        """With t = 0 every photon is reflected and picks up a factor i."""
        unitary = beam_splitter(0.0, 2)
        expected = np.zeros((9, 9), dtype=complex)
        for a in range(3):
            for b in range(3):
                expected[b * 3 + a, a * 3 + b] = 1j ** (a + b)

        self.assertTrue(np.allclose(unitary, expected, rtol=0, atol=1e-12))

    def test_invalid_transmittance(self):
        with self.assertRaises(InvalidParameter):
            beam_splitter(1.5)

    def test_unequal_cutoffs(self):
        with self.assertRaises(DimensionMismatch):
            beam_splitter(0.5, 1, 2)


class TestPolarizingSplitter(unittest.TestCase):
    def test_self_inverse(self):
        """The polarizing splitter undoes itself."""
        unitary = polarizing_bs(2)
        self.assertTrue(np.allclose(unitary @ unitary, np.eye(18), rtol=0, atol=0))

    def test_routes_h_to_path_3(self):
        modes = ["pol", "arm2", "arm3"]
        for label, index in (("H", 0 * 4 + 0 * 2 + 1), ("V", 1 * 4 + 1 * 2 + 0)):
            state = tensor([
                polarization_state(label, "pol"), fock_state(1, 1, "arm2"), fock_state(0, 1, "arm3")])
            state = apply_unitary(polarizing_bs(), state, modes)
            self.assertEqual(abs(state.amplitudes[index]), 1.0)


class TestKerr(unittest.TestCase):
    def test_evolution_phases(self):
        params = KerrParams(chi=0.7, chi_s=0.2, omega_s=0.3, T=0.5)
        unitary = kerr_evolution(params, 1, 3)

        # n_s = 1, n_p = 2: G = 0.3 + 0.1·2 + 2·0.7·2
        self.assertAlmostEqual(unitary[1 * 4 + 2, 1 * 4 + 2], np.exp(-0.5j * 3.3), places=12)
        self.assertAlmostEqual(unitary[0 * 4 + 3, 0 * 4 + 3], 1.0, places=15)
        self.assertTrue(is_unitary(unitary))

    def test_probe_rotation(self):
        params = KerrParams(chi=1.0, T=math.pi / 4)
        self.assertAlmostEqual(params.probe_phase, math.pi / 2, places=15)
        diagonal = np.diag(kerr_evolution(params, 1, 4))
        self.assertAlmostEqual(diagonal[5 + 1], np.exp(-1j * math.pi / 2), places=12)

    def test_evolution_composes(self):
        params = KerrParams(chi=0.9, chi_s=0.3, omega_s=1.1)
        first = kerr_evolution(params.with_time(0.4), 1, 5)
        second = kerr_evolution(params.with_time(0.7), 1, 5)
        combined = kerr_evolution(params.with_time(1.1), 1, 5)

        self.assertTrue(np.allclose(first @ second, combined, rtol=0, atol=1e-12))

    def test_photon_branch_rotates_probe(self):
        """One signal photon leaves the probe in |ν e^{−i2χT}⟩."""
        nu, params = 1.2 - 0.4j, KerrParams(chi=1.0, chi_s=0.2, omega_s=0.5, T=0.35)
        cutoff = coherent_state(nu).layout.modes[0].cutoff
        state = tensor([fock_state(1, 1, "signal"), coherent_state(nu, cutoff, "probe")])
        state = apply_unitary(kerr_evolution(params, 1, cutoff), state, ["signal", "probe"])
        probe, probability = project_out(state, "signal", [0.0, 1.0])

        rotated = coherent_state(nu * np.exp(-1j * params.probe_phase), cutoff, "probe")
        self.assertAlmostEqual(probability, 1.0, places=12)
        self.assertAlmostEqual(fidelity(probe, rotated), 1.0, places=12)

    def test_signal_phase(self):
        params = KerrParams(chi=1.0, chi_s=0.5, omega_s=1.5, T=2.0)
        self.assertEqual(params.signal_phase, 4.0)
        self.assertEqual(params.with_time(1.0).signal_phase, 2.0)

    def test_phase_rate(self):
        params = KerrParams(chi=0.5, chi_s=0.2, omega_s=1.0)
        self.assertAlmostEqual(kerr_phase_rate(params, 1, 3), 1.0 + 0.1 + 0.2 + 3.0, places=15)

    def test_invalid_parameters(self):
        with self.assertRaises(InvalidParameter):
            KerrParams(chi=1.0, T=-1.0)
        with self.assertRaises(InvalidParameter):
            KerrParams(chi=float("inf"))

    def test_phase_shift(self):
        shift = phase_shift(0.4, 2)
        self.assertTrue(np.allclose(
            np.diag(shift), [1.0, np.exp(0.4j), np.exp(0.8j)], rtol=0, atol=1e-15))

    def test_phase_shift_rotates_coherent_state(self):
        state = coherent_state(0.8 + 0.3j, 16, "mode")
        shifted = apply_unitary(phase_shift(0.9, 16), state, "mode")
        expected = coherent_state((0.8 + 0.3j) * np.exp(0.9j), 16, "mode")

        self.assertTrue(np.allclose(shifted.amplitudes, expected.amplitudes, rtol=0, atol=1e-12))

    def test_full_turn_is_identity(self):
        self.assertTrue(np.allclose(
            phase_shift(2.0 * math.pi, 6), np.eye(7), rtol=0, atol=1e-12))


class TestConditionalKerr(unittest.TestCase):
    def test_only_vv_picks_up_phase(self):
        """Only |V>|V> picks up the phase."""
        gate = conditional_kerr(ConditionalKerrPhase(math.pi / 2))
        self.assertTrue(np.allclose(np.diag(gate), [1, 1, 1, 1j], rtol=0, atol=1e-15))

    def test_plain_phase(self):
        self.assertTrue(np.allclose(
            conditional_kerr(math.pi), np.diag([1, 1, 1, -1]), rtol=0, atol=1e-15))

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            conditional_kerr(math.pi, dims=(2, 3))
