# -*- coding: utf8 -*-

"""
Unitaries of the optical circuit: beam splitters, the polarizing splitter,
phase shifters, Kerr-cell evolution and the polarization-conditional Kerr
gate.

Phase conventions: reflection at a beam splitter picks up a factor i, the
Kerr cell evolves as exp(−iGT), so the probe rotates by e^{−i2χT} for each
signal photon.
"""

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import math
import logging

from dataclasses import dataclass, replace

import numpy as np

from scipy.linalg import expm

from .errors import DimensionMismatch, InvalidParameter
from .fock import annihilation_operator


logger = logging.getLogger("kerrlab")


def _check_finite(**values):
    for name, value in values.items():
        if not math.isfinite(value):
            raise InvalidParameter("%s must be finite, got %r" % (name, value))


@dataclass(frozen=True)
class KerrParams:
    """
    Couplings of a Kerr cell (rad per unit time) and its interaction time.

    :param chi: cross-Kerr coupling χ between signal and probe.
    :param chi_s: self-Kerr coupling χ_s of the signal.
    :param omega_s: signal frequency ω_s.
    :param T: interaction time.
    """
    chi: float
    chi_s: float = 0.0
    omega_s: float = 0.0
    T: float = 0.0

    def __post_init__(self):
        _check_finite(chi=self.chi, chi_s=self.chi_s, omega_s=self.omega_s, T=self.T)
        if self.T < 0:
            raise InvalidParameter("interaction time T must be >= 0, got %r" % self.T)

    @property
    def probe_phase(self):
        """Probe rotation 2χT imprinted by one signal photon."""
        return 2.0 * self.chi * self.T

    @property
    def signal_phase(self):
        """(ω_s + χ_s)T, the one-photon signal phase."""
        return (self.omega_s + self.chi_s) * self.T

    def with_time(self, T):
        return replace(self, T=T)


@dataclass(frozen=True)
class ConditionalKerrPhase:
    """Phase φ picked up by the |V⟩|V⟩ component only."""
    phi: float

    def __post_init__(self):
        _check_finite(phi=self.phi)


def beam_splitter(transmittance=0.5, cutoff=1, cutoff_b=None):
    """
    Two-mode beam splitter exp(iτ(a†b + ab†)) with cos²τ = ``transmittance``.

    Creation operators transform as a† → √t a† + i√(1−t) b† and
    b† → i√(1−t) a† + √t b†; a single photon in the first mode leaves as
    √t|1,0⟩ + i√(1−t)|0,1⟩. The truncated generator is exponentiated
    densely, which is exact on every sector with total photon number
    ≤ ``cutoff``.
    """
    if cutoff_b is not None and cutoff_b != cutoff:
        raise DimensionMismatch(
            "beam splitter modes need equal cutoffs, got %r and %r" % (cutoff, cutoff_b))
    if not 0.0 <= transmittance <= 1.0:
        raise InvalidParameter("transmittance must lie in [0, 1], got %r" % transmittance)

    a = annihilation_operator(cutoff)
    identity = np.eye(cutoff + 1)
    a_first = np.kron(a, identity)
    a_second = np.kron(identity, a)
    generator = a_first.conj().T @ a_second + a_first @ a_second.conj().T

    tau = math.acos(math.sqrt(transmittance))
    return expm(1j * tau * generator)


def polarizing_bs(cutoff=1):
    """
    Polarizing splitter on (polarization qubit, path 2, path 3).

    The photon enters on path 2; V keeps to path 2, H is routed to path 3.
    The element is a swap of the two paths controlled by H and is its own
    inverse, so the same unitary recombines the paths.
    """
    dim = cutoff + 1
    swap = np.zeros((dim * dim, dim * dim), dtype=complex)
    for m in range(dim):
        for n in range(dim):
            swap[n * dim + m, m * dim + n] = 1.0

    unitary = np.zeros((2 * dim * dim, 2 * dim * dim), dtype=complex)
    unitary[:dim * dim, :dim * dim] = swap
    unitary[dim * dim:, dim * dim:] = np.eye(dim * dim)
    return unitary


def phase_shift(theta, cutoff):
    """|n⟩ → e^{inθ}|n⟩"""
    return np.diag(np.exp(1j * theta * np.arange(cutoff + 1)))


def kerr_generator_diagonal(params, signal_cutoff, probe_cutoff):
    """
    Diagonal of G = ω_s n_s + (χ_s/2) n_s(n_s+1) + 2χ n_s n_p over the joint
    (signal, probe) Fock basis.
    """
    n_s = np.arange(signal_cutoff + 1, dtype=float)[:, None]
    n_p = np.arange(probe_cutoff + 1, dtype=float)[None, :]
    generator = (params.omega_s * n_s
                 + 0.5 * params.chi_s * n_s * (n_s + 1)
                 + 2.0 * params.chi * n_s * n_p)
    return generator.ravel()


def kerr_evolution(params, signal_cutoff, probe_cutoff):
    """
    Kerr-cell unitary exp(−iGT) on (signal, probe); diagonal in the joint
    Fock basis.
    """
    if signal_cutoff < 1 or probe_cutoff < 1:
        raise DimensionMismatch("Kerr cell acts on two bosonic modes")

    diagonal = kerr_generator_diagonal(params, signal_cutoff, probe_cutoff)
    logger.debug(
        "Kerr cell chi=%f chi_s=%f omega_s=%f T=%f (probe phase %f per photon)",
        params.chi, params.chi_s, params.omega_s, params.T, params.probe_phase)
    return np.diag(np.exp(-1j * params.T * diagonal))


def kerr_phase_rate(params, n_s, n_p):
    """β = ω_s + χ_s/2 + χ_s n_s + 2χ n_p"""
    return params.omega_s + 0.5 * params.chi_s + params.chi_s * n_s + 2.0 * params.chi * n_p


def conditional_kerr(phase, dims=(2, 2)):
    """diag(1, 1, 1, e^{iφ}) in the basis (HH, HV, VH, VV)."""
    if tuple(dims) != (2, 2):
        raise DimensionMismatch("conditional Kerr gate acts on two qubits, got %r" % (dims,))

    phi = phase.phi if isinstance(phase, ConditionalKerrPhase) else float(phase)
    return np.diag([1.0, 1.0, 1.0, np.exp(1j * phi)])
