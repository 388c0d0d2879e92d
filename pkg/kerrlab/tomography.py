# -*- coding: utf8 -*-

"""
Homodyne tomography: iterative maximum-likelihood reconstruction of a
single-mode density matrix from binned quadrature data, and bootstrap
certification of Wigner negativity.
"""

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import math
import logging

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from scipy.stats import norm

from .errors import InsufficientPhases, InvalidParameter, NonConvergence
from .fock import Bosonic, DensityMatrix, ModeLayout, fidelity
from .phase_space import (
    GridSpec,
    NoiseModel,
    default_phases,
    hermite_functions,
    homodyne_sample,
    wigner,
)
from .utils import clean_zero, derive_rng, trace_distance


logger = logging.getLogger("kerrlab")


MIN_PHASES = 8
MIN_BOOTSTRAP_RESAMPLES = 50
LIKELIHOOD_SLACK = 1e-12
MAX_DILUTIONS = 40
WARM_START_MIXING = 0.1
PROBABILITY_FLOOR = 1e-300
WIGNER_RESOLUTION = 1e-12

# stream identifier for derive_rng
BOOTSTRAP_STREAM = 4


@dataclass(frozen=True)
class ReconstructionConfig:
    """
    :param cutoff: photon-number cutoff of the reconstructed state.
    :param max_iterations: iteration cap.
    :param convergence_tol: trace distance between successive iterates at
        which the iteration stops.
    :param bin_count: quadrature histogram bins per phase.
    :param noise_aware: smear the bin projectors with the dataset's noise
        model instead of using the ideal ones.
    """
    cutoff: int = 14
    max_iterations: int = 2000
    convergence_tol: float = 1e-6
    bin_count: int = 128
    noise_aware: bool = False

    def __post_init__(self):
        if int(self.cutoff) != self.cutoff or self.cutoff < 1:
            raise InvalidParameter("cutoff must be an integer >= 1")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise InvalidParameter("max_iterations must be an integer >= 1")
        if not self.convergence_tol > 0:
            raise InvalidParameter("convergence_tol must be > 0")
        if int(self.bin_count) != self.bin_count or self.bin_count < 2:
            raise InvalidParameter("bin_count must be an integer >= 2")

    def to_dict(self):
        return {
            "cutoff": self.cutoff,
            "max_iterations": self.max_iterations,
            "convergence_tol": self.convergence_tol,
            "bin_count": self.bin_count,
            "noise_aware": self.noise_aware,
        }


def _bin_edges(data, bin_count):
    """
    Equal-width bins over the recorded sampler support, so that bootstrap
    resamples of one dataset share their bins. Records outside it widen it.
    """
    extent = float(np.max(np.abs(data.values)))
    if data.support is not None:
        extent = max(extent, data.support)
    extent = extent * (1.0 + 1e-9) if extent > 0 else 1.0
    return np.linspace(-extent, extent, bin_count + 1)


def _transfer_matrix(edges, noise, noise_aware):
    """
    (ideal quadrature points, M) with M[j, l] the weight of ideal point l in
    bin j, integration step included.
    """
    centers = 0.5 * (edges[:-1] + edges[1:])
    width = edges[1] - edges[0]
    if not noise_aware or noise.is_trivial:
        return centers, width * np.eye(centers.size)

    gain, std = noise.gain, noise.std
    extent = (edges[-1] + 4.0 * std) / gain
    points = np.linspace(-extent, extent, 2 * centers.size + 1)
    step = points[1] - points[0]
    shifted = gain * points[None, :]
    upper = norm.cdf((edges[1:, None] - shifted) / std)
    lower = norm.cdf((edges[:-1, None] - shifted) / std)
    return points, step * (upper - lower)


class MaxLikelihood(object):
    """
    Fixed-point iteration ρ ← N[R(ρ) ρ R(ρ)] with R(ρ) = Σ f_i/p_i(ρ) Π_i
    over the (phase, bin) outcomes. A step that would lower the
    log-likelihood is replaced by the diluted update
    N[(I + εR) ρ (I + εR)] with ε halved until the likelihood does not drop.
    """

    def __init__(self, data, config=None):
        self._config = config or ReconstructionConfig()
        phases = data.distinct_phases()
        if phases.size < MIN_PHASES:
            raise InsufficientPhases(
                "reconstruction needs at least %d distinct phases, got %d"
                % (MIN_PHASES, phases.size))

        cutoff = self._config.cutoff
        edges = _bin_edges(data, self._config.bin_count)
        points, transfer = _transfer_matrix(edges, data.noise, self._config.noise_aware)

        groups = data.by_phase()
        counts = np.array([np.histogram(values, bins=edges)[0] for _, values in groups], float)
        totals = counts.sum(axis=1, keepdims=True)
        # each phase carries weight 1/K so that Σ Π ≈ I
        self._frequencies = counts / totals / len(groups)
        self._edges = edges
        self._transfer = transfer

        psi = hermite_functions(cutoff, points)
        n = np.arange(cutoff + 1)
        vectors = [psi * np.exp(1j * phase * n)[:, None] for phase, _ in groups]
        # (cutoff + 1, phases * points)
        self._vectors = np.concatenate(vectors, axis=1)
        self._shape = (len(groups), points.size)

        self._rho = np.eye(cutoff + 1, dtype=complex) / (cutoff + 1)
        self._history = []
        self._iterations = 0
        self._residual = float("inf")

    @property
    def config(self):
        return self._config

    @property
    def rho(self):
        return self._rho

    @property
    def bin_edges(self):
        return self._edges

    @property
    def iterations(self):
        return self._iterations

    @property
    def residual(self):
        return self._residual

    @property
    def log_likelihood_history(self):
        return list(self._history)

    def start_from(self, rho):
        matrix = np.asarray(getattr(rho, "matrix", rho), dtype=complex)
        if matrix.shape != self._rho.shape:
            raise InvalidParameter("initial state must have cutoff %d" % self._config.cutoff)
        self._rho = matrix / np.trace(matrix).real
        return self

    def probabilities(self, rho):
        """Outcome probabilities p_kj = Tr(Π_kj ρ), shape (phases, bins)."""
        ideal = np.real(np.sum(self._vectors.conj() * (rho @ self._vectors), axis=0))
        return ideal.reshape(self._shape) @ self._transfer.T

    def log_likelihood(self, rho):
        probabilities = np.maximum(self.probabilities(rho), PROBABILITY_FLOOR)
        mask = self._frequencies > 0
        return float(np.sum(self._frequencies[mask] * np.log(probabilities[mask])))

    def _r_operator(self, rho):
        probabilities = np.maximum(self.probabilities(rho), PROBABILITY_FLOOR)
        weights = (self._frequencies / probabilities) @ self._transfer
        return (self._vectors * weights.ravel()) @ self._vectors.conj().T

    @staticmethod
    def _normalized(rho):
        rho = 0.5 * (rho + rho.conj().T)
        return rho / np.trace(rho).real

    def step(self):
        """One monotone update; returns the trace distance moved."""
        rho = self._rho
        current = self._history[-1] if self._history else self.log_likelihood(rho)
        r = self._r_operator(rho)

        candidate = self._normalized(r @ rho @ r)
        likelihood = self.log_likelihood(candidate)
        epsilon = 1.0
        dilutions = 0
        identity = np.eye(rho.shape[0])
        while likelihood < current - LIKELIHOOD_SLACK and dilutions < MAX_DILUTIONS:
            diluted = identity + epsilon * r
            candidate = self._normalized(diluted @ rho @ diluted)
            likelihood = self.log_likelihood(candidate)
            epsilon *= 0.5
            dilutions += 1

        if likelihood < current - LIKELIHOOD_SLACK:
            candidate, likelihood = rho, current

        self._residual = trace_distance(candidate, rho)
        self._rho = candidate
        self._history.append(likelihood)
        self._iterations += 1
        return self._residual

    def run(self):
        """
        Iterates until the residual drops below ``convergence_tol``.

        :raises NonConvergence: after ``max_iterations`` steps, carrying the
            last iterate.
        """
        config = self._config
        if not self._history:
            self._history.append(self.log_likelihood(self._rho))

        while self._iterations < config.max_iterations:
            if self.step() < config.convergence_tol:
                logger.debug(
                    "Maximum likelihood converged after %d iterations (residual %.3e).",
                    self._iterations, self._residual)
                return self.density_matrix()

        raise NonConvergence(
            "no convergence after %d iterations (residual %.3e)"
            % (self._iterations, self._residual),
            self._residual, self._iterations, self.density_matrix())

    def density_matrix(self):
        layout = ModeLayout([Bosonic("mode", self._config.cutoff)])
        return DensityMatrix(layout, self._normalized(self._rho))


def reconstruct_maxlik(data, config=None, initial=None):
    """
    Maximum-likelihood density matrix of ``data``.

    :raises InsufficientPhases: fewer than 8 distinct local-oscillator phases.
    :raises NonConvergence: iteration cap reached.
    """
    estimator = MaxLikelihood(data, config)
    if initial is not None:
        estimator.start_from(initial)
    return estimator.run()


def _warm_start(rho):
    matrix = np.asarray(rho.matrix)
    dim = matrix.shape[0]
    return (1.0 - WARM_START_MIXING) * matrix + WARM_START_MIXING * np.eye(dim) / dim


@dataclass(frozen=True)
class NegativityReport:
    min_wigner: float
    location: tuple
    bootstrap_std: float
    significance_sigmas: float
    identified: bool
    bootstrap_resamples: int = 0
    failed_resamples: int = 0

    def to_dict(self):
        significance = self.significance_sigmas
        return {
            "min_wigner": self.min_wigner,
            "location": list(self.location),
            "bootstrap_std": self.bootstrap_std,
            "significance_sigmas": significance if math.isfinite(significance) else None,
            "identified": self.identified,
            "bootstrap_resamples": self.bootstrap_resamples,
            "failed_resamples": self.failed_resamples,
        }


def _significance(minimum, std):
    if std > 0:
        return -minimum / std
    if minimum < 0:
        return float("inf")
    return 0.0


def _wigner_minimum(rho, grid):
    minimum, location = wigner(rho, grid, check_normalization=False).minimum()
    return clean_zero(minimum, WIGNER_RESOLUTION), location


def negativity_report(rho, grid, bootstrap_resamples, data, config=None, seed=0, workers=1):
    """
    Wigner minimum of ``rho`` on ``grid`` and its bootstrap spread: ``data``
    is resampled with replacement and reconstructed again for every
    resample. A resample that hits the iteration cap contributes its last
    iterate and a warning.
    """
    if bootstrap_resamples < MIN_BOOTSTRAP_RESAMPLES:
        raise InvalidParameter(
            "bootstrap needs at least %d resamples" % MIN_BOOTSTRAP_RESAMPLES)
    if grid is None:
        grid = GridSpec.for_state(rho)
    config = config or ReconstructionConfig(cutoff=rho.layout.modes[0].cutoff)

    minimum, location = _wigner_minimum(rho, grid)
    start = _warm_start(rho)

    def resample(index):
        rng = derive_rng(seed, BOOTSTRAP_STREAM, index)
        estimator = MaxLikelihood(data.resample(rng), config).start_from(start)
        try:
            reconstructed, failed = estimator.run(), False
        except NonConvergence as e:
            logger.warning("Bootstrap resample %d: %s", index, e)
            reconstructed, failed = e.rho, True
        return _wigner_minimum(reconstructed, grid)[0], failed

    indices = range(bootstrap_resamples)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(resample, indices))
    else:
        results = [resample(index) for index in indices]

    minima = np.array([value for value, _ in results])
    std = float(np.std(minima, ddof=1))
    report = NegativityReport(
        minimum, location, std, _significance(minimum, std), bool(minimum + 3.0 * std < 0),
        bootstrap_resamples, sum(1 for _, failed in results if failed))

    logger.info(
        "Wigner minimum %.6f at (%.3f, %.3f), bootstrap std %.6f: %s.",
        minimum, location[0], location[1], std,
        "identified" if report.identified else "not identified")
    return report


@dataclass(frozen=True)
class SweepPoint:
    sigma_fraction: float
    fidelity: float
    converged: bool
    report: NegativityReport


@dataclass(frozen=True)
class IdentificationSweep:
    points: tuple = field(default_factory=tuple)

    @property
    def first_failure(self):
        """Smallest noise level at which identification fails, if any."""
        for point in self.points:
            if not point.report.identified:
                return point.sigma_fraction
        return None

    def to_dict(self):
        return {
            "first_failure": self.first_failure,
            "points": [
                dict(point.report.to_dict(), sigma_fraction=point.sigma_fraction,
                     fidelity=point.fidelity, converged=point.converged)
                for point in self.points
            ],
        }


def identification_sweep(state, sigma_fractions, phases=12, samples_per_phase=10000,
                         config=None, bootstrap_resamples=100, grid=None, seed=0,
                         workers=1, noise_kind="additive_gaussian"):
    """
    Samples ``state``, reconstructs and certifies negativity for every noise
    level in ``sigma_fractions`` (sorted ascending). Efficiency noise has
    no sigma to sweep and is rejected.
    """
    if noise_kind == "efficiency":
        raise InvalidParameter("efficiency noise has no sigma_fraction to sweep")
    config = config or ReconstructionConfig()
    lo_phases = default_phases(phases)
    points = []
    for level, sigma_fraction in enumerate(sorted(float(s) for s in sigma_fractions)):
        noise = NoiseModel(noise_kind if sigma_fraction > 0 else "none", sigma_fraction)
        data = homodyne_sample(
            state, lo_phases, samples_per_phase, noise, seed=seed + level, workers=workers,
            source_description="identification sweep, sigma_fraction=%r" % sigma_fraction)
        rho, estimator = reconstruct_or_last(data, config)
        converged = estimator.residual < config.convergence_tol
        report = negativity_report(
            rho, grid, bootstrap_resamples, data, config, seed=seed + level, workers=workers)
        points.append(SweepPoint(sigma_fraction, fidelity_to(state, rho), converged, report))

    sweep = IdentificationSweep(tuple(points))
    logger.info("Identification sweep: first failure at %r.", sweep.first_failure)
    return sweep


def reconstruct_or_last(data, config=None):
    """
    (reconstruction, estimator); the last iterate stands in for the
    reconstruction when the iteration cap is hit.
    """
    estimator = MaxLikelihood(data, config)
    try:
        return estimator.run(), estimator
    except NonConvergence as e:
        logger.warning("Reconstruction: %s; using the last iterate.", e)
        return e.rho, estimator


def _as_cutoff(state, rho):
    """``state`` truncated or padded to the cutoff of ``rho``, as a density matrix."""
    layout = rho.layout
    dim = layout.total_dim
    if isinstance(state, DensityMatrix):
        source = np.asarray(state.matrix)
    else:
        source = np.outer(state.amplitudes, state.amplitudes.conj())

    matrix = np.zeros((dim, dim), dtype=complex)
    size = min(dim, source.shape[0])
    matrix[:size, :size] = source[:size, :size]
    return DensityMatrix(layout, matrix / np.trace(matrix).real)


def fidelity_to(state, rho):
    """Fidelity of a reconstruction with a reference state of any cutoff."""
    return fidelity(_as_cutoff(state, rho), rho)

