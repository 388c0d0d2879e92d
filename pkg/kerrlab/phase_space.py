# -*- coding: utf8 -*-

"""
Phase-space picture of a single bosonic mode: Wigner functions, quadrature
distributions and a homodyne sampler with detector-noise models.

Convention everywhere: x_θ = (a e^{−iθ} + a† e^{iθ})/√2, so the vacuum
quadrature variance is ½, a coherent state |ν⟩ sits at (√2 Re ν, √2 Im ν)
and ∫∫W dx dp = 1.
"""

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import math
import logging

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from scipy.integrate import cumulative_trapezoid, trapezoid

from .errors import DimensionMismatch, GridTooCoarse, InvalidParameter
from .fock import CoherentAmplitude, DensityMatrix, coherent_state, expectation, parity_operator
from .utils import derive_rng


logger = logging.getLogger("kerrlab")


GRID_PADDING = 5.0
SAMPLER_PADDING = 6.0
SAMPLER_POINTS = 2 ** 14
# recorded support reaches this many noise standard deviations past the sampler grid
NOISE_TAIL = 8.0
NORMALIZATION_TOLERANCE = 1e-2
NOISE_KINDS = ("none", "additive_gaussian", "efficiency")
VACUUM_VARIANCE = 0.5

# stream identifiers for derive_rng
SAMPLING_STREAM = 1


def _single_mode(state, cutoff=None):
    """Returns (density matrix, cutoff) of a single bosonic mode."""
    if isinstance(state, (CoherentAmplitude, complex, float, int)):
        state = coherent_state(state, cutoff)

    layout = state.layout
    if len(layout) != 1 or layout.modes[0].kind != "bosonic":
        raise DimensionMismatch("expected a single bosonic mode, got %r" % (layout,))

    if isinstance(state, DensityMatrix):
        rho = np.asarray(state.matrix)
    else:
        rho = np.outer(state.amplitudes, state.amplitudes.conj())

    return rho, layout.modes[0].cutoff


def _mean_photon_number(rho):
    return float(np.real(np.sum(np.arange(rho.shape[0]) * np.diag(rho))))


@dataclass(frozen=True)
class GridSpec:
    """Uniform phase-space grid on [−x_max, x_max] × [−p_max, p_max]."""
    x_max: float
    p_max: float
    points: int = 201

    def __post_init__(self):
        if self.x_max <= 0 or self.p_max <= 0:
            raise InvalidParameter("grid extent must be positive")
        if int(self.points) != self.points or self.points < 1:
            raise InvalidParameter("grid needs at least one point per axis")

    @classmethod
    def for_amplitude(cls, nu, points=201):
        """Grid covering ±(√2|ν| + 5) on both axes."""
        extent = math.sqrt(2.0) * CoherentAmplitude.coerce(nu).magnitude + GRID_PADDING
        return cls(extent, extent, points)

    @classmethod
    def for_state(cls, state, points=201):
        rho, _ = _single_mode(state)
        extent = math.sqrt(2.0 * _mean_photon_number(rho)) + GRID_PADDING
        return cls(extent, extent, points)

    @property
    def x_values(self):
        return np.linspace(-self.x_max, self.x_max, self.points)

    @property
    def p_values(self):
        return np.linspace(-self.p_max, self.p_max, self.points)


class WignerGrid(object):
    """Wigner function sampled on a rectangular grid; rows follow p."""

    CONVENTION = "x_theta = (a exp(-i theta) + a^dag exp(i theta))/sqrt(2); vacuum variance 1/2"

    def __init__(self, x_values, p_values, values):
        self._x = np.asarray(x_values, dtype=float)
        self._p = np.asarray(p_values, dtype=float)
        self._values = np.asarray(values, dtype=float)
        if self._values.shape != (self._p.size, self._x.size):
            raise DimensionMismatch(
                "Wigner values of shape %r do not match the %d x %d grid"
                % (self._values.shape, self._p.size, self._x.size))

        for array in (self._x, self._p, self._values):
            array.flags.writeable = False

    @property
    def x_values(self):
        return self._x

    @property
    def p_values(self):
        return self._p

    @property
    def values(self):
        return self._values

    def integral(self):
        if self._x.size < 2 or self._p.size < 2:
            raise GridTooCoarse("cannot integrate over a grid with a single point per axis")
        return float(trapezoid(trapezoid(self._values, self._x, axis=1), self._p))

    def marginal_x(self):
        """∫W(x, p) dp for every x."""
        return trapezoid(self._values, self._p, axis=0)

    def value_at(self, x, p):
        """Value at the grid point nearest to (x, p)."""
        column = int(np.argmin(np.abs(self._x - x)))
        row = int(np.argmin(np.abs(self._p - p)))
        return float(self._values[row, column])

    def minimum(self):
        row, column = np.unravel_index(np.argmin(self._values), self._values.shape)
        return float(self._values[row, column]), (float(self._x[column]), float(self._p[row]))

    def __repr__(self):
        return "<WignerGrid %dx%d min=%.6f>" % (self._x.size, self._p.size, self.minimum()[0])


def wigner_values(rho, x_values, p_values):
    """
    Wigner function of the Fock-basis matrix ``rho`` on the meshgrid of
    ``x_values`` × ``p_values`` using the Laguerre recurrence over the
    |m⟩⟨n| components.
    """
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    x_grid, p_grid = np.meshgrid(x_values, p_values)
    alpha = (x_grid + 1j * p_grid) / math.sqrt(2.0)

    components = [None] * dim
    components[0] = np.exp(-2.0 * np.abs(alpha) ** 2) / math.pi + 0j
    values = rho[0, 0].real * components[0].real
    for n in range(1, dim):
        components[n] = 2.0 * alpha * components[n - 1] / math.sqrt(n)
        values += 2.0 * np.real(rho[0, n] * components[n])

    for m in range(1, dim):
        previous = components[m].copy()
        components[m] = (2.0 * np.conj(alpha) * previous
                         - math.sqrt(m) * components[m - 1]) / math.sqrt(m)
        values += np.real(rho[m, m] * components[m])
        for n in range(m + 1, dim):
            updated = (2.0 * alpha * components[n - 1] - math.sqrt(m) * previous) / math.sqrt(n)
            previous = components[n].copy()
            components[n] = updated
            values += 2.0 * np.real(rho[m, n] * components[n])

    return values


def wigner(state, grid=None, check_normalization=True):
    """
    Wigner function of a single-mode state on ``grid`` (a :class:`GridSpec`,
    defaulting to one that covers the state).

    :raises GridTooCoarse: if the grid integral misses 1 by more than 1e-2.
    """
    rho, _ = _single_mode(state)
    if grid is None:
        grid = GridSpec.for_state(state)

    x_values, p_values = grid.x_values, grid.p_values
    result = WignerGrid(x_values, p_values, wigner_values(rho, x_values, p_values))

    if check_normalization and x_values.size > 1 and p_values.size > 1:
        integral = result.integral()
        if abs(integral - 1.0) > NORMALIZATION_TOLERANCE:
            raise GridTooCoarse(
                "Wigner function integrates to %.6f on %r; widen or refine the grid"
                % (integral, grid))

    return result


def wigner_min(grid):
    """(minimum value, (x, p) location) over the grid."""
    return grid.minimum()


def parity(state):
    """⟨(−1)ⁿ⟩ = π W(0, 0)."""
    cutoff = state.layout.modes[0].cutoff
    return expectation(state, parity_operator(cutoff), [0])


def hermite_functions(cutoff, x):
    """
    Oscillator eigenfunctions ψ_0..ψ_cutoff at ``x`` by the stable
    three-term recurrence; shape (cutoff + 1, len(x)).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    psi = np.empty((cutoff + 1, x.size))
    psi[0] = math.pi ** -0.25 * np.exp(-0.5 * x ** 2)
    if cutoff >= 1:
        psi[1] = math.sqrt(2.0) * x * psi[0]
    for n in range(2, cutoff + 1):
        psi[n] = math.sqrt(2.0 / n) * x * psi[n - 1] - math.sqrt((n - 1.0) / n) * psi[n - 2]
    return psi


def quadrature_pdf(state, lo_phase, x_grid, cutoff=None):
    """
    Probability density p(x|θ) = ⟨x_θ|ρ|x_θ⟩ of the quadrature selected by
    the local-oscillator phase.

    A bare coherent amplitude is accepted for ``state`` and is built with
    ``cutoff`` (raising CutoffTooSmall when that cutoff is too small).
    """
    rho, mode_cutoff = _single_mode(state, cutoff)
    x_grid = np.atleast_1d(np.asarray(x_grid, dtype=float))

    psi = hermite_functions(mode_cutoff, x_grid)
    vectors = psi * np.exp(1j * lo_phase * np.arange(mode_cutoff + 1))[:, None]
    density = np.real(np.sum(vectors.conj() * (rho @ vectors), axis=0))
    return np.clip(density, 0.0, None)


@dataclass(frozen=True)
class NoiseModel:
    """
    Detector imperfection applied to ideal homodyne samples.

    ``additive_gaussian`` adds N(0, (sigma_fraction·√½)²); ``efficiency``
    maps x → √η x + N(0, (1 − η)/2).
    """
    kind: str = "none"
    sigma_fraction: float = 0.0
    eta: float = 1.0

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise InvalidParameter(
                "noise kind %r not one of %s" % (self.kind, ", ".join(NOISE_KINDS)))
        if not self.sigma_fraction >= 0:
            raise InvalidParameter("sigma_fraction must be >= 0")
        if not 0 < self.eta <= 1:
            raise InvalidParameter("eta must lie in (0, 1]")

    @property
    def gain(self):
        return math.sqrt(self.eta) if self.kind == "efficiency" else 1.0

    @property
    def std(self):
        if self.kind == "additive_gaussian":
            return self.sigma_fraction * math.sqrt(VACUUM_VARIANCE)
        if self.kind == "efficiency":
            return math.sqrt((1.0 - self.eta) * VACUUM_VARIANCE)
        return 0.0

    @property
    def is_trivial(self):
        return self.gain == 1.0 and self.std == 0.0

    def apply(self, values, rng):
        if self.kind == "none":
            return values
        return self.gain * values + rng.normal(0.0, self.std, size=values.shape)

    def to_dict(self):
        return {"kind": self.kind, "sigma_fraction": self.sigma_fraction, "eta": self.eta}

    @classmethod
    def from_dict(cls, data):
        return cls(data["kind"], float(data["sigma_fraction"]), float(data["eta"]))


class QuadratureDataset(object):
    """Homodyne records (local-oscillator phase, quadrature value)."""

    def __init__(self, lo_phases, values, noise=None, seed=None, source_description="",
                 support=None):
        lo_phases = np.array(lo_phases, dtype=float).ravel()
        values = np.array(values, dtype=float).ravel()
        if lo_phases.size == 0 or lo_phases.size != values.size:
            raise InvalidParameter("dataset needs equally many, and at least one, phases and values")
        if np.any(lo_phases < 0) or np.any(lo_phases >= math.pi):
            raise InvalidParameter("local-oscillator phases must lie in [0, pi)")
        if support is not None and not support > 0:
            raise InvalidParameter("support must be > 0")

        lo_phases.flags.writeable = False
        values.flags.writeable = False
        self._phases = lo_phases
        self._values = values
        self._noise = noise if noise is not None else NoiseModel()
        self._seed = seed
        self._description = source_description
        self._support = None if support is None else float(support)

    @property
    def lo_phases(self):
        return self._phases

    @property
    def values(self):
        return self._values

    @property
    def noise(self):
        return self._noise

    @property
    def seed(self):
        return self._seed

    @property
    def source_description(self):
        return self._description

    @property
    def support(self):
        """Half-width of the interval the detector values were drawn from, if known."""
        return self._support

    @property
    def records(self):
        return list(zip(self._phases.tolist(), self._values.tolist()))

    def __len__(self):
        return self._values.size

    def distinct_phases(self):
        return np.unique(self._phases)

    def by_phase(self):
        """[(phase, values at that phase)] in increasing phase order."""
        return [(phase, self._values[self._phases == phase])
                for phase in self.distinct_phases()]

    def resample(self, rng):
        """Bootstrap copy: records drawn with replacement."""
        indices = rng.integers(0, len(self), size=len(self))
        return QuadratureDataset(
            self._phases[indices], self._values[indices], self._noise, self._seed,
            "bootstrap resample of %s" % (self._description or "dataset"),
            self._support)

    def __repr__(self):
        return "<QuadratureDataset %d records, %d phases, noise=%s>" % (
            len(self), self.distinct_phases().size, self._noise.kind)


def default_phases(count):
    """``count`` equally spaced phases k·π/count in [0, π)."""
    if count < 1:
        raise InvalidParameter("need at least one phase")
    return np.arange(count) * math.pi / count


def sampling_grid(state):
    """Inverse-CDF grid of 2¹⁴ points over ±(√(2⟨n⟩) + 6)."""
    rho, _ = _single_mode(state)
    extent = math.sqrt(2.0 * _mean_photon_number(rho)) + SAMPLER_PADDING
    return np.linspace(-extent, extent, SAMPLER_POINTS)


def inverse_cdf(pdf, x_grid):
    """Returns (cdf knots, x knots), strictly increasing, for np.interp."""
    cdf = cumulative_trapezoid(pdf, x_grid, initial=0.0)
    cdf /= cdf[-1]
    keep = np.concatenate([[True], np.diff(cdf) > 0])
    return cdf[keep], x_grid[keep]


def homodyne_sample(state, lo_phases, n_per_phase, noise=None, seed=0, workers=1,
                    source_description=""):
    """
    Draws ``n_per_phase`` quadrature values per phase by inverse-CDF sampling
    and passes them through the noise model. Each phase has its own random
    stream derived from ``seed``, so the dataset does not depend on
    ``workers``.
    """
    if n_per_phase < 1:
        raise InvalidParameter("n_per_phase must be >= 1")

    noise = noise if noise is not None else NoiseModel()
    lo_phases = np.asarray(lo_phases, dtype=float).ravel()
    if np.any(lo_phases < 0) or np.any(lo_phases >= math.pi):
        raise InvalidParameter("local-oscillator phases must lie in [0, pi)")

    x_grid = sampling_grid(state)
    support = noise.gain * x_grid[-1] + NOISE_TAIL * noise.std

    def draw(index):
        pdf = quadrature_pdf(state, lo_phases[index], x_grid)
        cdf, knots = inverse_cdf(pdf, x_grid)
        rng = derive_rng(seed, SAMPLING_STREAM, index)
        samples = np.interp(rng.random(n_per_phase), cdf, knots)
        return noise.apply(samples, rng)

    indices = range(lo_phases.size)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            blocks = list(executor.map(draw, indices))
    else:
        blocks = [draw(index) for index in indices]

    logger.debug(
        "Sampled %d phases x %d values with %s noise (seed %d).",
        lo_phases.size, n_per_phase, noise.kind, seed)

    return QuadratureDataset(
        np.repeat(lo_phases, n_per_phase), np.concatenate(blocks), noise, seed,
        source_description, support)
