# -*- coding: utf8 -*-

"""
End-to-end experiments built from the optical elements: the which-path
interferometer, the two-cell eraser, conditional cat generation, GHZ
generation and translucent eavesdropping.

Each pipeline only builds the modes it needs. Interferometer layouts are
(arm2, arm3, probe): the signal photon enters BS I from port 1, which
transmits into arm 2; the first Kerr cell sits on arm 3, the second on
arm 2, and port 4 is the BS II output that arm 2 feeds in transmission.
"""

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import cmath
import math
import logging

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from scipy.special import erfc

from .errors import InvalidParameter
from .fock import (
    POLARIZATIONS,
    CoherentAmplitude,
    DensityMatrix,
    ModeLayout,
    Qubit,
    StateVector,
    apply_unitary,
    coherent_state,
    coherent_superposition,
    expectation,
    fidelity,
    fock_state,
    number_operator,
    partial_trace,
    polarization_state,
    project_out,
    qubit_state,
    tensor,
)
from .optics import (
    ConditionalKerrPhase,
    KerrParams,
    beam_splitter,
    conditional_kerr,
    kerr_evolution,
    phase_shift,
    polarizing_bs,
)
from .phase_space import NoiseModel, homodyne_sample
from .utils import binary_entropy, clean_zero, derive_rng, trace_norm


logger = logging.getLogger("kerrlab")


JITTER_MODES = ("gaussian", "uniform")
JITTER_BLOCK = 4096
DEFAULT_THETA_POINTS = 64

# stream identifier for derive_rng
JITTER_STREAM = 2

ARM_2 = "arm2"
ARM_3 = "arm3"
PROBE = "probe"


@dataclass(frozen=True)
class InterferometerParams:
    """
    Mach-Zehnder with a Kerr cell on arm 3 and optionally a second on arm 2.

    :param kerr: first cell.
    :param nu: probe coherent amplitude.
    :param second_kerr: second cell, interaction time T′.
    :param theta_offset: arm phase Θ used when no scan value is given.
    :param coherence_jitter_sigma: std of the relative probe phase ξ between
        the cells.
    :param jitter_mode: ``gaussian`` or ``uniform`` (ξ uniform on [0, 2π)).
    :param transmittance: of both beam splitters.
    :param probe_cutoff: overrides the cutoff rule.
    """
    kerr: KerrParams
    nu: CoherentAmplitude
    second_kerr: Optional[KerrParams] = None
    theta_offset: float = 0.0
    coherence_jitter_sigma: float = 0.0
    jitter_mode: str = "gaussian"
    transmittance: float = 0.5
    probe_cutoff: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "nu", CoherentAmplitude.coerce(self.nu))
        if not math.isfinite(self.theta_offset):
            raise InvalidParameter("theta_offset must be finite")
        if not self.coherence_jitter_sigma >= 0:
            raise InvalidParameter("coherence_jitter_sigma must be >= 0")
        if self.jitter_mode not in JITTER_MODES:
            raise InvalidParameter(
                "jitter_mode %r not one of %s" % (self.jitter_mode, ", ".join(JITTER_MODES)))
        if not 0.0 <= self.transmittance <= 1.0:
            raise InvalidParameter("transmittance must lie in [0, 1]")

    @property
    def cutoff(self):
        if self.probe_cutoff is not None:
            return self.probe_cutoff
        return self.nu.default_cutoff()

    @property
    def envelope(self):
        """exp(−2|ν|² sin²(χT))"""
        return math.exp(-2.0 * self.nu.mean_photon_number * math.sin(self.kerr.chi * self.kerr.T) ** 2)

    @property
    def snr_R(self):
        """R = 4|ν| sin(χT)"""
        return 4.0 * self.nu.magnitude * abs(math.sin(self.kerr.chi * self.kerr.T))


def fringe_fit(theta_values, n4_values):
    """
    Least-squares fit n4 = a − b cos θ − c sin θ.

    :returns: (a, √(b² + c²), fringe phase atan2(c, b))
    """
    theta_values = np.asarray(theta_values, dtype=float)
    n4_values = np.asarray(n4_values, dtype=float)
    design = np.column_stack([
        np.ones_like(theta_values), -np.cos(theta_values), -np.sin(theta_values)])
    if theta_values.size < 3 or np.linalg.matrix_rank(design) < 3:
        raise InvalidParameter("a fringe fit needs at least three distinct phases")

    (mean, b, c), _, _, _ = np.linalg.lstsq(design, n4_values, rcond=None)
    return float(mean), float(math.hypot(b, c)), float(math.atan2(c, b))


class FringeScan(object):
    """
    ⟨n₄⟩ over a scan of the arm phase. The visibility is the
    (max − min)/(max + min) of the full 2π fringe, taken from the sinusoid
    fitted to the scan.
    """

    def __init__(self, theta_values, n4_values, snr_R):
        self._theta = np.asarray(theta_values, dtype=float)
        self._n4 = np.asarray(n4_values, dtype=float)
        self._snr = float(snr_R)
        self._mean, self._amplitude, self._phase = fringe_fit(self._theta, self._n4)

    @property
    def theta_values(self):
        return self._theta

    @property
    def n4_values(self):
        return self._n4

    @property
    def snr_R(self):
        return self._snr

    @property
    def fringe_mean(self):
        return self._mean

    @property
    def fringe_phase(self):
        return self._phase

    @property
    def visibility(self):
        if self._mean <= 0:
            return 0.0
        return min(self._amplitude / self._mean, 1.0)

    def rows(self):
        return list(zip(self._theta.tolist(), self._n4.tolist()))

    def summary(self):
        return {
            "visibility": self.visibility,
            "snr_R": self._snr,
            "fringe_mean": self._mean,
            "fringe_phase": self._phase,
        }

    def __repr__(self):
        return "<FringeScan %d points visibility=%.9f>" % (self._theta.size, self.visibility)


def default_theta_grid(points=DEFAULT_THETA_POINTS):
    return np.linspace(0.0, 2.0 * math.pi, points, endpoint=False)


def _coherent_overlap(nu, phase_a, phase_b):
    """⟨ν e^{iφa}|ν e^{iφb}⟩"""
    return cmath.exp(abs(nu) ** 2 * (cmath.exp(1j * (phase_b - phase_a)) - 1.0))


def mz_expected_n4_analytic(params, theta=None):
    """
    ⟨n₄⟩ after BS II with one Kerr cell:
    ½[1 − exp(−2|ν|² sin²(χT)) cos((ω_s+χ_s)T + θ + |ν|² sin(2χT))]
    at 50%; for transmittance t it reads t² + (1−t)² − 2t(1−t)·E·cos(·).
    """
    if params.second_kerr is not None:
        raise InvalidParameter("the single-cell law does not apply with a second cell")
    if theta is None:
        theta = params.theta_offset

    t = params.transmittance
    r = 1.0 - t
    chi_T = params.kerr.chi * params.kerr.T
    phase = (params.kerr.signal_phase + theta
             + params.nu.mean_photon_number * math.sin(2.0 * chi_T))
    return t * t + r * r - 2.0 * t * r * params.envelope * math.cos(phase)


def eraser_expected_n4_analytic(params, theta=None, xi=0.0):
    """Two-cell ⟨n₄⟩ for a fixed relative probe phase ξ."""
    if params.second_kerr is None:
        raise InvalidParameter("the eraser needs a second Kerr cell")
    if theta is None:
        theta = params.theta_offset

    t = params.transmittance
    r = 1.0 - t
    first, second = params.kerr, params.second_kerr
    overlap = _coherent_overlap(
        params.nu.value, xi - second.probe_phase, -first.probe_phase)
    term = cmath.exp(-1j * (theta - second.signal_phase + first.signal_phase)) * overlap
    return t * t + r * r - 2.0 * t * r * term.real


def _interferometer_input(params):
    signal = tensor([fock_state(1, 1, ARM_2), fock_state(0, 1, ARM_3)])
    return tensor([signal, coherent_state(params.nu, params.cutoff, PROBE)])


def _first_cell(params):
    state = _interferometer_input(params)
    state = apply_unitary(beam_splitter(params.transmittance), state, [ARM_2, ARM_3])
    return apply_unitary(kerr_evolution(params.kerr, 1, params.cutoff), state, [ARM_3, PROBE])


def _port_4(state, theta, transmittance):
    state = apply_unitary(phase_shift(theta, 1), state, ARM_2)
    state = apply_unitary(beam_splitter(transmittance), state, [ARM_2, ARM_3])
    return expectation(state, number_operator(1), [ARM_2])


def mz_simulate(params, theta_grid=None):
    """
    Single photon through the which-path interferometer; ⟨n₄⟩ for every
    arm phase in ``theta_grid``.
    """
    if params.second_kerr is not None:
        raise InvalidParameter("use eraser_simulate for two Kerr cells")
    if theta_grid is None:
        theta_grid = default_theta_grid()

    state = _first_cell(params)
    logger.debug("Interferometer state built on %r.", state.layout)

    n4 = [_port_4(state, theta, params.transmittance) for theta in theta_grid]
    return FringeScan(theta_grid, n4, params.snr_R)


def _draw_jitter(params, rng, size):
    if params.jitter_mode == "uniform":
        return rng.uniform(0.0, 2.0 * math.pi, size)
    return rng.normal(0.0, params.coherence_jitter_sigma, size)


def _jitter_average(params, vector, coupling, trials, seed, workers):
    """
    Mean of |ψ_ξ⟩⟨ψ_ξ| with ψ_ξ = exp(iξ n_arm2 n_p) ψ over ``trials`` draws
    of ξ, in blocks that each own a derived random stream.
    """
    def block(index):
        size = min(JITTER_BLOCK, trials - index * JITTER_BLOCK)
        xi = _draw_jitter(params, derive_rng(seed, JITTER_STREAM, index), size)
        states = vector[None, :] * np.exp(1j * xi[:, None] * coupling[None, :])
        return states.T @ states.conj()

    blocks = range(int(math.ceil(trials / JITTER_BLOCK)))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            partials = list(executor.map(block, blocks))
    else:
        partials = [block(index) for index in blocks]

    total = np.zeros((vector.size, vector.size), dtype=complex)
    for partial in partials:
        total += partial
    total /= trials
    return 0.5 * (total + total.conj().T)


def eraser_simulate(params, theta_grid=None, jitter_trials=1, seed=0, workers=1):
    """
    Two Kerr cells, the second on arm 2 with time T′. A relative probe phase
    ξ between the cells is drawn ``jitter_trials`` times; ⟨n₄⟩ is averaged
    over the draws.
    """
    if params.second_kerr is None:
        raise InvalidParameter("eraser_simulate needs second_kerr")
    if jitter_trials < 1:
        raise InvalidParameter("jitter_trials must be >= 1")
    if theta_grid is None:
        theta_grid = default_theta_grid()

    cutoff = params.cutoff
    state = _first_cell(params)
    state = apply_unitary(
        kerr_evolution(params.second_kerr, 1, cutoff), state, [ARM_2, PROBE])

    n_arm2 = np.arange(2)[:, None, None]
    n_probe = np.arange(cutoff + 1)[None, None, :]
    coupling = (n_arm2 * np.ones((1, 2, 1)) * n_probe).ravel()

    rho = _jitter_average(params, state.amplitudes, coupling, jitter_trials, seed, workers)
    mixed = DensityMatrix(state.layout, rho)
    logger.debug(
        "Eraser averaged over %d jitter draws (%s, sigma=%f), purity %f.",
        jitter_trials, params.jitter_mode, params.coherence_jitter_sigma, mixed.purity)

    n4 = [_port_4(mixed, theta, params.transmittance) for theta in theta_grid]
    return FringeScan(theta_grid, n4, params.snr_R)


@dataclass(frozen=True)
class WhichPathReadout:
    """Homodyne discrimination of the probe states conditioned on the arm."""
    lo_phase: float
    mean_arm2: float
    mean_arm3: float
    snr_R: float
    error_probability: float
    sampled_error_probability: Optional[float] = None


def which_path_readout(params, samples=0, seed=0):
    """
    Reads the path from the probe phase. The local oscillator is aligned with
    ν − ν′, the quadrature means are √2 Re(ν e^{−iθ}) and a midpoint threshold
    errs with probability ½ erfc(R/(2√2)). With ``samples`` > 0 the error
    rate is also estimated from homodyne samples of both probe states.
    """
    nu = params.nu.value
    nu_prime = nu * cmath.exp(-1j * params.kerr.probe_phase)
    difference = nu - nu_prime
    lo_phase = cmath.phase(difference) % math.pi if abs(difference) > 0 else 0.0

    mean_arm2 = math.sqrt(2.0) * (nu * cmath.exp(-1j * lo_phase)).real
    mean_arm3 = math.sqrt(2.0) * (nu_prime * cmath.exp(-1j * lo_phase)).real
    snr = abs(mean_arm2 - mean_arm3) / math.sqrt(0.5)
    error = 0.5 * float(erfc(snr / (2.0 * math.sqrt(2.0))))

    sampled = None
    if samples > 0:
        threshold = 0.5 * (mean_arm2 + mean_arm3)
        sign = 1.0 if mean_arm2 >= mean_arm3 else -1.0
        errors = 0
        for index, (amplitude, is_arm2) in enumerate(((nu, True), (nu_prime, False))):
            probe = coherent_state(amplitude, params.cutoff, PROBE)
            data = homodyne_sample(
                probe, [lo_phase], samples, NoiseModel(), seed=seed * 2 + index)
            says_arm2 = sign * (data.values - threshold) > 0
            errors += int(np.sum(says_arm2 != is_arm2))
        sampled = errors / (2.0 * samples)

    return WhichPathReadout(lo_phase, mean_arm2, mean_arm3, snr, error, sampled)


CAT_OUTCOMES = {45: "45", 135: "135"}


def _outcome_label(outcome):
    try:
        return CAT_OUTCOMES[int(outcome)]
    except (KeyError, ValueError, TypeError):
        raise InvalidParameter("outcome must be 45 or 135, got %r" % (outcome,))


def cat_generate(nu, kerr, outcome, cutoff=None):
    """
    Conditional cat: a 45° photon is split by polarization, its H part
    crosses the Kerr cell on arm 3 with the probe, the paths are recombined
    and the photon is found at 45° or 135°.

    Arm 3 carries a compensating plate for the signal phase (ω_s+χ_s)T, so
    that after recombination pol ⊗ probe is (|H⟩|ν′⟩ + |V⟩|ν⟩)/√2.

    :returns: (probe state, outcome probability)
    :raises ZeroProbability: when the outcome cannot occur.
    """
    label = _outcome_label(outcome)
    amplitude = CoherentAmplitude.coerce(nu)
    if cutoff is None:
        cutoff = amplitude.default_cutoff()

    state = tensor([
        polarization_state("45", "pol"),
        fock_state(1, 1, ARM_2),
        fock_state(0, 1, ARM_3),
        coherent_state(amplitude, cutoff, PROBE),
    ])
    splitter = polarizing_bs()
    state = apply_unitary(splitter, state, ["pol", ARM_2, ARM_3])
    state = apply_unitary(kerr_evolution(kerr, 1, cutoff), state, [ARM_3, PROBE])
    state = apply_unitary(phase_shift(kerr.signal_phase, 1), state, ARM_3)
    state = apply_unitary(splitter, state, ["pol", ARM_2, ARM_3])

    # recombined photon is back on path 2: |1⟩|0⟩
    entangled, _ = project_out(state, [ARM_2, ARM_3], [0.0, 0.0, 1.0, 0.0])
    probe, probability = project_out(entangled, "pol", POLARIZATIONS[label])

    logger.debug("Cat outcome %s with probability %f.", label, probability)
    return probe, probability


def cat_reference(nu, kerr, outcome, cutoff=None):
    """Normalized (|ν′⟩ ± |ν⟩), ν′ = ν e^{−i2χT}."""
    label = _outcome_label(outcome)
    amplitude = CoherentAmplitude.coerce(nu)
    nu_prime = amplitude.value * cmath.exp(-1j * kerr.probe_phase)
    sign = 1.0 if label == "45" else -1.0
    return coherent_superposition([nu_prime, amplitude.value], [1.0, sign], cutoff, PROBE)


_SQRT_HALF = math.sqrt(0.5)
BELL_STATES = {
    "phi+": {(0, 0): 1.0, (1, 1): 1.0},
    "phi-": {(0, 0): 1.0, (1, 1): -1.0},
    "psi+": {(0, 1): 1.0, (1, 0): 1.0},
    "psi-": {(0, 1): 1.0, (1, 0): -1.0},
}
GHZ_QUBITS = ("q1", "q2", "q3")
QUARTER_TURN_PHASE = math.pi / 2


def bell_label(label):
    """Normalizes Φ+, Phi+, phi+ ... to the keys of BELL_STATES."""
    text = str(label).strip().replace("Φ", "phi").replace("Ψ", "psi")
    text = text.replace("⁺", "+").replace("⁻", "-").lower()
    if text not in BELL_STATES:
        raise InvalidParameter(
            "unknown Bell state %r; expected one of %s" % (label, ", ".join(sorted(BELL_STATES))))
    return text


def bell_state(label, names=GHZ_QUBITS[:2]):
    amplitudes = np.zeros(4, dtype=complex)
    for (first, second), coefficient in BELL_STATES[bell_label(label)].items():
        amplitudes[2 * first + second] = coefficient * _SQRT_HALF
    return StateVector(ModeLayout([Qubit(names[0]), Qubit(names[1])]), amplitudes)


def ghz_generate(bell, phi):
    """Bell pair on q1, q2 and a 45° photon q3; conditional Kerr on q2, q3."""
    state = tensor([bell_state(bell), polarization_state("45", GHZ_QUBITS[2])])
    gate = conditional_kerr(ConditionalKerrPhase(phi))
    return apply_unitary(gate, state, list(GHZ_QUBITS[1:]))


def ghz_reference(bell):
    """
    GHZ form each Bell pair should reach: the third photon is 45° where the
    second is H and 135° where it is V.
    """
    amplitudes = np.zeros(8, dtype=complex)
    for (first, second), coefficient in BELL_STATES[bell_label(bell)].items():
        third = np.asarray(POLARIZATIONS["45" if second == 0 else "135"])
        amplitudes[4 * first + 2 * second:4 * first + 2 * second + 2] += \
            coefficient * _SQRT_HALF * third
    return StateVector(ModeLayout(Qubit(name) for name in GHZ_QUBITS), amplitudes)


@dataclass(frozen=True)
class GhzReport:
    bell: str
    phi: float
    state: StateVector
    fidelity: float
    quarter_turn_fidelity: float
    reduced_deviation: float


def ghz_report(bell, phi):
    """
    Fidelity of the generated state with its GHZ form at ``phi`` and at the
    phase π/2 quoted for the scheme, plus the largest deviation of any
    single-qubit reduced state from I/2.
    """
    label = bell_label(bell)
    reference = ghz_reference(label)
    state = ghz_generate(label, phi)
    quarter_turn_state = ghz_generate(label, QUARTER_TURN_PHASE)

    deviation = max(
        float(np.max(np.abs(partial_trace(state, [name]).matrix - 0.5 * np.eye(2))))
        for name in GHZ_QUBITS)
    report = GhzReport(
        label, phi, state, fidelity(reference, state), fidelity(reference, quarter_turn_state),
        deviation)

    logger.info(
        "GHZ from %s: fidelity %.12f at phi=%f, %.12f at phi=pi/2.",
        label, report.fidelity, phi, report.quarter_turn_fidelity)
    if report.fidelity < 1.0 - 1e-9:
        logger.warning(
            "GHZ from %s is not reached at phi=%f (fidelity %.12f); the full form needs phi=pi.",
            label, phi, report.fidelity)
    return report


@dataclass(frozen=True)
class QubitState:
    """Transmitted qubit h|H⟩ + v|V⟩."""
    h: complex
    v: complex
    label: str = ""

    def __post_init__(self):
        norm = abs(self.h) ** 2 + abs(self.v) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise InvalidParameter("qubit amplitudes are not normalized (norm %r)" % norm)

    @classmethod
    def from_angle(cls, theta):
        """cos θ|H⟩ + sin θ|V⟩"""
        return cls(math.cos(theta), math.sin(theta), "theta=%r" % theta)

    @classmethod
    def from_label(cls, label):
        try:
            h, v = POLARIZATIONS[str(label)]
        except KeyError:
            raise InvalidParameter("unknown polarization %r" % (label,))
        return cls(h, v, str(label))

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            return cls.from_label(value)
        return cls.from_angle(float(value))

    @property
    def theta(self):
        return math.atan2(complex(self.v).real, complex(self.h).real)

    @property
    def vector(self):
        return np.array([self.h, self.v], dtype=complex)

    def orthogonal(self):
        return QubitState(-complex(self.v).conjugate(), complex(self.h).conjugate(),
                          "orthogonal to %s" % (self.label or "qubit"))


def eve_probe_state(qubit, phi, bs_transmittance=0.5):
    """
    Eve's V-polarized probe photon split over paths 1 and 2 with the
    transmitted qubit crossing the Kerr cell on path 1. Layout
    (signal, path1, path2).
    """
    qubit = QubitState.coerce(qubit)
    state = tensor([
        qubit_state(qubit.h, qubit.v, "signal"),
        fock_state(1, 1, "path1"),
        fock_state(0, 1, "path2"),
    ])
    state = apply_unitary(beam_splitter(bs_transmittance), state, ["path1", "path2"])
    return apply_unitary(conditional_kerr(ConditionalKerrPhase(phi)), state, ["signal", "path1"])


@dataclass(frozen=True)
class EveBasisReport:
    labels: tuple
    p_guess: float
    info_bound: float
    qber: float


@dataclass(frozen=True)
class EveReport:
    joint_state: StateVector
    eve_info_bound: float
    bob_qber: float
    probe_overlap: complex
    bases: tuple = field(default_factory=tuple)
    symbol_qber: tuple = field(default_factory=tuple)


def _eve_state(qubit, phi, transmittance):
    """Eve's reduced (path1, path2) state."""
    return partial_trace(eve_probe_state(qubit, phi, transmittance), ["path1", "path2"])


def _bob_qber(symbol, phi, transmittance):
    """Probability that Bob finds the state orthogonal to ``symbol``."""
    joint = eve_probe_state(symbol, phi, transmittance)
    bob = partial_trace(joint, ["signal"]).matrix
    wrong = symbol.orthogonal().vector
    return clean_zero(float(np.vdot(wrong, bob @ wrong).real))


def _basis_pairs(symbols):
    pairs = []
    paired = set()
    for i, symbol in enumerate(symbols):
        if i in paired:
            continue
        partner = None
        for j in range(i + 1, len(symbols)):
            if j not in paired and abs(np.vdot(symbol.vector, symbols[j].vector)) ** 2 < 1e-12:
                partner = j
                break
        if partner is None:
            pairs.append((symbol, symbol.orthogonal()))
        else:
            paired.add(partner)
            pairs.append((symbol, symbols[partner]))
    return pairs


def eve_analysis(phi, alphabet=None, bs_transmittance=0.5):
    """
    What Eve's probe learns and what Bob loses for each transmitted symbol.

    Eve's bound per basis is 1 − H₂(P_guess) with the Helstrom success
    probability P_guess = ½ + ¼‖ρ_u − ρ_u⊥‖₁ of her reduced probe states;
    Bob's QBER is the probability of finding the orthogonal state when he
    measures in the preparation basis.
    """
    if alphabet is None:
        alphabet = ("H", "V", "45", "135")
    symbols = [QubitState.coerce(symbol) for symbol in alphabet]
    if not symbols:
        raise InvalidParameter("alphabet must not be empty")

    joint_state = eve_probe_state(symbols[0], phi, bs_transmittance)
    qbers = [_bob_qber(symbol, phi, bs_transmittance) for symbol in symbols]

    bases = []
    for symbol, partner in _basis_pairs(symbols):
        rho = _eve_state(symbol, phi, bs_transmittance)
        sigma = _eve_state(partner, phi, bs_transmittance)
        p_guess = 0.5 + 0.25 * trace_norm(rho.matrix - sigma.matrix)
        info = clean_zero(1.0 - binary_entropy(min(p_guess, 1.0)))
        qber = 0.5 * (_bob_qber(symbol, phi, bs_transmittance)
                      + _bob_qber(partner, phi, bs_transmittance))
        bases.append(EveBasisReport((symbol.label, partner.label), p_guess, info, qber))

    probe_h, _ = project_out(eve_probe_state(QubitState(1.0, 0.0, "H"), phi, bs_transmittance),
                             "signal", [1.0, 0.0])
    probe_v, _ = project_out(eve_probe_state(QubitState(0.0, 1.0, "V"), phi, bs_transmittance),
                             "signal", [0.0, 1.0])

    report = EveReport(
        joint_state,
        float(np.mean([basis.info_bound for basis in bases])),
        float(np.mean(qbers)),
        probe_h.inner(probe_v),
        tuple(bases),
        tuple(zip((symbol.label for symbol in symbols), qbers)),
    )
    logger.debug(
        "Eavesdropping at phi=%f: info bound %f, QBER %f.",
        phi, report.eve_info_bound, report.bob_qber)
    return report
