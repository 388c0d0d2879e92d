# -*- coding: utf8 -*-

"""
Truncated Fock-space states and the operator algebra the optical circuits
are built from.

Amplitudes are indexed row-major over the modes in the order the layout
declares them; qubit modes use the basis order (H, V). Every value in this
module is immutable once constructed.
"""

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import math
import logging

from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np

from scipy.special import gammaln
from scipy.stats import poisson

from .errors import (
    CutoffTooSmall,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidParameter,
    LayoutConflict,
    NotNormalized,
    NotPhysical,
    NotProjector,
    NotUnitary,
    ZeroProbability,
)
from .utils import is_hermitian, is_unitary


logger = logging.getLogger("kerrlab")


NORM_TOLERANCE = 1e-10
TAIL_MASS_LIMIT = 1e-12
ZERO_PROBABILITY = 1e-14
QUBIT_LABELS = ("H", "V")

_SQRT_HALF = math.sqrt(0.5)
POLARIZATIONS = {
    "H": (1.0, 0.0),
    "V": (0.0, 1.0),
    "45": (_SQRT_HALF, _SQRT_HALF),
    "135": (_SQRT_HALF, -_SQRT_HALF),
}


@dataclass(frozen=True)
class Bosonic:
    """Bosonic mode truncated at ``cutoff`` photons."""
    name: str
    cutoff: int

    kind = "bosonic"

    def __post_init__(self):
        if isinstance(self.cutoff, bool) or int(self.cutoff) != self.cutoff:
            raise InvalidParameter("cutoff must be an integer, got %r" % (self.cutoff,))
        if self.cutoff < 1:
            raise InvalidParameter("cutoff must be >= 1, got %r" % (self.cutoff,))

    @property
    def dim(self):
        return int(self.cutoff) + 1


@dataclass(frozen=True)
class Qubit:
    """Polarization qubit with basis order (H, V)."""
    name: str

    kind = "qubit"
    labels = QUBIT_LABELS

    @property
    def dim(self):
        return 2


class ModeLayout(object):
    """Ordered, uniquely named set of modes."""

    def __init__(self, modes):
        modes = tuple(modes)
        if not modes:
            raise DimensionMismatch("a layout needs at least one mode")

        names = [mode.name for mode in modes]
        if len(set(names)) != len(names):
            raise LayoutConflict("duplicate mode names in %r" % (names,))

        self._modes = modes

    @property
    def modes(self):
        return self._modes

    @property
    def names(self):
        return tuple(mode.name for mode in self._modes)

    @property
    def dims(self):
        return tuple(mode.dim for mode in self._modes)

    @property
    def total_dim(self):
        return int(np.prod(self.dims))

    def __len__(self):
        return len(self._modes)

    def __iter__(self):
        return iter(self._modes)

    def __getitem__(self, index):
        return self._modes[self.index(index)]

    def __eq__(self, other):
        return isinstance(other, ModeLayout) and self._modes == other._modes

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._modes)

    def __repr__(self):
        return "<ModeLayout %s>" % ", ".join(
            "%s:%d" % (mode.name, mode.dim) for mode in self._modes)

    def index(self, mode):
        """Position of a mode given by its index or its name."""
        if isinstance(mode, str):
            try:
                return self.names.index(mode)
            except ValueError:
                raise IndexOutOfRange("no mode named %r in %r" % (mode, self))

        if isinstance(mode, bool) or int(mode) != mode:
            raise IndexOutOfRange("invalid mode index %r" % (mode,))
        if not 0 <= mode < len(self._modes):
            raise IndexOutOfRange(
                "mode index %d out of range for %d modes" % (mode, len(self._modes)))

        return int(mode)

    def indices(self, modes):
        if isinstance(modes, (int, str, np.integer)):
            modes = [modes]

        indices = [self.index(mode) for mode in modes]
        if len(set(indices)) != len(indices):
            raise DimensionMismatch("mode listed twice in %r" % (list(modes),))

        return indices

    def select(self, indices):
        return ModeLayout(self._modes[i] for i in self.indices(indices))

    def without(self, indices):
        dropped = set(self.indices(indices))
        return ModeLayout(
            mode for i, mode in enumerate(self._modes) if i not in dropped)

    def concat(self, other):
        overlap = set(self.names) & set(other.names)
        if overlap:
            raise LayoutConflict(
                "layouts share modes %s" % ", ".join(sorted(overlap)))

        return ModeLayout(self._modes + other.modes)

    def to_dict(self):
        modes = []
        for mode in self._modes:
            if mode.kind == "bosonic":
                modes.append({"kind": "bosonic", "name": mode.name, "cutoff": mode.cutoff})
            else:
                modes.append({"kind": "qubit", "name": mode.name})
        return {"modes": modes}

    @classmethod
    def from_dict(cls, data):
        modes = []
        for entry in data["modes"]:
            if entry["kind"] == "bosonic":
                modes.append(Bosonic(entry["name"], int(entry["cutoff"])))
            elif entry["kind"] == "qubit":
                modes.append(Qubit(entry["name"]))
            else:
                raise InvalidParameter("unknown mode kind %r" % (entry["kind"],))
        return cls(modes)


class CoherentAmplitude(object):
    """Complex field amplitude ν of a coherent state."""

    __slots__ = ("_value",)

    def __init__(self, value):
        value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise InvalidParameter("coherent amplitude must be finite")
        self._value = value

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        return cls(value)

    @property
    def value(self):
        return self._value

    @property
    def magnitude(self):
        return abs(self._value)

    @property
    def mean_photon_number(self):
        return abs(self._value) ** 2

    def default_cutoff(self):
        """Cutoff rule ceil(|ν|² + 6|ν| + 10)."""
        magnitude = self.magnitude
        return int(math.ceil(magnitude ** 2 + 6 * magnitude + 10))

    def tail_mass(self, cutoff):
        """Poisson weight of photon numbers above ``cutoff``."""
        if self._value == 0:
            return 0.0
        return float(poisson.sf(cutoff, self.mean_photon_number))

    def __eq__(self, other):
        return isinstance(other, CoherentAmplitude) and self._value == other._value

    def __hash__(self):
        return hash(self._value)

    def __repr__(self):
        return "<CoherentAmplitude %r>" % (self._value,)


class StateVector(object):
    """Normalized pure state over a :class:`ModeLayout`."""

    def __init__(self, layout, amplitudes, norm_tolerance=NORM_TOLERANCE):
        amplitudes = np.array(amplitudes, dtype=complex).ravel()
        if amplitudes.shape != (layout.total_dim,):
            raise DimensionMismatch(
                "expected %d amplitudes for %r, got %d"
                % (layout.total_dim, layout, amplitudes.size))

        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1.0) > norm_tolerance:
            raise NotNormalized("state norm %.15f differs from 1" % norm)

        amplitudes.flags.writeable = False
        self._layout = layout
        self._amplitudes = amplitudes
        self._norm_tolerance = norm_tolerance

    @classmethod
    def normalized(cls, layout, amplitudes, norm_tolerance=NORM_TOLERANCE):
        """Builds a state from unnormalized amplitudes."""
        amplitudes = np.asarray(amplitudes, dtype=complex).ravel()
        norm = math.sqrt(float(np.vdot(amplitudes, amplitudes).real))
        if norm ** 2 < ZERO_PROBABILITY:
            raise ZeroProbability("cannot normalize a null vector", norm ** 2)

        return cls(layout, amplitudes / norm, norm_tolerance)

    @property
    def layout(self):
        return self._layout

    @property
    def amplitudes(self):
        return self._amplitudes

    @property
    def dims(self):
        return self._layout.dims

    @property
    def norm_tolerance(self):
        return self._norm_tolerance

    @property
    def norm(self):
        return float(np.vdot(self._amplitudes, self._amplitudes).real)

    def tensor_view(self):
        return self._amplitudes.reshape(self.dims)

    def inner(self, other):
        """⟨self|other⟩"""
        if self._layout != other.layout:
            raise LayoutConflict("%r and %r differ" % (self._layout, other.layout))
        return complex(np.vdot(self._amplitudes, other.amplitudes))

    def probabilities(self):
        return np.abs(self._amplitudes) ** 2

    def density_matrix(self):
        return DensityMatrix.from_state(self)

    def mean_photon_number(self, mode=0):
        index = self._layout.index(mode)
        if self._layout.modes[index].kind != "bosonic":
            raise DimensionMismatch("mode %r is not bosonic" % (mode,))
        return expectation(self, number_operator(self._layout.modes[index].cutoff), [index])

    def __len__(self):
        return self._amplitudes.size

    def __repr__(self):
        return "<StateVector %r>" % (self._layout,)


class DensityMatrix(object):
    """Mixed state; Hermitian, unit trace and positive within tolerance."""

    HERMITIAN_TOLERANCE = 1e-10
    TRACE_TOLERANCE = 1e-10
    EIGENVALUE_FLOOR = -1e-9

    def __init__(self, layout, matrix, validate=True):
        matrix = np.array(matrix, dtype=complex)
        dim = layout.total_dim
        if matrix.shape != (dim, dim):
            raise DimensionMismatch(
                "expected %dx%d matrix for %r, got %r" % (dim, dim, layout, matrix.shape))

        if validate:
            if not is_hermitian(matrix, self.HERMITIAN_TOLERANCE):
                raise NotPhysical("density matrix is not Hermitian")
            trace = np.trace(matrix).real
            if abs(trace - 1.0) > self.TRACE_TOLERANCE:
                raise NotPhysical("density matrix trace %.15f differs from 1" % trace)

        matrix.flags.writeable = False
        self._layout = layout
        self._matrix = matrix

        if validate and self.eigenvalues[0] < self.EIGENVALUE_FLOOR:
            raise NotPhysical(
                "density matrix has eigenvalue %g" % self.eigenvalues[0])

    @classmethod
    def from_state(cls, state):
        vector = state.amplitudes
        return cls(state.layout, np.outer(vector, vector.conj()))

    @property
    def layout(self):
        return self._layout

    @property
    def matrix(self):
        return self._matrix

    @property
    def dims(self):
        return self._layout.dims

    @property
    def trace(self):
        return float(np.trace(self._matrix).real)

    @cached_property
    def eigenvalues(self):
        """Ascending eigenvalues."""
        return np.linalg.eigvalsh(0.5 * (self._matrix + self._matrix.conj().T))

    @property
    def purity(self):
        return float(np.real(np.trace(self._matrix @ self._matrix)))

    def __repr__(self):
        return "<DensityMatrix %r purity=%.6f>" % (self._layout, self.purity)


def annihilation_operator(cutoff):
    return np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), 1).astype(complex)


def number_operator(cutoff):
    return np.diag(np.arange(cutoff + 1, dtype=float)).astype(complex)


def parity_operator(cutoff):
    return np.diag((-1.0) ** np.arange(cutoff + 1)).astype(complex)


def _coherent_amplitudes(value, cutoff):
    n = np.arange(cutoff + 1)
    if value == 0:
        amplitudes = np.zeros(cutoff + 1, dtype=complex)
        amplitudes[0] = 1.0
        return amplitudes

    magnitude = abs(value)
    log_modulus = -0.5 * magnitude ** 2 + n * math.log(magnitude) - 0.5 * gammaln(n + 1)
    return np.exp(log_modulus) * np.exp(1j * n * np.angle(value))


def coherent_state(nu, cutoff=None, name="probe"):
    """
    Coherent state |ν⟩ on a single bosonic mode.

    :param nu: complex amplitude or :class:`CoherentAmplitude`.
    :param cutoff: maximal photon number; defaults to the cutoff rule.
    :raises CutoffTooSmall: if the Poisson tail above ``cutoff`` reaches 1e-12.
    """
    amplitude = CoherentAmplitude.coerce(nu)
    if cutoff is None:
        cutoff = amplitude.default_cutoff()

    tail = amplitude.tail_mass(cutoff)
    if tail >= TAIL_MASS_LIMIT:
        raise CutoffTooSmall(
            "cutoff %d drops tail mass %.3e of |%s>; need at least the rule value %d"
            % (cutoff, tail, amplitude.value, amplitude.default_cutoff()), tail)

    amplitudes = _coherent_amplitudes(amplitude.value, cutoff)
    return StateVector.normalized(ModeLayout([Bosonic(name, cutoff)]), amplitudes)


def coherent_superposition(amplitudes, weights, cutoff=None, name="probe"):
    """
    Normalized Σ_k w_k |ν_k⟩, e.g. the cat (|ν⟩ − |−ν⟩)/norm.
    """
    amplitudes = [CoherentAmplitude.coerce(a) for a in amplitudes]
    if len(amplitudes) != len(weights) or not amplitudes:
        raise InvalidParameter("need one weight per coherent amplitude")

    if cutoff is None:
        cutoff = max(a.default_cutoff() for a in amplitudes)

    total = np.zeros(cutoff + 1, dtype=complex)
    for amplitude, weight in zip(amplitudes, weights):
        total += complex(weight) * coherent_state(amplitude, cutoff, name).amplitudes

    return StateVector.normalized(ModeLayout([Bosonic(name, cutoff)]), total)


def fock_state(n, cutoff, name="mode"):
    if isinstance(n, bool) or int(n) != n or not 0 <= n <= cutoff:
        raise IndexOutOfRange("photon number %r outside [0, %r]" % (n, cutoff))

    amplitudes = np.zeros(cutoff + 1, dtype=complex)
    amplitudes[int(n)] = 1.0
    return StateVector(ModeLayout([Bosonic(name, cutoff)]), amplitudes)


def qubit_state(h, v, name="pol"):
    return StateVector.normalized(ModeLayout([Qubit(name)]), [h, v])


def polarization_state(label, name="pol"):
    """One of the labelled polarizations H, V, 45, 135."""
    try:
        h, v = POLARIZATIONS[str(label)]
    except KeyError:
        raise InvalidParameter(
            "unknown polarization %r; expected one of %s"
            % (label, ", ".join(sorted(POLARIZATIONS))))

    return StateVector(ModeLayout([Qubit(name)]), [h, v])


def tensor(states):
    """Outer product in the given mode order."""
    states = list(states)
    if not states:
        raise InvalidParameter("tensor needs at least one state")

    layout = reduce(lambda a, b: a.concat(b), (s.layout for s in states))
    amplitudes = reduce(np.kron, (s.amplitudes for s in states))
    return StateVector(layout, amplitudes)


def _apply_on_axes(tensor_, operator, axes):
    """Contracts ``operator`` with the listed leading axes of ``tensor_``."""
    count = len(axes)
    moved = np.moveaxis(tensor_, axes, list(range(count)))
    shape = moved.shape
    flat = moved.reshape(operator.shape[1], -1)
    moved = (operator @ flat).reshape(shape)
    return np.moveaxis(moved, list(range(count)), axes)


def _target_axes(layout, target_modes, operator):
    axes = layout.indices(target_modes)
    if not axes:
        raise DimensionMismatch("no target modes given")

    expected = int(np.prod([layout.dims[a] for a in axes]))
    operator = np.asarray(operator, dtype=complex)
    if operator.ndim != 2 or operator.shape != (expected, expected):
        raise DimensionMismatch(
            "operator of shape %r does not act on modes %r of dimension %d"
            % (operator.shape, [layout.names[a] for a in axes], expected))

    return axes, operator


def _apply_operator(operator, state, axes):
    """Applies any operator, pure or mixed, without normalization checks."""
    layout = state.layout
    if isinstance(state, DensityMatrix):
        count = len(layout)
        t = state.matrix.reshape(layout.dims + layout.dims)
        t = _apply_on_axes(t, operator, axes)
        t = _apply_on_axes(t, operator.conj(), [count + a for a in axes])
        return t.reshape(layout.total_dim, layout.total_dim)

    t = _apply_on_axes(state.amplitudes.reshape(layout.dims), operator, axes)
    return t.ravel()


def apply_unitary(unitary, state, target_modes):
    """
    Applies ``unitary`` to ``target_modes`` (row-major in the listed order)
    and the identity elsewhere. Density matrices transform as UρU†.

    :raises DimensionMismatch: operator does not fit the target modes.
    :raises NotUnitary: U†U differs from I by more than 1e-10.
    """
    axes, unitary = _target_axes(state.layout, target_modes, unitary)
    if not is_unitary(unitary, 1e-10):
        raise NotUnitary("operator on modes %r is not unitary" % (target_modes,))

    transformed = _apply_operator(unitary, state, axes)
    if isinstance(state, DensityMatrix):
        return DensityMatrix(state.layout, 0.5 * (transformed + transformed.conj().T))

    return StateVector(state.layout, transformed, state.norm_tolerance)


def condition_on_outcome(state, mode, projector):
    """
    Projective measurement outcome on ``mode`` (one mode or a list).

    :returns: (renormalized state, probability ⟨Ψ|P|Ψ⟩)
    :raises ZeroProbability: when the outcome probability is below 1e-14.
    """
    axes, projector = _target_axes(state.layout, mode, projector)
    if not np.allclose(projector @ projector, projector, rtol=0, atol=1e-10):
        raise NotProjector("operator on mode %r is not idempotent" % (mode,))

    projected = _apply_operator(projector, state, axes)
    probability = float(np.vdot(projected, projected).real)
    if probability < ZERO_PROBABILITY:
        raise ZeroProbability(
            "outcome on mode %r has probability %.3e" % (mode, probability),
            probability)

    logger.debug("Conditioned on mode %r with probability %f.", mode, probability)
    return StateVector(state.layout, projected / math.sqrt(probability)), probability


def project_out(state, modes, vector):
    """
    Measures ``modes`` and keeps the outcome ``vector``; the measured modes
    are removed from the returned state's layout.

    :returns: (state of the remaining modes, outcome probability)
    """
    layout = state.layout
    axes = layout.indices(modes)
    if len(axes) == len(layout):
        raise DimensionMismatch("cannot project out every mode of %r" % (layout,))

    vector = np.asarray(vector, dtype=complex).ravel()
    expected = int(np.prod([layout.dims[a] for a in axes]))
    if vector.size != expected:
        raise DimensionMismatch(
            "outcome vector of length %d for modes of dimension %d" % (vector.size, expected))

    vector_norm = math.sqrt(float(np.vdot(vector, vector).real))
    if vector_norm == 0:
        raise InvalidParameter("outcome vector is null")
    vector = vector / vector_norm

    moved = np.moveaxis(state.tensor_view(), axes, list(range(len(axes))))
    remainder = vector.conj() @ moved.reshape(expected, -1)
    probability = float(np.vdot(remainder, remainder).real)
    if probability < ZERO_PROBABILITY:
        raise ZeroProbability(
            "outcome on modes %r has probability %.3e" % (modes, probability),
            probability)

    remaining = layout.without(axes)
    return StateVector(remaining, remainder / math.sqrt(probability)), probability


def partial_trace(state, keep_modes):
    """Reduced density matrix of ``keep_modes`` in the listed order."""
    layout = state.layout
    keep = layout.indices(keep_modes)
    if not keep:
        raise DimensionMismatch("keep_modes must not be empty")

    traced = [i for i in range(len(layout)) if i not in keep]
    kept_dim = int(np.prod([layout.dims[i] for i in keep]))
    traced_dim = layout.total_dim // kept_dim

    if isinstance(state, DensityMatrix):
        count = len(layout)
        t = state.matrix.reshape(layout.dims + layout.dims)
        order = keep + traced + [count + i for i in keep] + [count + i for i in traced]
        t = t.transpose(order).reshape(kept_dim, traced_dim, kept_dim, traced_dim)
        reduced = np.einsum("ijkj->ik", t)
    else:
        m = np.moveaxis(state.tensor_view(), keep, list(range(len(keep))))
        m = m.reshape(kept_dim, traced_dim)
        reduced = m @ m.conj().T

    reduced = 0.5 * (reduced + reduced.conj().T)
    return DensityMatrix(layout.select(keep), reduced)


def _matrix_sqrt(matrix):
    values, vectors = np.linalg.eigh(matrix)
    return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T


def fidelity(a, b):
    """
    |⟨a|b⟩|² for pure states, ⟨ψ|ρ|ψ⟩ for a pure and a mixed state and the
    Uhlmann fidelity for two mixed states.
    """
    if a.layout != b.layout:
        raise LayoutConflict("fidelity between %r and %r" % (a.layout, b.layout))

    a_mixed = isinstance(a, DensityMatrix)
    b_mixed = isinstance(b, DensityMatrix)
    if not a_mixed and not b_mixed:
        return abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
    if a_mixed and not b_mixed:
        a, b = b, a
    if not a_mixed or not b_mixed:
        vector = a.amplitudes
        return float(np.vdot(vector, b.matrix @ vector).real)

    root = _matrix_sqrt(a.matrix)
    inner = _matrix_sqrt(root @ b.matrix @ root)
    return float(np.trace(inner).real ** 2)


def expectation(state, operator, modes=None):
    """⟨O⟩ for an operator acting on ``modes`` (all modes when omitted)."""
    if modes is None:
        modes = list(range(len(state.layout)))

    axes, operator = _target_axes(state.layout, modes, operator)
    applied = _apply_operator_left(operator, state, axes)
    if isinstance(state, DensityMatrix):
        return float(np.trace(applied).real) if is_hermitian(operator) else complex(np.trace(applied))

    value = complex(np.vdot(state.amplitudes, applied))
    return value.real if is_hermitian(operator) else value


def _apply_operator_left(operator, state, axes):
    layout = state.layout
    if isinstance(state, DensityMatrix):
        t = state.matrix.reshape(layout.dims + layout.dims)
        t = _apply_on_axes(t, operator, axes)
        return t.reshape(layout.total_dim, layout.total_dim)

    return _apply_on_axes(state.tensor_view(), operator, axes).ravel()


def embed_operator(operator, layout, target_modes):
    """
    Dense matrix of ``operator`` on ``target_modes`` tensored with the
    identity on the remaining modes, built by index permutation.
    """
    axes, operator = _target_axes(layout, target_modes, operator)
    rest = [i for i in range(len(layout)) if i not in axes]
    rest_dim = int(np.prod([layout.dims[i] for i in rest])) if rest else 1

    permuted = np.kron(operator, np.eye(rest_dim))
    order = np.arange(layout.total_dim).reshape(layout.dims).transpose(axes + rest).ravel()

    full = np.zeros((layout.total_dim, layout.total_dim), dtype=complex)
    full[np.ix_(order, order)] = permuted
    return full


class Circuit(object):
    """Sequence of unitaries on mode subsets of a fixed layout."""

    def __init__(self, layout):
        self._layout = layout
        self._elements = []

    @property
    def layout(self):
        return self._layout

    def __len__(self):
        return len(self._elements)

    def append(self, unitary, target_modes):
        axes, unitary = _target_axes(self._layout, target_modes, unitary)
        if not is_unitary(unitary, 1e-10):
            raise NotUnitary("circuit element %d is not unitary" % len(self._elements))

        self._elements.append((unitary, axes))
        return self

    def apply(self, state):
        if state.layout != self._layout:
            raise LayoutConflict("circuit on %r applied to %r" % (self._layout, state.layout))

        for unitary, axes in self._elements:
            state = apply_unitary(unitary, state, axes)
        return state

    def dense(self):
        total = np.eye(self._layout.total_dim, dtype=complex)
        for unitary, axes in self._elements:
            total = embed_operator(unitary, self._layout, axes) @ total
        return total
