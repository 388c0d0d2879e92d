# -*- coding: utf8 -*-

"""
Run configuration: a strict JSON document naming a scenario and its
parameters. Every parameter has a default; unknown keys are errors and
validation reports every problem at once.
"""

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import io
import json
import math
import hashlib
import logging

from dataclasses import dataclass, field, replace

from .errors import ConfigInvalid, InvalidParameter, ParseError
from .fock import POLARIZATIONS
from .phase_space import NOISE_KINDS
from .scenarios import JITTER_MODES, bell_label
from .utils import parse_angle


logger = logging.getLogger("kerrlab")


SCENARIOS = ("interfere", "erase", "cat", "ghz", "eve", "tomo")
EMIT_KINDS = ("csv", "json")
TOP_LEVEL_DEFAULTS = {
    "parameters": {},
    "seed": 0,
    "output_dir": "results",
    "emit": ["csv", "json"],
}


class Diagnostic(object):
    """One schema violation, located by a dotted path."""

    __slots__ = ("path", "message")

    def __init__(self, path, message):
        self.path = path
        self.message = message

    def __eq__(self, other):
        if not isinstance(other, Diagnostic):
            return NotImplemented
        return (self.path, self.message) == (other.path, other.message)

    def __hash__(self):
        return hash((self.path, self.message))

    def __str__(self):
        return "%s: %s" % (self.path, self.message)

    def __repr__(self):
        return "<Diagnostic %s>" % self


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def real(value):
    if not _is_number(value) or not math.isfinite(value):
        raise InvalidParameter("expected a finite number, got %r" % (value,))
    return float(value)


def non_negative(value):
    value = real(value)
    if value < 0:
        raise InvalidParameter("must be >= 0, got %r" % value)
    return value


def positive(value):
    value = real(value)
    if not value > 0:
        raise InvalidParameter("must be > 0, got %r" % value)
    return value


def probability(value):
    value = real(value)
    if not 0.0 <= value <= 1.0:
        raise InvalidParameter("must lie in [0, 1], got %r" % value)
    return value


def efficiency(value):
    value = real(value)
    if not 0.0 < value <= 1.0:
        raise InvalidParameter("must lie in (0, 1], got %r" % value)
    return value


def angle(value):
    result = parse_angle(value)
    if not math.isfinite(result):
        raise InvalidParameter("angle must be finite")
    return result


def duration(value):
    result = angle(value)
    if result < 0:
        raise InvalidParameter("must be >= 0, got %r" % (value,))
    return result


def amplitude(value):
    """A real number or an [re, im] pair."""
    if isinstance(value, list):
        if len(value) != 2:
            raise InvalidParameter("complex amplitude is an [re, im] pair")
        return complex(real(value[0]), real(value[1]))
    return complex(real(value))


def integer(minimum):
    def check(value):
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidParameter("expected an integer, got %r" % (value,))
        if value < minimum:
            raise InvalidParameter("must be >= %d, got %d" % (minimum, value))
        return value
    return check


def optional(check):
    def wrapped(value):
        return None if value is None else check(value)
    return wrapped


def choice(*allowed):
    def check(value):
        if value not in allowed:
            raise InvalidParameter(
                "%r is not one of %s" % (value, ", ".join(str(a) for a in allowed)))
        return value
    return check


def boolean(value):
    if not isinstance(value, bool):
        raise InvalidParameter("expected true or false, got %r" % (value,))
    return value


def bell(value):
    bell_label(value)
    return value


def alphabet(value):
    """Polarization labels or angles θ of cos θ|H⟩ + sin θ|V⟩."""
    if not isinstance(value, list) or not value:
        raise InvalidParameter("expected a non-empty list of polarizations")

    symbols = []
    for symbol in value:
        if isinstance(symbol, str) and symbol in POLARIZATIONS:
            symbols.append(symbol)
        else:
            symbols.append(angle(symbol))
    return symbols


def noise_levels(value):
    if not isinstance(value, list) or not value:
        raise InvalidParameter("expected a non-empty list of sigma fractions")
    return [non_negative(level) for level in value]


_INTERFERE = (
    ("nu", 1.0, amplitude),
    ("chi", 1.0, real),
    ("chi_s", 0.0, real),
    ("omega_s", 0.0, real),
    ("T", "pi/4", duration),
    ("transmittance", 0.5, probability),
    ("theta_offset", 0.0, angle),
    ("theta_points", 64, integer(3)),
    ("probe_cutoff", None, optional(integer(1))),
)

SCHEMAS = {
    "interfere": _INTERFERE,
    "erase": _INTERFERE + (
        ("T_prime", None, optional(duration)),
        ("jitter_sigma", 0.0, non_negative),
        ("jitter_mode", "gaussian", choice(*JITTER_MODES)),
        ("jitter_trials", 1000, integer(1)),
        ("workers", 1, integer(1)),
    ),
    "cat": (
        ("nu", 1.5, amplitude),
        ("chi", 1.0, real),
        ("chi_s", 0.0, real),
        ("omega_s", 0.0, real),
        ("T", "pi/2", duration),
        ("outcome", 135, choice(45, 135)),
        ("cutoff", None, optional(integer(1))),
        ("wigner_points", 121, integer(2)),
    ),
    "ghz": (
        ("bell", "phi+", bell),
        ("phi", "pi", angle),
    ),
    "eve": (
        ("phi", "pi/2", angle),
        ("alphabet", ["H", "V", "45", "135"], alphabet),
        ("transmittance", 0.5, probability),
    ),
    "tomo": (
        ("nu", 1.5, amplitude),
        ("parity", "odd", choice("odd", "even")),
        ("phases", 12, integer(8)),
        ("samples_per_phase", 10000, integer(1)),
        ("noise_kind", "additive_gaussian", choice(*NOISE_KINDS)),
        ("sigma_fraction", 0.25, non_negative),
        ("eta", 1.0, efficiency),
        ("cutoff", 14, integer(1)),
        ("bin_count", 128, integer(2)),
        ("max_iterations", 2000, integer(1)),
        ("convergence_tol", 1e-6, positive),
        ("noise_aware", False, boolean),
        ("bootstrap_resamples", 100, integer(50)),
        ("wigner_points", 81, integer(2)),
        ("workers", 1, integer(1)),
        ("sweep", None, optional(noise_levels)),
    ),
}


@dataclass(frozen=True)
class RunConfig:
    """
    Validated run. ``parameters`` holds every parameter of the scenario,
    defaults filled in and angles converted to radians.
    """
    scenario: str
    parameters: dict = field(default_factory=dict)
    seed: int = 0
    output_dir: str = "results"
    emit: tuple = EMIT_KINDS

    def with_overrides(self, output_dir=None, seed=None):
        changes = {}
        if output_dir is not None:
            changes["output_dir"] = output_dir
        if seed is not None:
            changes["seed"] = seed
        return replace(self, **changes)

    def to_dict(self):
        return {
            "scenario": self.scenario,
            "parameters": dict(self.parameters),
            "seed": self.seed,
            "output_dir": self.output_dir,
            "emit": list(self.emit),
        }

    def config_hash(self):
        """sha256 of the resolved configuration, output directory excluded."""
        document = self.to_dict()
        del document["output_dir"]
        canonical = json.dumps(_canonical(document), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf8")).hexdigest()


def _canonical(value):
    if isinstance(value, dict):
        return {k: _canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def _check_parameters(scenario, parameters, diagnostics):
    schema = SCHEMAS[scenario]
    known = set(name for name, _, _ in schema)
    for key in sorted(set(parameters) - known):
        diagnostics.append(Diagnostic(
            "parameters.%s" % key,
            "unknown parameter for scenario %r; allowed: %s" % (scenario, ", ".join(sorted(known)))))

    resolved = {}
    for name, default, check in schema:
        value = parameters.get(name, default)
        try:
            resolved[name] = check(value)
        except InvalidParameter as e:
            diagnostics.append(Diagnostic("parameters.%s" % name, str(e)))

    if scenario == "erase" and "T_prime" in resolved and resolved["T_prime"] is None:
        resolved["T_prime"] = resolved.get("T")
    if (scenario == "tomo" and resolved.get("noise_kind") == "efficiency"
            and resolved.get("sweep") is not None):
        diagnostics.append(Diagnostic(
            "parameters.sweep", "efficiency noise has no sigma_fraction to sweep"))
    return resolved


def _resolve(document):
    """(RunConfig or None, diagnostics)"""
    diagnostics = []
    if not isinstance(document, dict):
        return None, [Diagnostic("$", "configuration must be a JSON object")]

    allowed = set(TOP_LEVEL_DEFAULTS) | {"scenario"}
    for key in sorted(set(document) - allowed):
        diagnostics.append(Diagnostic(
            key, "unknown key; allowed: %s" % ", ".join(sorted(allowed))))

    scenario = document.get("scenario")
    if scenario not in SCENARIOS:
        diagnostics.append(Diagnostic(
            "scenario", "%r is not a scenario; allowed values: %s"
            % (scenario, ", ".join(SCENARIOS))))

    seed = document.get("seed", TOP_LEVEL_DEFAULTS["seed"])
    try:
        seed = integer(0)(seed)
    except InvalidParameter as e:
        diagnostics.append(Diagnostic("seed", str(e)))

    output_dir = document.get("output_dir", TOP_LEVEL_DEFAULTS["output_dir"])
    if not isinstance(output_dir, str) or not output_dir:
        diagnostics.append(Diagnostic("output_dir", "expected a non-empty path"))

    emit = document.get("emit", TOP_LEVEL_DEFAULTS["emit"])
    if not isinstance(emit, list) or any(kind not in EMIT_KINDS for kind in emit):
        diagnostics.append(Diagnostic(
            "emit", "expected a list drawn from %s" % ", ".join(EMIT_KINDS)))

    parameters = document.get("parameters", TOP_LEVEL_DEFAULTS["parameters"])
    resolved = {}
    if not isinstance(parameters, dict):
        diagnostics.append(Diagnostic("parameters", "expected a JSON object"))
    elif scenario in SCENARIOS:
        resolved = _check_parameters(scenario, parameters, diagnostics)

    if diagnostics:
        return None, diagnostics

    emit = tuple(kind for kind in EMIT_KINDS if kind in emit)
    return RunConfig(scenario, resolved, seed, output_dir, emit), []


def validate(document):
    """Every schema violation of ``document``; empty when it would run."""
    return _resolve(document)[1]


def parse_config(document):
    """
    :raises ConfigInvalid: carrying every diagnostic.
    """
    config, diagnostics = _resolve(document)
    if diagnostics:
        raise ConfigInvalid(diagnostics)
    return config


def _reject_constant(name):
    raise ValueError("%s is not valid JSON" % name)


def load_document(path):
    """
    Reads a JSON document.

    :raises ParseError: with the line and column of the syntax error.
    """
    with io.open(path, "r", encoding="utf8") as file:
        text = file.read()

    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno)
    except ValueError as e:
        raise ParseError(str(e), 1, 1)


def validate_file(path):
    return validate(load_document(path))


def load_config(path):
    config = parse_config(load_document(path))
    logger.debug("Loaded %s run from %s.", config.scenario, path)
    return config

