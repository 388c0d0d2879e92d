# -*- coding: utf8 -*-

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import re
import math

import numpy as np

from .errors import InvalidParameter


ANGLE_PATTERN = re.compile(
    r"^\s*(?P<sign>[+-])?\s*(?:(?P<coef>\d+(?:\.\d*)?|\.\d+)\s*\*?\s*)?pi"
    r"\s*(?:/\s*(?P<div>\d+(?:\.\d*)?))?\s*$",
    re.IGNORECASE
)


def parse_angle(value):
    """
    Converts number or "pi"-expression (``"pi/2"``, ``"3*pi/8"``, ``"-pi"``)
    into radians.
    """
    if isinstance(value, bool):
        raise InvalidParameter("angle must be a number, got %r" % (value,))
    if isinstance(value, (int, float)):
        return float(value)

    match = ANGLE_PATTERN.match(str(value))
    if match is None:
        raise InvalidParameter("cannot interpret %r as an angle" % (value,))

    angle = math.pi
    if match.group("coef"):
        angle *= float(match.group("coef"))
    if match.group("div"):
        angle /= float(match.group("div"))
    if match.group("sign") == "-":
        angle = -angle

    return angle


def is_unitary(matrix, tolerance=1e-10):
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False

    identity = np.eye(matrix.shape[0])
    return np.allclose(matrix.conj().T @ matrix, identity, rtol=0, atol=tolerance)


def is_hermitian(matrix, tolerance=1e-10):
    matrix = np.asarray(matrix)
    return np.allclose(matrix, matrix.conj().T, rtol=0, atol=tolerance)


def trace_norm(matrix):
    """Sum of singular values; for Hermitian input the sum of |eigenvalues|."""
    return float(np.sum(np.abs(np.linalg.eigvalsh(np.asarray(matrix)))))


def trace_distance(a, b):
    return 0.5 * trace_norm(np.asarray(a) - np.asarray(b))


def binary_entropy(p):
    """Shannon entropy in bits of a Bernoulli(p) variable."""
    if p <= 0.0 or p >= 1.0:
        return 0.0

    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def derive_rng(seed, *key):
    """
    Independent generator for the stream identified by ``key``. The same
    (seed, key) always yields the same stream, whatever else is drawn.
    """
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.default_rng(sequence)


def clean_zero(value, threshold=1e-14):
    """Reports values below numerical resolution as exact zero."""
    return 0.0 if abs(value) < threshold else value
