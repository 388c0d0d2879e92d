# -*- coding: utf8 -*-

"""Exceptions raised by kerrlab."""

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals


class KerrLabError(Exception):
    """Base class of every error raised by the package."""


class InvalidParameter(KerrLabError, ValueError):
    pass


class CutoffTooSmall(KerrLabError, ValueError):
    """Fock truncation would drop more than the allowed tail mass."""

    def __init__(self, message, tail_mass=None):
        super(CutoffTooSmall, self).__init__(message)
        self.tail_mass = tail_mass


class IndexOutOfRange(KerrLabError, IndexError):
    pass


class LayoutConflict(KerrLabError, ValueError):
    pass


class DimensionMismatch(KerrLabError, ValueError):
    pass


class NotUnitary(KerrLabError, ValueError):
    pass


class NotProjector(KerrLabError, ValueError):
    pass


class NotNormalized(KerrLabError, ValueError):
    pass


class NotPhysical(KerrLabError, ValueError):
    """Matrix is not a valid density operator."""


class ZeroProbability(KerrLabError, ArithmeticError):
    """Conditioning on an outcome that cannot occur."""

    def __init__(self, message, probability=0.0):
        super(ZeroProbability, self).__init__(message)
        self.probability = probability


class GridTooCoarse(KerrLabError, ValueError):
    pass


class InsufficientPhases(KerrLabError, ValueError):
    pass


class NonConvergence(KerrLabError, RuntimeError):
    """
    Iterative reconstruction hit its iteration cap. The last iterate is kept
    on the exception so callers may still use it.
    """

    def __init__(self, message, residual, iterations, rho=None):
        super(NonConvergence, self).__init__(message)
        self.residual = residual
        self.iterations = iterations
        self.rho = rho


class ConfigInvalid(KerrLabError, ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        message = "; ".join(str(d) for d in self.diagnostics)
        super(ConfigInvalid, self).__init__(message or "invalid configuration")


class ParseError(KerrLabError, ValueError):
    def __init__(self, message, line, column):
        super(ParseError, self).__init__(
            "%s (line %d, column %d)" % (message, line, column))
        self.line = line
        self.column = column


class ComputeError(KerrLabError, RuntimeError):
    pass
