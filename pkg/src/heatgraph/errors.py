"""Exception hierarchy.

Precondition failures (bad input, violated hypotheses, size caps) derive from
:class:`PreconditionError`; numerical breakdowns derive from
:class:`NumericalError`. The CLI maps them to exit codes 2 and 3.
"""


class HeatGraphError(Exception):
    """Base class for all package errors."""


class PreconditionError(HeatGraphError, ValueError):
    """An operation was called outside its domain."""


class GraphFormatError(PreconditionError):
    """Malformed graph, profile or function file."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class UnknownVertexError(PreconditionError, KeyError):
    def __init__(self, vertex):
        super().__init__(f"unknown vertex {vertex!r}")
        self.vertex = vertex

    def __str__(self):
        return self.args[0]


class SizeCapError(PreconditionError):
    """A dense computation would exceed its configured size cap."""


class SymmetryError(PreconditionError):
    """Graph is not weakly spherically symmetric; carries a witness pair."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class CycleError(PreconditionError):
    """A short cycle through an edge invalidates a closed-form formula."""

    def __init__(self, message, cycle):
        super().__init__(message)
        self.cycle = cycle


class NumericalError(HeatGraphError, RuntimeError):
    """Eigendecomposition failure, LP breakdown, or similar internal failure."""
