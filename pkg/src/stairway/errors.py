"""Exception types raised by the stairway package."""

import os

DEFAULT_DENSE_CAP = 12


class StairwayError(Exception):
    """Base class for all package errors."""


class DimensionError(StairwayError, ValueError):
    """Operands have incompatible sizes."""


class CapacityError(StairwayError):
    """Requested object exceeds the dense-representation cap."""


class DegeneracyError(StairwayError, ValueError):
    """Eigenbasis is not uniquely defined."""


class PreconditionError(StairwayError, ValueError):
    """Inputs violate an algebraic precondition (e.g. commuting pair)."""


class ConstraintError(StairwayError, ValueError):
    """A pulse is not allowed by the gate-set layout of the chain."""


class RepresentationError(StairwayError, ValueError):
    """Operation is not defined for the state's representation."""


def dense_cap():
    """Largest qubit count for which dense 2^n x 2^n matrices are built.

    Read from ``STAIRWAY_DENSE_CAP`` on every call so tests and the CLI can
    override it without re-importing.
    """
    raw = os.environ.get("STAIRWAY_DENSE_CAP")
    if raw is None or raw == "":
        return DEFAULT_DENSE_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"STAIRWAY_DENSE_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"STAIRWAY_DENSE_CAP must be positive, got {cap}")
    return cap


def check_dense(n_qubits):
    cap = dense_cap()
    if n_qubits > cap:
        raise CapacityError(
            f"{n_qubits} qubits exceeds the dense cap of {cap} "
            f"(set STAIRWAY_DENSE_CAP to raise it)"
        )
