"""Stairway model of a double-well quantum gate array.

Modules
-------
pauli
    Pauli strings, products and the Clifford / exchanged generator families.
synth
    Pauli exponentials, the exact Clifford commutator gate, Trotter products.
closure
    Lie-algebra closure and the dimension checks of the gate families.
well
    Two-level double-well dynamics, Bloch vectors and Rabi traces.
chain
    Chain simulator: pulses, initialisation, measurement, separation.
kernels
    State-vector update loops (compiled with a numpy fallback).
cli
    ``stairway`` command-line front end.
"""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    ConstraintError,
    DegeneracyError,
    DimensionError,
    PreconditionError,
    RepresentationError,
    StairwayError,
)
from .pauli import (
    GeneratorSet,
    PauliString,
    anticommutes,
    g2_generator,
    make_generators,
    pauli_mul,
    tensor,
    to_matrix,
)
from .synth import (
    SynthesisReport,
    clifford_commutator_gate,
    error_norm,
    exp_pauli,
    fit_error_order,
    matrix_exp,
    trotter_commutator,
    trotter_sum,
)
from .closure import ClosureResult, check_family_dimensions, is_universal, lie_closure
from .well import (
    BlochVector,
    OscillationTrace,
    PauliDecomposition,
    TwoLevelHamiltonian,
    bloch_from_density,
    decompose,
    eigen_energies,
    eigen_states,
    evolve,
    rabi_trace,
)
from .chain import (
    ChainState,
    GatePulse,
    SeparationOutcome,
    apply_pulse,
    conditional_exchange,
    dephase,
    initialize_minus,
    initialize_zero,
    measure,
    probabilities,
    run_schedule,
    separate,
)
