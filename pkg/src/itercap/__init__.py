"""Convergence bounds on capacities of iterated GNS-symmetric quantum channels.

The package computes, for a channel applied at every time step: the peripheral
block structure that carries the infinite-time capacities, the entropic
constants controlling how fast capacities converge to them, one-shot and
asymptotic capacity bounds, the zero-error stabilization threshold, and the
active-vs-passive error-correction comparison for Pauli noise with the
5-qubit code and its concatenation.
"""

from .bounds import (
    CapacityBounds,
    EntropicConstants,
    alpha_c_lower,
    asymptotic_bounds,
    binary_entropy,
    compute_entropic_constants,
    lambda_gap,
    one_shot_bounds,
    peripheral_capacities,
    pimsner_popa,
    zero_error_threshold,
)
from .channel import (
    ChannelDense,
    DensityMatrix,
    GnsReport,
    Tolerances,
    adjoint,
    apply_channel,
    channel_from_json,
    channel_from_kraus,
    channel_to_json,
    check_gns_symmetric,
    compose,
    find_invariant_state,
    identity_channel,
    iterate,
    maximally_mixed,
    tensor,
)
from .errors import ItercapError
from .pauli import (
    PauliChannel,
    PauliEigenvalues,
    eigenvalues,
    from_eigenvalues,
    hashing_lb,
    pauli_lambda_gap,
    power,
    repair_probabilities,
    shannon_entropy,
    to_dense,
)
from .scenario import (
    BoundCurve,
    ScenarioConfig,
    active_curves,
    build_bound_curve,
    emit_csv,
    find_crossover,
    passive_curves,
    pauli_entropic_constants,
    trivial_pauli_structure,
)
from .spectral import (
    PeripheralBlock,
    PeripheralStructure,
    extract_structure,
    peripheral_projection,
    verify_limit,
)
from .stabilizer import (
    LogicalChannelResult,
    PauliString,
    StabilizerCode,
    concatenated_logical_channel,
    five_qubit_code,
    logical_channel,
    logical_class,
    syndrome,
)

__version__ = "0.1.0"
