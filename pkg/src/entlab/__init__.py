"""Bound-to-free entanglement conversion of Horodecki qutrit pairs via a DM-coupled ancilla."""

from .criteria import (
    ClassificationLabel,
    CriteriaResult,
    ReductionReport,
    classify,
    evaluate,
    negativity,
    realignment_measure,
    reduction_report,
)
from .evolution import (
    DEFAULT_VARIANT,
    EvolutionParams,
    HamiltonianVariant,
    closed_form_state1,
    dm_hamiltonian_bc,
    embed_full,
    evolve_and_reduce,
    select_variant,
)
from .linalg import expm_hermitian_generator, herm_eig, kron, singular_values, trace_norm
from .states import (
    Family,
    PureQubitState,
    aux_qubit,
    compose,
    horodecki_state,
    horodecki_state1,
    horodecki_state2,
    maximally_entangled,
)
from .sweep import SweepConfig, SweepRecord, find_negative_region, run_sweep
from .tensor import DensityMatrix, partial_trace, partial_transpose, realign

__version__ = "0.1.0"
