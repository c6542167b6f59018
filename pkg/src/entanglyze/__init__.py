"""Entanglement-metric structure, projective measurements and measurement-axis
optimization for multiqubit pure states."""

__version__ = "0.1.0"

from .entanglement import (
    EntanglementMetric,
    ed_single,
    em_element,
    em_matrix,
    is_maximally_entangled,
    total_entanglement,
)
from .measurement import (
    MeasurementRecord,
    measure_sequence,
    project,
    sequential_expectation_formula,
    verify_theorem1,
)
from .optimize import (
    AxisSolution,
    mieb_matrix,
    optimal_axis_set,
    optimal_breaking_axis,
    optimal_pair_axes,
    spin_correlation_matrix,
)
from .linalg import sym3_eigen
from .states import (
    BellKind,
    SupersingletParams,
    bell,
    brs_chain,
    ghz,
    product_state,
    random_state,
    supersinglet_s4,
)
from .statevec import (
    Axis,
    PauliFactor,
    StateVector,
    X,
    Y,
    Z,
    apply_pauli,
    bloch_vector,
    correlator,
    expectation,
    factor,
    make_state,
)
from .structure import BlockPartition, block_partition, persistency_upper_bound, quantize_em

__all__ = [
    "apply_pauli",
    "Axis",
    "AxisSolution",
    "bell",
    "BellKind",
    "bloch_vector",
    "block_partition",
    "BlockPartition",
    "brs_chain",
    "correlator",
    "ed_single",
    "em_element",
    "em_matrix",
    "EntanglementMetric",
    "expectation",
    "factor",
    "ghz",
    "is_maximally_entangled",
    "make_state",
    "measure_sequence",
    "MeasurementRecord",
    "mieb_matrix",
    "optimal_axis_set",
    "optimal_breaking_axis",
    "optimal_pair_axes",
    "PauliFactor",
    "persistency_upper_bound",
    "product_state",
    "project",
    "quantize_em",
    "random_state",
    "sequential_expectation_formula",
    "spin_correlation_matrix",
    "StateVector",
    "supersinglet_s4",
    "SupersingletParams",
    "sym3_eigen",
    "total_entanglement",
    "verify_theorem1",
    "X",
    "Y",
    "Z",
]
