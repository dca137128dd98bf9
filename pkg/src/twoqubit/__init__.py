"""Local-unitary invariants, Poincare series and separability geometry
for mixed states of two qubits."""
from .geometry import (
    BoundaryClass,
    HypersurfacePoint,
    Tag,
    analyze_hypersurface_point,
    boundary_parameter,
    boundary_point,
    classify,
    is_separable,
    kernel_product_vector,
    smoothness_audit,
)
from .invariants import (
    InvariantVector,
    compute_invariants,
    det_pt_direct,
    det_pt_via_invariants,
    state_invariants,
)
from .molien import (
    cross_check,
    invariant_dimension,
    invariant_dimension_lie,
    two_qubit_weight_system,
)
from .qstate import (
    DensityMatrix,
    EnsembleSpec,
    MakhlinCoordinates,
    adjugate,
    apply_local_unitary,
    bell_state,
    bloch_compose,
    bloch_decompose,
    eigensystem,
    maximally_mixed,
    partial_transpose,
    sample,
    sample_local_unitary,
    validate_state,
    werner_state,
)
from .series import IntPoly, builtin_series, expand_rational, poincare_series

__version__ = "0.1.0"
