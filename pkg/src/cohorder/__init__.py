"""Coherence measures of finite-dimensional quantum states and the pairs of
states on which two measures disagree about which is more coherent."""
from .errors import (
    BadTrace,
    CoherenceError,
    DegenerateLift,
    DimensionError,
    DimensionMismatch,
    DomainError,
    InvalidChannel,
    NoConvergence,
    NormalizationError,
    NotHermitian,
    NotIncoherent,
    NotPositive,
    StateFileError,
    UnsupportedInput,
)
from .linalg import (
    binary_entropy,
    hermitian_eigenvalues,
    shannon_entropy,
    von_neumann_entropy,
)
from .measures import (
    Measure,
    c_f,
    c_f_pure,
    c_f_qubit,
    c_l1,
    c_l1_lift_recursion,
    c_l1_qubit,
    c_r,
    c_r_lift_recursion,
    c_r_qubit,
    coherence,
)
from .ordering import (
    FeasibilityResult,
    OrderingVerdict,
    ScanGrid,
    Verdict,
    build_embedded_pair,
    build_lifted_pair,
    classify_pair,
    find_witness,
    qubit_pair_feasible,
    scan_delta_cr,
)
from .postulates import (
    KrausSet,
    apply_channel,
    check_convexity,
    check_monotonicity,
    check_selective_monotonicity,
    random_incoherent_channel,
    validate_icptp,
)
from .states import (
    BlochQubit,
    DensityMatrix,
    PureState,
    canonicalize_qubit,
    dephase,
    embed_mixed,
    from_bloch_xyz,
    is_incoherent,
    lift_pure,
    maximally_coherent,
    validate_density,
)

__version__ = "0.1.0"
