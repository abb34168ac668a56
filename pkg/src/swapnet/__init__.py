"""Few-qubit density-matrix simulation of entanglement swapping and nonclassicality tests."""

from .qstate import (
    DensityMatrix,
    Ket,
    StateError,
    eig_hermitian,
    partial_trace,
    permute_qubits,
    tensor,
)
from .states import bell_ket, ghz_ket, noisy_ghz, rho_lambda, werner, white_noise
from .measurement import (
    BasisProjector,
    MeasurementOutcome,
    ZeroProbabilityOutcome,
    basis_projectors,
    local_correction,
    measure,
)
from .swap import (
    AllOutcomesCanonical,
    FixedOutcome,
    SwapConfig,
    chain_swap,
    oracle_chain_werner,
    oracle_star3_werner,
    oracle_swapped_rho_lambda,
    star_swap,
)
from .nonclassicality import (
    BracketError,
    CorrelationTensor,
    CriterionReport,
    concurrence,
    correlation_tensor,
    critical_visibility,
    eof,
    functional_threshold,
    functional_violation,
    ghz_visibility,
    horodecki_chsh_max,
    mk_max,
    mk_max_xy,
    mk_operator,
    mk_star_threshold,
    mk_value,
    ppt_entangled,
    two_setting_tensor_max,
    xy_settings,
)

__version__ = "0.1.0"
