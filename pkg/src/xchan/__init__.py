"""Extremal quantum channels for N-level systems.

Construct channels in the Kraus form C_i = U_i D_i with canonical unitaries
and diagonal factors, verify the defining CPTP properties, test extremality,
map the qubit family's Bloch-ellipsoid geometry, and cross-check everything
against a unitary system-environment dilation.
"""

from .channels import (
    CheckResult,
    ExtremalityResult,
    KrausChannel,
    apply,
    apply_to_matrix,
    check_extremal,
    check_trace_orthogonal,
    check_trace_preserving,
    check_unital,
    choi,
    choi_min_eigenvalue,
    choi_output_trace,
    convex_combine,
    kraus_from_choi,
)
from .dilation import DilationModel, evolve_via_dilation, kraus_from_dilation, stinespring
from .errors import (
    ColumnOverflowError,
    NotHermitianError,
    NotPSDError,
    NotTracePreservingError,
    NotUnitTraceError,
    SchemaError,
    SingularComplementError,
    ValidationError,
)
from .extremal import (
    ExtremalParams,
    build_extremal,
    canonical_unitaries,
    complete_last_diagonal,
    pair_reduction_step,
    parameter_jacobian_rank,
    sample_extremal,
    sample_interior,
)
from .qubit import (
    BlochAffine,
    NuParams,
    bloch_affine,
    channel_from_nu,
    ellipsoid_samples,
    image_bloch,
    nu_to_diagonals,
    predicted_translation,
)
from .serialize import (
    channel_from_doc,
    channel_to_doc,
    dump_channel,
    dump_state,
    parse_channel,
    parse_state,
    state_from_doc,
    state_to_doc,
)
from .states import (
    DensityMatrix,
    bloch_to_rho,
    random_density,
    rho_to_bloch,
    validate_density,
)

__all__ = [
    "BlochAffine",
    "CheckResult",
    "ColumnOverflowError",
    "DensityMatrix",
    "DilationModel",
    "ExtremalParams",
    "ExtremalityResult",
    "KrausChannel",
    "NotHermitianError",
    "NotPSDError",
    "NotTracePreservingError",
    "NotUnitTraceError",
    "NuParams",
    "SchemaError",
    "SingularComplementError",
    "ValidationError",
    "apply",
    "apply_to_matrix",
    "bloch_affine",
    "bloch_to_rho",
    "build_extremal",
    "canonical_unitaries",
    "channel_from_doc",
    "channel_from_nu",
    "channel_to_doc",
    "check_extremal",
    "check_trace_orthogonal",
    "check_trace_preserving",
    "check_unital",
    "choi",
    "choi_min_eigenvalue",
    "choi_output_trace",
    "complete_last_diagonal",
    "convex_combine",
    "dump_channel",
    "dump_state",
    "ellipsoid_samples",
    "evolve_via_dilation",
    "image_bloch",
    "kraus_from_choi",
    "kraus_from_dilation",
    "nu_to_diagonals",
    "pair_reduction_step",
    "parameter_jacobian_rank",
    "parse_channel",
    "parse_state",
    "predicted_translation",
    "random_density",
    "rho_to_bloch",
    "sample_extremal",
    "sample_interior",
    "state_from_doc",
    "state_to_doc",
    "stinespring",
    "validate_density",
]

__version__ = "0.1.0"
