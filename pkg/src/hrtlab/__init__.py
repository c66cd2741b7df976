"""Verification laboratory for four-point time-frequency configurations.

The package splits into exact and numerical halves.  ``phase_space`` and
``exact_scalars`` are exact: phase-plane geometry, lattice bookkeeping, and
an exact scalar tower (rationals and quadratic irrationals) feeding the
configuration classifier.  ``signal_kernel``, ``independence_lab``, and
``density_lab`` are numerical: discretized time-frequency shifts with a
wraparound quality guard, Gram-matrix independence certificates, Kronecker
density witnesses, and truncated-orbit completeness probes.  ``cli`` ties
them together behind the ``hrtlab`` command.
"""

from .density_lab import (
    DensityWitness,
    ProbeEntry,
    ResidualCurve,
    WrappedShiftError,
    completeness_probe,
    cyclic_membership_residual,
    density_success_rate,
    density_witness_table,
    orbit_residual,
    residual_curve,
    semigroup_witness,
    write_curve_csv,
    write_probe_csv,
)
from .exact_scalars import (
    Classification,
    Configuration,
    DenseLargeCovolume,
    ExactScalar,
    NotRationalError,
    OutOfScope,
    OutOfScopeReason,
    QuadIrr,
    Rational,
    RationalCoordinate,
    ScalarParseError,
    classify,
    evaluate,
    integer_relation_search,
    make_scalar,
    parse_scalar,
    rationally_independent_1_r_s,
    refine_denominator,
)
from .independence_lab import (
    DEFAULT_THRESHOLD,
    DuplicatePointsError,
    GramReport,
    certify_independence,
    gram_matrix,
    min_singular_value,
    three_point_certificate,
)
from .phase_space import (
    DegenerateBasisError,
    LatticeBasis,
    LatticePoint,
    PhasePoint,
    covolume,
    enumerate_lattice,
    lattice_point_coords,
    nu_point,
    symplectic_form,
)
from .signal_kernel import (
    DiscretizedSignal,
    GridMismatchError,
    GridSpec,
    ZeroSignalError,
    cocycle,
    composition_phase,
    gaussian_ambiguity,
    inner,
    make_bandlimited_noise,
    make_gaussian,
    modulate,
    norm,
    read_signal,
    tf_shift,
    translate,
    write_signal,
    write_signal_csv,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # phase_space
    "PhasePoint",
    "LatticeBasis",
    "LatticePoint",
    "DegenerateBasisError",
    "symplectic_form",
    "covolume",
    "lattice_point_coords",
    "enumerate_lattice",
    "nu_point",
    # exact_scalars
    "Rational",
    "QuadIrr",
    "ExactScalar",
    "make_scalar",
    "evaluate",
    "parse_scalar",
    "ScalarParseError",
    "NotRationalError",
    "rationally_independent_1_r_s",
    "refine_denominator",
    "integer_relation_search",
    "Configuration",
    "Classification",
    "DenseLargeCovolume",
    "RationalCoordinate",
    "OutOfScope",
    "OutOfScopeReason",
    "classify",
    # signal_kernel
    "GridSpec",
    "DiscretizedSignal",
    "GridMismatchError",
    "ZeroSignalError",
    "make_gaussian",
    "make_bandlimited_noise",
    "translate",
    "modulate",
    "tf_shift",
    "inner",
    "norm",
    "composition_phase",
    "cocycle",
    "gaussian_ambiguity",
    "write_signal",
    "read_signal",
    "write_signal_csv",
    # independence_lab
    "GramReport",
    "DuplicatePointsError",
    "DEFAULT_THRESHOLD",
    "gram_matrix",
    "min_singular_value",
    "certify_independence",
    "three_point_certificate",
    # density_lab
    "DensityWitness",
    "WrappedShiftError",
    "ProbeEntry",
    "ResidualCurve",
    "semigroup_witness",
    "density_witness_table",
    "density_success_rate",
    "orbit_residual",
    "completeness_probe",
    "cyclic_membership_residual",
    "residual_curve",
    "write_probe_csv",
    "write_curve_csv",
]
