"""Simulator for a weak position measurement followed by a strong momentum readout.

A Gaussian ancilla is coupled to a projector onto a narrow position slot, the
joint state is evolved exactly, and the ancilla is read out conditioned on a
momentum-slot outcome.  The package provides the exact two-register evolution,
the weak-regime closed forms (conditional states, Wigner fields, marginals,
variances, predictability), a brute-force oracle suite that cross-checks every
closed form against quadrature, and a CLI that emits figure-ready data files.
"""

from .errors import (
    ConfigError,
    DomainError,
    GridMismatch,
    GridTooNarrow,
    InvalidProbe,
    InvalidWidth,
    IoError,
    JwmError,
    NotNormalized,
    NotWeak,
    OutOfGrid,
    QuadratureDivergence,
    RegimeViolation,
    SchemaMismatch,
    ZeroMass,
)
from .grids import (
    GaussianSpec,
    Grid1D,
    WaveFunction1D,
    fourier,
    gaussian_value,
    inner,
    inverse_fourier,
    moments,
    norm,
    sample_gaussian,
)
from .measurement import (
    JointAmplitude2D,
    JwmState,
    PointerConfig,
    ProbeConfig,
    evolve_joint,
    hermite_series_factor,
    joint_probability,
    jwm_state_exact,
    jwm_state_weak,
    momentum_slot_position_rep,
    pointer_densities,
    pointer_weight,
    position_slot,
)
from .predictability import (
    PredictabilityCurve,
    average_predictability,
    predictability_curve,
    predictability_exact,
    predictability_weak,
    visibility_bound,
)
from .phase_space import (
    DIRAC_NORM,
    TRACE_OVERLAP_CONSTANT,
    PhaseSpaceField,
    VariancePair,
    averaged_variances,
    dirac_distribution,
    field_overlap,
    jwm_wigner_closed,
    marginals_closed,
    mean_pointer_shift,
    single_trial_variances,
    weyl_transform,
)
from .oracle import (
    CheckResult,
    SuiteConfig,
    gaussian_overlap,
    run_suite,
    write_report,
)

__version__ = "0.1.0"
