"""Open quantum systems toolkit.

Dissipative two-level dynamics in a Lorentzian reservoir, quantum channels
(Choi/Kraus interconversion, unitary dilation, the partial-transpose
entanglement test), and canonical semigroup generators. Matrices are numpy
complex arrays throughout.
"""

from ._core import (  # noqa: F401
    AmplitudeZeroError,
    CompletenessError,
    CompletePositivityError,
    DimensionError,
    DiscreteReservoir,
    DomainError,
    GridError,
    HermiticityError,
    IsometryError,
    JCParams,
    NormalizationError,
    NotCompletelyPositiveGeneratorError,
    NotTracePreservingError,
    PositivityError,
    RegimeError,
    TracePreservationError,
    __version__,
    apply_channel,
    c1_derivative,
    c1_exact,
    c1_volterra,
    choi_from_kraus,
    correlation_f,
    correlation_f_quadrature,
    dilate,
    discrete_correlation,
    eigh,
    evolve,
    exact_trajectory,
    expectation,
    expm,
    extend_isometry,
    gamma_resonant,
    gksl_decompose,
    integrate_master,
    is_cptp,
    kraus_from_choi,
    kron,
    lorentzian_j,
    master_rhs,
    partial_trace,
    partial_transpose,
    ppt_min_eig,
    project,
    random_cptp_choi,
    random_density,
    rates,
    rho_interaction,
    sample_reservoir,
    semigroup_check,
    simulate_discrete,
    superop_from_generator,
    trace_distance,
    uniform_grid,
)
