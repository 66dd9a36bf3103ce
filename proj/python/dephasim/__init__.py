"""Exact pure-dephasing dynamics of N two-level systems in a common bosonic
environment, and the BLP / relative-entropy non-Markovianity measures."""

from ._dephasim import (  # noqa: F401
    INFINITE_BETA,
    ArbitrationReport,
    ArbitrationRow,
    BasisString,
    CoherenceFactors,
    DiscreteBath,
    ExactOptions,
    ExactResult,
    KernelValues,
    LongTimeLimits,
    MeasureRates,
    MeasureResult,
    Mode,
    ModelConfig,
    MonotoneInterval,
    NumericalError,
    SpectralParams,
    SweepAxis,
    SweepRow,
    Variant,
    __version__,
    arbitrate_variants,
    assign_fock_dims,
    blp_measure,
    coherence_factors,
    delta_exact,
    discrete_kernels,
    discretize,
    entropy_measure,
    exact_reduced_state,
    find_increase_intervals,
    gamma_exact,
    kernel_quadrature,
    kernel_rates,
    long_time_limits,
    n_qubit_element,
    rates,
    reduced_pair,
    relative_entropy,
    spectral_density,
    sweep,
    trace_distance,
    truncation_leakage_bound,
)
