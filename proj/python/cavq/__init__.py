"""Cavity cat-state preparation, Wigner functions and quality-factor readout."""

from ._cavq import (  # noqa: F401
    BracketError,
    CatSpec,
    ConfigError,
    DomainError,
    Error,
    NonIdentifiableError,
    SystemParams,
    TruncationError,
    __version__,
    cat_wigner,
    damping_factor,
    derive,
    dispersive_vs_full,
    fit_q,
    numeric_wigner,
    prepare,
    pulse_duration,
    readout_curve,
    readout_probability,
    tau2_for_phi,
    validate,
)
