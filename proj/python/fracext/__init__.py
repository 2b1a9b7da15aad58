from ._fracext import (
    apply_power,
    conormal_trace,
    dtn_constant,
    eigenvalues,
    energy_identity,
    extend,
    minimize_curve,
    psi,
    run_cli,
    sobolev_norm,
    verify,
)

__all__ = [
    "apply_power",
    "conormal_trace",
    "dtn_constant",
    "eigenvalues",
    "energy_identity",
    "extend",
    "minimize_curve",
    "psi",
    "run_cli",
    "sobolev_norm",
    "verify",
]
