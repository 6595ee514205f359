"""Python access to the rsverify numerics and suite runner."""

from ._core import (
    ConvergenceError,
    DomainError,
    PoleError,
    QuadratureError,
    alpha_to_lambda,
    beta_fn,
    chain_step,
    completed_prefactor,
    gamma,
    gamma_quotient,
    gauss_2f1,
    gauss_sum,
    hyp_unit,
    identities,
    log_gamma,
    model_value_closed,
    model_value_closed_t,
    reciprocity_modulus,
    report_schema,
    rgamma,
    run,
    sample_params,
    stade_gamma,
    verify_identity,
)

__all__ = [
    "ConvergenceError",
    "DomainError",
    "PoleError",
    "QuadratureError",
    "alpha_to_lambda",
    "beta_fn",
    "chain_step",
    "completed_prefactor",
    "gamma",
    "gamma_quotient",
    "gauss_2f1",
    "gauss_sum",
    "hyp_unit",
    "identities",
    "log_gamma",
    "model_value_closed",
    "model_value_closed_t",
    "reciprocity_modulus",
    "report_schema",
    "rgamma",
    "run",
    "sample_params",
    "stade_gamma",
    "verify_identity",
]
