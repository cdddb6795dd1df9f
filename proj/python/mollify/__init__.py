"""Main-term constants and kappa lower bounds for mollified second moments."""

from ._mollify import (
    ConfigError,
    QuadratureError,
    SpecError,
    c11_closed_form,
    c11_reduced,
    dirichlet_convolve,
    dirichlet_inverse,
    evaluate,
    kappa_bound,
    kappa_one_piece,
    kappa_surface,
    lambda_series,
    nu1_bound,
    nul_bound,
    optimize_preset,
    preset_names,
    reproduce,
    tau,
    verify_arithmetic,
)

__all__ = [
    "ConfigError",
    "QuadratureError",
    "SpecError",
    "c11_closed_form",
    "c11_reduced",
    "dirichlet_convolve",
    "dirichlet_inverse",
    "evaluate",
    "kappa_bound",
    "kappa_one_piece",
    "kappa_surface",
    "lambda_series",
    "nu1_bound",
    "nul_bound",
    "optimize_preset",
    "preset_names",
    "reproduce",
    "tau",
    "verify_arithmetic",
]
