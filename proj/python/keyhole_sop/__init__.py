# SPDX-License-Identifier: Apache-2.0
"""Secrecy outage probability of a keyhole multi-user system with multiple
eavesdroppers: closed form, high-SNR asymptote, quadrature and Monte Carlo."""

from ._core import (
    Method,
    MonteCarloEstimate,
    SopValue,
    SystemParams,
    ValidationReport,
    best_eve_cdf,
    best_user_cdf,
    bessel_k1,
    builtin_recipe_names,
    db_to_linear,
    default_params,
    estimate_sop,
    load_params,
    parse_params,
    run_recipe_csv,
    secrecy_rate,
    sop_asymptotic,
    sop_closed_form,
    sop_quadrature,
    validate_against_analytic,
    z_times_k1,
)

__all__ = [
    "Method",
    "MonteCarloEstimate",
    "SopValue",
    "SystemParams",
    "ValidationReport",
    "best_eve_cdf",
    "best_user_cdf",
    "bessel_k1",
    "builtin_recipe_names",
    "db_to_linear",
    "default_params",
    "estimate_sop",
    "load_params",
    "parse_params",
    "run_recipe_csv",
    "secrecy_rate",
    "sop_asymptotic",
    "sop_closed_form",
    "sop_quadrature",
    "validate_against_analytic",
    "z_times_k1",
]
