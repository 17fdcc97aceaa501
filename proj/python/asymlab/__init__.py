"""Entropy-based asymmetry coefficient C(X->Y) = H(X) - H(Y).

Thin wrapper over the compiled ``_core`` extension.
"""

import json

from ._core import (
    AsymlabError,
    ConfigError,
    CrossFitResult,
    DensityModel,
    InputError,
    NumericError,
    analytic_coefficient,
    bootstrap_diagnostic,
    catalog_ids,
    classify_dynamics,
    cross_fit,
    decide_direction,
    estimate_csv,
    fisher_information,
    fit_density,
    plugin_entropy,
    run_accuracy,
    run_table1,
    run_table2,
    sample_gem,
    sample_npgem,
    sigma_crit,
)

__version__ = "0.1.0"


def estimate_report(path, **kwargs):
    """Parsed JSON report of :func:`estimate_csv`."""
    return json.loads(estimate_csv(path, **kwargs))
