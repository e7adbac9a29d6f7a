"""Multifractal and stable-law scaling analysis of time series."""

from ._core import (
    Error,
    Pdf,
    __version__,
    collapse,
    config_keys,
    default_lags,
    default_q_orders,
    default_scales,
    default_structure_orders,
    estimate_pdf,
    fit_mu,
    generate,
    levy_density,
    levy_peak,
    mfdfa,
    rescale_pdf,
    returns,
    run,
    sigma_tau,
    structure,
    summary_stats,
)

__all__ = [
    "Error",
    "Pdf",
    "__version__",
    "collapse",
    "config_keys",
    "default_lags",
    "default_q_orders",
    "default_scales",
    "default_structure_orders",
    "estimate_pdf",
    "fit_mu",
    "generate",
    "levy_density",
    "levy_peak",
    "mfdfa",
    "rescale_pdf",
    "returns",
    "run",
    "sigma_tau",
    "structure",
    "summary_stats",
]
