"""Dispersive decay, sharpness, lightcone and finite-graph recurrence."""

from .decay import (
    DISPERSION_CONSTANT,
    DecayFit,
    DecaySeries,
    dispersion_bound,
    dispersion_scan,
    fit_decay_exponent,
    log_spaced_grid,
    running_max_envelope,
    sharpness_indicator,
)
from .finite import NoDispersionReport, finite_no_dispersion
from .lightcone import LightconeReport, lightcone_limit, lightcone_profile, lightcone_report

__all__ = [
    "DISPERSION_CONSTANT",
    "DecaySeries",
    "DecayFit",
    "dispersion_bound",
    "dispersion_scan",
    "fit_decay_exponent",
    "log_spaced_grid",
    "running_max_envelope",
    "sharpness_indicator",
    "NoDispersionReport",
    "finite_no_dispersion",
    "LightconeReport",
    "lightcone_limit",
    "lightcone_profile",
    "lightcone_report",
]
