"""
Quadrature check of the integral representation

    int_0^1 exp(2 pi i nu x) exp(i t cos(2 pi x)) dx = i^nu J_nu(t).

The integrand is smooth and 1-periodic, so the uniform trapezoid rule
converges exponentially; with n nodes the error is the aliased terms
J_{nu +- n}(t), negligible once n >= 2(|nu| + ceil(t)) + 16.
"""

import math

import numpy as np

from cpd.exceptions import InsufficientResolutionError


def required_nodes(nu: int, t: float) -> int:
    """Smallest admissible node count for (nu, t)."""
    return 2 * (abs(nu) + math.ceil(abs(t))) + 16


def bessel_integral_oracle(nu: int, t: float, nodes: int) -> complex:
    """
    Trapezoidal value of the Bessel integral, approximately i^nu J_nu(t).

    Raises:
        InsufficientResolutionError: If nodes is below required_nodes(nu, t)
    """
    need = required_nodes(nu, t)
    if nodes < need:
        raise InsufficientResolutionError(
            f"{nodes} nodes are too few for nu={nu}, t={t}; need {need}",
            required=need,
            given=nodes,
        )
    x = np.arange(nodes) / nodes
    integrand = np.exp(2j * np.pi * nu * x + 1j * t * np.cos(2.0 * np.pi * x))
    return complex(np.mean(integrand))
