"""Monotone flux laws a(s) for the divergence-form operator.

Each law carries a, its partial inverse on [0, sup a), and the diffusion
coefficient a(s)/s used by the 2D scheme.  All callables are vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = ["FluxLaw", "linear_law", "p_laplace_law", "mse_law"]

# Floor applied to |grad u| inside degenerate coefficients only (p-Laplace
# with p > 2); the flux itself is never regularized.
Q_FLOOR = 1e-12


@dataclass(frozen=True)
class FluxLaw:
    name: str
    a: Callable
    a_inv: Callable
    coefficient: Callable  # a(s)/s, with the degenerate-gradient floor baked in
    sup_a: float
    params: dict = field(default_factory=dict)

    def __repr__(self):
        return f"FluxLaw({self.name})"


def linear_law() -> FluxLaw:
    """a(s) = s: the Laplace-Beltrami equation (p = 2)."""
    return FluxLaw(
        name="linear",
        a=lambda s: np.asarray(s, dtype=float) + 0.0,
        a_inv=lambda y: np.asarray(y, dtype=float) + 0.0,
        coefficient=lambda q: np.ones_like(np.asarray(q, dtype=float)),
        sup_a=np.inf,
    )


def p_laplace_law(p: float) -> FluxLaw:
    """a(s) = s^{p-1}, p > 1."""
    if p <= 1:
        raise ValueError("p-Laplace exponent must exceed 1")

    def a(s):
        return np.asarray(s, dtype=float) ** (p - 1.0)

    def a_inv(y):
        return np.asarray(y, dtype=float) ** (1.0 / (p - 1.0))

    def coefficient(q):
        return np.maximum(np.asarray(q, dtype=float), Q_FLOOR) ** (p - 2.0)

    return FluxLaw("p-laplace", a, a_inv, coefficient, np.inf, {"p": p})


def mse_law() -> FluxLaw:
    """a(s) = s / sqrt(1 + s^2): the minimal surface equation; sup a = 1."""

    def a(s):
        s = np.asarray(s, dtype=float)
        return s / np.sqrt(1.0 + s * s)

    def a_inv(y):
        y = np.asarray(y, dtype=float)
        return y / np.sqrt(1.0 - y * y)

    def coefficient(q):
        q = np.asarray(q, dtype=float)
        return 1.0 / np.sqrt(1.0 + q * q)

    return FluxLaw("mse", a, a_inv, coefficient, 1.0)
