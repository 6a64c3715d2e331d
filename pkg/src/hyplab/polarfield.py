"""Geodesic polar coordinates: reduced Laplacian, the bounded harmonic
counterexample, and gradient decay along spheres.

Scalar fields here depend on the radius r and one polar angle theta of a
polar coordinate system centered at the base point.  For such fields the
Laplace-Beltrami operator of hyperbolic n-space reduces to

    f_rr + (n-1) coth(r) f_r + (n-2) cot(theta)/sinh^2(r) f_theta
         + f_thetatheta / sinh^2(r),

and the squared gradient norm to f_r^2 + f_theta^2 / sinh^2(r).

The distinguished field is

    v(r, theta) = (C (n-1) / 2) * (I(r) / sinh^{n-1} r) * cos(theta),
    I(r) = integral of sinh^{n-1} over [0, r],

a bounded non-constant harmonic function whose sphere-sup gradient decays
exactly like C e^{-R}.  Its partial derivatives are carried in closed form;
finite differences appear only as fallbacks and test oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "RadialProfile",
    "ScalarField2",
    "sinh_power_integral",
    "counterexample",
    "constant_field",
    "laplace_beltrami",
    "gradient_norm",
    "decay_indicator",
]

_SERIES_TERMS = 28
_SERIES_SWITCH = 1.0
_series_cache: dict[int, np.ndarray] = {}


def _series_coeffs(m: int) -> np.ndarray:
    """Maclaurin coefficients of (sinh s / s)^m in powers of s^2."""
    coeffs = _series_cache.get(m)
    if coeffs is None:
        base = np.array([1.0 / math.factorial(2 * j + 1) for j in range(_SERIES_TERMS)])
        coeffs = np.zeros(_SERIES_TERMS)
        coeffs[0] = 1.0
        for _ in range(m):
            coeffs = np.convolve(coeffs, base)[:_SERIES_TERMS]
        _series_cache[m] = coeffs
    return coeffs


def _integral_series(m: int, r: np.ndarray) -> np.ndarray:
    """I_m(r) for small r, integrating the power series term by term."""
    coeffs = _series_coeffs(m)
    r2 = r * r
    acc = np.zeros_like(r)
    for k in range(_SERIES_TERMS - 1, -1, -1):
        acc = acc * r2 + coeffs[k] / (m + 2 * k + 1)
    return acc * r ** (m + 1)


def _integral_recurrence(m: int, r: np.ndarray) -> np.ndarray:
    """I_m(r) by the integration-by-parts recurrence, stable for r >= 1."""
    if m == 0:
        return r.copy()
    if m == 1:
        half = np.sinh(r / 2.0)
        return 2.0 * half * half  # cosh r - 1 without cancellation
    s, c = np.sinh(r), np.cosh(r)
    return (s ** (m - 1) * c - (m - 1) * _integral_recurrence(m - 2, r)) / m


def sinh_power_integral(n: int, r) -> float | np.ndarray:
    """Integral of sinh^{n-1} over [0, r].

    Closed forms throughout: cosh r - 1 for n = 2, (sinh r cosh r - r)/2 for
    n = 3, and the integration-by-parts recurrence above; below r = 1 the
    recurrence loses digits to cancellation, so a Maclaurin series takes over.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise ValueError("radius must be nonnegative")
    m = n - 1
    if m == 1:
        half = np.sinh(r_arr / 2.0)
        out = 2.0 * half * half
    else:
        out = np.where(
            r_arr < _SERIES_SWITCH,
            _integral_series(m, np.minimum(r_arr, _SERIES_SWITCH)),
            _integral_recurrence(m, np.maximum(r_arr, _SERIES_SWITCH)),
        )
    if np.ndim(r) == 0:
        return float(out)
    return out


class RadialProfile:
    """Radial machinery for one dimension n: I(r) and W(r) = I / sinh^{n-1}.

    W is the radial factor of the harmonic counterexample; W(0) = 0, W grows
    monotonically to 1/(n-1).  First and second derivatives come from
    W' = 1 - (n-1) coth(r) W and W'' = -(n-1) [W (1 - n coth^2 r) + coth r].
    """

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("dimension must be at least 2")
        self.n = n

    def integral(self, r):
        return sinh_power_integral(self.n, r)

    def ratio(self, r):
        r_arr = np.asarray(r, dtype=float)
        if self.n == 2:
            out = np.tanh(r_arr / 2.0)
        else:
            s = np.sinh(r_arr)
            with np.errstate(invalid="ignore", divide="ignore"):
                out = np.where(r_arr > 0, sinh_power_integral(self.n, r_arr) / s ** (self.n - 1), 0.0)
        return float(out) if np.ndim(r) == 0 else out

    def ratio_prime(self, r):
        r_arr = np.asarray(r, dtype=float)
        if self.n == 2:
            sech = 1.0 / np.cosh(r_arr / 2.0)
            out = 0.5 * sech * sech
        else:
            with np.errstate(invalid="ignore", divide="ignore"):
                coth = np.where(r_arr > 0, np.cosh(r_arr) / np.sinh(r_arr), np.inf)
            out = np.where(r_arr > 0, 1.0 - (self.n - 1) * coth * self.ratio(r_arr), 1.0 / self.n)
        return float(out) if np.ndim(r) == 0 else out

    def ratio_second(self, r):
        r_arr = np.asarray(r, dtype=float)
        if self.n == 2:
            sech = 1.0 / np.cosh(r_arr / 2.0)
            out = -0.5 * np.tanh(r_arr / 2.0) * sech * sech
        else:
            if np.any(r_arr <= 0):
                raise ValueError("second derivative needs r > 0")
            coth = np.cosh(r_arr) / np.sinh(r_arr)
            w = self.ratio(r_arr)
            out = -(self.n - 1) * (w * (1.0 - self.n * coth * coth) + coth)
        return float(out) if np.ndim(r) == 0 else out


@dataclass(frozen=True)
class ScalarField2:
    """Scalar field of (r, theta) with optional closed-form partials.

    ``value`` and any provided partials must accept numpy arrays.  Missing
    partials make the differential operators fall back to central differences.
    """

    value: Callable
    d_r: Optional[Callable] = None
    d_theta: Optional[Callable] = None
    d_rr: Optional[Callable] = None
    d_thetatheta: Optional[Callable] = None


def counterexample(n: int, C: float) -> ScalarField2:
    """The bounded non-constant harmonic field with decay constant C.

    For n = 2 the radial factor is tanh(r/2) and the field is
    (C/2) tanh(r/2) cos(theta); in any dimension |v| < C/2 and
    e^R sup_{S_R} |grad v| converges to C.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    if C <= 0:
        raise ValueError("decay constant must be positive")
    prof = RadialProfile(n)
    amp = C * (n - 1) / 2.0

    def value(r, theta):
        return amp * prof.ratio(r) * np.cos(theta)

    def d_r(r, theta):
        return amp * prof.ratio_prime(r) * np.cos(theta)

    def d_theta(r, theta):
        return -amp * prof.ratio(r) * np.sin(theta)

    def d_rr(r, theta):
        return amp * prof.ratio_second(r) * np.cos(theta)

    def d_thetatheta(r, theta):
        return -amp * prof.ratio(r) * np.cos(theta)

    return ScalarField2(value, d_r, d_theta, d_rr, d_thetatheta)


def constant_field(c: float = 0.0) -> ScalarField2:
    def const(r, theta):
        return np.broadcast_arrays(np.asarray(r, dtype=float) * 0.0 + c, np.asarray(theta))[0]

    zero = lambda r, theta: np.zeros(np.broadcast(np.asarray(r), np.asarray(theta)).shape)
    return ScalarField2(const, zero, zero, zero, zero)


_FD_STEP = 1e-4


def _partial(f: ScalarField2, which: str, r, theta):
    fn = getattr(f, which)
    if fn is not None:
        return fn(r, theta)
    h = _FD_STEP
    if which == "d_r":
        return (f.value(r + h, theta) - f.value(r - h, theta)) / (2 * h)
    if which == "d_theta":
        return (f.value(r, theta + h) - f.value(r, theta - h)) / (2 * h)
    if which == "d_rr":
        return (f.value(r + h, theta) - 2 * f.value(r, theta) + f.value(r - h, theta)) / (h * h)
    if which == "d_thetatheta":
        return (f.value(r, theta + h) - 2 * f.value(r, theta) + f.value(r, theta - h)) / (h * h)
    raise ValueError(which)


def laplace_beltrami(f: ScalarField2, n: int, r, theta):
    """Reduced Laplace-Beltrami operator applied to f at (r, theta).

    Requires r > 0.  For n > 2 the operator carries a cot(theta) term and is
    singular on the polar axis; evaluation there raises ValueError.
    """
    r_arr = np.asarray(r, dtype=float)
    th_arr = np.asarray(theta, dtype=float)
    if np.any(r_arr <= 0):
        raise ValueError("operator needs r > 0")
    sin_th = np.sin(th_arr)
    if n > 2 and np.any(np.abs(sin_th) < 1e-12):
        raise ValueError("polar axis is singular for n > 2")
    s = np.sinh(r_arr)
    coth = np.cosh(r_arr) / s
    out = (
        _partial(f, "d_rr", r_arr, th_arr)
        + (n - 1) * coth * _partial(f, "d_r", r_arr, th_arr)
        + _partial(f, "d_thetatheta", r_arr, th_arr) / (s * s)
    )
    if n > 2:
        out = out + (n - 2) * (np.cos(th_arr) / sin_th) / (s * s) * _partial(f, "d_theta", r_arr, th_arr)
    return float(out) if (np.ndim(r) == 0 and np.ndim(theta) == 0) else out


def gradient_norm(f: ScalarField2, n: int, r, theta):
    """|grad f| = sqrt(f_r^2 + f_theta^2 / sinh^2 r), r > 0."""
    r_arr = np.asarray(r, dtype=float)
    th_arr = np.asarray(theta, dtype=float)
    if np.any(r_arr <= 0):
        raise ValueError("gradient norm needs r > 0")
    fr = _partial(f, "d_r", r_arr, th_arr)
    ft = _partial(f, "d_theta", r_arr, th_arr)
    s = np.sinh(r_arr)
    out = np.sqrt(fr * fr + (ft / s) ** 2)
    return float(out) if (np.ndim(r) == 0 and np.ndim(theta) == 0) else out


def decay_indicator(f: ScalarField2, n: int, R: float, samples: int = 4096) -> float:
    """e^R times the sphere supremum of |grad f|, by dense theta sampling.

    The supremum over the full sphere reduces to theta in [0, pi] because the
    fields depend on no other angle.
    """
    if R <= 0:
        raise ValueError("sphere radius must be positive")
    thetas = np.linspace(0.0, math.pi, samples)
    vals = gradient_norm(f, n, np.full(samples, float(R)), thetas)
    return float(math.exp(R) * np.max(vals))
