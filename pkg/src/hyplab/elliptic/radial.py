"""Exact radial solutions of div(a(|grad u|)/|grad u| grad u) + C = 0.

For rotationally symmetric u on hyperbolic n-space the divergence theorem
collapses the PDE to flux conservation across geodesic spheres:

    sinh^{n-1}(r) a(|u'|) sign(u') + C I(r) = A   (constant),

with I(r) the integral of sinh^{n-1}.  Solving an annulus boundary-value
problem means finding the flux constant A by bisection: the boundary jump
u(R) - u(r0) is strictly increasing in A.  For laws with bounded a (minimal
surface equation) the admissible window of A is finite and the required jump
may be unreachable; that is reported as nonexistence, not as failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from ..polarfield import sinh_power_integral
from .laws import FluxLaw

__all__ = ["NoSolutionError", "RadialSolution", "radial_solve", "radial_solve_disk"]

_QUAD_OPTS = dict(epsabs=1e-13, epsrel=1e-12, limit=400)


class NoSolutionError(Exception):
    """Gradient saturation makes the boundary data unattainable."""

    def __init__(self, message: str, radius: float | None = None):
        super().__init__(message)
        self.radius = radius


@dataclass(frozen=True)
class RadialSolution:
    law: FluxLaw
    n: int
    C: float
    r0: float
    R: float
    u_inner: float
    flux_constant: float

    def _phi(self, r):
        r = np.asarray(r, dtype=float)
        return (self.flux_constant - self.C * sinh_power_integral(self.n, r)) / np.sinh(r) ** (self.n - 1)

    def du(self, r):
        """Signed radial derivative u'(r)."""
        phi = self._phi(r)
        out = np.sign(phi) * self.law.a_inv(np.abs(phi))
        return float(out) if np.ndim(r) == 0 else out

    def gradient_norm(self, r):
        return np.abs(self.du(r))

    def u(self, r):
        """Profile value(s), integrating u' from the inner radius."""

        def integrand(rho):
            return self.du(rho)

        def one(rv):
            if rv < self.r0 - 1e-12 or rv > self.R + 1e-9:
                raise ValueError(f"radius {rv} outside [{self.r0}, {self.R}]")
            val, _ = quad(integrand, self.r0, min(rv, self.R), **_QUAD_OPTS)
            return self.u_inner + val

        if np.ndim(r) == 0:
            return one(float(r))
        return np.array([one(float(rv)) for rv in np.asarray(r, dtype=float)])

    def flux_drift(self, rs) -> float:
        """Max deviation of sinh^{n-1} a(|u'|) sign(u') + C I(r) from the constant."""
        rs = np.asarray(rs, dtype=float)
        du = self.du(rs)
        flux = np.sinh(rs) ** (self.n - 1) * self.law.a(np.abs(du)) * np.sign(du) + self.C * sinh_power_integral(
            self.n, rs
        )
        return float(np.max(np.abs(flux - self.flux_constant)))


def _admissible_window(law: FluxLaw, n: int, C: float, r0: float, R: float):
    """Open interval of flux constants keeping |phi| < sup a on [r0, R]."""
    if not np.isfinite(law.sup_a):
        return -np.inf, np.inf, None, None
    rs = np.linspace(r0, R, 4001)
    s_pow = np.sinh(rs) ** (n - 1)
    ci = C * sinh_power_integral(n, rs)
    lo_arr = ci - law.sup_a * s_pow
    hi_arr = ci + law.sup_a * s_pow
    i_lo = int(np.argmax(lo_arr))
    i_hi = int(np.argmin(hi_arr))
    return float(lo_arr[i_lo]), float(hi_arr[i_hi]), float(rs[i_lo]), float(rs[i_hi])


def _jump(law: FluxLaw, n: int, C: float, r0: float, R: float, A: float) -> float:
    def integrand(rho):
        phi = (A - C * sinh_power_integral(n, rho)) / math.sinh(rho) ** (n - 1)
        return float(np.sign(phi) * law.a_inv(abs(phi)))

    val, _ = quad(integrand, r0, R, **_QUAD_OPTS)
    return val


def radial_solve(
    law: FluxLaw,
    n: int,
    C: float,
    r0: float,
    R: float,
    u_inner: float,
    u_outer: float,
    tol: float = 1e-11,
    max_iter: int = 200,
) -> RadialSolution:
    """Annulus boundary-value problem; finds the flux constant by bisection."""
    if not (0 < r0 < R):
        raise ValueError("need 0 < r0 < R")
    target = u_outer - u_inner

    a_lo, a_hi, rad_lo, rad_hi = _admissible_window(law, n, C, r0, R)
    if a_lo >= a_hi:
        raise NoSolutionError(
            f"no admissible flux constant: saturation window empty near r = {rad_lo:.6g}",
            radius=rad_lo,
        )

    if np.isfinite(a_lo):
        gap = 1e-12 * max(1.0, abs(a_lo), abs(a_hi))
        lo, hi = a_lo + gap, a_hi - gap
        j_lo, j_hi = _jump(law, n, C, r0, R, lo), _jump(law, n, C, r0, R, hi)
        if target > j_hi:
            raise NoSolutionError(
                f"boundary jump {target:.6g} exceeds the attainable maximum {j_hi:.6g} "
                f"(gradient saturates near r = {rad_hi:.6g})",
                radius=rad_hi,
            )
        if target < j_lo:
            raise NoSolutionError(
                f"boundary jump {target:.6g} is below the attainable minimum {j_lo:.6g} "
                f"(gradient saturates near r = {rad_lo:.6g})",
                radius=rad_lo,
            )
    else:
        # expand a bracket; the jump is increasing and unbounded in A
        scale = max(1.0, abs(C) * float(sinh_power_integral(n, R)))
        lo, hi = -scale, scale
        while _jump(law, n, C, r0, R, lo) > target:
            lo *= 2.0
        while _jump(law, n, C, r0, R, hi) < target:
            hi *= 2.0

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        jm = _jump(law, n, C, r0, R, mid)
        if abs(jm - target) <= tol and (hi - lo) <= 1e-13 * max(1.0, abs(mid)):
            lo = hi = mid
            break
        if jm < target:
            lo = mid
        else:
            hi = mid
    A = 0.5 * (lo + hi)

    sol = RadialSolution(law, n, C, r0, R, u_inner, A)
    mismatch = abs(sol.u(R) - u_outer)
    if mismatch > 1e-10 * max(1.0, abs(u_outer), abs(u_inner)):
        raise NoSolutionError(f"bisection did not reach the boundary data (|mismatch| = {mismatch:.3g})")
    return sol


def radial_solve_disk(law: FluxLaw, n: int, C: float, R: float, u_outer: float) -> RadialSolution:
    """Disk problem: regularity at the center pins the flux constant to zero.

    The profile is integrated inward from the prescribed outer value; the
    returned object stores the matching inner limit so that `u` works from a
    tiny inner radius up to R.
    """
    if R <= 0:
        raise ValueError("disk radius must be positive")
    r_eps = 1e-8 * R
    if np.isfinite(law.sup_a):
        rs = np.linspace(r_eps, R, 4001)
        phi = np.abs(-C * sinh_power_integral(n, rs)) / np.sinh(rs) ** (n - 1)
        k = int(np.argmax(phi))
        if phi[k] >= law.sup_a:
            raise NoSolutionError(
                f"source term saturates the flux law at r = {rs[k]:.6g}", radius=float(rs[k])
            )

    probe = RadialSolution(law, n, C, r_eps, R, 0.0, 0.0)
    u_inner = u_outer - float(probe.u(R))
    return RadialSolution(law, n, C, r_eps, R, u_inner, 0.0)
