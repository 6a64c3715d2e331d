"""Upper half-space model of hyperbolic n-space.

Points are (x, s) with x in R^{n-1} and height s > 0; the metric is the
Euclidean one rescaled by 1/s^2, which has constant sectional curvature -1.
Distances, geodesics and geodesic spheres all have closed forms here, and a
geodesic polar chart around the base point (0, 1) is provided for n = 2 via
the Poincare disk and the Cayley map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HPoint",
    "HTangent",
    "Geodesic",
    "base_point",
    "metric_inner",
    "metric_norm",
    "distance",
    "geodesic_through",
    "geodesic_eval",
    "sphere_center_euclidean",
    "sphere_radius_euclidean",
    "sphere_membership",
    "sphere_param_euclidean",
    "sphere_point_from_dir",
    "polar_chart",
    "polar_chart_inv",
]

_BASE_TOL = 1e-12


@dataclass(frozen=True)
class HPoint:
    """Point of the half-space model: horizontal part ``x``, height ``s`` > 0."""

    x: np.ndarray
    s: float

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=float))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "s", float(self.s))
        if not np.all(np.isfinite(x)):
            raise ValueError("non-finite horizontal coordinates")
        if not (self.s > 0 and math.isfinite(self.s)):
            raise ValueError(f"height must be positive and finite, got {self.s}")

    @property
    def n(self) -> int:
        return self.x.size + 1

    def coords(self) -> np.ndarray:
        """All n coordinates, height last."""
        return np.append(self.x, self.s)


@dataclass(frozen=True)
class HTangent:
    """Tangent vector at ``base``, stored in coordinate components (height last)."""

    base: HPoint
    v: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.v, dtype=float))
        object.__setattr__(self, "v", v)
        if v.size != self.base.n:
            raise ValueError(f"tangent has {v.size} components, point is {self.base.n}-dimensional")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite tangent components")


def base_point(n: int = 2) -> HPoint:
    """The reference point (0, ..., 0, 1)."""
    return HPoint(np.zeros(n - 1), 1.0)


def _check_same_base(u: HTangent, w: HTangent) -> None:
    p, q = u.base, w.base
    if p.n != q.n or abs(p.s - q.s) > _BASE_TOL or np.max(np.abs(p.x - q.x), initial=0.0) > _BASE_TOL:
        raise ValueError("tangent vectors are based at different points")


def metric_inner(p: HPoint, u: HTangent, w: HTangent) -> float:
    """Inner product of two tangent vectors at p: Euclidean dot over s^2."""
    _check_same_base(u, w)
    if u.base.n != p.n or abs(u.base.s - p.s) > _BASE_TOL or np.max(np.abs(u.base.x - p.x), initial=0.0) > _BASE_TOL:
        raise ValueError("tangent vectors are not based at p")
    return float(np.dot(u.v, w.v) / p.s**2)


def metric_norm(u: HTangent) -> float:
    return float(np.linalg.norm(u.v) / u.base.s)


def distance(p: HPoint, q: HPoint) -> float:
    """Hyperbolic distance, evaluated as 2*asinh(|p-q|_E / (2*sqrt(s_p s_q))).

    This is the arccosh closed form rewritten so nearby points do not lose
    precision to cancellation.
    """
    if p.n != q.n:
        raise ValueError("points of different dimension")
    diff2 = float(np.sum((p.x - q.x) ** 2)) + (p.s - q.s) ** 2
    return 2.0 * math.asinh(math.sqrt(diff2) / (2.0 * math.sqrt(p.s * q.s)))


@dataclass(frozen=True)
class Geodesic:
    """Unit-speed geodesic: a vertical ray or a half-circle in a vertical 2-plane.

    Vertical rays are (x0, s0 * e^{sign * tau}).  Circular arcs sit over the
    boundary point ``center`` with Euclidean radius ``rho``, run inside the
    vertical plane spanned by ``direction`` and the height axis, and are
    parametrized as (center + rho*tanh(tau + tau0)*direction, rho*sech(tau + tau0)).
    """

    kind: str  # "vertical" or "arc"
    x0: np.ndarray = field(default=None)  # vertical only
    s0: float = 0.0
    sign: float = 1.0
    center: np.ndarray = field(default=None)  # arc only
    rho: float = 0.0
    direction: np.ndarray = field(default=None)
    tau0: float = 0.0

    def eval_coords(self, tau):
        """Coordinates at parameter tau; tau may be a scalar or an array."""
        tau = np.asarray(tau, dtype=float)
        if self.kind == "vertical":
            s = self.s0 * np.exp(self.sign * tau)
            x = np.broadcast_to(self.x0, tau.shape + self.x0.shape).copy()
            return x, s
        w = tau + self.tau0
        x = self.center + self.rho * np.tanh(w)[..., None] * self.direction
        s = self.rho / np.cosh(w)
        return x, s

    def velocity_coords(self, tau):
        """Coordinate velocity d(gamma)/d(tau)."""
        tau = np.asarray(tau, dtype=float)
        if self.kind == "vertical":
            ds = self.sign * self.s0 * np.exp(self.sign * tau)
            dx = np.zeros(tau.shape + self.x0.shape)
            return dx, ds
        w = tau + self.tau0
        sech = 1.0 / np.cosh(w)
        dx = (self.rho * sech**2)[..., None] * self.direction
        ds = -self.rho * sech * np.tanh(w)
        return dx, ds


def geodesic_through(p: HPoint, u: HTangent) -> Geodesic:
    """Unit-speed geodesic with gamma(0) = p and gamma'(0) = u/|u|."""
    norm = np.linalg.norm(u.v)
    if norm == 0.0 or not np.isfinite(norm):
        raise ValueError("geodesic direction must be a nonzero vector")
    v = u.v * (p.s / norm)  # metric-unit: Euclidean length equals the height
    ux, us = v[:-1], v[-1]
    horiz = float(np.linalg.norm(ux))
    if horiz <= 1e-14 * p.s:
        return Geodesic(kind="vertical", x0=p.x.copy(), s0=p.s, sign=1.0 if us >= 0 else -1.0)
    direction = ux / horiz
    tau0 = math.atanh(-us / p.s)
    rho = p.s * math.cosh(tau0)
    center = p.x - rho * math.tanh(tau0) * direction
    return Geodesic(kind="arc", center=center, rho=rho, direction=direction, tau0=tau0)


def geodesic_eval(gamma: Geodesic, tau: float) -> HPoint:
    x, s = gamma.eval_coords(float(tau))
    return HPoint(x, float(s))


def sphere_center_euclidean(r: float, n: int = 2) -> np.ndarray:
    """Euclidean center of the geodesic sphere S_r around (0, ..., 0, 1)."""
    if r < 0:
        raise ValueError("sphere radius must be nonnegative")
    c = np.zeros(n)
    c[-1] = math.cosh(r)
    return c


def sphere_radius_euclidean(r: float) -> float:
    if r < 0:
        raise ValueError("sphere radius must be nonnegative")
    return math.sinh(r)


def sphere_membership(r: float, p: HPoint, tol: float = 1e-9) -> bool:
    """Whether p lies on the geodesic sphere of radius r around (0, ..., 0, 1)."""
    center = sphere_center_euclidean(r, p.n)
    dist_e = float(np.linalg.norm(p.coords() - center))
    return abs(dist_e - math.sinh(r)) <= tol


def sphere_param_euclidean(r: float, theta) -> HPoint | tuple[np.ndarray, np.ndarray]:
    """Planar (n = 2) sphere parametrization (sinh r cos t, cosh r + sinh r sin t).

    The angle here is the Euclidean one on the circle, not the intrinsic polar
    angle; the two parametrizations cover the same point set.  Array input
    returns the raw coordinate arrays.
    """
    if r < 0:
        raise ValueError("sphere radius must be nonnegative")
    theta_arr = np.asarray(theta, dtype=float)
    x = math.sinh(r) * np.cos(theta_arr)
    s = math.cosh(r) + math.sinh(r) * np.sin(theta_arr)
    if theta_arr.ndim == 0:
        return HPoint(np.array([float(x)]), float(s))
    return x, s


def sphere_point_from_dir(r: float, direction: np.ndarray) -> HPoint:
    """Point of S_r in the Euclidean unit direction ``direction`` (any dimension)."""
    d = np.asarray(direction, dtype=float)
    nrm = np.linalg.norm(d)
    if nrm == 0:
        raise ValueError("direction must be nonzero")
    c = sphere_center_euclidean(r, d.size) + math.sinh(r) * d / nrm
    return HPoint(c[:-1], float(c[-1]))


# -- geodesic polar chart around (0, 1), n = 2 only ---------------------------
#
# The chart goes through the Poincare disk: (r, theta) maps to the disk point
# tanh(r/2) e^{i theta}, then to the half-plane by the Cayley map
# z = i (1 + w) / (1 - w), an isometry sending 0 to i.  Pullback metric is
# dr^2 + sinh^2(r) dtheta^2.


def polar_chart(r, theta):
    """Half-plane point(s) with geodesic polar coordinates (r, theta) around (0,1)."""
    r_arr = np.asarray(r, dtype=float)
    th_arr = np.asarray(theta, dtype=float)
    if np.any(r_arr < 0):
        raise ValueError("polar radius must be nonnegative")
    w = np.tanh(r_arr / 2.0) * np.exp(1j * th_arr)
    z = 1j * (1.0 + w) / (1.0 - w)
    if z.ndim == 0:
        return HPoint(np.array([z.real]), float(z.imag))
    return z.real, z.imag


def polar_chart_inv(p: HPoint | tuple) -> tuple:
    """Inverse chart; at the pole (0,1) returns (0, 0) by convention."""
    if isinstance(p, HPoint):
        if p.n != 2:
            raise ValueError("polar chart is two-dimensional")
        z = complex(p.x[0], p.s)
        w = (z - 1j) / (z + 1j)
        rho = abs(w)
        if rho < 1e-300:
            return 0.0, 0.0
        r = 2.0 * math.atanh(rho)
        theta = math.atan2(w.imag, w.real) % (2.0 * math.pi)
        return r, theta
    x, s = p
    z = np.asarray(x, dtype=float) + 1j * np.asarray(s, dtype=float)
    w = (z - 1j) / (z + 1j)
    rho = np.abs(w)
    r = 2.0 * np.arctanh(rho)
    theta = np.mod(np.arctan2(w.imag, w.real), 2.0 * np.pi)
    theta = np.where(rho < 1e-300, 0.0, theta)
    return r, theta
